//! Positivity certificate for structures whose differentials are purely
//! holomorphic. When every `d(phi^j)` has bidegree (2,0) the unit diagonal
//! metric has `dd^c` of every power of the fundamental form with a definite
//! sign, and this module checks that claim degree by degree.

use super::CatalogError;
use crate::hermitian::{sign_of_form, Classifier, MetricSpec, SignMode, SignTag};
use crate::liecomplex::StructureSpec;
use crate::scalar::GaussianRational;

/// Sign outcome for one power of the fundamental form.
#[derive(Clone, Debug)]
pub struct ParallelPower {
    /// Which power of the fundamental form was differentiated.
    pub k: u32,
    /// Exact sign of `dd^c(omega^k)` at the unit diagonal metric.
    pub tag: SignTag,
    /// Whether the form vanishes identically at that metric.
    pub zero: bool,
    /// Whether the sign is certified nonnegative.
    pub certified: bool,
}

/// Result of the purely holomorphic positivity check.
#[derive(Clone, Debug)]
pub struct ParallelReport {
    pub label: String,
    /// Whether every structure differential is of bidegree (2,0).
    pub applicable: bool,
    pub powers: Vec<ParallelPower>,
}

impl ParallelReport {
    /// All powers certified nonnegative (vacuously false when inapplicable).
    pub fn certified(&self) -> bool {
        self.applicable && !self.powers.is_empty() && self.powers.iter().all(|p| p.certified)
    }

    /// Every power vanishes identically, as on a complex torus.
    pub fn all_zero(&self) -> bool {
        self.applicable && self.powers.iter().all(|p| p.zero)
    }

    pub fn summary(&self) -> String {
        if !self.applicable {
            return format!("{}: differentials are not purely of bidegree (2,0)", self.label);
        }
        let tags: Vec<String> =
            self.powers.iter().map(|p| format!("k={}: {}", p.k, p.tag.label())).collect();
        format!("{}: {}", self.label, tags.join(", "))
    }
}

/// Checks whether all structure differentials are purely of bidegree (2,0)
/// and, if so, certifies the sign of `dd^c(omega^k)` for `k = 1..n-1` at the
/// unit diagonal metric. Structures with free parameters must be
/// substituted before calling.
pub fn proposition_parallel_check(spec: &StructureSpec) -> Result<ParallelReport, CatalogError> {
    let n = spec.n() as u32;
    let mut applicable = true;
    for j in 1..=n {
        let d = spec.d_of_generator(j);
        let off = d.sub(&d.bidegree_component(2, 0))?;
        if !off.is_zero() {
            applicable = false;
            break;
        }
    }
    if !applicable {
        return Ok(ParallelReport {
            label: spec.label().to_string(),
            applicable: false,
            powers: Vec::new(),
        });
    }
    if !spec.params().params().is_empty() {
        return Err(CatalogError::Ledger(format!(
            "parallel check needs all structure parameters fixed; `{}` still has free ones",
            spec.label()
        )));
    }
    let metric = MetricSpec::diagonal(spec)?;
    let classifier = Classifier::new(spec, &metric)?;
    let pairs: Vec<(String, GaussianRational)> = metric
        .metric_names()
        .iter()
        .map(|name| (name.clone(), GaussianRational::from_int(1)))
        .collect();
    let asg = metric.params().assignment(&pairs)?;
    let mut powers = Vec::with_capacity((n - 1) as usize);
    for k in 1..n {
        let form = &classifier.curvature().ddc_powers[(k - 1) as usize];
        let report = sign_of_form(form, &SignMode::Numeric(asg.clone()))?;
        let tag = report.verdict.tag;
        powers.push(ParallelPower {
            k,
            tag,
            zero: tag == SignTag::Zero,
            certified: tag.nonnegative(),
        });
    }
    Ok(ParallelReport { label: spec.label().to_string(), applicable: true, powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate_family, Choices, FamilyId};
    use crate::scalar::GaussianRational;

    #[test]
    fn torus_is_flat_and_iwasawa_is_not() {
        let np = instantiate_family(FamilyId::Np, &Choices::default()).unwrap();
        let torus =
            np.substitute(&[("rho".to_string(), GaussianRational::zero())]).unwrap();
        let report = proposition_parallel_check(&torus).unwrap();
        assert!(report.applicable);
        assert!(report.certified());
        assert!(report.all_zero());

        let iwasawa =
            np.substitute(&[("rho".to_string(), GaussianRational::one())]).unwrap();
        let report = proposition_parallel_check(&iwasawa).unwrap();
        assert!(report.applicable);
        assert!(report.certified());
        assert!(!report.all_zero());
    }

    #[test]
    fn mixed_bidegree_structures_are_rejected() {
        let spec = instantiate_family(FamilyId::EfvB, &Choices::default()).unwrap();
        let report = proposition_parallel_check(&spec).unwrap();
        assert!(!report.applicable);
        assert!(!report.certified());
    }

    #[test]
    fn eight_dim_parallelizable_examples_are_certified() {
        let spec = instantiate_family(FamilyId::NakIv2, &Choices::default()).unwrap();
        let report = proposition_parallel_check(&spec).unwrap();
        assert!(report.applicable);
        assert!(report.certified());
        assert!(!report.all_zero());

        let spec = instantiate_family(FamilyId::NakIv5, &Choices::default()).unwrap();
        let one = spec
            .substitute(&[("alpha".to_string(), GaussianRational::one())])
            .unwrap();
        let report = proposition_parallel_check(&one).unwrap();
        assert!(report.certified());
        assert!(!report.all_zero());
    }
}
