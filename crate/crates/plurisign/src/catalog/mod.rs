//! Built-in families of Lie algebras with complex structure: the
//! six-dimensional nilpotent and solvable classes with holomorphically
//! trivial canonical bundle and four eight-dimensional examples, together
//! with the expected-behaviour ledger that the test suite and the command
//! line replay against the engine.

pub mod ledger;
pub mod parallel;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exterior::Form;
use crate::hermitian::{sample, HermitianError, MetricSpec};
use crate::liecomplex::{StructureError, StructureSpec};
use crate::scalar::{
    parse_scalar, Constraint, GaussianRational, ParamSet, Parameter, RewriteRule,
};

pub use ledger::{
    expected_ledger, ledger_source, parse_ledger, replay_entry, replay_ledger, Claim,
    ClaimOutcome, EntryOutcome, ExpectedLedger, ExpectedLedgerEntry, LedgerReport,
};
pub use parallel::{proposition_parallel_check, ParallelPower, ParallelReport};

#[derive(thiserror::Error, Debug)]
pub enum CatalogError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family {family} requires the discrete choice `{name}`")]
    MissingChoice { family: FamilyId, name: &'static str },
    #[error("family {family} does not take a discrete choice `{name}`")]
    UnexpectedChoice { family: FamilyId, name: &'static str },
    #[error("invalid value for `{name}`: {detail}")]
    InvalidChoice { name: &'static str, detail: String },
    #[error("ledger: {0}")]
    Ledger(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Hermitian(#[from] HermitianError),
    #[error(transparent)]
    Scalar(#[from] crate::scalar::ScalarError),
    #[error(transparent)]
    Form(#[from] crate::exterior::FormError),
}

/// Stable identifiers for the built-in families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FamilyId {
    Np,
    Ni,
    Nii,
    Niii,
    Si,
    Sii,
    Siii1,
    Siii2,
    Siii3,
    Siii4,
    Siv1,
    Siv2,
    Siv3,
    Sv,
    #[serde(rename = "EFV_A")]
    EfvA,
    #[serde(rename = "EFV_B")]
    EfvB,
    #[serde(rename = "NakIV2")]
    NakIv2,
    #[serde(rename = "NakIV5")]
    NakIv5,
}

impl FamilyId {
    pub const ALL: [FamilyId; 18] = [
        FamilyId::Np,
        FamilyId::Ni,
        FamilyId::Nii,
        FamilyId::Niii,
        FamilyId::Si,
        FamilyId::Sii,
        FamilyId::Siii1,
        FamilyId::Siii2,
        FamilyId::Siii3,
        FamilyId::Siii4,
        FamilyId::Siv1,
        FamilyId::Siv2,
        FamilyId::Siv3,
        FamilyId::Sv,
        FamilyId::EfvA,
        FamilyId::EfvB,
        FamilyId::NakIv2,
        FamilyId::NakIv5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyId::Np => "Np",
            FamilyId::Ni => "Ni",
            FamilyId::Nii => "Nii",
            FamilyId::Niii => "Niii",
            FamilyId::Si => "Si",
            FamilyId::Sii => "Sii",
            FamilyId::Siii1 => "Siii1",
            FamilyId::Siii2 => "Siii2",
            FamilyId::Siii3 => "Siii3",
            FamilyId::Siii4 => "Siii4",
            FamilyId::Siv1 => "Siv1",
            FamilyId::Siv2 => "Siv2",
            FamilyId::Siv3 => "Siv3",
            FamilyId::Sv => "Sv",
            FamilyId::EfvA => "EFV_A",
            FamilyId::EfvB => "EFV_B",
            FamilyId::NakIv2 => "NakIV2",
            FamilyId::NakIv5 => "NakIV5",
        }
    }

    /// Complex dimension of the family.
    pub fn n(&self) -> u8 {
        match self {
            FamilyId::EfvA | FamilyId::EfvB | FamilyId::NakIv2 | FamilyId::NakIv5 => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        FamilyId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::UnknownFamily(s.into()))
    }
}

/// Discrete choices some families take: a sign for (Niii), (Siii1) and
/// (Siii4), the value of `x` for (Siv2). The sign defaults to `+1`; `x`
/// has no default.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Choices {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<u8>,
}

impl Choices {
    pub fn sign(sign: i8) -> Self {
        Choices { sign: Some(sign), ..Choices::default() }
    }

    pub fn x(x: u8) -> Self {
        Choices { x: Some(x), ..Choices::default() }
    }
}

fn resolve_sign(family: FamilyId, c: &Choices) -> Result<i8, CatalogError> {
    match c.sign {
        None => Ok(1),
        Some(1) => Ok(1),
        Some(-1) => Ok(-1),
        Some(other) => Err(CatalogError::InvalidChoice {
            name: "sign",
            detail: format!("{other} is not +1 or -1 (family {family})"),
        }),
    }
}

fn reject_sign(family: FamilyId, c: &Choices) -> Result<(), CatalogError> {
    if c.sign.is_some() {
        return Err(CatalogError::UnexpectedChoice { family, name: "sign" });
    }
    Ok(())
}

fn reject_x(family: FamilyId, c: &Choices) -> Result<(), CatalogError> {
    if c.x.is_some() {
        return Err(CatalogError::UnexpectedChoice { family, name: "x" });
    }
    Ok(())
}

/// Metadata shown by `catalog list`.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyInfo {
    pub id: FamilyId,
    pub n: u8,
    pub parameters: &'static str,
    pub discrete: &'static str,
    pub summary: &'static str,
}

pub fn family_info(id: FamilyId) -> FamilyInfo {
    let (parameters, discrete, summary) = match id {
        FamilyId::Np => (
            "rho in {0, 1}",
            "none",
            "complex parallelizable nilpotent structures; rho = 0 is the torus, rho = 1 the Iwasawa algebra",
        ),
        FamilyId::Ni => (
            "rho in {0, 1}; lambda real >= 0; D complex with Im D >= 0",
            "none",
            "nilpotent complex structures with d(phi1) = d(phi2) = 0; rho = 0 gives abelian complex structures",
        ),
        FamilyId::Nii => (
            "rho in {0, 1}; B complex; c real >= 0; (rho, B, c) != (0, 0, 0)",
            "none",
            "nilpotent complex structures with d(phi2) = phi^{1 ~1}",
        ),
        FamilyId::Niii => (
            "rho in {0, 1}",
            "sign in {+1, -1}",
            "non-nilpotent complex structures on nilpotent algebras",
        ),
        FamilyId::Si => (
            "A complex of modulus one, Im A >= 0",
            "none",
            "splitting-type solvable structures on a one-parameter circle",
        ),
        FamilyId::Sii => (
            "x real > 0 (y is the auxiliary reciprocal with x*y = 1/4)",
            "none",
            "solvable structures with reciprocal coefficient pair",
        ),
        FamilyId::Siii1 => (
            "none",
            "sign in {+1, -1}",
            "solvable structures with d(phi3) = sign * phi^{1 ~1}",
        ),
        FamilyId::Siii2 => (
            "none",
            "none",
            "solvable structures with d(phi3) = phi^{1 ~2} + phi^{2 ~1}",
        ),
        FamilyId::Siii3 => (
            "none",
            "none",
            "solvable structures with d(phi3) = phi^{1 ~1} + phi^{2 ~2}",
        ),
        FamilyId::Siii4 => (
            "none",
            "sign in {+1, -1}",
            "solvable structures with d(phi3) = sign * (phi^{1 ~1} - phi^{2 ~2})",
        ),
        FamilyId::Siv1 => (
            "none",
            "none",
            "holomorphically parallelizable solvable structure (Nakamura algebra)",
        ),
        FamilyId::Siv2 => (
            "none",
            "x in {0, 1} (required)",
            "solvable deformations with a two-valued discrete parameter",
        ),
        FamilyId::Siv3 => (
            "A complex with |A| != 1",
            "none",
            "splitting-type solvable structures off the unit circle",
        ),
        FamilyId::Sv => (
            "none",
            "none",
            "rigid solvable structure with no continuous parameters",
        ),
        FamilyId::EfvA => (
            "none (metric: positive diagonal a1..a4)",
            "none",
            "eight-dimensional nilpotent example whose curvature sign depends on the metric",
        ),
        FamilyId::EfvB => (
            "none (metric: positive diagonal a1..a4)",
            "none",
            "eight-dimensional nilpotent example, pluripositive and never pluriclosed",
        ),
        FamilyId::NakIv2 => (
            "none (metric: positive diagonal a1..a4)",
            "none",
            "eight-dimensional holomorphically parallelizable solvable example",
        ),
        FamilyId::NakIv5 => (
            "alpha real, alpha not in {0, -1} (metric: positive diagonal a1..a4)",
            "none",
            "eight-dimensional holomorphically parallelizable family with one real parameter",
        ),
    };
    FamilyInfo { id, n: id.n(), parameters, discrete, summary }
}

fn params(list: Vec<Parameter>) -> Result<Arc<ParamSet>, CatalogError> {
    Ok(ParamSet::new(list)?)
}

fn forms(
    n: u8,
    ps: &Arc<ParamSet>,
    eqs: &[&[(&str, &str)]],
) -> Result<Vec<Form>, CatalogError> {
    eqs.iter().map(|terms| Ok(Form::parse_terms(n, ps, terms)?)).collect()
}

fn build(
    label: &str,
    n: u8,
    ps: Arc<ParamSet>,
    eqs: &[&[(&str, &str)]],
    rules: Vec<RewriteRule>,
) -> Result<StructureSpec, CatalogError> {
    let d_phi = forms(n, &ps, eqs)?;
    Ok(StructureSpec::new(label, n, ps, d_phi, rules)?)
}

/// Builds the structure equations of a family at the given discrete
/// choices. Continuous parameters stay symbolic; fix them afterwards with
/// [`StructureSpec::substitute`] or through an assignment.
pub fn instantiate_family(id: FamilyId, choices: &Choices) -> Result<StructureSpec, CatalogError> {
    match id {
        FamilyId::Siv2 => {}
        _ => reject_x(id, choices)?,
    }
    match id {
        FamilyId::Niii | FamilyId::Siii1 | FamilyId::Siii4 => {}
        _ => reject_sign(id, choices)?,
    }
    match id {
        FamilyId::Np => {
            let ps = params(vec![Parameter::real("rho").with(Constraint::InZeroOne)])?;
            build("Np", 3, ps, &[&[], &[], &[("12", "rho")]], vec![])
        }
        FamilyId::Ni => {
            let ps = params(vec![
                Parameter::real("rho").with(Constraint::InZeroOne),
                Parameter::real("lambda").with(Constraint::NonNeg),
                Parameter::complex("D"),
            ])?;
            build(
                "Ni",
                3,
                ps,
                &[&[], &[], &[("12", "rho"), ("1~1", "1"), ("1~2", "lambda"), ("2~2", "D")]],
                vec![],
            )
        }
        FamilyId::Nii => {
            let ps = params(vec![
                Parameter::real("rho").with(Constraint::InZeroOne),
                Parameter::complex("B"),
                Parameter::real("c").with(Constraint::NonNeg),
            ])?;
            build(
                "Nii",
                3,
                ps,
                &[&[], &[("1~1", "1")], &[("12", "rho"), ("1~2", "B"), ("2~1", "c")]],
                vec![],
            )
        }
        FamilyId::Niii => {
            let sign = resolve_sign(id, choices)?;
            let ps = params(vec![Parameter::real("rho").with(Constraint::InZeroOne)])?;
            let (label, pm, mp) = if sign == 1 { ("Niii(+)", "i", "-i") } else { ("Niii(-)", "-i", "i") };
            build(
                label,
                3,
                ps,
                &[
                    &[],
                    &[("13", "1"), ("1~3", "1")],
                    &[("1~1", "i*rho"), ("1~2", pm), ("2~1", mp)],
                ],
                vec![],
            )
        }
        FamilyId::Si => {
            let ps = params(vec![Parameter::complex("A").with(Constraint::UnitModulus)])?;
            let lhs = parse_scalar(&ps, "A*conj(A)")?;
            let rhs = crate::scalar::Scalar::one(&ps);
            let rule = RewriteRule::new(&lhs, rhs)?;
            build(
                "Si",
                3,
                ps,
                &[&[("13", "A"), ("1~3", "A")], &[("23", "-A"), ("2~3", "-A")], &[]],
                vec![rule],
            )
        }
        FamilyId::Sii => {
            let ps = params(vec![
                Parameter::real("x").with(Constraint::Positive),
                Parameter::real("y").with(Constraint::Positive),
            ])?;
            let lhs = parse_scalar(&ps, "x*y")?;
            let rhs = parse_scalar(&ps, "1/4")?;
            let rule = RewriteRule::new(&lhs, rhs)?;
            build(
                "Sii",
                3,
                ps,
                &[
                    &[],
                    &[("13", "-1/2"), ("1~3", "-1/2 - i*x"), ("3~1", "i*x")],
                    &[("12", "1/2"), ("1~2", "1/2 - i*y"), ("2~1", "i*y")],
                ],
                vec![rule],
            )
        }
        FamilyId::Siii1 => {
            let sign = resolve_sign(id, choices)?;
            let ps = params(vec![])?;
            let (label, s) = if sign == 1 { ("Siii1(+)", "1") } else { ("Siii1(-)", "-1") };
            build(
                label,
                3,
                ps,
                &[
                    &[("13", "i"), ("1~3", "i")],
                    &[("23", "-i"), ("2~3", "-i")],
                    &[("1~1", s)],
                ],
                vec![],
            )
        }
        FamilyId::Siii2 => {
            let ps = params(vec![])?;
            build(
                "Siii2",
                3,
                ps,
                &[
                    &[("13", "1"), ("1~3", "1")],
                    &[("23", "-1"), ("2~3", "-1")],
                    &[("1~2", "1"), ("2~1", "1")],
                ],
                vec![],
            )
        }
        FamilyId::Siii3 => {
            let ps = params(vec![])?;
            build(
                "Siii3",
                3,
                ps,
                &[
                    &[("13", "i"), ("1~3", "i")],
                    &[("23", "-i"), ("2~3", "-i")],
                    &[("1~1", "1"), ("2~2", "1")],
                ],
                vec![],
            )
        }
        FamilyId::Siii4 => {
            let sign = resolve_sign(id, choices)?;
            let ps = params(vec![])?;
            let (label, a, b) = if sign == 1 {
                ("Siii4(+)", "1", "-1")
            } else {
                ("Siii4(-)", "-1", "1")
            };
            build(
                label,
                3,
                ps,
                &[
                    &[("13", "i"), ("1~3", "i")],
                    &[("23", "-i"), ("2~3", "-i")],
                    &[("1~1", a), ("2~2", b)],
                ],
                vec![],
            )
        }
        FamilyId::Siv1 => {
            let ps = params(vec![])?;
            build("Siv1", 3, ps, &[&[("13", "-1")], &[("23", "1")], &[]], vec![])
        }
        FamilyId::Siv2 => {
            let x = match choices.x {
                Some(0) => 0,
                Some(1) => 1,
                Some(other) => {
                    return Err(CatalogError::InvalidChoice {
                        name: "x",
                        detail: format!("{other} is not 0 or 1 (family Siv2)"),
                    })
                }
                None => return Err(CatalogError::MissingChoice { family: id, name: "x" }),
            };
            let ps = params(vec![])?;
            let d2: &[(&str, &str)] = if x == 0 {
                &[("23", "-2*i")]
            } else {
                &[("23", "-2*i"), ("3~3", "1")]
            };
            let label = if x == 0 { "Siv2(x=0)" } else { "Siv2(x=1)" };
            build(label, 3, ps, &[&[("13", "2*i"), ("3~3", "1")], d2, &[]], vec![])
        }
        FamilyId::Siv3 => {
            let ps = params(vec![Parameter::complex("A")])?;
            build(
                "Siv3",
                3,
                ps,
                &[
                    &[("13", "A"), ("1~3", "-1")],
                    &[("23", "-A"), ("2~3", "1")],
                    &[],
                ],
                vec![],
            )
        }
        FamilyId::Sv => {
            let ps = params(vec![])?;
            build(
                "Sv",
                3,
                ps,
                &[
                    &[("3~3", "-1")],
                    &[("12", "1/2*i"), ("1~3", "1/2"), ("2~1", "-1/2*i")],
                    &[("13", "-1/2*i"), ("3~1", "1/2*i")],
                ],
                vec![],
            )
        }
        FamilyId::EfvA => {
            let ps = params(vec![])?;
            build(
                "EFV_A",
                4,
                ps,
                &[&[], &[], &[("1~1", "1"), ("2~2", "1/2")], &[("1~2", "-1")]],
                vec![],
            )
        }
        FamilyId::EfvB => {
            let ps = params(vec![])?;
            build("EFV_B", 4, ps, &[&[], &[], &[("12", "1")], &[("2~1", "1")]], vec![])
        }
        FamilyId::NakIv2 => {
            let ps = params(vec![])?;
            build("NakIV2", 4, ps, &[&[], &[], &[], &[("23", "-1")]], vec![])
        }
        FamilyId::NakIv5 => {
            let ps = params(vec![Parameter::real("alpha")])?;
            build(
                "NakIV5",
                4,
                ps,
                &[&[], &[("12", "1")], &[("13", "alpha")], &[("14", "-1 - alpha")]],
                vec![],
            )
        }
    }
}

/// The metric the expected-behaviour ledger uses for a family: the full
/// generic hermitian metric in complex dimension three, the positive
/// diagonal metric in dimension four.
pub fn default_metric(s: &StructureSpec) -> Result<MetricSpec, HermitianError> {
    if s.n() == 3 {
        MetricSpec::generic(s)
    } else {
        MetricSpec::diagonal(s)
    }
}

/// Draws structure-parameter values inside the family's admissible region.
/// Families whose domain the generic constraint-guided sampler cannot hit
/// (reciprocal pairs, excluded points, half-plane normalisations) get a
/// purpose-built draw.
pub fn sample_structure(
    id: FamilyId,
    spec: &StructureSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(String, GaussianRational)>, HermitianError> {
    match id {
        FamilyId::Ni => {
            let mut pairs = sample::structure_values(spec, rng)?;
            for (name, v) in pairs.iter_mut() {
                if name == "D" && v.im().is_negative() {
                    *v = GaussianRational::new(v.re().clone(), -v.im().clone());
                }
            }
            Ok(pairs)
        }
        FamilyId::Nii => {
            for _ in 0..64 {
                let pairs = sample::structure_values(spec, rng)?;
                if !pairs.iter().all(|(_, v)| v.is_zero()) {
                    return Ok(pairs);
                }
            }
            Err(HermitianError::SamplingFailed {
                label: spec.label().into(),
                reason: "(rho, B, c) = (0, 0, 0) is excluded".into(),
            })
        }
        FamilyId::Sii => {
            let x = sample::positive_rational(rng);
            let y = BigRational::new(1.into(), 4.into()) / &x;
            Ok(vec![
                ("x".into(), GaussianRational::from_rational(x)),
                ("y".into(), GaussianRational::from_rational(y)),
            ])
        }
        FamilyId::Siv3 => {
            for _ in 0..64 {
                let a = sample::gaussian(rng);
                if a.norm_sqr() != BigRational::one() {
                    return Ok(vec![("A".into(), a)]);
                }
            }
            Err(HermitianError::SamplingFailed {
                label: spec.label().into(),
                reason: "|A| = 1 is excluded".into(),
            })
        }
        FamilyId::NakIv5 => {
            for _ in 0..64 {
                let v = sample::rational(rng);
                if !v.is_zero() && v != BigRational::from_integer((-1).into()) {
                    return Ok(vec![("alpha".into(), GaussianRational::from_rational(v))]);
                }
            }
            Err(HermitianError::SamplingFailed {
                label: spec.label().into(),
                reason: "alpha in {0, -1} is excluded".into(),
            })
        }
        _ => sample::structure_values(spec, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    fn every_variant() -> Vec<(FamilyId, Choices)> {
        let mut out = Vec::new();
        for id in FamilyId::ALL {
            match id {
                FamilyId::Siv2 => {
                    out.push((id, Choices::x(0)));
                    out.push((id, Choices::x(1)));
                }
                FamilyId::Niii | FamilyId::Siii1 | FamilyId::Siii4 => {
                    out.push((id, Choices::sign(1)));
                    out.push((id, Choices::sign(-1)));
                }
                _ => out.push((id, Choices::default())),
            }
        }
        out
    }

    #[test]
    fn every_family_passes_all_structure_checks() {
        for (id, choices) in every_variant() {
            let spec = instantiate_family(id, &choices)
                .unwrap_or_else(|e| panic!("{id}: {e}"));
            let report = spec.check_structure().unwrap();
            assert!(report.all_pass(), "{id}: {:?}", report.issues);
        }
    }

    #[test]
    fn ids_round_trip_through_strings_and_json() {
        for id in FamilyId::ALL {
            assert_eq!(FamilyId::from_str(id.as_str()).unwrap(), id);
            let j = serde_json::to_string(&id).unwrap();
            assert_eq!(j, format!("\"{}\"", id.as_str()));
            assert_eq!(serde_json::from_str::<FamilyId>(&j).unwrap(), id);
        }
        assert_eq!(FamilyId::from_str("efv_a").unwrap(), FamilyId::EfvA);
        assert!(FamilyId::from_str("Svi").is_err());
    }

    #[test]
    fn discrete_choices_are_validated() {
        assert!(matches!(
            instantiate_family(FamilyId::Siv2, &Choices::default()),
            Err(CatalogError::MissingChoice { .. })
        ));
        assert!(matches!(
            instantiate_family(FamilyId::Siv2, &Choices::x(2)),
            Err(CatalogError::InvalidChoice { .. })
        ));
        assert!(matches!(
            instantiate_family(FamilyId::Np, &Choices::sign(1)),
            Err(CatalogError::UnexpectedChoice { .. })
        ));
        assert!(matches!(
            instantiate_family(FamilyId::Siii1, &Choices::sign(2)),
            Err(CatalogError::InvalidChoice { .. })
        ));
        assert!(matches!(
            instantiate_family(FamilyId::Si, &Choices::x(1)),
            Err(CatalogError::UnexpectedChoice { .. })
        ));
    }

    #[test]
    fn samplers_respect_constraints_and_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (id, choices) in every_variant() {
            let spec = instantiate_family(id, &choices).unwrap();
            for _ in 0..5 {
                let pairs = sample_structure(id, &spec, &mut rng)
                    .unwrap_or_else(|e| panic!("{id}: {e}"));
                let asg = spec.params().assignment(&pairs).unwrap();
                assert!(asg.warnings.is_empty(), "{id}: {:?}", asg.warnings);
                for rule in spec.rules() {
                    assert!(rule.holds_at(&asg).unwrap(), "{id}: relation violated");
                }
                match id {
                    FamilyId::Ni => {
                        let d = pairs.iter().find(|(n, _)| n == "D").unwrap();
                        assert!(!d.1.im().is_negative());
                    }
                    FamilyId::Nii => {
                        assert!(!pairs.iter().all(|(_, v)| v.is_zero()));
                    }
                    FamilyId::Siv3 => {
                        let a = pairs.iter().find(|(n, _)| n == "A").unwrap();
                        assert_ne!(a.1.norm_sqr(), BigRational::one());
                    }
                    FamilyId::NakIv5 => {
                        let al = pairs.iter().find(|(n, _)| n == "alpha").unwrap();
                        assert!(!al.1.is_zero());
                        assert_ne!(al.1.re(), &BigRational::from_integer((-1).into()));
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn family_info_matches_dimensions() {
        for id in FamilyId::ALL {
            let info = family_info(id);
            assert_eq!(info.id, id);
            assert_eq!(info.n, id.n());
            assert!(!info.summary.is_empty());
        }
    }
}
