//! Seeded random generation of admissible parameter values.
//!
//! All values are small exact rationals so that downstream arithmetic stays
//! fast. Unit-modulus values come from the rational parametrization of the
//! circle, so declared relations like `A conj(A) -> 1` hold exactly.

use super::HermitianError;
use crate::liecomplex::StructureSpec;
use crate::scalar::{Constraint, GaussianRational, ParamKind, Parameter};
use num::{BigRational, One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(num.into(), den.into())
}

pub fn positive_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(1..=6);
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(num.into(), den.into())
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> GaussianRational {
    GaussianRational::new(rational(rng), rational(rng))
}

/// A rational point on the unit circle: `((1-t^2) + 2t i) / (1+t^2)`.
pub fn unit_modulus(rng: &mut ChaCha8Rng) -> GaussianRational {
    let t = rational(rng);
    let t2 = &t * &t;
    let den = BigRational::one() + &t2;
    GaussianRational::new(
        (BigRational::one() - &t2) / &den,
        (BigRational::from_integer(2.into()) * &t) / &den,
    )
}

/// A value satisfying every declared constraint of the parameter.
pub fn constrained_value(p: &Parameter, rng: &mut ChaCha8Rng) -> GaussianRational {
    for c in &p.constraints {
        match c {
            Constraint::Positive => {
                return GaussianRational::from_rational(positive_rational(rng))
            }
            Constraint::NonNeg => {
                let v =
                    if rng.gen_range(0..8) == 0 { BigRational::zero() } else { positive_rational(rng) };
                return GaussianRational::from_rational(v);
            }
            Constraint::InZeroOne => {
                return GaussianRational::from_int(if rng.gen_bool(0.5) { 1 } else { 0 })
            }
            Constraint::UnitModulus => return unit_modulus(rng),
            Constraint::Interval { lo, hi } => {
                let lo = lo.clone().unwrap_or_else(|| BigRational::from_integer((-4).into()));
                let hi = hi.clone().unwrap_or_else(|| BigRational::from_integer(4.into()));
                let k: i64 = rng.gen_range(0..=6);
                let v = &lo + (&hi - &lo) * BigRational::new(k.into(), 6.into());
                return GaussianRational::from_rational(v);
            }
        }
    }
    match p.kind {
        ParamKind::Real => GaussianRational::from_rational(rational(rng)),
        ParamKind::Complex => gaussian(rng),
    }
}

/// A random hermitian positive definite matrix `G = L conj(L)^T` with `L`
/// lower triangular with positive rational diagonal.
pub fn positive_definite_gram(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<GaussianRational>> {
    let mut l = vec![vec![GaussianRational::zero(); n]; n];
    for (j, row) in l.iter_mut().enumerate() {
        for entry in row.iter_mut().take(j) {
            *entry = gaussian(rng);
        }
        row[j] = GaussianRational::from_rational(positive_rational(rng));
    }
    let mut g = vec![vec![GaussianRational::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = GaussianRational::zero();
            for b in 0..n {
                acc = &acc + &(&l[j][b] * &l[k][b].conj());
            }
            g[j][k] = acc;
        }
    }
    g
}

/// Values for every structure parameter, satisfying the declared constraints
/// and the structure's rewrite relations. Relations that random
/// constraint-guided draws cannot satisfy (after a bounded number of
/// retries) are reported as a sampling failure; those structures need a
/// purpose-built sampler.
pub fn structure_values(
    s: &StructureSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(String, GaussianRational)>, HermitianError> {
    if s.params().params().is_empty() {
        return Ok(Vec::new());
    }
    'attempt: for _ in 0..64 {
        let pairs: Vec<(String, GaussianRational)> = s
            .params()
            .params()
            .iter()
            .map(|p| (p.name.clone(), constrained_value(p, rng)))
            .collect();
        let asg = s.params().assignment(&pairs)?;
        for rule in s.rules() {
            if !rule.holds_at(&asg)? {
                continue 'attempt;
            }
        }
        return Ok(pairs);
    }
    Err(HermitianError::SamplingFailed {
        label: s.label().into(),
        reason: "no random draw satisfied the structure relations".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;

    #[test]
    fn unit_modulus_values_lie_on_the_circle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = unit_modulus(&mut rng);
            assert!(a.norm_sqr().is_one());
        }
    }

    #[test]
    fn gram_samples_are_positive_definite() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let g = positive_definite_gram(3, &mut rng);
            for j in 0..3 {
                for k in 0..3 {
                    assert_eq!(g[j][k], g[k][j].conj());
                }
            }
            let analysis = crate::hermitian::psd::analyze(&g).unwrap();
            assert_eq!(analysis.kind, crate::hermitian::psd::MatrixKind::PositiveDefinite);
        }
    }
}
