//! Sparse multivariate polynomials over the Gaussian rationals.

use super::gauss::GaussianRational;
use super::params::{compatible, Assignment, ParamSet, PartialAssignment};
use super::ScalarError;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Exponent vector over the indeterminates of a fixed [`ParamSet`], ordered
/// by graded lexicographic comparison (total degree first, then earlier
/// indeterminates weigh more).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn unit(len: usize) -> Self {
        Monomial(vec![0; len])
    }

    pub fn var(len: usize, k: usize) -> Self {
        let mut e = vec![0; len];
        e[k] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise quotient; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Componentwise minimum, the monomial gcd.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with Gaussian-rational coefficients. Zero coefficients are
/// never stored; the zero polynomial has an empty term map.
#[derive(Clone, Debug)]
pub struct Scalar {
    params: Arc<ParamSet>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        compatible(&self.params, &other.params) && self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl Scalar {
    pub fn zero(params: &Arc<ParamSet>) -> Self {
        Scalar { params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(params: &Arc<ParamSet>, c: GaussianRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(params.num_indets()), c);
        }
        Scalar { params: params.clone(), terms }
    }

    pub fn one(params: &Arc<ParamSet>) -> Self {
        Self::constant(params, GaussianRational::one())
    }

    pub fn int(params: &Arc<ParamSet>, k: i64) -> Self {
        Self::constant(params, GaussianRational::from_int(k))
    }

    /// The parameter `name` as a degree-one polynomial.
    pub fn param(params: &Arc<ParamSet>, name: &str) -> Result<Self, ScalarError> {
        let k = params
            .indet_index(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.into()))?;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(params.num_indets(), k), GaussianRational::one());
        Ok(Scalar { params: params.clone(), terms })
    }

    pub(crate) fn from_terms(
        params: Arc<ParamSet>,
        terms: BTreeMap<Monomial, GaussianRational>,
    ) -> Self {
        let terms = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Scalar { params, terms }
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_unit().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Greatest term in the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &Scalar) -> Result<(), ScalarError> {
        if compatible(&self.params, &other.params) {
            Ok(())
        } else {
            Err(ScalarError::MismatchedParams)
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(Scalar { params: self.params.clone(), terms })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_compatible(other)?;
        let mut terms: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let entry = terms.entry(m.clone()).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &c;
                if entry.is_zero() {
                    terms.remove(&m);
                }
            }
        }
        Ok(Scalar { params: self.params.clone(), terms })
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Scalar {
        if c.is_zero() {
            return Self::zero(&self.params);
        }
        Scalar {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Division by a nonzero constant.
    pub fn div_constant(&self, c: &GaussianRational) -> Result<Scalar, ScalarError> {
        let inv = c.inv().ok_or(ScalarError::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Self::one(&self.params);
        for _ in 0..k {
            acc = acc.try_mul(self).expect("same parameter set");
        }
        acc
    }

    /// The formal conjugate: coefficients are conjugated and the exponents of
    /// each complex parameter are exchanged with those of its conjugate.
    pub fn conjugate(&self) -> Scalar {
        let indets = self.params.indets();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; m.0.len()];
                for (k, &exp) in m.0.iter().enumerate() {
                    e[indets[k].conj] += exp;
                }
                (Monomial(e), c.conj())
            })
            .collect();
        Scalar { params: self.params.clone(), terms }
    }

    /// Exact evaluation under a total assignment.
    pub fn instantiate(&self, asg: &Assignment) -> Result<GaussianRational, ScalarError> {
        if !compatible(&self.params, &asg.params) {
            return Err(ScalarError::MismatchedParams);
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (k, &exp) in m.0.iter().enumerate() {
                if exp > 0 {
                    t = &t * &asg.values[k].pow(exp as u32);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes the assigned parameters and re-expresses the result over
    /// the parameter set with those parameters removed.
    pub fn substitute(&self, sub: &PartialAssignment) -> Result<Scalar, ScalarError> {
        if !compatible(&self.params, &sub.params) {
            return Err(ScalarError::MismatchedParams);
        }
        let dropped: Vec<String> = sub.assigned_names();
        let dropped_refs: Vec<&str> = dropped.iter().map(|s| s.as_str()).collect();
        let target = self.params.without(&dropped_refs)?;
        self.substitute_into(sub, &target)
    }

    /// As [`substitute`](Self::substitute) with an explicit target set, so
    /// several substitutions can share one set.
    pub fn substitute_into(
        &self,
        sub: &PartialAssignment,
        target: &Arc<ParamSet>,
    ) -> Result<Scalar, ScalarError> {
        if !compatible(&self.params, &sub.params) {
            return Err(ScalarError::MismatchedParams);
        }
        let src = self.params.indets();
        let map: Vec<Option<usize>> =
            src.iter().map(|ind| target.indet_index(&ind.display)).collect();
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e = vec![0u16; target.num_indets()];
            for (k, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match &sub.values[k] {
                    Some(v) => coeff = &coeff * &v.pow(exp as u32),
                    None => match map[k] {
                        Some(t) => e[t] += exp,
                        None => return Err(ScalarError::UnknownParameter(src[k].display.clone())),
                    },
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let key = Monomial(e);
            let entry = out.entry(key.clone()).or_insert_with(GaussianRational::zero);
            *entry = &*entry + &coeff;
            if entry.is_zero() {
                out.remove(&key);
            }
        }
        Ok(Scalar { params: target.clone(), terms: out })
    }

    /// Re-expresses the polynomial over a superset of its parameters,
    /// matching indeterminates by name.
    pub fn lift(&self, target: &Arc<ParamSet>) -> Result<Scalar, ScalarError> {
        if compatible(&self.params, target) {
            return Ok(Scalar { params: target.clone(), terms: self.terms.clone() });
        }
        let src = self.params.indets();
        let map: Vec<usize> = src
            .iter()
            .map(|ind| {
                target
                    .indet_index(&ind.display)
                    .ok_or_else(|| ScalarError::UnknownParameter(ind.display.clone()))
            })
            .collect::<Result<_, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; target.num_indets()];
                for (k, &exp) in m.0.iter().enumerate() {
                    e[map[k]] += exp;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(Scalar { params: target.clone(), terms })
    }

    /// Monomial gcd of all terms.
    pub fn content_monomial(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::unit(self.params.num_indets()),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::params::Parameter;

    fn set() -> Arc<ParamSet> {
        ParamSet::new(vec![
            Parameter::real("t2"),
            Parameter::real("lambda"),
            Parameter::complex("D"),
        ])
        .unwrap()
    }

    #[test]
    fn graded_lex_orders_by_degree_first() {
        let a = Monomial(vec![2, 0, 0, 0]);
        let b = Monomial(vec![1, 1, 0, 0]);
        let c = Monomial(vec![0, 0, 1, 0]);
        assert!(a > b);
        assert!(b > c);
        assert!(a > c);
    }

    #[test]
    fn conjugate_is_an_involution_and_swaps_complex_exponents() {
        let s = set();
        let d = Scalar::param(&s, "D").unwrap();
        let t = Scalar::param(&s, "t2").unwrap();
        let p = d.try_mul(&t).unwrap().scale(&GaussianRational::i());
        let q = p.conjugate();
        assert_eq!(q.conjugate(), p);
        let dbar = Scalar::param(&s, "conj(D)").unwrap();
        assert_eq!(q, dbar.try_mul(&t).unwrap().scale(&(-GaussianRational::i())));
    }

    #[test]
    fn mismatched_sets_are_rejected() {
        let s = set();
        let other = ParamSet::new(vec![Parameter::real("x")]).unwrap();
        let a = Scalar::one(&s);
        let b = Scalar::one(&other);
        assert!(matches!(a.try_add(&b), Err(ScalarError::MismatchedParams)));
    }

    #[test]
    fn instantiation_is_exact() {
        let s = set();
        let lam = Scalar::param(&s, "lambda").unwrap();
        let d = Scalar::param(&s, "D").unwrap();
        let p = lam.pow(2).try_sub(&d.try_add(&d.conjugate()).unwrap()).unwrap();
        let asg = s
            .assignment(&[
                ("t2".into(), GaussianRational::from_int(2)),
                ("lambda".into(), GaussianRational::from_int(1)),
                (
                    "D".into(),
                    GaussianRational::new(
                        GaussianRational::ratio(1, 2).re().clone(),
                        GaussianRational::from_int(5).re().clone(),
                    ),
                ),
            ])
            .unwrap();
        assert_eq!(p.instantiate(&asg).unwrap(), GaussianRational::from_int(0));
    }

    #[test]
    fn substitute_drops_parameters() {
        let s = set();
        let lam = Scalar::param(&s, "lambda").unwrap();
        let d = Scalar::param(&s, "D").unwrap();
        let p = lam.try_mul(&d).unwrap();
        let sub = s
            .partial_assignment(&[("lambda".into(), GaussianRational::from_int(3))])
            .unwrap();
        let q = p.substitute(&sub).unwrap();
        assert_eq!(q.params().params().len(), 2);
        let d2 = Scalar::param(q.params(), "D").unwrap();
        assert_eq!(q, d2.scale(&GaussianRational::from_int(3)));
    }
}
