//! Terminating rewrite rules on monomials.
//!
//! A rule replaces one monomial by a polynomial that is strictly smaller in
//! the graded-lex order. Because the order is compatible with multiplication,
//! every rewrite step strictly decreases the rewritten term, so repeated
//! application reaches a fixpoint.

use super::gauss::GaussianRational;
use super::poly::{Monomial, Scalar};
use super::ScalarError;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: Monomial,
    rhs: Scalar,
}

impl RewriteRule {
    /// `lhs` must be a single monomial with coefficient one and positive
    /// degree, and every monomial of `rhs` must be strictly smaller.
    pub fn new(lhs: &Scalar, rhs: Scalar) -> Result<Self, ScalarError> {
        if !super::params::compatible(lhs.params(), rhs.params()) {
            return Err(ScalarError::MismatchedParams);
        }
        let (m, c) = match (lhs.num_terms(), lhs.leading()) {
            (1, Some((m, c))) => (m.clone(), c.clone()),
            _ => return Err(ScalarError::BadRuleShape("left side must be a single monomial".into())),
        };
        if !c.is_one() {
            return Err(ScalarError::BadRuleShape(
                "left side must have coefficient one".into(),
            ));
        }
        if m.is_unit() {
            return Err(ScalarError::NonDecreasingRule);
        }
        if rhs.terms().any(|(rm, _)| rm >= &m) {
            return Err(ScalarError::NonDecreasingRule);
        }
        Ok(RewriteRule { lhs: m, rhs })
    }

    pub fn lhs(&self) -> &Monomial {
        &self.lhs
    }

    pub fn rhs(&self) -> &Scalar {
        &self.rhs
    }

    /// Renders as `lhs -> rhs` using the parameter set of the right side.
    pub fn describe(&self) -> String {
        let lhs = Scalar::from_terms(
            self.rhs.params().clone(),
            BTreeMap::from([(self.lhs.clone(), GaussianRational::one())]),
        );
        format!("{} -> {}", lhs.render_plain(), self.rhs.render_plain())
    }
}

/// Applies the rules until none matches any term. The result has no term
/// divisible by any rule's left side.
pub fn rewrite_fixpoint(s: &Scalar, rules: &[RewriteRule]) -> Result<Scalar, ScalarError> {
    for r in rules {
        if !super::params::compatible(s.params(), r.rhs.params()) {
            return Err(ScalarError::MismatchedParams);
        }
    }
    if rules.is_empty() {
        return Ok(s.clone());
    }
    let params = s.params().clone();
    let mut out: BTreeMap<Monomial, GaussianRational> = BTreeMap::new();
    let mut work: Vec<(Monomial, GaussianRational)> =
        s.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    while let Some((m, c)) = work.pop() {
        if c.is_zero() {
            continue;
        }
        match rules.iter().find(|r| r.lhs.divides(&m)) {
            Some(r) => {
                let q = m.div(&r.lhs);
                for (rm, rc) in r.rhs.terms() {
                    work.push((q.mul(rm), &c * rc));
                }
            }
            None => {
                let entry = out.entry(m.clone()).or_insert_with(GaussianRational::zero);
                *entry = &*entry + &c;
                if entry.is_zero() {
                    out.remove(&m);
                }
            }
        }
    }
    Ok(Scalar::from_terms(params, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::params::{ParamSet, Parameter};

    #[test]
    fn unit_modulus_rule_reaches_fixpoint() {
        let set = ParamSet::new(vec![Parameter::complex("A")]).unwrap();
        let a = Scalar::param(&set, "A").unwrap();
        let abar = Scalar::param(&set, "conj(A)").unwrap();
        let rule = RewriteRule::new(&a.try_mul(&abar).unwrap(), Scalar::one(&set)).unwrap();
        let p = a.pow(3).try_mul(&abar.pow(2)).unwrap();
        let q = rewrite_fixpoint(&p, &[rule.clone()]).unwrap();
        assert_eq!(q, a);
        assert_eq!(rewrite_fixpoint(&q, &[rule]).unwrap(), q);
    }

    #[test]
    fn idempotent_rule_collapses_powers() {
        let set = ParamSet::new(vec![Parameter::real("rho")]).unwrap();
        let rho = Scalar::param(&set, "rho").unwrap();
        let rule = RewriteRule::new(&rho.pow(2), rho.clone()).unwrap();
        let q = rewrite_fixpoint(&rho.pow(7), &[rule]).unwrap();
        assert_eq!(q, rho);
    }

    #[test]
    fn increasing_rules_are_rejected_at_construction() {
        let set = ParamSet::new(vec![Parameter::real("x"), Parameter::real("y")]).unwrap();
        let x = Scalar::param(&set, "x").unwrap();
        let y = Scalar::param(&set, "y").unwrap();
        assert!(matches!(
            RewriteRule::new(&x, x.try_mul(&y).unwrap()),
            Err(ScalarError::NonDecreasingRule)
        ));
        assert!(matches!(
            RewriteRule::new(&Scalar::one(&set), y),
            Err(ScalarError::NonDecreasingRule)
        ));
    }

    #[test]
    fn product_rule_for_reciprocal_pairs() {
        let set = ParamSet::new(vec![Parameter::real("x"), Parameter::real("y")]).unwrap();
        let x = Scalar::param(&set, "x").unwrap();
        let y = Scalar::param(&set, "y").unwrap();
        let quarter = Scalar::constant(&set, GaussianRational::ratio(1, 4));
        let rule = RewriteRule::new(&x.try_mul(&y).unwrap(), quarter).unwrap();
        let p = x.pow(2).try_mul(&y.pow(2)).unwrap().scale(&GaussianRational::from_int(4));
        let q = rewrite_fixpoint(&p, &[rule]).unwrap();
        assert_eq!(q, Scalar::constant(&set, GaussianRational::ratio(1, 4)));
    }
}
