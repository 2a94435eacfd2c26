//! Structure equations of a Lie algebra with complex structure, and the
//! differential operators they induce on invariant forms.
//!
//! A [`StructureSpec`] records `d` of each (1,0)-coframe generator `phi^j`.
//! Integrability of the complex structure is the absence of `(0,2)`
//! components, and `d` of a conjugate generator is the conjugate form. The
//! differential extends to all invariant forms by the graded Leibniz rule;
//! coefficients are invariant, so `d` never differentiates them.

use crate::exterior::{indices, BasisMonomial, Form, FormError, IndexSet};
use crate::scalar::{
    Assignment, GaussianRational, ParamSet, Parameter, PartialAssignment, RewriteRule, Scalar,
    ScalarError,
};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("expected {expected} structure equations, found {found}")]
    WrongEquationCount { expected: u8, found: usize },
    #[error("d(phi^{0}) must be a 2-form")]
    WrongDegree(u32),
    #[error("structure equations must use the structure parameter set")]
    ForeignParams,
    #[error("form does not extend the structure parameter set: {0}")]
    IncompatibleForm(String),
    #[error("structure '{label}' fails validation: {issues:?}")]
    Invalid { label: String, issues: Vec<String> },
    #[error("assignment breaks the rewrite relation {0}")]
    RelationViolated(String),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Outcome of the structural checks. Integrability and the Jacobi identity
/// make the data a Lie algebra with integrable complex structure;
/// unimodularity is reported alongside because it gates lattice quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub label: String,
    pub n: u8,
    pub integrable: bool,
    pub jacobi: bool,
    pub unimodular: bool,
    pub issues: Vec<String>,
}

impl StructureReport {
    pub fn is_valid(&self) -> bool {
        self.integrable && self.jacobi
    }

    pub fn all_pass(&self) -> bool {
        self.is_valid() && self.unimodular
    }
}

#[derive(Clone, Debug)]
pub struct StructureSpec {
    n: u8,
    label: String,
    params: Arc<ParamSet>,
    /// `d_phi[j-1]` is `d(phi^j)`.
    d_phi: Vec<Form>,
    rules: Vec<RewriteRule>,
}

impl StructureSpec {
    /// Builds and validates: every equation is a 2-form without `(0,2)`
    /// part and `d ∘ d` vanishes on the generators (modulo the rules).
    pub fn new(
        label: &str,
        n: u8,
        params: Arc<ParamSet>,
        d_phi: Vec<Form>,
        rules: Vec<RewriteRule>,
    ) -> Result<Self, StructureError> {
        let spec = Self::new_unchecked(label, n, params, d_phi, rules)?;
        let report = spec.check_structure()?;
        if !report.is_valid() {
            return Err(StructureError::Invalid { label: label.into(), issues: report.issues });
        }
        Ok(spec)
    }

    /// Shape checks only; used to inspect deliberately broken input.
    pub fn new_unchecked(
        label: &str,
        n: u8,
        params: Arc<ParamSet>,
        d_phi: Vec<Form>,
        rules: Vec<RewriteRule>,
    ) -> Result<Self, StructureError> {
        Form::check_dimension(n)?;
        if d_phi.len() != n as usize {
            return Err(StructureError::WrongEquationCount { expected: n, found: d_phi.len() });
        }
        let mut reduced = Vec::with_capacity(d_phi.len());
        for (k, f) in d_phi.into_iter().enumerate() {
            if f.n() != n {
                return Err(StructureError::Form(FormError::DimensionMismatch));
            }
            if !crate::scalar::ParamSet::same_content(f.params(), &params) {
                return Err(StructureError::ForeignParams);
            }
            if f.pure_degree("structure equation")? .is_some_and(|d| d != 2) {
                return Err(StructureError::WrongDegree(k as u32 + 1));
            }
            reduced.push(f.apply_rules(&rules)?);
        }
        Ok(StructureSpec { n, label: label.into(), params, d_phi: reduced, rules })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn d_of_generator(&self, j: u32) -> &Form {
        &self.d_phi[(j - 1) as usize]
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    /// The structure equations and rules re-expressed over `target`, which
    /// must declare every structure parameter.
    fn lifted(&self, target: &Arc<ParamSet>) -> Result<(Vec<Form>, Vec<RewriteRule>), StructureError> {
        if crate::scalar::ParamSet::same_content(&self.params, target) {
            return Ok((self.d_phi.clone(), self.rules.clone()));
        }
        let d_phi = self
            .d_phi
            .iter()
            .map(|f| f.lift(target))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| StructureError::IncompatibleForm(e.to_string()))?;
        let rules = self
            .rules
            .iter()
            .map(|r| r.lift(target))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| StructureError::IncompatibleForm(e.to_string()))?;
        Ok((d_phi, rules))
    }

    /// Applies the structure rewrite rules to every coefficient.
    pub fn reduce(&self, a: &Form) -> Result<Form, StructureError> {
        let (_, rules) = self.lifted(a.params())?;
        Ok(a.apply_rules(&rules)?)
    }

    /// The Chevalley-Eilenberg differential, extended from the generators by
    /// the graded Leibniz rule. Accepts forms over any extension of the
    /// structure parameters and forms of mixed bidegree.
    pub fn differential(&self, a: &Form) -> Result<Form, StructureError> {
        if a.n() != self.n {
            return Err(StructureError::Form(FormError::DimensionMismatch));
        }
        let target = a.params().clone();
        let (d_phi, rules) = self.lifted(&target)?;
        let d_phi_bar: Vec<Form> = d_phi.iter().map(|f| f.conjugate()).collect();
        let one = Scalar::one(&target);
        let mono_form = |m: BasisMonomial| Form::monomial(self.n, &target, m, one.clone());
        let mut acc = Form::zero(self.n, &target);
        for (mono, coeff) in a.terms() {
            let mut pos: u32 = 0;
            let mut contributions: Vec<(u32, Form, BasisMonomial, BasisMonomial)> = Vec::new();
            for j in indices(mono.holo) {
                let below = mono.holo & ((1 << (j - 1)) - 1);
                let above = mono.holo & !((1u32 << j) - 1);
                contributions.push((
                    pos,
                    d_phi[(j - 1) as usize].clone(),
                    BasisMonomial { holo: below, anti: 0 },
                    BasisMonomial { holo: above, anti: mono.anti },
                ));
                pos += 1;
            }
            for j in indices(mono.anti) {
                let below = mono.anti & ((1 << (j - 1)) - 1);
                let above = mono.anti & !((1u32 << j) - 1);
                contributions.push((
                    pos,
                    d_phi_bar[(j - 1) as usize].clone(),
                    BasisMonomial { holo: mono.holo, anti: below },
                    BasisMonomial { holo: 0, anti: above },
                ));
                pos += 1;
            }
            for (k, dgen, prefix, suffix) in contributions {
                let mut piece = mono_form(prefix)?.wedge(&dgen)?.wedge(&mono_form(suffix)?)?;
                piece = piece.scale(coeff)?;
                if k % 2 == 1 {
                    piece = piece.neg();
                }
                acc = acc.add(&piece)?;
            }
        }
        Ok(acc.apply_rules(&rules)?)
    }

    /// Splits `d(a)` into its `(p+1,q)` and `(p,q+1)` parts; `a` must have
    /// pure bidegree.
    pub fn del_dbar_split(&self, a: &Form) -> Result<(Form, Form), StructureError> {
        let bid = a.pure_bidegree("del_dbar_split")?;
        let d = self.differential(a)?;
        match bid {
            None => Ok((d.clone(), d)),
            Some((p, q)) => Ok((d.bidegree_component(p + 1, q), d.bidegree_component(p, q + 1))),
        }
    }

    pub fn del(&self, a: &Form) -> Result<Form, StructureError> {
        Ok(self.del_dbar_split(a)?.0)
    }

    pub fn dbar(&self, a: &Form) -> Result<Form, StructureError> {
        Ok(self.del_dbar_split(a)?.1)
    }

    /// `d^c = (1/2i)(del - dbar)` on forms of pure bidegree.
    pub fn dc(&self, a: &Form) -> Result<Form, StructureError> {
        let (del, dbar) = self.del_dbar_split(a)?;
        Ok(del.sub(&dbar)?.scale_constant(&GaussianRational::i_ratio(-1, 2)))
    }

    /// `dd^c(a) = i · del(dbar(a))`; on invariant forms this agrees with
    /// `d(d^c a)`.
    pub fn ddc(&self, a: &Form) -> Result<Form, StructureError> {
        let dbar = self.dbar(a)?;
        let deldbar = self.del(&dbar)?;
        Ok(deldbar.scale_constant(&GaussianRational::i()))
    }

    /// Runs the three structural checks, recording each violation.
    pub fn check_structure(&self) -> Result<StructureReport, StructureError> {
        let mut issues = Vec::new();
        let mut integrable = true;
        let mut jacobi = true;
        let mut unimodular = true;
        for (k, f) in self.d_phi.iter().enumerate() {
            let bad = f.bidegree_component(0, 2);
            if !bad.is_zero() {
                integrable = false;
                issues.push(format!("d(phi^{}) has a (0,2) part: {}", k + 1, bad.render_text()));
            }
        }
        for (k, f) in self.d_phi.iter().enumerate() {
            let dd = self.differential(f)?;
            if !dd.is_zero() {
                jacobi = false;
                issues.push(format!("d(d(phi^{})) = {}", k + 1, dd.render_text()));
            }
        }
        let full: IndexSet = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        let top = BasisMonomial { holo: full, anti: full };
        for j in 1..=self.n as u32 {
            for bar in [false, true] {
                let mono = if bar {
                    BasisMonomial { holo: full, anti: full & !(1 << (j - 1)) }
                } else {
                    BasisMonomial { holo: full & !(1 << (j - 1)), anti: full }
                };
                let f = Form::monomial(self.n, &self.params, mono, Scalar::one(&self.params))?;
                let d = self.differential(&f)?;
                if !d.coeff(&top).is_zero() {
                    unimodular = false;
                    issues.push(format!(
                        "d(phi[{}]) has a top-degree part",
                        mono.compact()
                    ));
                }
            }
        }
        Ok(StructureReport {
            label: self.label.clone(),
            n: self.n,
            integrable,
            jacobi,
            unimodular,
            issues,
        })
    }

    /// Substitutes structure parameters (e.g. a discrete choice) and returns
    /// the spec over the reduced parameter set. Rewrite relations touched by
    /// the substitution must be satisfied by it and are dropped.
    pub fn substitute(
        &self,
        pairs: &[(String, GaussianRational)],
    ) -> Result<StructureSpec, StructureError> {
        let sub = self.params.partial_assignment(pairs)?;
        let dropped = sub.assigned_names();
        let dropped_refs: Vec<&str> = dropped.iter().map(|s| s.as_str()).collect();
        let target = self.params.without(&dropped_refs)?;
        let d_phi = self
            .d_phi
            .iter()
            .map(|f| f.substitute_into(&sub, &target))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rules = Vec::new();
        for r in &self.rules {
            match r.after_substitution(&sub, &target)? {
                RuleAfterSubstitution::Unchanged(rule) => rules.push(rule),
                RuleAfterSubstitution::Discharged => {}
                RuleAfterSubstitution::Violated(desc) => {
                    return Err(StructureError::RelationViolated(desc))
                }
            }
        }
        StructureSpec::new_unchecked(&self.label, self.n, target, d_phi, rules)
    }

    /// Extends the parameter set (metric parameters join the structure
    /// parameters); the structure equations are unchanged.
    pub fn extended_params(
        &self,
        more: Vec<Parameter>,
    ) -> Result<Arc<ParamSet>, StructureError> {
        Ok(self.params.extend(more)?)
    }
}

pub enum RuleAfterSubstitution {
    Unchanged(RewriteRule),
    Discharged,
    Violated(String),
}

impl RewriteRule {
    /// Re-expresses the rule over a parameter superset.
    pub fn lift(&self, target: &Arc<ParamSet>) -> Result<RewriteRule, ScalarError> {
        let lhs_scalar = self.lhs_as_scalar().lift(target)?;
        RewriteRule::new(&lhs_scalar, self.rhs().lift(target)?)
    }

    fn lhs_as_scalar(&self) -> Scalar {
        let params = self.rhs().params();
        let mut acc = Scalar::one(params);
        for (k, &e) in self.lhs().0.iter().enumerate() {
            for _ in 0..e {
                let name = params.indets()[k].display.clone();
                acc = acc
                    .try_mul(&Scalar::param(params, &name).expect("indet exists"))
                    .expect("same set");
            }
        }
        acc
    }

    /// Whether the relation `lhs = rhs` holds at a total assignment over the
    /// rule's parameters or a superset of them.
    pub fn holds_at(&self, asg: &Assignment) -> Result<bool, ScalarError> {
        let target = asg.params();
        let lhs = self.lhs_as_scalar().lift(target)?.instantiate(asg)?;
        let rhs = self.rhs().lift(target)?.instantiate(asg)?;
        Ok(lhs == rhs)
    }

    /// Outcome of substituting parameters into the rule: untouched rules
    /// survive, fully evaluated relations must hold and disappear.
    pub fn after_substitution(
        &self,
        sub: &PartialAssignment,
        target: &Arc<ParamSet>,
    ) -> Result<RuleAfterSubstitution, StructureError> {
        let mentions_assigned = |m: &crate::scalar::Monomial| {
            m.0.iter().enumerate().any(|(k, &e)| e > 0 && sub.is_assigned(k))
        };
        let touched = mentions_assigned(self.lhs())
            || self.rhs().terms().any(|(m, _)| mentions_assigned(m));
        if !touched {
            return Ok(RuleAfterSubstitution::Unchanged(self.lift(target)?));
        }
        let lhs = self.lhs_as_scalar().substitute_into(sub, target)?;
        let rhs = self.rhs().substitute_into(sub, target)?;
        match (lhs.as_constant(), rhs.as_constant()) {
            (Some(l), Some(r)) if l == r => Ok(RuleAfterSubstitution::Discharged),
            _ => Ok(RuleAfterSubstitution::Violated(self.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn iwasawa() -> StructureSpec {
        let p = ParamSet::empty();
        let zero = Form::zero(3, &p);
        let d3 = Form::parse_terms(3, &p, &[("12", "1")]).unwrap();
        StructureSpec::new("iwasawa", 3, p, vec![zero.clone(), zero, d3], vec![]).unwrap()
    }

    #[test]
    fn leibniz_differential_on_a_product() {
        let s = iwasawa();
        let p = s.params().clone();
        let f = Form::parse_terms(3, &p, &[("3~3", "1")]).unwrap();
        let d = s.differential(&f).unwrap();
        // d(phi^3 ∧ conj(phi^3)) = phi^{12} ∧ conj(phi^3) - phi^3 ∧ conj(phi^{12})
        let expected = Form::parse_terms(3, &p, &[("12~3", "1"), ("3~1~2", "-1")]).unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn checks_pass_for_a_nilpotent_structure() {
        let r = iwasawa().check_structure().unwrap();
        assert!(r.integrable && r.jacobi && r.unimodular);
        assert!(r.issues.is_empty());
    }

    #[test]
    fn integrability_failure_is_reported() {
        let p = ParamSet::empty();
        let zero = Form::zero(2, &p);
        let d1 = Form::parse_terms(2, &p, &[("~1~2", "1")]).unwrap();
        let s = StructureSpec::new_unchecked("bad", 2, p, vec![d1, zero], vec![]).unwrap();
        let r = s.check_structure().unwrap();
        assert!(!r.integrable);
        assert!(StructureSpec::new("bad", 2, s.params().clone(), s.d_phi.clone(), vec![]).is_err());
    }

    #[test]
    fn jacobi_failure_is_reported() {
        let p = ParamSet::empty();
        let zero = Form::zero(3, &p);
        let d1 = Form::parse_terms(3, &p, &[("2~2", "1")]).unwrap();
        let d2 = Form::parse_terms(3, &p, &[("12", "1")]).unwrap();
        let s = StructureSpec::new_unchecked("bad", 3, p, vec![d1, d2, zero], vec![]).unwrap();
        let r = s.check_structure().unwrap();
        assert!(r.integrable && !r.jacobi);
    }

    #[test]
    fn non_unimodular_line_is_flagged() {
        let p = ParamSet::empty();
        let d1 = Form::parse_terms(1, &p, &[("1~1", "1")]).unwrap();
        let s = StructureSpec::new_unchecked("line", 1, p, vec![d1], vec![]).unwrap();
        let r = s.check_structure().unwrap();
        assert!(r.is_valid() && !r.unimodular);
    }

    #[test]
    fn ddc_agrees_with_d_of_dc() {
        let s = iwasawa();
        let p = s.params().clone();
        let omega = Form::parse_terms(
            3,
            &p,
            &[("1~1", "i"), ("2~2", "i"), ("3~3", "i"), ("1~2", "1/2"), ("2~1", "-1/2")],
        )
        .unwrap();
        assert!(omega.is_real());
        let via_split = s.ddc(&omega).unwrap();
        let via_dc = s.differential(&s.dc(&omega).unwrap()).unwrap();
        assert_eq!(via_split, via_dc);
        assert!(via_split.is_real());
    }

    #[test]
    fn substitution_discharges_satisfied_relations() {
        let params = ParamSet::new(vec![Parameter::complex("A")]).unwrap();
        let a = parse_scalar(&params, "A").unwrap();
        let rule =
            RewriteRule::new(&a.try_mul(&a.conjugate()).unwrap(), Scalar::one(&params)).unwrap();
        let zero = Form::zero(2, &params);
        let d1 = Form::parse_terms(2, &params, &[("12", "A")]).unwrap();
        let s = StructureSpec::new_unchecked("unit", 2, params, vec![d1, zero], vec![rule]).unwrap();
        let ok = s.substitute(&[("A".into(), crate::scalar::parse_gaussian("3/5+4/5i").unwrap())]);
        assert!(ok.is_ok());
        assert!(ok.unwrap().rules().is_empty());
        let bad = s.substitute(&[("A".into(), GaussianRational::from_int(2))]);
        assert!(matches!(bad, Err(StructureError::RelationViolated(_))));
    }
}
