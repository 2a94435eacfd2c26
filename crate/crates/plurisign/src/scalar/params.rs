//! Parameter declarations and assignments.
//!
//! A [`ParamSet`] fixes the list of formal indeterminates a polynomial may
//! mention. A real parameter contributes one indeterminate; a complex
//! parameter `p` contributes two, `p` and `conj(p)`, exchanged by the formal
//! conjugation.

use super::gauss::GaussianRational;
use super::ScalarError;
use num::{BigRational, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamKind {
    Real,
    Complex,
}

/// Declared admissibility constraints. They gate warnings during assignment
/// and document the intended range; evaluation itself never requires them.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Constraint {
    NonNeg,
    Positive,
    /// The parameter takes one of the two values 0 and 1.
    InZeroOne,
    /// Complex parameter of modulus one.
    UnitModulus,
    Interval { lo: Option<BigRational>, hi: Option<BigRational> },
}

impl Constraint {
    /// Whether `v` satisfies the constraint. For complex parameters only
    /// `UnitModulus` inspects the imaginary part.
    pub fn holds(&self, v: &GaussianRational) -> bool {
        match self {
            Constraint::NonNeg => v.is_real() && !v.re().is_negative(),
            Constraint::Positive => v.is_real() && v.re().is_positive(),
            Constraint::InZeroOne => {
                v.is_real() && (v.re().is_zero() || v.re() == &BigRational::from_integer(1.into()))
            }
            Constraint::UnitModulus => v.norm_sqr() == BigRational::from_integer(1.into()),
            Constraint::Interval { lo, hi } => {
                v.is_real()
                    && lo.as_ref().is_none_or(|b| v.re() >= b)
                    && hi.as_ref().is_none_or(|b| v.re() <= b)
            }
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::NonNeg => write!(f, ">= 0"),
            Constraint::Positive => write!(f, "> 0"),
            Constraint::InZeroOne => write!(f, "in {{0, 1}}"),
            Constraint::UnitModulus => write!(f, "|.| = 1"),
            Constraint::Interval { lo, hi } => {
                let side = |b: &Option<BigRational>| {
                    b.as_ref().map(|q| q.to_string()).unwrap_or_else(|| "..".into())
                };
                write!(f, "in [{}, {}]", side(lo), side(hi))
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Parameter {
    pub name: String,
    pub kind: ParamKind,
    pub constraints: Vec<Constraint>,
}

impl Parameter {
    pub fn real(name: &str) -> Self {
        Parameter { name: name.into(), kind: ParamKind::Real, constraints: vec![] }
    }

    pub fn complex(name: &str) -> Self {
        Parameter { name: name.into(), kind: ParamKind::Complex, constraints: vec![] }
    }

    pub fn with(mut self, c: Constraint) -> Self {
        self.constraints.push(c);
        self
    }
}

/// One formal indeterminate of a [`ParamSet`].
#[derive(Clone, Debug)]
pub struct Indet {
    /// Rendered name: the parameter name, or `conj(name)`.
    pub display: String,
    /// Index of the owning parameter.
    pub param: usize,
    /// Index of the conjugate indeterminate (itself for real parameters).
    pub conj: usize,
}

/// An immutable, ordered set of parameters. Scalars hold an `Arc<ParamSet>`
/// and all arithmetic requires operands over the same set.
#[derive(Debug)]
pub struct ParamSet {
    params: Vec<Parameter>,
    indets: Vec<Indet>,
    /// First indeterminate of each parameter.
    param_indet: Vec<usize>,
    by_display: BTreeMap<String, usize>,
}

impl ParamSet {
    pub fn new(params: Vec<Parameter>) -> Result<Arc<Self>, ScalarError> {
        let mut indets = Vec::new();
        let mut param_indet = Vec::new();
        let mut by_display = BTreeMap::new();
        for (pi, p) in params.iter().enumerate() {
            if p.name.is_empty()
                || p.name == "i"
                || p.name == "conj"
                || !p.name.chars().next().unwrap().is_ascii_alphabetic()
                || !p.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(ScalarError::BadParameterName(p.name.clone()));
            }
            let base = indets.len();
            param_indet.push(base);
            match p.kind {
                ParamKind::Real => {
                    indets.push(Indet { display: p.name.clone(), param: pi, conj: base });
                }
                ParamKind::Complex => {
                    indets.push(Indet { display: p.name.clone(), param: pi, conj: base + 1 });
                    indets.push(Indet {
                        display: format!("conj({})", p.name),
                        param: pi,
                        conj: base,
                    });
                }
            }
        }
        for (k, ind) in indets.iter().enumerate() {
            if by_display.insert(ind.display.clone(), k).is_some() {
                return Err(ScalarError::DuplicateParameter(params[ind.param].name.clone()));
            }
        }
        Ok(Arc::new(ParamSet { params, indets, param_indet, by_display }))
    }

    pub fn empty() -> Arc<Self> {
        Self::new(vec![]).expect("empty parameter set")
    }

    /// A new set with `more` appended after the existing parameters.
    pub fn extend(&self, more: Vec<Parameter>) -> Result<Arc<Self>, ScalarError> {
        let mut params = self.params.clone();
        for p in more {
            if params.iter().any(|q| q.name == p.name) {
                return Err(ScalarError::DuplicateParameter(p.name));
            }
            params.push(p);
        }
        Self::new(params)
    }

    /// A new set with the named parameters removed.
    pub fn without(&self, names: &[&str]) -> Result<Arc<Self>, ScalarError> {
        for n in names {
            if !self.params.iter().any(|p| &p.name == n) {
                return Err(ScalarError::UnknownParameter((*n).into()));
            }
        }
        let params =
            self.params.iter().filter(|p| !names.contains(&p.name.as_str())).cloned().collect();
        Self::new(params)
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn indets(&self) -> &[Indet] {
        &self.indets
    }

    pub fn num_indets(&self) -> usize {
        self.indets.len()
    }

    pub fn param(&self, name: &str) -> Option<(usize, &Parameter)> {
        self.params.iter().enumerate().find(|(_, p)| p.name == name)
    }

    /// Indeterminate index of a parameter (the unconjugated one for complex
    /// parameters) or of a `conj(name)` display form.
    pub fn indet_index(&self, display: &str) -> Option<usize> {
        self.by_display.get(display).copied()
    }

    pub fn indet_of_param(&self, pi: usize) -> usize {
        self.param_indet[pi]
    }

    /// Structural equality of the declared parameters.
    pub fn same_content(&self, other: &ParamSet) -> bool {
        self.params == other.params
    }
}

pub(crate) fn compatible(a: &Arc<ParamSet>, b: &Arc<ParamSet>) -> bool {
    Arc::ptr_eq(a, b) || a.same_content(b)
}

/// A total evaluation map: one Gaussian rational per indeterminate, with
/// conjugate indeterminates bound to conjugate values.
#[derive(Clone, Debug)]
pub struct Assignment {
    pub(crate) params: Arc<ParamSet>,
    pub(crate) values: Vec<GaussianRational>,
    /// Constraint violations observed while building; evaluation proceeds.
    pub warnings: Vec<String>,
}

impl Assignment {
    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn value_of(&self, name: &str) -> Option<&GaussianRational> {
        self.params.indet_index(name).map(|k| &self.values[k])
    }

    pub fn pairs(&self) -> Vec<(String, GaussianRational)> {
        self.params
            .params()
            .iter()
            .enumerate()
            .map(|(pi, p)| {
                (p.name.clone(), self.values[self.params.indet_of_param(pi)].clone())
            })
            .collect()
    }
}

/// An evaluation of a subset of the parameters; the rest stay symbolic.
#[derive(Clone, Debug)]
pub struct PartialAssignment {
    pub(crate) params: Arc<ParamSet>,
    /// Per indeterminate: `Some(value)` if substituted.
    pub(crate) values: Vec<Option<GaussianRational>>,
    pub warnings: Vec<String>,
}

impl PartialAssignment {
    pub fn assigned_names(&self) -> Vec<String> {
        self.params
            .params()
            .iter()
            .enumerate()
            .filter(|(pi, _)| self.values[self.params.indet_of_param(*pi)].is_some())
            .map(|(_, p)| p.name.clone())
            .collect()
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    /// Whether the indeterminate at `index` receives a value.
    pub fn is_assigned(&self, index: usize) -> bool {
        self.values.get(index).is_some_and(|v| v.is_some())
    }

    pub fn into_total(self) -> Result<Assignment, ScalarError> {
        let mut values = Vec::with_capacity(self.values.len());
        for (k, v) in self.values.into_iter().enumerate() {
            match v {
                Some(v) => values.push(v),
                None => {
                    return Err(ScalarError::MissingAssignment(
                        self.params.indets()[k].display.clone(),
                    ))
                }
            }
        }
        Ok(Assignment { params: self.params, values, warnings: self.warnings })
    }
}

fn bind(
    set: &Arc<ParamSet>,
    pairs: &[(String, GaussianRational)],
    values: &mut [Option<GaussianRational>],
    warnings: &mut Vec<String>,
) -> Result<(), ScalarError> {
    for (name, v) in pairs {
        let (pi, p) = set
            .param(name)
            .ok_or_else(|| ScalarError::UnknownParameter(name.clone()))?;
        let k = set.indet_of_param(pi);
        if values[k].is_some() {
            return Err(ScalarError::DuplicateAssignment(name.clone()));
        }
        if p.kind == ParamKind::Real && !v.is_real() {
            return Err(ScalarError::NonRealValue(name.clone()));
        }
        for c in &p.constraints {
            if !c.holds(v) {
                warnings.push(format!("{} = {} violates the declared constraint {}", name, v, c));
            }
        }
        values[k] = Some(v.clone());
        if p.kind == ParamKind::Complex {
            values[k + 1] = Some(v.conj());
        }
    }
    Ok(())
}

impl ParamSet {
    /// Builds a total assignment from `(parameter name, value)` pairs. Every
    /// parameter must be covered exactly once; constraint violations are
    /// collected as warnings rather than errors.
    pub fn assignment(
        self: &Arc<Self>,
        pairs: &[(String, GaussianRational)],
    ) -> Result<Assignment, ScalarError> {
        self.partial_assignment(pairs)?.into_total()
    }

    pub fn partial_assignment(
        self: &Arc<Self>,
        pairs: &[(String, GaussianRational)],
    ) -> Result<PartialAssignment, ScalarError> {
        let mut values = vec![None; self.num_indets()];
        let mut warnings = Vec::new();
        bind(self, pairs, &mut values, &mut warnings)?;
        Ok(PartialAssignment { params: self.clone(), values, warnings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(k: i64) -> GaussianRational {
        GaussianRational::from_int(k)
    }

    #[test]
    fn complex_parameter_owns_two_indets() {
        let set = ParamSet::new(vec![Parameter::real("t2"), Parameter::complex("u")]).unwrap();
        assert_eq!(set.num_indets(), 3);
        assert_eq!(set.indet_index("conj(u)"), Some(2));
        let u = &set.indets()[1];
        assert_eq!(set.indets()[u.conj].display, "conj(u)");
    }

    #[test]
    fn assignment_binds_conjugates_and_warns() {
        let set = ParamSet::new(vec![
            Parameter::real("t2").with(Constraint::Positive),
            Parameter::complex("u"),
        ])
        .unwrap();
        let asg = set
            .assignment(&[
                ("t2".into(), gr(-1)),
                ("u".into(), GaussianRational::new(gr(1).re().clone(), gr(2).re().clone())),
            ])
            .unwrap();
        assert_eq!(asg.warnings.len(), 1);
        assert_eq!(asg.values[2], asg.values[1].conj());
    }

    #[test]
    fn missing_and_unknown_names_error() {
        let set = ParamSet::new(vec![Parameter::real("x")]).unwrap();
        assert!(matches!(set.assignment(&[]), Err(ScalarError::MissingAssignment(_))));
        assert!(matches!(
            set.assignment(&[("y".into(), gr(0))]),
            Err(ScalarError::UnknownParameter(_))
        ));
    }

    #[test]
    fn real_parameter_rejects_complex_value() {
        let set = ParamSet::new(vec![Parameter::real("x")]).unwrap();
        assert!(matches!(
            set.assignment(&[("x".into(), GaussianRational::i())]),
            Err(ScalarError::NonRealValue(_))
        ));
    }
}
