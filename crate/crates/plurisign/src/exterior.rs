//! The bigraded exterior algebra on the dual of `C^n`.
//!
//! Basis monomials are `phi^I ∧ conj(phi)^J` for index subsets `I`, `J` of
//! `{1..n}`, stored as bitmasks. The canonical factor order puts all
//! holomorphic generators first, each group ascending, and every wedge sign
//! is the parity of the permutation that restores this layout.

use crate::scalar::{
    parse_scalar, Assignment, GaussianRational, ParamSet, PartialAssignment, RewriteRule, Scalar,
    ScalarError,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormError {
    #[error("forms live on spaces of different dimension")]
    DimensionMismatch,
    #[error("generator index {0} out of range 1..={1}")]
    IndexOutOfRange(u32, u8),
    #[error("dimension {0} out of the supported range 1..=32")]
    BadDimension(u8),
    #[error("monomial indices must be strictly ascending in '{0}'")]
    NotAscending(String),
    #[error("malformed monomial '{0}'")]
    BadMonomial(String),
    #[error("{0} requires a form of pure bidegree")]
    MixedDegree(&'static str),
    #[error("not a volume-degree form")]
    NotVolumeDegree,
    #[error("expected a real form")]
    NotReal,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Ascending index subset of `{1..n}` as a bitmask (index `j` is bit `j-1`).
pub type IndexSet = u32;

/// Ascending indices of a bitmask.
pub fn indices(mask: IndexSet) -> impl Iterator<Item = u32> {
    (0..32).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
}

/// Number of elements of `a` strictly greater than elements of `b`, counted
/// pairwise: the inversions of the concatenation `[a ascending, b ascending]`.
fn inversions(a: IndexSet, b: IndexSet) -> u32 {
    indices(b).map(|j| (a >> j).count_ones()).sum()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct BasisMonomial {
    pub holo: IndexSet,
    pub anti: IndexSet,
}

impl BasisMonomial {
    pub fn degree(&self) -> u32 {
        self.holo.count_ones() + self.anti.count_ones()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (self.holo.count_ones(), self.anti.count_ones())
    }

    /// Wedge of canonical monomials: `None` on a repeated generator,
    /// otherwise the sign restoring the canonical layout.
    pub fn wedge(&self, other: &BasisMonomial) -> Option<(i8, BasisMonomial)> {
        if self.holo & other.holo != 0 || self.anti & other.anti != 0 {
            return None;
        }
        let cross = other.holo.count_ones() * self.anti.count_ones();
        let inv = cross + inversions(self.holo, other.holo) + inversions(self.anti, other.anti);
        let sign = if inv % 2 == 0 { 1 } else { -1 };
        Some((sign, BasisMonomial { holo: self.holo | other.holo, anti: self.anti | other.anti }))
    }

    /// Conjugation swaps the two groups at the cost of `(-1)^{|I||J|}`.
    pub fn conjugate(&self) -> (i8, BasisMonomial) {
        let sign = if (self.holo.count_ones() * self.anti.count_ones()) % 2 == 0 { 1 } else { -1 };
        (sign, BasisMonomial { holo: self.anti, anti: self.holo })
    }

    /// Compact text form, e.g. `12~1~3` for `phi^{12} ∧ conj(phi)^{13}`.
    pub fn compact(&self) -> String {
        let mut s = String::new();
        for j in indices(self.holo) {
            s.push_str(&j.to_string());
        }
        for j in indices(self.anti) {
            s.push('~');
            s.push_str(&j.to_string());
        }
        s
    }

    /// Parses the compact form; indices are single digits, ascending.
    pub fn parse(text: &str, n: u8) -> Result<Self, FormError> {
        let mut holo: IndexSet = 0;
        let mut anti: IndexSet = 0;
        let mut in_anti = false;
        let mut last_holo = 0;
        let mut last_anti = 0;
        let mut chars = text.chars().peekable();
        while let Some(c) = chars.next() {
            let (digit, anti_part) = if c == '~' {
                in_anti = true;
                match chars.next() {
                    Some(d) if d.is_ascii_digit() => (d, true),
                    _ => return Err(FormError::BadMonomial(text.into())),
                }
            } else if c.is_ascii_digit() {
                if in_anti {
                    return Err(FormError::BadMonomial(text.into()));
                }
                (c, false)
            } else {
                return Err(FormError::BadMonomial(text.into()));
            };
            let j = digit.to_digit(10).unwrap();
            if j == 0 || j > n as u32 {
                return Err(FormError::IndexOutOfRange(j, n));
            }
            let (mask, last) = if anti_part { (&mut anti, &mut last_anti) } else { (&mut holo, &mut last_holo) };
            if j <= *last {
                return Err(FormError::NotAscending(text.into()));
            }
            *last = j;
            *mask |= 1 << (j - 1);
        }
        Ok(BasisMonomial { holo, anti })
    }

    fn render(&self) -> String {
        format!("phi[{}]", self.compact())
    }

    fn render_latex(&self) -> String {
        let mut sup = String::new();
        for j in indices(self.holo) {
            sup.push_str(&j.to_string());
        }
        for j in indices(self.anti) {
            sup.push_str(&format!("\\bar{{{j}}}"));
        }
        format!("\\varphi^{{{sup}}}")
    }
}

/// A differential form with polynomial coefficients. Terms of several total
/// degrees may coexist; such forms report themselves as mixed and are
/// rejected by operations that need a pure (bi)degree.
#[derive(Clone, Debug)]
pub struct Form {
    n: u8,
    params: Arc<ParamSet>,
    terms: BTreeMap<BasisMonomial, Scalar>,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.terms == other.terms
    }
}

impl Eq for Form {}

impl Form {
    pub fn zero(n: u8, params: &Arc<ParamSet>) -> Self {
        Form { n, params: params.clone(), terms: BTreeMap::new() }
    }

    pub fn check_dimension(n: u8) -> Result<(), FormError> {
        if (1..=32).contains(&n) {
            Ok(())
        } else {
            Err(FormError::BadDimension(n))
        }
    }

    pub fn monomial(
        n: u8,
        params: &Arc<ParamSet>,
        mono: BasisMonomial,
        coeff: Scalar,
    ) -> Result<Self, FormError> {
        Self::check_dimension(n)?;
        let full: IndexSet = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        if mono.holo & !full != 0 || mono.anti & !full != 0 {
            let j = indices(mono.holo | mono.anti).last().unwrap_or(0);
            return Err(FormError::IndexOutOfRange(j, n));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Ok(Form { n, params: params.clone(), terms })
    }

    /// `phi^j` (`bar == false`) or `conj(phi)^j`.
    pub fn generator(n: u8, params: &Arc<ParamSet>, j: u32, bar: bool) -> Result<Self, FormError> {
        if j == 0 || j > n as u32 {
            return Err(FormError::IndexOutOfRange(j, n));
        }
        let mask = 1u32 << (j - 1);
        let mono =
            if bar { BasisMonomial { holo: 0, anti: mask } } else { BasisMonomial { holo: mask, anti: 0 } };
        Self::monomial(n, params, mono, Scalar::one(params))
    }

    /// Builds a form from `(compact monomial, coefficient expression)` pairs.
    pub fn parse_terms(
        n: u8,
        params: &Arc<ParamSet>,
        terms: &[(&str, &str)],
    ) -> Result<Self, FormError> {
        let mut acc = Self::zero(n, params);
        for (mono, expr) in terms {
            let m = BasisMonomial::parse(mono, n)?;
            let c = parse_scalar(params, expr)?;
            acc = acc.add(&Form::monomial(n, params, m, c)?)?;
        }
        Ok(acc)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn params(&self) -> &Arc<ParamSet> {
        &self.params
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mono: &BasisMonomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(|| Scalar::zero(&self.params))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_space(&self, other: &Form) -> Result<(), FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch);
        }
        Ok(())
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn add(&self, other: &Form) -> Result<Form, FormError> {
        self.check_space(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(e) => *e = e.try_add(c)?,
                None => {
                    terms.insert(*m, c.clone());
                }
            }
        }
        Ok(Form { n: self.n, params: self.params.clone(), terms }.normalized())
    }

    pub fn sub(&self, other: &Form) -> Result<Form, FormError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            n: self.n,
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Result<Form, FormError> {
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let v = k.try_mul(c)?;
            if !v.is_zero() {
                terms.insert(*m, v);
            }
        }
        Ok(Form { n: self.n, params: self.params.clone(), terms })
    }

    pub fn scale_constant(&self, c: &GaussianRational) -> Form {
        let mut terms = BTreeMap::new();
        for (m, k) in &self.terms {
            let v = k.scale(c);
            if !v.is_zero() {
                terms.insert(*m, v);
            }
        }
        Form { n: self.n, params: self.params.clone(), terms }
    }

    pub fn wedge(&self, other: &Form) -> Result<Form, FormError> {
        self.check_space(other)?;
        let mut terms: BTreeMap<BasisMonomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let Some((sign, m)) = ma.wedge(mb) else { continue };
                let mut c = ca.try_mul(cb)?;
                if sign < 0 {
                    c = c.neg();
                }
                match terms.get_mut(&m) {
                    Some(e) => *e = e.try_add(&c)?,
                    None => {
                        terms.insert(m, c);
                    }
                }
            }
        }
        Ok(Form { n: self.n, params: self.params.clone(), terms }.normalized())
    }

    /// Complex conjugation: `conj(s · phi^I ∧ conj(phi)^J) =
    /// conj(s) · (-1)^{|I||J|} · phi^J ∧ conj(phi)^I`.
    pub fn conjugate(&self) -> Form {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (sign, mc) = m.conjugate();
            let mut v = c.conjugate();
            if sign < 0 {
                v = v.neg();
            }
            terms.insert(mc, v);
        }
        Form { n: self.n, params: self.params.clone(), terms }
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    pub fn total_degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|m| m.degree()).collect()
    }

    pub fn is_mixed_degree(&self) -> bool {
        self.total_degrees().len() > 1
    }

    /// The common total degree; `Ok(None)` for the zero form.
    pub fn pure_degree(&self, context: &'static str) -> Result<Option<u32>, FormError> {
        let degs = self.total_degrees();
        match degs.len() {
            0 => Ok(None),
            1 => Ok(Some(*degs.iter().next().unwrap())),
            _ => Err(FormError::MixedDegree(context)),
        }
    }

    /// The common bidegree; `Ok(None)` for the zero form.
    pub fn pure_bidegree(&self, context: &'static str) -> Result<Option<(u32, u32)>, FormError> {
        let bidegs: BTreeSet<(u32, u32)> = self.terms.keys().map(|m| m.bidegree()).collect();
        match bidegs.len() {
            0 => Ok(None),
            1 => Ok(Some(*bidegs.iter().next().unwrap())),
            _ => Err(FormError::MixedDegree(context)),
        }
    }

    pub fn bidegree_component(&self, p: u32, q: u32) -> Form {
        Form {
            n: self.n,
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.bidegree() == (p, q))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// The positive volume form `(i phi^1 ∧ conj(phi)^1) ∧ … `, which equals
    /// `i^{n²} · phi^{1..n} ∧ conj(phi)^{1..n}`.
    pub fn volume(n: u8, params: &Arc<ParamSet>) -> Result<Form, FormError> {
        Self::check_dimension(n)?;
        let full: IndexSet = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let coeff = Scalar::constant(params, GaussianRational::i_pow((n as i64) * (n as i64)));
        Form::monomial(n, params, BasisMonomial { holo: full, anti: full }, coeff)
    }

    /// Coefficient against the positive volume form. The input must be an
    /// `(n,n)`-form or zero.
    pub fn vol_coefficient(&self) -> Result<Scalar, FormError> {
        let n = self.n;
        let full: IndexSet = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let top = BasisMonomial { holo: full, anti: full };
        if self.terms.keys().any(|m| *m != top) {
            return Err(FormError::NotVolumeDegree);
        }
        let c = self.coeff(&top);
        Ok(c.scale(&GaussianRational::i_pow(-((n as i64) * (n as i64)))))
    }

    pub fn apply_rules(&self, rules: &[RewriteRule]) -> Result<Form, FormError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = crate::scalar::rewrite_fixpoint(c, rules)?;
            if !v.is_zero() {
                terms.insert(*m, v);
            }
        }
        Ok(Form { n: self.n, params: self.params.clone(), terms })
    }

    /// Evaluates every coefficient; the result lives over the empty set.
    pub fn instantiate(&self, asg: &Assignment) -> Result<Form, FormError> {
        let empty = ParamSet::empty();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.instantiate(asg)?;
            if !v.is_zero() {
                terms.insert(*m, Scalar::constant(&empty, v));
            }
        }
        Ok(Form { n: self.n, params: empty, terms })
    }

    pub fn substitute_into(
        &self,
        sub: &PartialAssignment,
        target: &Arc<ParamSet>,
    ) -> Result<Form, FormError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let v = c.substitute_into(sub, target)?;
            if !v.is_zero() {
                terms.insert(*m, v);
            }
        }
        Ok(Form { n: self.n, params: target.clone(), terms })
    }

    pub fn lift(&self, target: &Arc<ParamSet>) -> Result<Form, FormError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(*m, c.lift(target)?);
        }
        Ok(Form { n: self.n, params: target.clone(), terms })
    }

    /// Plain text rendering, deterministic in the monomial order.
    pub fn render_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let coeff = c.render_plain();
                if coeff == "1" {
                    m.render()
                } else if c.num_terms() > 1 {
                    format!("({})*{}", coeff, m.render())
                } else {
                    format!("{}*{}", coeff, m.render())
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Report rendering: coefficients prettified, and diagonal `(k,k)`
    /// monomials re-expressed against the positive blocks
    /// `i phi^{j} ∧ conj(phi)^{j} ∧ …`.
    pub fn render_report(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                if m.holo == m.anti && m.holo != 0 {
                    let k = m.holo.count_ones() as i64;
                    let c_pos = c.scale(&GaussianRational::i_pow(-k * k));
                    let block = indices(m.holo)
                        .map(|j| format!("i*phi[{j},~{j}]"))
                        .collect::<Vec<_>>()
                        .join("^");
                    format!("({}) * {}", c_pos.render_pretty(), block)
                } else {
                    format!("({}) * {}", c.render_pretty(), m.render())
                }
            })
            .collect::<Vec<_>>()
            .join("  +  ")
    }

    pub fn render_latex(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(m, c)| format!("({})\\,{}", c.render_plain(), m.render_latex()))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty() -> Arc<ParamSet> {
        ParamSet::empty()
    }

    fn i_phi(n: u8, j: u32) -> Form {
        let p = empty();
        let holo = Form::generator(n, &p, j, false).unwrap();
        let anti = Form::generator(n, &p, j, true).unwrap();
        holo.wedge(&anti).unwrap().scale_constant(&GaussianRational::i())
    }

    #[test]
    fn positive_blocks_multiply_without_signs() {
        let p = i_phi(3, 1).wedge(&i_phi(3, 2)).unwrap();
        let expected = Form::parse_terms(3, &empty(), &[("12~1~2", "1")]).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn conjugation_follows_the_block_swap_sign() {
        let p = empty();
        let f = Form::parse_terms(3, &p, &[("12~1", "1")]).unwrap();
        let c = f.conjugate();
        assert_eq!(c, Form::parse_terms(3, &p, &[("1~1~2", "1")]).unwrap());
        assert_eq!(c.conjugate(), f);
    }

    #[test]
    fn volume_coefficient_normalizes_the_orientation() {
        let top = i_phi(3, 1).wedge(&i_phi(3, 2)).unwrap().wedge(&i_phi(3, 3)).unwrap();
        let one = top.vol_coefficient().unwrap();
        assert_eq!(one, Scalar::one(&empty()));
        let vol = Form::volume(3, &empty()).unwrap();
        assert_eq!(top, vol);
    }

    #[test]
    fn wedge_is_graded_anticommutative_on_generators() {
        let p = empty();
        let a = Form::generator(3, &p, 1, false).unwrap();
        let b = Form::generator(3, &p, 2, true).unwrap();
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.neg());
        assert!(a.wedge(&a).unwrap().is_zero());
    }

    #[test]
    fn monomial_roundtrip_and_validation() {
        let m = BasisMonomial::parse("12~1~3", 3).unwrap();
        assert_eq!(m.compact(), "12~1~3");
        assert_eq!(m.bidegree(), (2, 2));
        assert!(BasisMonomial::parse("21", 3).is_err());
        assert!(BasisMonomial::parse("4", 3).is_err());
        assert!(BasisMonomial::parse("1~~2", 3).is_err());
        assert_eq!(BasisMonomial::parse("", 3).unwrap().degree(), 0);
    }

    #[test]
    fn mixed_degree_forms_are_tagged() {
        let p = empty();
        let f = Form::parse_terms(3, &p, &[("1", "1"), ("12", "1")]).unwrap();
        assert!(f.is_mixed_degree());
        assert!(f.pure_degree("test").is_err());
        let g = Form::parse_terms(3, &p, &[("12", "1"), ("1~1", "1")]).unwrap();
        assert!(!g.is_mixed_degree());
        assert!(g.pure_bidegree("test").is_err());
        assert_eq!(g.bidegree_component(1, 1), Form::parse_terms(3, &p, &[("1~1", "1")]).unwrap());
    }
}
