//! Sign analysis of real (q,q)-forms.
//!
//! An (n-1,n-1)-form is decided exactly through its Gram-of-lines matrix.
//! Lower bidegrees get a sufficient block certificate when the coefficient
//! matrix over q-index subsets is semidefinite, exact treatment at bidegree
//! (1,1), and otherwise randomized pairing against products of simple
//! positive forms, which can refute a sign or witness indefiniteness but
//! never certify one. Verdicts are three-valued on purpose: certified sign,
//! witnessed indefiniteness, or unknown.

use super::psd::{self, GMatrix, MatrixKind};
use super::HermitianError;
use crate::exterior::{indices, BasisMonomial, Form, IndexSet};
use crate::scalar::{Assignment, Constraint, GaussianRational, Monomial, ParamKind, Scalar};
use num::{BigRational, Signed};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SignTag {
    Zero,
    Positive,
    StrictlyPositive,
    Negative,
    StrictlyNegative,
    Indefinite,
    Unknown,
}

impl SignTag {
    pub fn nonnegative(self) -> bool {
        matches!(self, SignTag::Zero | SignTag::Positive | SignTag::StrictlyPositive)
    }

    pub fn nonpositive(self) -> bool {
        matches!(self, SignTag::Zero | SignTag::Negative | SignTag::StrictlyNegative)
    }

    pub fn label(self) -> &'static str {
        match self {
            SignTag::Zero => "zero",
            SignTag::Positive => "positive",
            SignTag::StrictlyPositive => "strictly positive",
            SignTag::Negative => "negative",
            SignTag::StrictlyNegative => "strictly negative",
            SignTag::Indefinite => "indefinite",
            SignTag::Unknown => "unknown",
        }
    }
}

/// A test object whose pairing with the analyzed form has a definite sign.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessKind {
    /// Coefficients `c` of a (1,0)-form eta = sum c_j phi^j; the pairing is
    /// with i eta /\ conj(eta).
    Direction(Vec<GaussianRational>),
    /// Several (1,0)-directions wedged in order, for forms below the
    /// codimension-one bidegree.
    Directions(Vec<Vec<GaussianRational>>),
}

impl WitnessKind {
    fn render_vec(c: &[GaussianRational]) -> String {
        let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("({})", body.join(", "))
    }

    pub fn render(&self) -> String {
        match self {
            WitnessKind::Direction(c) => format!("eta = {}", Self::render_vec(c)),
            WitnessKind::Directions(list) => {
                let body: Vec<String> = list.iter().map(|c| Self::render_vec(c)).collect();
                format!("etas = [{}]", body.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LabeledWitness {
    pub kind: WitnessKind,
    /// Exact volume coefficient of the pairing.
    pub value: GaussianRational,
}

/// Sign of a form, with witnesses where a strict sign is exhibited. An
/// indefinite verdict always carries both witnesses; an unknown verdict
/// carries its reason and never claims a sign, though it may still transport
/// one-sided refutation witnesses.
#[derive(Clone, Debug)]
pub struct SignVerdict {
    pub tag: SignTag,
    pub positive_witness: Option<LabeledWitness>,
    pub negative_witness: Option<LabeledWitness>,
    pub reason: Option<String>,
}

impl SignVerdict {
    pub fn zero() -> Self {
        SignVerdict { tag: SignTag::Zero, positive_witness: None, negative_witness: None, reason: None }
    }

    pub fn unknown(reason: &str) -> Self {
        SignVerdict {
            tag: SignTag::Unknown,
            positive_witness: None,
            negative_witness: None,
            reason: Some(reason.into()),
        }
    }

    /// Whether `>= 0` is established.
    pub fn nonneg_certified(&self) -> bool {
        self.tag.nonnegative()
    }

    /// Whether `>= 0` is refuted by an explicit direction.
    pub fn nonneg_refuted(&self) -> bool {
        self.negative_witness.is_some()
    }

    pub fn nonpos_certified(&self) -> bool {
        self.tag.nonpositive()
    }

    pub fn nonpos_refuted(&self) -> bool {
        self.positive_witness.is_some()
    }

    pub fn describe(&self) -> String {
        let mut parts = vec![self.tag.label().to_string()];
        if let Some(w) = &self.negative_witness {
            parts.push(format!("negative at {} (value {})", w.kind.render(), w.value));
        }
        if let Some(w) = &self.positive_witness {
            parts.push(format!("positive at {} (value {})", w.kind.render(), w.value));
        }
        if let Some(r) = &self.reason {
            parts.push(r.clone());
        }
        parts.join("; ")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Relation {
    GeZero,
    EqZero,
}

#[derive(Clone, Debug)]
pub struct Condition {
    pub poly: Scalar,
    pub relation: Relation,
    pub provenance: String,
}

impl Condition {
    pub fn holds_at(&self, asg: &Assignment) -> Result<bool, HermitianError> {
        let v = self.poly.instantiate(asg)?;
        Ok(match self.relation {
            Relation::GeZero => v.is_real() && !v.re().is_negative(),
            Relation::EqZero => v.is_zero(),
        })
    }

    pub fn render(&self) -> String {
        let rel = match self.relation {
            Relation::GeZero => ">= 0",
            Relation::EqZero => "= 0",
        };
        format!("{} {}  [{}]", self.poly.render_pretty(), rel, self.provenance)
    }
}

/// A conjunction of polynomial conditions equivalent to a predicate on the
/// admissible parameter assignments.
#[derive(Clone, Debug, Default)]
pub struct ConditionSet {
    pub items: Vec<Condition>,
}

impl ConditionSet {
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn holds_at(&self, asg: &Assignment) -> Result<bool, HermitianError> {
        for c in &self.items {
            if !c.holds_at(asg)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when every member is a satisfied constant.
    pub fn trivially_true(&self) -> bool {
        self.items.iter().all(|c| match c.poly.as_constant() {
            Some(v) => match c.relation {
                Relation::GeZero => v.is_real() && !v.re().is_negative(),
                Relation::EqZero => v.is_zero(),
            },
            None => false,
        })
    }

    /// True when some member is a violated constant.
    pub fn trivially_false(&self) -> bool {
        self.items.iter().any(|c| match c.poly.as_constant() {
            Some(v) => match c.relation {
                Relation::GeZero => !(v.is_real() && !v.re().is_negative()),
                Relation::EqZero => !v.is_zero(),
            },
            None => false,
        })
    }

    pub fn render(&self) -> String {
        if self.items.is_empty() {
            return "(no conditions)".into();
        }
        let body: Vec<String> = self.items.iter().map(|c| c.render()).collect();
        body.join("; ")
    }
}

/// How to evaluate a sign question.
#[derive(Clone, Debug)]
pub enum SignMode {
    /// Keep parameters formal; emit conditions and certificates.
    Symbolic,
    /// Evaluate at one assignment, then decide exactly.
    Numeric(Assignment),
    /// Constant form, randomized pairings for bidegrees below n-1.
    Sampled { count: u32, seed: u64 },
}

/// Result of a sign analysis: the verdict, the symbolic conditions when they
/// were produced, and a textual certificate of how the verdict was reached.
/// `conditions` characterizes ">= 0" and `conditions_nonpos` characterizes
/// "<= 0"; the two differ by the sign of the odd-order minors.
#[derive(Clone, Debug)]
pub struct SignReport {
    pub verdict: SignVerdict,
    pub conditions: Option<ConditionSet>,
    pub conditions_nonpos: Option<ConditionSet>,
    pub certificate: String,
}

impl SignReport {
    fn plain(verdict: SignVerdict, certificate: &str) -> Self {
        SignReport {
            verdict,
            conditions: None,
            conditions_nonpos: None,
            certificate: certificate.into(),
        }
    }
}

/// Gram-of-lines matrix of an (n-1,n-1)-form: `H[j][k]` is the volume
/// coefficient of `p /\ i phi^{j+1} /\ conj(phi^{k+1})`. The pairing of a
/// direction with coefficients `c` equals the hermitian form of `H` at
/// `conj(c)`.
pub fn gram_against_lines(p: &Form) -> Result<Vec<Vec<Scalar>>, HermitianError> {
    let n = p.n();
    let want = n as u32 - 1;
    if let Some((a, b)) = p.pure_bidegree("gram_against_lines")? {
        if (a, b) != (want, want) {
            return Err(HermitianError::WrongBidegree { want, got_p: a, got_q: b });
        }
    }
    let params = p.params();
    let mut h = Vec::with_capacity(n as usize);
    for j in 1..=n as u32 {
        let mut row = Vec::with_capacity(n as usize);
        for k in 1..=n as u32 {
            let line = Form::generator(n, params, j, false)?
                .wedge(&Form::generator(n, params, k, true)?)?
                .scale_constant(&GaussianRational::i());
            row.push(p.wedge(&line)?.vol_coefficient()?);
        }
        h.push(row);
    }
    Ok(h)
}

/// Coefficient matrix of a (q,q)-form over the q-element index subsets,
/// normalized so that the form is real exactly when the matrix is hermitian:
/// `p = i^{q^2} sum M[K][L] phi^K /\ conj(phi^L)`.
pub fn block_matrix(p: &Form, q: u32) -> Result<(Vec<IndexSet>, Vec<Vec<Scalar>>), HermitianError> {
    let n = p.n();
    let subsets: Vec<IndexSet> = (0..(1u32 << n)).filter(|m| m.count_ones() == q).collect();
    let scale = GaussianRational::i_pow(-((q * q) as i64));
    let mut rows = Vec::with_capacity(subsets.len());
    for &k in &subsets {
        let mut row = Vec::with_capacity(subsets.len());
        for &l in &subsets {
            let c = p.coeff(&BasisMonomial { holo: k, anti: l });
            row.push(c.scale(&scale));
        }
        rows.push(row);
    }
    Ok((subsets, rows))
}

fn constant_matrix(sm: &[Vec<Scalar>]) -> Result<GMatrix, HermitianError> {
    sm.iter()
        .map(|row| {
            row.iter()
                .map(|s| s.as_constant().ok_or(HermitianError::NonConstant))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

/// Simple positive (1,1)-form `i eta /\ conj(eta)` for `eta = sum c_j phi^j`.
pub fn simple_positive(n: u8, params: &std::sync::Arc<crate::scalar::ParamSet>, c: &[GaussianRational]) -> Result<Form, HermitianError> {
    let mut eta = Form::zero(n, params);
    for (j, cj) in c.iter().enumerate() {
        let gen = Form::generator(n, params, j as u32 + 1, false)?;
        eta = eta.add(&gen.scale_constant(cj))?;
    }
    let pairing = eta.wedge(&eta.conjugate())?.scale_constant(&GaussianRational::i());
    Ok(pairing)
}

fn subset_name(mask: IndexSet) -> String {
    let digits: Vec<String> = indices(mask).map(|j| j.to_string()).collect();
    format!("{{{}}}", digits.join(","))
}

fn minor_name(idx: &[usize]) -> String {
    let digits: Vec<String> = idx.iter().map(|j| (j + 1).to_string()).collect();
    format!("principal minor {{{}}}", digits.join(","))
}

/// Nonnegativity certificate for a polynomial under the declared parameter
/// constraints: every term must have a positive real coefficient and a
/// monomial that is a product of nonnegatively-constrained parameters, even
/// powers of real parameters, and matched conjugate pairs.
pub fn nonneg_certificate(s: &Scalar) -> Option<String> {
    if s.is_zero() {
        return Some("zero polynomial".into());
    }
    for (mono, coeff) in s.terms() {
        if !coeff.is_real() || !coeff.re().is_positive() {
            return None;
        }
        if !monomial_nonneg(s, mono) {
            return None;
        }
    }
    Some(format!(
        "sum of {} certified-nonnegative terms: {}",
        s.num_terms(),
        s.render_pretty()
    ))
}

fn param_nonneg(s: &Scalar, pi: usize) -> bool {
    s.params().params()[pi].constraints.iter().any(|c| match c {
        Constraint::Positive | Constraint::NonNeg | Constraint::InZeroOne => true,
        Constraint::Interval { lo, .. } => {
            lo.as_ref().is_some_and(|b| !b.is_negative())
        }
        Constraint::UnitModulus => false,
    })
}

fn monomial_nonneg(s: &Scalar, mono: &Monomial) -> bool {
    let params = s.params();
    for (pi, param) in params.params().iter().enumerate() {
        let base = params.indet_of_param(pi);
        match param.kind {
            ParamKind::Real => {
                let e = mono.0[base];
                if e == 0 || e % 2 == 0 || param_nonneg(s, pi) {
                    continue;
                }
                return false;
            }
            ParamKind::Complex => {
                if mono.0[base] != mono.0[base + 1] {
                    return false;
                }
            }
        }
    }
    true
}

/// Strict positivity certificate relative to a declared nonvanishing group:
/// the polynomial is certified nonnegative and vanishes only when every
/// member of `group` does, which the declaration excludes.
pub fn positive_certificate_given(s: &Scalar, group: &[&str]) -> Option<String> {
    nonneg_certificate(s)?;
    if s.is_zero() || group.is_empty() {
        return None;
    }
    let params = s.params();
    for g in group {
        let (gpi, _) = params.param(g)?;
        let gbase = params.indet_of_param(gpi);
        let found = s.terms().any(|(mono, _)| {
            if mono.0[gbase] == 0 {
                return false;
            }
            mono.0.iter().enumerate().all(|(k, &e)| {
                if e == 0 {
                    return true;
                }
                let pi = params.indets()[k].param;
                pi == gpi || params.params()[pi].constraints.contains(&Constraint::Positive)
            })
        });
        if !found {
            return None;
        }
    }
    Some(format!(
        "certified nonnegative, and zero forces {} = 0, excluded by assumption",
        group.join(" = ")
    ))
}

fn direction_witness(v: &[GaussianRational], value: GaussianRational) -> LabeledWitness {
    // The matrix witness acts on conj(c); the rendered direction is its
    // conjugate so that the pairing with i eta /\ conj(eta) reproduces value.
    let c: Vec<GaussianRational> = v.iter().map(|x| x.conj()).collect();
    LabeledWitness { kind: WitnessKind::Direction(c), value }
}

fn analyze_gram_numeric(p: &Form) -> Result<SignReport, HermitianError> {
    let h = gram_against_lines(p)?;
    let m = constant_matrix(&h)?;
    let analysis = psd::analyze(&m)?;
    let cert = psd::minor_certificate(&m);
    let minors: Vec<String> = cert
        .minors
        .iter()
        .map(|(idx, v)| format!("{} = {}", minor_name(idx), v))
        .collect();
    let certificate = format!("gram-of-lines principal minors: {}", minors.join(", "));
    let wit = |v: &Option<Vec<GaussianRational>>| {
        v.as_ref().map(|v| direction_witness(v, psd::quad_form(&m, v)))
    };
    let verdict = match analysis.kind {
        MatrixKind::Zero => SignVerdict::zero(),
        MatrixKind::PositiveDefinite => SignVerdict {
            tag: SignTag::StrictlyPositive,
            positive_witness: wit(&analysis.positive_direction),
            negative_witness: None,
            reason: None,
        },
        MatrixKind::PositiveSemidefinite => SignVerdict {
            tag: SignTag::Positive,
            positive_witness: wit(&analysis.positive_direction),
            negative_witness: None,
            reason: None,
        },
        MatrixKind::NegativeDefinite => SignVerdict {
            tag: SignTag::StrictlyNegative,
            positive_witness: None,
            negative_witness: wit(&analysis.negative_direction),
            reason: None,
        },
        MatrixKind::NegativeSemidefinite => SignVerdict {
            tag: SignTag::Negative,
            positive_witness: None,
            negative_witness: wit(&analysis.negative_direction),
            reason: None,
        },
        MatrixKind::Indefinite => SignVerdict {
            tag: SignTag::Indefinite,
            positive_witness: wit(&analysis.positive_direction),
            negative_witness: wit(&analysis.negative_direction),
            reason: None,
        },
    };
    Ok(SignReport { verdict, conditions: None, conditions_nonpos: None, certificate })
}

fn analyze_block_numeric(
    p: &Form,
    q: u32,
) -> Result<Option<SignReport>, HermitianError> {
    let (subsets, sm) = block_matrix(p, q)?;
    let m = constant_matrix(&sm)?;
    let analysis = psd::analyze(&m)?;
    let names: Vec<String> = subsets.iter().map(|&s| subset_name(s)).collect();
    let describe = |tag: &str| {
        format!("block coefficient matrix over subsets [{}] is {}", names.join(", "), tag)
    };
    let report = match analysis.kind {
        MatrixKind::Zero => Some(SignReport::plain(SignVerdict::zero(), &describe("zero"))),
        MatrixKind::PositiveDefinite | MatrixKind::PositiveSemidefinite => Some(SignReport::plain(
            SignVerdict {
                tag: SignTag::Positive,
                positive_witness: block_diagonal_witness(p.n(), &subsets, &m, false),
                negative_witness: None,
                reason: None,
            },
            &describe("positive semidefinite, so the form is a nonnegative combination of i^{q^2} alpha /\\ conj(alpha)"),
        )),
        MatrixKind::NegativeDefinite | MatrixKind::NegativeSemidefinite => Some(SignReport::plain(
            SignVerdict {
                tag: SignTag::Negative,
                positive_witness: None,
                negative_witness: block_diagonal_witness(p.n(), &subsets, &m, true),
                reason: None,
            },
            &describe("negative semidefinite"),
        )),
        MatrixKind::Indefinite => None,
    };
    Ok(report)
}

/// Witness for a nonzero semidefinite block matrix: such a matrix has a
/// diagonal entry of the definite sign, and the pairing of the form against
/// the product of coordinate lines over the complementary index set equals
/// exactly that entry.
fn block_diagonal_witness(
    n: u8,
    subsets: &[IndexSet],
    m: &GMatrix,
    negative: bool,
) -> Option<LabeledWitness> {
    let (k, value) = (0..m.len()).find_map(|k| {
        let v = &m[k][k];
        let hit = if negative { v.re().is_negative() } else { v.re().is_positive() };
        if hit {
            Some((k, v.clone()))
        } else {
            None
        }
    })?;
    let complement = !subsets[k] & ((1u32 << n) - 1);
    let dirs: Vec<Vec<GaussianRational>> = indices(complement)
        .map(|j| {
            let mut e = vec![GaussianRational::zero(); n as usize];
            e[(j - 1) as usize] = GaussianRational::one();
            e
        })
        .collect();
    Some(LabeledWitness { kind: WitnessKind::Directions(dirs), value })
}

/// Exact analysis of a constant-coefficient (1,1)-form: positivity against
/// products of lines is the semidefiniteness of its coefficient matrix, and
/// every witness is a tangent direction.
fn analyze_one_one_numeric(p: &Form) -> Result<SignReport, HermitianError> {
    let n = p.n();
    let scale = GaussianRational::i_pow(-1);
    let mut m: GMatrix = vec![vec![GaussianRational::zero(); n as usize]; n as usize];
    for (mono, coeff) in p.terms() {
        let j = indices(mono.holo).next().expect("(1,1) monomial") as usize - 1;
        let k = indices(mono.anti).next().expect("(1,1) monomial") as usize - 1;
        m[j][k] = &coeff.as_constant().ok_or(HermitianError::NonConstant)? * &scale;
    }
    let analysis = psd::analyze(&m)?;
    let wit = |v: &Option<Vec<GaussianRational>>| {
        v.as_ref().map(|v| LabeledWitness {
            kind: WitnessKind::Direction(v.clone()),
            value: psd::quad_form(&m, v),
        })
    };
    let tag = match analysis.kind {
        MatrixKind::Zero => SignTag::Zero,
        MatrixKind::PositiveDefinite => SignTag::StrictlyPositive,
        MatrixKind::PositiveSemidefinite => SignTag::Positive,
        MatrixKind::NegativeDefinite => SignTag::StrictlyNegative,
        MatrixKind::NegativeSemidefinite => SignTag::Negative,
        MatrixKind::Indefinite => SignTag::Indefinite,
    };
    Ok(SignReport::plain(
        SignVerdict {
            tag,
            positive_witness: wit(&analysis.positive_direction),
            negative_witness: wit(&analysis.negative_direction),
            reason: None,
        },
        "coefficient matrix of the (1,1)-form",
    ))
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    BigRational::new(num.into(), den.into())
}

/// A not-identically-zero rational direction in `C^n`.
pub fn random_direction(rng: &mut ChaCha8Rng, n: u8) -> Vec<GaussianRational> {
    loop {
        let v: Vec<GaussianRational> = (0..n)
            .map(|_| GaussianRational::new(random_rational(rng), random_rational(rng)))
            .collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn sampled_sign(p: &Form, q: u32, count: u32, seed: u64) -> Result<SignReport, HermitianError> {
    let n = p.n();
    let deficit = (n as u32 - 1 - q) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positive: Option<LabeledWitness> = None;
    let mut negative: Option<LabeledWitness> = None;
    for _ in 0..count {
        let dirs: Vec<Vec<GaussianRational>> =
            (0..deficit).map(|_| random_direction(&mut rng, n)).collect();
        let mut wedged = p.clone();
        for c in &dirs {
            wedged = wedged.wedge(&simple_positive(n, p.params(), c)?)?;
        }
        let report = analyze_gram_numeric(&wedged)?;
        let lift = |w: &LabeledWitness| {
            let mut all = dirs.clone();
            if let WitnessKind::Direction(c) = &w.kind {
                all.push(c.clone());
            }
            LabeledWitness { kind: WitnessKind::Directions(all), value: w.value.clone() }
        };
        if positive.is_none() {
            if let Some(w) = &report.verdict.positive_witness {
                positive = Some(lift(w));
            }
        }
        if negative.is_none() {
            if let Some(w) = &report.verdict.negative_witness {
                negative = Some(lift(w));
            }
        }
        if positive.is_some() && negative.is_some() {
            break;
        }
    }
    let certificate = format!("{count} randomized pairings with products of simple positive forms (seed {seed})");
    let verdict = match (positive, negative) {
        (Some(p), Some(ng)) => SignVerdict {
            tag: SignTag::Indefinite,
            positive_witness: Some(p),
            negative_witness: Some(ng),
            reason: None,
        },
        (pos, neg) => {
            let mut v = SignVerdict::unknown(if neg.is_some() {
                "a strictly negative pairing exists; nonpositivity is not certified"
            } else if pos.is_some() {
                "a strictly positive pairing exists; nonnegativity is not certified"
            } else {
                "all sampled pairings vanish and no certificate applies"
            });
            v.positive_witness = pos;
            v.negative_witness = neg;
            v
        }
    };
    Ok(SignReport { verdict, conditions: None, conditions_nonpos: None, certificate })
}

fn symbolic_gram(p: &Form) -> Result<SignReport, HermitianError> {
    let h = gram_against_lines(p)?;
    let n = h.len();
    let mut items = Vec::new();
    let mut neg_items = Vec::new();
    let mut all_nonneg = true;
    let mut all_nonpos = true;
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let sub: Vec<Vec<Scalar>> =
            idx.iter().map(|&a| idx.iter().map(|&b| h[a][b].clone()).collect()).collect();
        let d = scalar_determinant(&sub, p.params());
        // H <= 0 exactly when -H >= 0, whose principal minors are the
        // minors of H with the odd orders negated.
        let flipped = if idx.len() % 2 == 1 { d.neg() } else { d.clone() };
        if nonneg_certificate(&d).is_none() {
            all_nonneg = false;
        }
        if nonneg_certificate(&flipped).is_none() {
            all_nonpos = false;
        }
        if !d.is_zero() {
            let provenance = minor_name(&idx);
            items.push(Condition {
                poly: d,
                relation: Relation::GeZero,
                provenance: provenance.clone(),
            });
            neg_items.push(Condition { poly: flipped, relation: Relation::GeZero, provenance });
        }
    }
    let zero_matrix = h.iter().all(|row| row.iter().all(|e| e.is_zero()));
    let (verdict, certificate) = if zero_matrix {
        (SignVerdict::zero(), "gram-of-lines matrix vanishes identically".to_string())
    } else if all_nonneg {
        (
            SignVerdict {
                tag: SignTag::Positive,
                positive_witness: None,
                negative_witness: None,
                reason: None,
            },
            "every gram principal minor is a certified nonnegative polynomial".to_string(),
        )
    } else if all_nonpos {
        (
            SignVerdict {
                tag: SignTag::Negative,
                positive_witness: None,
                negative_witness: None,
                reason: None,
            },
            "every gram principal minor has the semidefinite-negative sign pattern".to_string(),
        )
    } else {
        (
            SignVerdict::unknown("sign depends on the parameters; see the minor conditions"),
            "principal minors of the gram-of-lines matrix".to_string(),
        )
    };
    Ok(SignReport {
        verdict,
        conditions: Some(ConditionSet { items }),
        conditions_nonpos: Some(ConditionSet { items: neg_items }),
        certificate,
    })
}

/// Determinant of a square matrix of polynomials, by cofactor expansion.
pub fn scalar_determinant(
    m: &[Vec<Scalar>],
    params: &std::sync::Arc<crate::scalar::ParamSet>,
) -> Scalar {
    let n = m.len();
    match n {
        0 => Scalar::one(params),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = Scalar::zero(params);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Scalar>> = (1..n)
                    .map(|a| (0..n).filter(|&b| b != j).map(|b| m[a][b].clone()).collect())
                    .collect();
                let term = m[0][j].try_mul(&scalar_determinant(&sub, params)).expect("same params");
                acc = if j % 2 == 0 {
                    acc.try_add(&term).expect("same params")
                } else {
                    acc.try_sub(&term).expect("same params")
                };
            }
            acc
        }
    }
}

/// Sign analysis dispatch. The form must be real after evaluation and of
/// pure (q,q) bidegree; the zero form is ZERO in every mode.
pub fn sign_of_form(p: &Form, mode: &SignMode) -> Result<SignReport, HermitianError> {
    let evaluated;
    let p = match mode {
        SignMode::Numeric(asg) => {
            evaluated = p.instantiate(asg)?;
            &evaluated
        }
        _ => p,
    };
    if !p.is_real() {
        return Err(HermitianError::NotReal);
    }
    let q = match p.pure_bidegree("sign_of_form")? {
        None => {
            return Ok(SignReport::plain(SignVerdict::zero(), "the form is identically zero"))
        }
        Some((a, b)) if a != b => return Err(HermitianError::NotDiagonalBidegree(a, b)),
        Some((a, _)) => a,
    };
    let n = p.n() as u32;
    if let SignMode::Symbolic = mode {
        if q == n - 1 {
            return symbolic_gram(p);
        }
        return symbolic_block(p, q);
    }
    if q == n - 1 {
        return analyze_gram_numeric(p);
    }
    if q == 1 {
        return analyze_one_one_numeric(p);
    }
    if let Some(report) = analyze_block_numeric(p, q)? {
        return Ok(report);
    }
    let (count, seed) = match mode {
        SignMode::Sampled { count, seed } => (*count, *seed),
        _ => (200, 0xA1CE),
    };
    sampled_sign(p, q, count, seed)
}

fn symbolic_block(p: &Form, q: u32) -> Result<SignReport, HermitianError> {
    let (subsets, sm) = block_matrix(p, q)?;
    let n = sm.len();
    let active = (0..n).filter(|&j| sm[j].iter().any(|e| !e.is_zero())).count();
    let diagonal = (0..n).all(|j| (0..n).all(|k| j == k || sm[j][k].is_zero()));
    // Minors are taken up to order 3 only, which decides semidefiniteness
    // exactly when every nonzero entry lives in a principal submatrix of
    // that size, or when the matrix is diagonal.
    let complete = diagonal || active <= 3;
    let mut items = Vec::new();
    let mut neg_items = Vec::new();
    let mut all_nonneg = true;
    let mut all_nonpos = true;
    for mask in 1u32..(1u32 << n.min(20)) {
        if mask.count_ones() > 3 {
            continue;
        }
        let idx: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
        let sub: Vec<Vec<Scalar>> =
            idx.iter().map(|&a| idx.iter().map(|&b| sm[a][b].clone()).collect()).collect();
        let d = scalar_determinant(&sub, p.params());
        let flipped = if idx.len() % 2 == 1 { d.neg() } else { d.clone() };
        if nonneg_certificate(&d).is_none() {
            all_nonneg = false;
        }
        if nonneg_certificate(&flipped).is_none() {
            all_nonpos = false;
        }
        if !d.is_zero() {
            let names: Vec<String> = idx.iter().map(|&a| subset_name(subsets[a])).collect();
            let provenance = format!("block minor on [{}]", names.join(", "));
            items.push(Condition {
                poly: d,
                relation: Relation::GeZero,
                provenance: provenance.clone(),
            });
            neg_items.push(Condition { poly: flipped, relation: Relation::GeZero, provenance });
        }
    }
    let verdict = if active == 0 {
        SignVerdict::zero()
    } else if all_nonneg && complete {
        SignVerdict {
            tag: SignTag::Positive,
            positive_witness: None,
            negative_witness: None,
            reason: None,
        }
    } else if all_nonpos && complete {
        SignVerdict {
            tag: SignTag::Negative,
            positive_witness: None,
            negative_witness: None,
            reason: None,
        }
    } else {
        SignVerdict::unknown("block test inconclusive on symbolic coefficients")
    };
    Ok(SignReport {
        verdict,
        conditions: Some(ConditionSet { items }),
        conditions_nonpos: Some(ConditionSet { items: neg_items }),
        certificate: "block coefficient minors up to size 3".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ParamSet, Parameter};

    fn empty() -> std::sync::Arc<ParamSet> {
        ParamSet::empty()
    }

    #[test]
    fn gram_of_a_diagonal_two_two_form() {
        let p3 = empty();
        // i phi^{1 ~1} /\ i phi^{2 ~2} = i^4 phi^{12 ~1~2} = phi^{12 ~1~2}.
        let p = Form::parse_terms(3, &p3, &[("12~1~2", "1")]).unwrap();
        let h = gram_against_lines(&p).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let expect = if j == 2 && k == 2 { Scalar::one(&p3) } else { Scalar::zero(&p3) };
                assert_eq!(h[j][k], expect, "entry ({j},{k})");
            }
        }
    }

    #[test]
    fn numeric_verdicts_on_codimension_one_forms() {
        let p3 = empty();
        let pos = Form::parse_terms(3, &p3, &[("12~1~2", "1")]).unwrap();
        let r = sign_of_form(&pos, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Positive);

        let zero = Form::zero(3, &p3);
        let r = sign_of_form(&zero, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Zero);

        let mixed = Form::parse_terms(3, &p3, &[("12~1~2", "-1"), ("13~1~3", "1")]).unwrap();
        let r = sign_of_form(&mixed, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Indefinite);
        assert!(r.verdict.positive_witness.is_some() && r.verdict.negative_witness.is_some());
    }

    #[test]
    fn witness_pairing_matches_reported_value() {
        let p3 = empty();
        let p = Form::parse_terms(3, &p3, &[("12~1~2", "-1"), ("13~1~3", "1")]).unwrap();
        let r = sign_of_form(&p, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        for w in [
            r.verdict.positive_witness.as_ref().unwrap(),
            r.verdict.negative_witness.as_ref().unwrap(),
        ] {
            let WitnessKind::Direction(c) = &w.kind else { panic!("direction expected") };
            let line = simple_positive(3, &p3, c).unwrap();
            let value = p.wedge(&line).unwrap().vol_coefficient().unwrap().as_constant().unwrap();
            assert_eq!(value, w.value);
        }
    }

    #[test]
    fn block_certificate_on_a_two_two_form_in_dim_four() {
        let p4 = empty();
        // i^4 phi^{12} /\ conj(phi^{12}) = phi^{12 ~1~2}; weakly positive.
        let p = Form::parse_terms(4, &p4, &[("12~1~2", "1")]).unwrap();
        let r = sign_of_form(&p, &SignMode::Sampled { count: 4, seed: 7 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Positive);
        assert!(r.certificate.contains("block"));
        let neg = p.neg();
        let r = sign_of_form(&neg, &SignMode::Sampled { count: 4, seed: 7 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Negative);
    }

    #[test]
    fn sampled_mode_refutes_positivity_with_a_witness() {
        let p4 = empty();
        // Indefinite at block level: phi^{12~1~2} - phi^{34~3~4} is a
        // difference of two weakly positive pieces on disjoint supports.
        let p = Form::parse_terms(4, &p4, &[("12~1~2", "1"), ("34~3~4", "-1")]).unwrap();
        let r = sign_of_form(&p, &SignMode::Sampled { count: 40, seed: 11 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Indefinite);
        let w = r.verdict.negative_witness.unwrap();
        let WitnessKind::Directions(dirs) = &w.kind else { panic!("wedge witness expected") };
        let mut wedged = p.clone();
        for c in &dirs[..dirs.len() - 1] {
            wedged = wedged.wedge(&simple_positive(4, &p4, c).unwrap()).unwrap();
        }
        let line = simple_positive(4, &p4, dirs.last().unwrap()).unwrap();
        let value =
            wedged.wedge(&line).unwrap().vol_coefficient().unwrap().as_constant().unwrap();
        assert_eq!(value, w.value);
        assert!(value.re().is_negative());
    }

    #[test]
    fn one_one_forms_are_decided_exactly() {
        let p2 = empty();
        let omega = Form::parse_terms(2, &p2, &[("1~1", "i"), ("2~2", "i")]).unwrap();
        let r = sign_of_form(&omega, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::StrictlyPositive);
        let mixed = Form::parse_terms(2, &p2, &[("1~1", "i"), ("2~2", "-i")]).unwrap();
        let r = sign_of_form(&mixed, &SignMode::Sampled { count: 1, seed: 1 }).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Indefinite);
    }

    #[test]
    fn nonneg_certificates_respect_declarations() {
        let ps = ParamSet::new(vec![
            Parameter::real("t2").with(Constraint::Positive),
            Parameter::real("lambda"),
            Parameter::complex("B"),
        ])
        .unwrap();
        let good = crate::scalar::parse_scalar(&ps, "t2*lambda^2 + t2*B*conj(B)").unwrap();
        assert!(nonneg_certificate(&good).is_some());
        let bad = crate::scalar::parse_scalar(&ps, "t2*lambda").unwrap();
        assert!(nonneg_certificate(&bad).is_none());
        let strict = positive_certificate_given(&good, &["lambda", "B"]);
        assert!(strict.is_some());
        assert!(positive_certificate_given(&good, &["lambda", "B", "t2"]).is_none());
    }

    #[test]
    fn symbolic_gram_produces_minor_conditions() {
        let ps = ParamSet::new(vec![
            Parameter::real("t2").with(Constraint::Positive),
            Parameter::real("rho").with(Constraint::InZeroOne),
        ])
        .unwrap();
        let p = Form::parse_terms(3, &ps, &[("12~1~2", "t2*rho^2")]).unwrap();
        let r = sign_of_form(&p, &SignMode::Symbolic).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Positive);
        let cs = r.conditions.unwrap();
        assert_eq!(cs.items.len(), 1);
        assert!(cs.items[0].provenance.contains("{3}"));
    }

    #[test]
    fn cross_term_gram_is_not_certified_semidefinite() {
        let ps = ParamSet::new(vec![Parameter::complex("u")]).unwrap();
        let p = Form::parse_terms(
            3,
            &ps,
            &[("13~2~3", "2*i*u"), ("23~1~3", "-2*i*conj(u)")],
        )
        .unwrap();
        let r = sign_of_form(&p, &SignMode::Symbolic).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Unknown);
        let nonpos = r.conditions_nonpos.unwrap();
        assert_eq!(nonpos.items.len(), 1);
        assert!(nonpos.items[0].provenance.contains("{1,2}"));
        assert!(nonneg_certificate(&nonpos.items[0].poly.neg()).is_some());
    }

    #[test]
    fn diagonal_nonpositive_gram_is_certified_negative() {
        let ps = ParamSet::new(vec![Parameter::real("t2").with(Constraint::Positive)]).unwrap();
        let p = Form::parse_terms(3, &ps, &[("12~1~2", "-t2")]).unwrap();
        let r = sign_of_form(&p, &SignMode::Symbolic).unwrap();
        assert_eq!(r.verdict.tag, SignTag::Negative);
        let nonpos = r.conditions_nonpos.unwrap();
        assert_eq!(nonpos.items.len(), 1);
        assert!(nonneg_certificate(&nonpos.items[0].poly).is_some());
    }
}
