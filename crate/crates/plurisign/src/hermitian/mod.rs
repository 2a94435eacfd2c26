//! Left-invariant hermitian metrics and the curvature predicates built on
//! them: vanishing of d omega and of dd^c omega, signs of dd^c omega, the
//! balanced and gauduchon conditions on omega^{n-1}, the alternating-sum
//! ladder of conditions in higher dimension, and the epsilon-strengthened
//! inequality dd^c(omega^q) >= eps omega /\ dd^c(omega^{q-1}).
//!
//! A [`MetricSpec`] carries the metric form, its Gram matrix, and the exact
//! polynomial inequalities cutting out the admissible parameter values. A
//! [`Classifier`] computes every needed symbolic form once, so that numeric
//! sweeps over many parameter assignments only instantiate polynomials.

pub mod psd;
pub mod report;
pub mod sample;
pub mod sign;

pub use psd::{MatrixAnalysis, MatrixError, MatrixKind, MinorCertificate};
pub use report::{ClassificationReport, PropertyReport, Truth};
pub use sign::{
    gram_against_lines, nonneg_certificate, positive_certificate_given, scalar_determinant,
    sign_of_form, Condition, ConditionSet, LabeledWitness, Relation, SignMode, SignReport,
    SignTag, SignVerdict, WitnessKind,
};

use crate::exterior::{BasisMonomial, Form, FormError, IndexSet};
use crate::liecomplex::{StructureError, StructureSpec};
use crate::scalar::{
    Assignment, Constraint, GaussianRational, ParamSet, Scalar, ScalarError,
};
use crate::scalar::Parameter;
use num::{BigRational, Signed, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum HermitianError {
    #[error("expected a ({want},{want})-form, found bidegree ({got_p},{got_q})")]
    WrongBidegree { want: u32, got_p: u32, got_q: u32 },
    #[error("expected a form of bidegree (q,q), found ({0},{1})")]
    NotDiagonalBidegree(u32, u32),
    #[error("the form is not real")]
    NotReal,
    #[error("symbolic coefficient where a constant was required")]
    NonConstant,
    #[error("omega power {k} out of range for dimension {n}")]
    PowerOutOfRange { k: u32, n: u8 },
    #[error("dimension {0} is not supported by this operation")]
    UnsupportedDimension(u8),
    #[error("assignment violates the admissibility inequality {polynomial} > 0 (value {value})")]
    Inadmissible { polynomial: String, value: String },
    #[error("assignment violates the structure relation {relation}")]
    RelationViolated { relation: String },
    #[error("assignment violates declared parameter constraints: {detail}")]
    ConstraintViolated { detail: String },
    #[error("sampling for {label} failed: {reason}")]
    SamplingFailed { label: String, reason: String },
    #[error("sign analysis could not decide: {0}")]
    Undecided(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// How the metric form is parametrized.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MetricShape {
    /// The full three-dimensional metric with real `r2, s2, t2` on the
    /// diagonal and complex `u, v, z` off it.
    GenericDim3,
    /// Full conjugate-symmetric Gram parameters `g11, g12, ...`.
    GenericGram,
    /// Diagonal metric `omega = sum_j i a_j phi^{j jbar}`.
    Diagonal,
}

/// A left-invariant hermitian metric: the real (1,1)-form `omega`, its Gram
/// matrix `G` with `omega = (i/2) sum G_jk phi^{j kbar}`, and the exact
/// polynomial inequalities (each `> 0`) that admissible assignments of the
/// metric parameters satisfy.
#[derive(Clone, Debug)]
pub struct MetricSpec {
    shape: MetricShape,
    omega: Form,
    gram: Vec<Vec<Scalar>>,
    positivity: Vec<Scalar>,
    metric_names: Vec<String>,
}

fn assemble(
    n: u8,
    params: &Arc<ParamSet>,
    parts: &[(&str, Scalar)],
) -> Result<Form, HermitianError> {
    let mut acc = Form::zero(n, params);
    for (m, c) in parts {
        let mono = BasisMonomial::parse(m, n)?;
        acc = acc.add(&Form::monomial(n, params, mono, c.clone())?)?;
    }
    Ok(acc)
}

impl MetricSpec {
    /// The generic metric on a structure: in complex dimension three the
    /// classical parametrization by `r2, s2, t2, u, v, z`, otherwise the
    /// full Gram parametrization.
    pub fn generic(s: &StructureSpec) -> Result<MetricSpec, HermitianError> {
        if s.n() == 3 {
            Self::generic_dim3(s)
        } else {
            Self::generic_gram(s)
        }
    }

    fn generic_dim3(s: &StructureSpec) -> Result<MetricSpec, HermitianError> {
        let joint = s.extended_params(vec![
            Parameter::real("r2").with(Constraint::Positive),
            Parameter::real("s2").with(Constraint::Positive),
            Parameter::real("t2").with(Constraint::Positive),
            Parameter::complex("u"),
            Parameter::complex("v"),
            Parameter::complex("z"),
        ])?;
        let sp = |name: &str| Scalar::param(&joint, name).expect("declared above");
        let half = GaussianRational::ratio(1, 2);
        let neg_half = GaussianRational::ratio(-1, 2);
        let half_i = GaussianRational::i_ratio(1, 2);
        let omega = assemble(
            3,
            &joint,
            &[
                ("1~1", sp("r2").scale(&half_i)),
                ("2~2", sp("s2").scale(&half_i)),
                ("3~3", sp("t2").scale(&half_i)),
                ("1~2", sp("u").scale(&half)),
                ("2~1", sp("u").conjugate().scale(&neg_half)),
                ("2~3", sp("v").scale(&half)),
                ("3~2", sp("v").conjugate().scale(&neg_half)),
                ("1~3", sp("z").scale(&half)),
                ("3~1", sp("z").conjugate().scale(&neg_half)),
            ],
        )?;
        let mi = GaussianRational::i_ratio(-1, 1);
        let pi = GaussianRational::i();
        let gram = vec![
            vec![sp("r2"), sp("u").scale(&mi), sp("z").scale(&mi)],
            vec![sp("u").conjugate().scale(&pi), sp("s2"), sp("v").scale(&mi)],
            vec![sp("z").conjugate().scale(&pi), sp("v").conjugate().scale(&pi), sp("t2")],
        ];
        let parse = |text: &str| crate::scalar::parse_scalar(&joint, text).expect("fixed text");
        let positivity = vec![
            sp("r2"),
            sp("s2"),
            sp("t2"),
            parse("r2*s2 - u*conj(u)"),
            parse("r2*t2 - z*conj(z)"),
            parse("s2*t2 - v*conj(v)"),
            parse(
                "r2*s2*t2 + i*conj(u)*z*conj(v) - i*u*conj(z)*v \
                 - t2*u*conj(u) - r2*v*conj(v) - s2*z*conj(z)",
            ),
        ];
        Ok(MetricSpec {
            shape: MetricShape::GenericDim3,
            omega,
            gram,
            positivity,
            metric_names: ["r2", "s2", "t2", "u", "v", "z"].iter().map(|s| s.to_string()).collect(),
        })
    }

    fn generic_gram(s: &StructureSpec) -> Result<MetricSpec, HermitianError> {
        let n = s.n();
        if n > 9 {
            return Err(HermitianError::UnsupportedDimension(n));
        }
        let mut fresh = Vec::new();
        let mut names = Vec::new();
        for j in 1..=n {
            for k in j..=n {
                let name = format!("g{j}{k}");
                names.push(name.clone());
                fresh.push(if j == k {
                    Parameter::real(&name).with(Constraint::Positive)
                } else {
                    Parameter::complex(&name)
                });
            }
        }
        let joint = s.extended_params(fresh)?;
        let sp = |name: &str| Scalar::param(&joint, name).expect("declared above");
        let half_i = GaussianRational::i_ratio(1, 2);
        let mut omega = Form::zero(n, &joint);
        let mut gram = vec![vec![Scalar::zero(&joint); n as usize]; n as usize];
        for j in 1..=n as u32 {
            for k in j..=n as u32 {
                let entry = sp(&format!("g{j}{k}"));
                gram[(j - 1) as usize][(k - 1) as usize] = entry.clone();
                let mono = BasisMonomial { holo: 1 << (j - 1), anti: 1 << (k - 1) };
                omega = omega.add(&Form::monomial(n, &joint, mono, entry.scale(&half_i))?)?;
                if j != k {
                    gram[(k - 1) as usize][(j - 1) as usize] = entry.conjugate();
                    let flip = BasisMonomial { holo: 1 << (k - 1), anti: 1 << (j - 1) };
                    omega = omega
                        .add(&Form::monomial(n, &joint, flip, entry.conjugate().scale(&half_i))?)?;
                }
            }
        }
        let positivity = (1..=n as usize)
            .map(|k| {
                let sub: Vec<Vec<Scalar>> =
                    gram[..k].iter().map(|row| row[..k].to_vec()).collect();
                scalar_determinant(&sub, &joint)
            })
            .collect();
        Ok(MetricSpec { shape: MetricShape::GenericGram, omega, gram, positivity, metric_names: names })
    }

    /// The diagonal metric `omega = sum_j i a_j phi^{j jbar}` with positive
    /// real parameters `a_1, ..., a_n`.
    pub fn diagonal(s: &StructureSpec) -> Result<MetricSpec, HermitianError> {
        let n = s.n();
        let fresh: Vec<Parameter> = (1..=n)
            .map(|j| Parameter::real(&format!("a{j}")).with(Constraint::Positive))
            .collect();
        let names: Vec<String> = (1..=n).map(|j| format!("a{j}")).collect();
        let joint = s.extended_params(fresh)?;
        let mut omega = Form::zero(n, &joint);
        let mut gram = vec![vec![Scalar::zero(&joint); n as usize]; n as usize];
        let mut positivity = Vec::new();
        for j in 1..=n as u32 {
            let a = Scalar::param(&joint, &format!("a{j}")).expect("declared above");
            let mono = BasisMonomial { holo: 1 << (j - 1), anti: 1 << (j - 1) };
            omega = omega
                .add(&Form::monomial(n, &joint, mono, a.scale(&GaussianRational::i()))?)?;
            gram[(j - 1) as usize][(j - 1) as usize] = a.scale(&GaussianRational::from_int(2));
            positivity.push(a);
        }
        Ok(MetricSpec { shape: MetricShape::Diagonal, omega, gram, positivity, metric_names: names })
    }

    pub fn shape(&self) -> MetricShape {
        self.shape
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn n(&self) -> u8 {
        self.omega.n()
    }

    /// The parameter set of the metric: structure parameters followed by the
    /// fresh metric parameters.
    pub fn params(&self) -> &Arc<ParamSet> {
        self.omega.params()
    }

    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn positivity(&self) -> &[Scalar] {
        &self.positivity
    }

    pub fn metric_names(&self) -> &[String] {
        &self.metric_names
    }

    /// Checks every admissibility inequality at the assignment; the first
    /// violated polynomial is reported.
    pub fn check_admissible(&self, asg: &Assignment) -> Result<(), HermitianError> {
        for p in &self.positivity {
            let v = p.instantiate(asg)?;
            if !(v.is_real() && v.re().is_positive()) {
                return Err(HermitianError::Inadmissible {
                    polynomial: p.render_pretty(),
                    value: v.to_string(),
                });
            }
        }
        Ok(())
    }

    /// `omega^k` for `0 <= k <= n`.
    pub fn power(&self, k: u32) -> Result<Form, HermitianError> {
        let n = self.n();
        if k > n as u32 {
            return Err(HermitianError::PowerOutOfRange { k, n });
        }
        let mut acc = Form::monomial(
            n,
            self.params(),
            BasisMonomial { holo: 0, anti: 0 },
            Scalar::one(self.params()),
        )?;
        for _ in 0..k {
            acc = acc.wedge(&self.omega)?;
        }
        Ok(acc)
    }

    /// Random values for the metric parameters that are admissible by
    /// construction: a positive definite Gram sample, or positive rationals
    /// for the diagonal shape.
    pub fn sample_values(&self, rng: &mut ChaCha8Rng) -> Vec<(String, GaussianRational)> {
        match self.shape {
            MetricShape::Diagonal => self
                .metric_names
                .iter()
                .map(|name| {
                    (name.clone(), GaussianRational::from_rational(sample::positive_rational(rng)))
                })
                .collect(),
            MetricShape::GenericDim3 => {
                let g = sample::positive_definite_gram(3, rng);
                let i = GaussianRational::i();
                vec![
                    ("r2".into(), g[0][0].clone()),
                    ("s2".into(), g[1][1].clone()),
                    ("t2".into(), g[2][2].clone()),
                    ("u".into(), &i * &g[0][1]),
                    ("v".into(), &i * &g[1][2]),
                    ("z".into(), &i * &g[0][2]),
                ]
            }
            MetricShape::GenericGram => {
                let n = self.n() as usize;
                let g = sample::positive_definite_gram(n, rng);
                let mut pairs = Vec::new();
                for j in 0..n {
                    for k in j..n {
                        pairs.push((format!("g{}{}", j + 1, k + 1), g[j][k].clone()));
                    }
                }
                pairs
            }
        }
    }
}

/// The symbolic forms the classification predicates inspect.
#[derive(Clone, Debug)]
pub struct CurvatureForms {
    pub d_omega: Form,
    pub dc_omega: Form,
    /// `d(omega) /\ d^c(omega)`.
    pub torsion: Form,
    /// Entry `k-1` holds `dd^c(omega^k)`, for `k = 1 ..= n-1`.
    pub ddc_powers: Vec<Form>,
    /// `d(omega^{n-1})`.
    pub d_omega_top: Form,
}

/// Supremum of the admissible epsilon in the strengthened positivity
/// hypothesis, over assignments where `dd^c omega >= 0` holds.
#[derive(Clone, Debug, PartialEq)]
pub enum SupEpsilon {
    /// Every positive epsilon is admissible.
    Unbounded,
    /// Exact supremum, from diagonal coefficient ratios.
    Value(BigRational),
    /// Bisection bracket for non-diagonal instances: admissible at the low
    /// end, failing at the high end; not an exact supremum.
    Interval(BigRational, BigRational),
    /// No positive epsilon is admissible.
    Infeasible,
}

impl SupEpsilon {
    pub fn render(&self) -> String {
        match self {
            SupEpsilon::Unbounded => "unbounded".into(),
            SupEpsilon::Value(v) => format!("sup = {v}"),
            SupEpsilon::Interval(lo, hi) => format!("within [{lo}, {hi}]"),
            SupEpsilon::Infeasible => "no positive epsilon".into(),
        }
    }
}

/// Detailed outcome of the strengthened positivity check.
#[derive(Clone, Debug)]
pub struct HigherDimReport {
    pub epsilon: Option<BigRational>,
    pub base: SignReport,
    pub steps: Vec<(u32, SignReport)>,
    pub sup: Option<SupEpsilon>,
    pub verdict: Truth,
    pub certificate: String,
}

/// Per-level outcome of the alternating-sum ladder.
#[derive(Clone, Debug)]
pub struct PlurinegStep {
    pub ell: u32,
    pub report: SignReport,
}

#[derive(Clone, Debug)]
pub struct PlurinegReport {
    pub gauduchon: Truth,
    pub steps: Vec<PlurinegStep>,
    pub verdict: Truth,
    pub certificate: String,
}

fn binom(a: u32, b: u32) -> i64 {
    if b > a {
        return 0;
    }
    let mut acc: i64 = 1;
    for j in 0..b.min(a - b) {
        acc = acc * (a - j) as i64 / (j + 1) as i64;
    }
    acc
}

pub fn render_assignment(asg: &Assignment) -> String {
    let pairs = asg.pairs();
    if pairs.is_empty() {
        return "(no parameters)".into();
    }
    pairs.iter().map(|(n, v)| format!("{n} = {v}")).collect::<Vec<_>>().join(", ")
}

fn truth_ge(v: &SignVerdict) -> Truth {
    if v.nonneg_certified() {
        Truth::True
    } else if v.nonneg_refuted() {
        Truth::False
    } else {
        Truth::Unknown
    }
}

fn truth_le(v: &SignVerdict) -> Truth {
    if v.nonpos_certified() {
        Truth::True
    } else if v.nonpos_refuted() {
        Truth::False
    } else {
        Truth::Unknown
    }
}

/// Caches all symbolic forms needed to classify one structure-and-metric
/// pair, so that numeric classification of many assignments stays cheap.
#[derive(Clone, Debug)]
pub struct Classifier {
    structure: StructureSpec,
    metric: MetricSpec,
    omega_powers: Vec<Form>,
    curvature: CurvatureForms,
    /// `S_ell` for `ell = 0 ..= n-3` (empty below dimension three).
    ladder: Vec<Form>,
    /// Entry `q-2` holds `omega /\ dd^c(omega^{q-1})`, for `q = 2 ..= n-2`.
    mixed: Vec<Form>,
}

impl Classifier {
    pub fn new(structure: &StructureSpec, metric: &MetricSpec) -> Result<Self, HermitianError> {
        let n = structure.n();
        if metric.n() != n {
            return Err(HermitianError::Form(FormError::DimensionMismatch));
        }
        if n < 2 {
            return Err(HermitianError::UnsupportedDimension(n));
        }
        let params = metric.params();
        let omega = structure.reduce(metric.omega())?;
        let unit = Form::monomial(
            n,
            params,
            BasisMonomial { holo: 0, anti: 0 },
            Scalar::one(params),
        )?;
        let mut omega_powers = vec![unit];
        for k in 1..=n as usize {
            let next = structure.reduce(&omega_powers[k - 1].wedge(&omega)?)?;
            omega_powers.push(next);
        }
        let d_omega = structure.differential(&omega)?;
        let dc_omega = structure.dc(&omega)?;
        let torsion = structure.reduce(&d_omega.wedge(&dc_omega)?)?;
        let mut ddc_powers = Vec::new();
        for k in 1..n as usize {
            ddc_powers.push(structure.ddc(&omega_powers[k])?);
        }
        let d_omega_top = structure.differential(&omega_powers[n as usize - 1])?;
        let mut ladder = Vec::new();
        if n >= 3 {
            for ell in 0..=(n as u32 - 3) {
                let mut acc = Form::zero(n, params);
                for k in 1..=(n as u32 - ell - 2) {
                    let c = binom(n as u32, k) * binom(n as u32 - k - 2, ell);
                    let signed = if (n as u32 - k - ell) % 2 == 1 { -c } else { c };
                    let term = ddc_powers[(k - 1) as usize]
                        .wedge(&omega_powers[(n as u32 - k - 2 - ell) as usize])?
                        .scale_constant(&GaussianRational::from_int(signed));
                    acc = acc.add(&term)?;
                }
                ladder.push(structure.reduce(&acc)?);
            }
        }
        let mut mixed = Vec::new();
        for q in 2..=(n as u32).saturating_sub(2) {
            let m = omega_powers[1].wedge(&ddc_powers[(q - 2) as usize])?;
            mixed.push(structure.reduce(&m)?);
        }
        let curvature = CurvatureForms { d_omega, dc_omega, torsion, ddc_powers, d_omega_top };
        Ok(Classifier {
            structure: structure.clone(),
            metric: metric.clone(),
            omega_powers,
            curvature,
            ladder,
            mixed,
        })
    }

    pub fn n(&self) -> u8 {
        self.structure.n()
    }

    pub fn structure(&self) -> &StructureSpec {
        &self.structure
    }

    pub fn metric(&self) -> &MetricSpec {
        &self.metric
    }

    pub fn curvature(&self) -> &CurvatureForms {
        &self.curvature
    }

    pub fn omega_power(&self, k: u32) -> Result<&Form, HermitianError> {
        self.omega_powers
            .get(k as usize)
            .ok_or(HermitianError::PowerOutOfRange { k, n: self.n() })
    }

    /// The ladder form `S_ell`, of bidegree `(n-1-ell, n-1-ell)`.
    pub fn ladder(&self) -> &[Form] {
        &self.ladder
    }

    /// Rejects assignments that break a structure relation, a declared
    /// parameter constraint, or an admissibility inequality.
    pub fn validate_assignment(&self, asg: &Assignment) -> Result<(), HermitianError> {
        if !asg.warnings.is_empty() {
            return Err(HermitianError::ConstraintViolated { detail: asg.warnings.join("; ") });
        }
        for rule in self.structure.rules() {
            if !rule.holds_at(asg)? {
                return Err(HermitianError::RelationViolated { relation: rule.describe() });
            }
        }
        self.metric.check_admissible(asg)
    }

    /// Assignments for every parameter, drawn from the default samplers.
    pub fn sample_assignments(
        &self,
        count: u32,
        seed: u64,
    ) -> Result<Vec<Assignment>, HermitianError> {
        let structure = self.structure.clone();
        self.sample_assignments_with(count, seed, &mut |rng| sample::structure_values(&structure, rng))
    }

    /// Assignments whose structure-parameter values come from the given
    /// source (families with relations the default sampler cannot satisfy
    /// supply their own).
    pub fn sample_assignments_with(
        &self,
        count: u32,
        seed: u64,
        structure_source: &mut dyn FnMut(
            &mut ChaCha8Rng,
        )
            -> Result<Vec<(String, GaussianRational)>, HermitianError>,
    ) -> Result<Vec<Assignment>, HermitianError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let mut pairs = structure_source(&mut rng)?;
            pairs.extend(self.metric.sample_values(&mut rng));
            out.push(self.metric.params().assignment(&pairs)?);
        }
        Ok(out)
    }

    /// Full classification in the requested mode.
    pub fn classify(
        &self,
        mode: &SignMode,
        epsilon: Option<&BigRational>,
    ) -> Result<ClassificationReport, HermitianError> {
        match mode {
            SignMode::Symbolic => self.classify_symbolic(epsilon),
            SignMode::Numeric(asg) => self.classify_numeric(asg, epsilon),
            SignMode::Sampled { count, seed } => {
                let assignments = self.sample_assignments(*count, *seed)?;
                self.classify_samples(&assignments, epsilon, &format!("seed {seed}"))
            }
        }
    }

    /// Exact classification at one admissible assignment.
    pub fn classify_numeric(
        &self,
        asg: &Assignment,
        epsilon: Option<&BigRational>,
    ) -> Result<ClassificationReport, HermitianError> {
        self.validate_assignment(asg)?;
        let witness = render_assignment(asg);
        let zero_property = |f: &Form, label: &str| -> Result<PropertyReport, HermitianError> {
            let v = f.instantiate(asg)?;
            Ok(if v.is_zero() {
                PropertyReport::new(Truth::True, format!("{label} = 0 at the assignment"))
                    .with_witness(witness.clone())
            } else {
                PropertyReport::new(Truth::False, format!("{label} = {}", v.render_text()))
                    .with_witness(witness.clone())
            })
        };
        let kahler = zero_property(&self.curvature.d_omega, "d(omega)")?;
        let pluriclosed = zero_property(&self.curvature.ddc_powers[0], "dd^c(omega)")?;
        let base_sign =
            sign_of_form(&self.curvature.ddc_powers[0], &SignMode::Numeric(asg.clone()))?;
        let sign_property = |verdict: Truth, sr: &SignReport| {
            let mut p = PropertyReport::new(
                verdict,
                format!("dd^c(omega) is {}; {}", sr.verdict.tag.label(), sr.certificate),
            );
            p.witness = match verdict {
                Truth::False => sr
                    .verdict
                    .negative_witness
                    .as_ref()
                    .or(sr.verdict.positive_witness.as_ref())
                    .map(|w| format!("{} (pairing value {})", w.kind.render(), w.value)),
                _ => Some(witness.clone()),
            };
            p
        };
        let pluripositive = {
            let t = truth_ge(&base_sign.verdict);
            let mut p = sign_property(t, &base_sign);
            if t == Truth::False {
                p.witness = base_sign
                    .verdict
                    .negative_witness
                    .as_ref()
                    .map(|w| format!("{} (pairing value {})", w.kind.render(), w.value));
            }
            p
        };
        let plurinegative = {
            let t = truth_le(&base_sign.verdict);
            let mut p = sign_property(t, &base_sign);
            if t == Truth::False {
                p.witness = base_sign
                    .verdict
                    .positive_witness
                    .as_ref()
                    .map(|w| format!("{} (pairing value {})", w.kind.render(), w.value));
            }
            p
        };
        let balanced = zero_property(&self.curvature.d_omega_top, "d(omega^{n-1})")?;
        let gauduchon =
            zero_property(&self.curvature.ddc_powers[self.n() as usize - 2], "dd^c(omega^{n-1})")?;
        let torsion_zero = self.curvature.torsion.instantiate(asg)?.is_zero();
        let guan_li = {
            let verdict = if pluriclosed.verdict == Truth::True && torsion_zero {
                Truth::True
            } else {
                Truth::False
            };
            PropertyReport::new(
                verdict,
                format!(
                    "dd^c(omega) {}= 0 and d(omega) /\\ d^c(omega) {}= 0 at the assignment",
                    if pluriclosed.verdict == Truth::True { "" } else { "!" },
                    if torsion_zero { "" } else { "!" },
                ),
            )
            .with_witness(witness.clone())
        };
        let plurineg = self.plurineg_numeric(asg, gauduchon.verdict)?;
        let plurineg_n = PropertyReport::new(plurineg.verdict, plurineg.certificate.clone())
            .with_witness(witness.clone());
        let hd = self.higher_dim_numeric(asg, epsilon)?;
        let higher_dim =
            PropertyReport::new(hd.verdict, hd.certificate.clone()).with_witness(witness.clone());
        Ok(ClassificationReport {
            kahler,
            pluriclosed,
            pluripositive,
            plurinegative,
            balanced,
            gauduchon,
            guan_li,
            plurineg_n,
            higher_dim,
        })
    }

    /// Symbolic classification: identities are decided outright, everything
    /// else is reported as conditions on the parameters.
    pub fn classify_symbolic(
        &self,
        epsilon: Option<&BigRational>,
    ) -> Result<ClassificationReport, HermitianError> {
        let kahler = symbolic_zero_property(&self.curvature.d_omega, "d(omega)");
        let pluriclosed = symbolic_zero_property(&self.curvature.ddc_powers[0], "dd^c(omega)");
        let base_sign = sign_of_form(&self.curvature.ddc_powers[0], &SignMode::Symbolic)?;
        let pluripositive = symbolic_sign_property(&base_sign, true, "dd^c(omega)");
        let plurinegative = symbolic_sign_property(&base_sign, false, "dd^c(omega)");
        let balanced = symbolic_zero_property(&self.curvature.d_omega_top, "d(omega^{n-1})");
        let gauduchon = symbolic_zero_property(
            &self.curvature.ddc_powers[self.n() as usize - 2],
            "dd^c(omega^{n-1})",
        );
        let torsion_zero =
            symbolic_zero_property(&self.curvature.torsion, "d(omega) /\\ d^c(omega)");
        let guan_li = PropertyReport::new(
            pluriclosed.verdict.and(torsion_zero.verdict),
            format!("{}; {}", pluriclosed.certificate, torsion_zero.certificate),
        );
        let plurineg = self.plurineg_symbolic(gauduchon.verdict)?;
        let plurineg_n = PropertyReport::new(plurineg.verdict, plurineg.certificate.clone());
        let hd = self.higher_dim_symbolic(epsilon)?;
        let higher_dim = PropertyReport::new(hd.verdict, hd.certificate.clone());
        Ok(ClassificationReport {
            kahler,
            pluriclosed,
            pluripositive,
            plurinegative,
            balanced,
            gauduchon,
            guan_li,
            plurineg_n,
            higher_dim,
        })
    }

    /// Classification of many assignments, aggregated per property.
    pub fn classify_samples(
        &self,
        assignments: &[Assignment],
        epsilon: Option<&BigRational>,
        note: &str,
    ) -> Result<ClassificationReport, HermitianError> {
        let mut reports = Vec::with_capacity(assignments.len());
        for asg in assignments {
            reports.push((self.classify_numeric(asg, epsilon)?, render_assignment(asg)));
        }
        let agg = |pick: fn(&ClassificationReport) -> &PropertyReport| {
            aggregate_property(&reports, pick, note)
        };
        Ok(ClassificationReport {
            kahler: agg(|r| &r.kahler),
            pluriclosed: agg(|r| &r.pluriclosed),
            pluripositive: agg(|r| &r.pluripositive),
            plurinegative: agg(|r| &r.plurinegative),
            balanced: agg(|r| &r.balanced),
            gauduchon: agg(|r| &r.gauduchon),
            guan_li: agg(|r| &r.guan_li),
            plurineg_n: agg(|r| &r.plurineg_n),
            higher_dim: agg(|r| &r.higher_dim),
        })
    }

    /// The polynomial system whose vanishing is the balanced condition
    /// `d(omega^{n-1}) = 0`.
    pub fn balanced_condition(&self) -> ConditionSet {
        let items = self
            .curvature
            .d_omega_top
            .terms()
            .map(|(mono, coeff)| Condition {
                poly: coeff.clone(),
                relation: Relation::EqZero,
                provenance: format!("coefficient of phi[{}] in d(omega^{{n-1}})", mono.compact()),
            })
            .collect();
        ConditionSet { items }
    }

    /// The alternating-sum ladder: the gauduchon equation plus `S_ell <= 0`
    /// for every level.
    pub fn plurineg(&self, mode: &SignMode) -> Result<PlurinegReport, HermitianError> {
        match mode {
            SignMode::Numeric(asg) => {
                let g = self
                    .curvature
                    .ddc_powers
                    .last()
                    .expect("n >= 2")
                    .instantiate(asg)?
                    .is_zero();
                self.plurineg_numeric(asg, if g { Truth::True } else { Truth::False })
            }
            SignMode::Symbolic => {
                let g = symbolic_zero_property(
                    self.curvature.ddc_powers.last().expect("n >= 2"),
                    "dd^c(omega^{n-1})",
                );
                self.plurineg_symbolic(g.verdict)
            }
            SignMode::Sampled { count, seed } => {
                let assignments = self.sample_assignments(*count, *seed)?;
                let mut failures = 0usize;
                let mut unknowns = 0usize;
                let mut first: Option<PlurinegReport> = None;
                for asg in &assignments {
                    let g = self
                        .curvature
                        .ddc_powers
                        .last()
                        .expect("n >= 2")
                        .instantiate(asg)?
                        .is_zero();
                    let r =
                        self.plurineg_numeric(asg, if g { Truth::True } else { Truth::False })?;
                    match r.verdict {
                        Truth::False => failures += 1,
                        Truth::True => {}
                        _ => unknowns += 1,
                    }
                    if first.is_none() {
                        first = Some(r);
                    }
                }
                let mut report = first.expect("count > 0");
                report.verdict = if failures == assignments.len() {
                    Truth::False
                } else if failures > 0 {
                    Truth::Conditional
                } else if unknowns > 0 {
                    Truth::Unknown
                } else {
                    Truth::True
                };
                report.certificate = format!(
                    "over {} sampled admissible assignments (seed {seed}): {} failures, {} undecided",
                    assignments.len(),
                    failures,
                    unknowns
                );
                Ok(report)
            }
        }
    }

    fn plurineg_numeric(
        &self,
        asg: &Assignment,
        gauduchon: Truth,
    ) -> Result<PlurinegReport, HermitianError> {
        let mut steps = Vec::new();
        let mut verdict = gauduchon;
        let mut parts = vec![format!("gauduchon equation: {}", gauduchon.label())];
        for (ell, s) in self.ladder.iter().enumerate() {
            let sr = sign_of_form(s, &SignMode::Numeric(asg.clone()))?;
            verdict = verdict.and(truth_le(&sr.verdict));
            let notion = if ell == 0 { "" } else { " (weak sense: pairings against products of simple positive forms)" };
            parts.push(format!("S_{ell} {} 0: {}{}", '\u{2264}', sr.verdict.tag.label(), notion));
            steps.push(PlurinegStep { ell: ell as u32, report: sr });
        }
        Ok(PlurinegReport { gauduchon, steps, verdict, certificate: parts.join("; ") })
    }

    fn plurineg_symbolic(&self, gauduchon: Truth) -> Result<PlurinegReport, HermitianError> {
        let mut steps = Vec::new();
        let mut verdict = gauduchon;
        let mut parts = vec![format!("gauduchon equation: {}", gauduchon.label())];
        for (ell, s) in self.ladder.iter().enumerate() {
            let sr = sign_of_form(s, &SignMode::Symbolic)?;
            let (t, text) = symbolic_sign_truth(&sr, false);
            verdict = verdict.and(t);
            parts.push(format!("S_{ell} {} 0: {}", '\u{2264}', text));
            steps.push(PlurinegStep { ell: ell as u32, report: sr });
        }
        Ok(PlurinegReport { gauduchon, steps, verdict, certificate: parts.join("; ") })
    }

    /// The strengthened positivity hypothesis at one assignment: with an
    /// epsilon, the exact per-degree check; without one, the supremal
    /// admissible epsilon.
    pub fn higher_dim(
        &self,
        mode: &SignMode,
        epsilon: Option<&BigRational>,
    ) -> Result<HigherDimReport, HermitianError> {
        match mode {
            SignMode::Numeric(asg) => self.higher_dim_numeric(asg, epsilon),
            SignMode::Symbolic => self.higher_dim_symbolic(epsilon),
            SignMode::Sampled { count, seed } => {
                let assignments = self.sample_assignments(*count, *seed)?;
                let mut failures = 0usize;
                let mut unknowns = 0usize;
                let mut first: Option<HigherDimReport> = None;
                for asg in &assignments {
                    let r = self.higher_dim_numeric(asg, epsilon)?;
                    match r.verdict {
                        Truth::False => failures += 1,
                        Truth::True => {}
                        _ => unknowns += 1,
                    }
                    if first.is_none() {
                        first = Some(r);
                    }
                }
                let mut report = first.expect("count > 0");
                report.verdict = if failures == assignments.len() {
                    Truth::False
                } else if failures > 0 {
                    Truth::Conditional
                } else if unknowns > 0 {
                    Truth::Unknown
                } else {
                    Truth::True
                };
                report.certificate = format!(
                    "over {} sampled admissible assignments (seed {seed}): {} failures, {} undecided",
                    assignments.len(),
                    failures,
                    unknowns
                );
                Ok(report)
            }
        }
    }

    fn higher_dim_numeric(
        &self,
        asg: &Assignment,
        epsilon: Option<&BigRational>,
    ) -> Result<HigherDimReport, HermitianError> {
        let n = self.n() as u32;
        let base =
            sign_of_form(&self.curvature.ddc_powers[0], &SignMode::Numeric(asg.clone()))?;
        match epsilon {
            Some(e) => {
                let mut steps = Vec::new();
                let mut verdict = truth_ge(&base.verdict);
                let mut parts =
                    vec![format!("dd^c(omega) >= 0: {}", base.verdict.tag.label())];
                for q in 2..=n.saturating_sub(2) {
                    let a = self.curvature.ddc_powers[(q - 1) as usize].instantiate(asg)?;
                    let b = self.mixed[(q - 2) as usize].instantiate(asg)?;
                    let f = a.sub(&b.scale_constant(&GaussianRational::from_rational(e.clone())))?;
                    let sr = sign_of_form(
                        &f,
                        &SignMode::Sampled { count: 120, seed: 0xE9 + q as u64 },
                    )?;
                    verdict = verdict.and(truth_ge(&sr.verdict));
                    parts.push(format!(
                        "dd^c(omega^{q}) - eps omega /\\ dd^c(omega^{}) >= 0: {}",
                        q - 1,
                        sr.verdict.tag.label()
                    ));
                    steps.push((q, sr));
                }
                let certificate = format!("eps = {e}: {}", parts.join("; "));
                Ok(HigherDimReport {
                    epsilon: Some(e.clone()),
                    base,
                    steps,
                    sup: None,
                    verdict,
                    certificate,
                })
            }
            None => {
                let (sup, note) = self.sup_epsilon_impl(asg, &base)?;
                let verdict = match &sup {
                    SupEpsilon::Infeasible => Truth::False,
                    SupEpsilon::Unbounded => Truth::True,
                    SupEpsilon::Value(v) => {
                        if v.is_positive() {
                            Truth::True
                        } else {
                            Truth::False
                        }
                    }
                    SupEpsilon::Interval(lo, _) => {
                        if lo.is_positive() {
                            Truth::True
                        } else {
                            Truth::Unknown
                        }
                    }
                };
                let certificate =
                    format!("admissible epsilon: {} ({note})", sup.render());
                Ok(HigherDimReport {
                    epsilon: None,
                    base,
                    steps: Vec::new(),
                    sup: Some(sup),
                    verdict,
                    certificate,
                })
            }
        }
    }

    fn higher_dim_symbolic(
        &self,
        epsilon: Option<&BigRational>,
    ) -> Result<HigherDimReport, HermitianError> {
        let n = self.n() as u32;
        let base = sign_of_form(&self.curvature.ddc_powers[0], &SignMode::Symbolic)?;
        let Some(e) = epsilon else {
            return Ok(HigherDimReport {
                epsilon: None,
                base,
                steps: Vec::new(),
                sup: None,
                verdict: Truth::Unknown,
                certificate:
                    "symbolic mode needs an explicit epsilon; supply one or use a numeric assignment"
                        .into(),
            });
        };
        let (bt, btext) = symbolic_sign_truth(&base, true);
        let mut verdict = bt;
        let mut parts = vec![format!("dd^c(omega) >= 0: {btext}")];
        let mut steps = Vec::new();
        for q in 2..=n.saturating_sub(2) {
            let f = self.curvature.ddc_powers[(q - 1) as usize].sub(
                &self.mixed[(q - 2) as usize]
                    .scale_constant(&GaussianRational::from_rational(e.clone())),
            )?;
            let sr = sign_of_form(&f, &SignMode::Symbolic)?;
            let (t, text) = symbolic_sign_truth(&sr, true);
            verdict = verdict.and(t);
            parts.push(format!("step q = {q}: {text}"));
            steps.push((q, sr));
        }
        Ok(HigherDimReport {
            epsilon: Some(e.clone()),
            base,
            steps,
            sup: None,
            verdict,
            certificate: format!("eps = {e}: {}", parts.join("; ")),
        })
    }

    /// Supremal admissible epsilon at an assignment, with a note describing
    /// the method used.
    pub fn sup_epsilon(&self, asg: &Assignment) -> Result<(SupEpsilon, String), HermitianError> {
        let base =
            sign_of_form(&self.curvature.ddc_powers[0], &SignMode::Numeric(asg.clone()))?;
        self.sup_epsilon_impl(asg, &base)
    }

    fn sup_epsilon_impl(
        &self,
        asg: &Assignment,
        base: &SignReport,
    ) -> Result<(SupEpsilon, String), HermitianError> {
        if base.verdict.nonneg_refuted() {
            return Ok((
                SupEpsilon::Infeasible,
                "dd^c(omega) has a strictly negative pairing".into(),
            ));
        }
        if !base.verdict.nonneg_certified() {
            return Err(HermitianError::Undecided(
                "nonnegativity of dd^c(omega) could not be settled".into(),
            ));
        }
        let n = self.n() as u32;
        if n < 4 {
            return Ok((
                SupEpsilon::Unbounded,
                "no degree between 2 and n-2; positivity of dd^c(omega) is the whole hypothesis"
                    .into(),
            ));
        }
        let mut uppers: Vec<BigRational> = Vec::new();
        let mut lowers: Vec<BigRational> = Vec::new();
        let mut diagonal = true;
        'outer: for q in 2..=n - 2 {
            let a_form = self.curvature.ddc_powers[(q - 1) as usize].instantiate(asg)?;
            let b_form = self.mixed[(q - 2) as usize].instantiate(asg)?;
            let (a_prof, b_prof) =
                match (diagonal_profile(&a_form)?, diagonal_profile(&b_form)?) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        diagonal = false;
                        break 'outer;
                    }
                };
            let mut keys: Vec<IndexSet> =
                a_prof.iter().chain(b_prof.iter()).map(|(k, _)| *k).collect();
            keys.sort_unstable();
            keys.dedup();
            for key in keys {
                let a = a_prof
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(BigRational::zero);
                let b = b_prof
                    .iter()
                    .find(|(k, _)| *k == key)
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(BigRational::zero);
                if b.is_positive() {
                    uppers.push(&a / &b);
                } else if b.is_zero() {
                    if a.is_negative() {
                        return Ok((
                            SupEpsilon::Infeasible,
                            format!("a diagonal coefficient of dd^c(omega^{q}) is negative"),
                        ));
                    }
                } else if a.is_negative() {
                    lowers.push(&a / &b);
                }
            }
        }
        if diagonal {
            let note = "exact diagonal coefficient ratios".to_string();
            let hi = uppers.iter().min().cloned();
            let lo = lowers.iter().max().cloned().unwrap_or_else(BigRational::zero);
            return Ok(match hi {
                None => (SupEpsilon::Unbounded, note),
                Some(h) => {
                    if !h.is_positive() || lo > h {
                        (SupEpsilon::Infeasible, note)
                    } else if lo.is_positive() {
                        (
                            SupEpsilon::Value(h.clone()),
                            format!("{note}; admissible interval starts at {lo}"),
                        )
                    } else {
                        (SupEpsilon::Value(h), note)
                    }
                }
            });
        }
        self.sup_epsilon_bisect(asg)
    }

    fn sup_epsilon_bisect(
        &self,
        asg: &Assignment,
    ) -> Result<(SupEpsilon, String), HermitianError> {
        let note = "bisection over sampled verdicts; a bracket, not a certificate".to_string();
        let truth_at = |e: &BigRational| -> Result<Truth, HermitianError> {
            Ok(self.higher_dim_numeric(asg, Some(e))?.verdict)
        };
        let two = BigRational::from_integer(2.into());
        let mut probe = BigRational::from_integer(1.into());
        let mut last_true: Option<BigRational> = None;
        for _ in 0..24 {
            match truth_at(&probe)? {
                Truth::True => {
                    last_true = Some(probe.clone());
                    probe = &probe * &two;
                }
                _ => break,
            }
        }
        match last_true {
            None => {
                let mut lo = BigRational::from_integer(1.into());
                for _ in 0..24 {
                    lo = &lo / &two;
                    if truth_at(&lo)? == Truth::True {
                        let mut hi = &lo * &two;
                        for _ in 0..24 {
                            let mid = (&lo + &hi) / &two;
                            if truth_at(&mid)? == Truth::True {
                                lo = mid;
                            } else {
                                hi = mid;
                            }
                        }
                        return Ok((SupEpsilon::Interval(lo, hi), note));
                    }
                }
                Ok((SupEpsilon::Infeasible, format!("{note}; no admissible epsilon found")))
            }
            Some(mut lo) => {
                let mut hi = &lo * &two;
                if truth_at(&hi)? == Truth::True {
                    return Ok((SupEpsilon::Unbounded, format!("{note}; no failure found while doubling")));
                }
                for _ in 0..24 {
                    let mid = (&lo + &hi) / &two;
                    if truth_at(&mid)? == Truth::True {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                Ok((SupEpsilon::Interval(lo, hi), note))
            }
        }
    }

    /// Exact verification of `dd^c(omega^{n-1}) = (n-1) { dd^c(omega) /\
    /// omega + (n-2) d(omega) /\ d^c(omega) } /\ omega^{n-3}` as symbolic
    /// forms.
    pub fn rigidity_identity_check(&self) -> Result<bool, HermitianError> {
        let n = self.n() as u32;
        if n < 3 {
            return Err(HermitianError::UnsupportedDimension(self.n()));
        }
        let lhs = &self.curvature.ddc_powers[(n - 2) as usize];
        let inner = self.curvature.ddc_powers[0]
            .wedge(&self.omega_powers[1])?
            .add(&self.curvature.torsion.scale_constant(&GaussianRational::from_int(
                (n - 2) as i64,
            )))?;
        let rhs = inner
            .wedge(&self.omega_powers[(n - 3) as usize])?
            .scale_constant(&GaussianRational::from_int((n - 1) as i64));
        let rhs = self.structure.reduce(&rhs)?;
        Ok(*lhs == rhs)
    }
}

/// Constant diagonal monomial coefficients of a constant (q,q)-form: the
/// value at `phi^K /\ conj(phi^K)`, normalized by `i^{q^2}`. `None` when an
/// off-diagonal monomial or a non-real normalized value appears.
fn diagonal_profile(f: &Form) -> Result<Option<Vec<(IndexSet, BigRational)>>, HermitianError> {
    let Some((p, q)) = f.pure_bidegree("diagonal_profile")? else {
        return Ok(Some(Vec::new()));
    };
    if p != q {
        return Err(HermitianError::NotDiagonalBidegree(p, q));
    }
    let scale = GaussianRational::i_pow(-((q * q) as i64));
    let mut out = Vec::new();
    for (mono, coeff) in f.terms() {
        if mono.holo != mono.anti {
            return Ok(None);
        }
        let v = &coeff.as_constant().ok_or(HermitianError::NonConstant)? * &scale;
        if !v.is_real() {
            return Ok(None);
        }
        out.push((mono.holo, v.re().clone()));
    }
    Ok(Some(out))
}

fn symbolic_zero_property(f: &Form, label: &str) -> PropertyReport {
    if f.is_zero() {
        return PropertyReport::new(Truth::True, format!("{label} = 0 identically"));
    }
    for (mono, coeff) in f.terms() {
        if let Some(c) = coeff.as_constant() {
            if !c.is_zero() {
                return PropertyReport::new(
                    Truth::False,
                    format!(
                        "{label} has the constant coefficient {c} on phi[{}]",
                        mono.compact()
                    ),
                );
            }
        }
    }
    let conditions: Vec<String> =
        f.terms().map(|(mono, c)| format!("[phi[{}]] {} = 0", mono.compact(), c.render_pretty())).collect();
    PropertyReport::new(
        Truth::Conditional,
        format!("{label} = 0 exactly when: {}", conditions.join("; ")),
    )
}

fn symbolic_sign_truth(sr: &SignReport, want_nonneg: bool) -> (Truth, String) {
    let tag = sr.verdict.tag;
    if tag == SignTag::Zero {
        return (Truth::True, "identically zero".into());
    }
    if want_nonneg && tag.nonnegative() {
        return (Truth::True, sr.certificate.clone());
    }
    if !want_nonneg && tag.nonpositive() {
        return (Truth::True, sr.certificate.clone());
    }
    if (want_nonneg && tag.nonpositive()) || (!want_nonneg && tag.nonnegative()) {
        return (
            Truth::Conditional,
            format!("certified {} ; the opposite sign holds only where the form vanishes", tag.label()),
        );
    }
    let oriented = if want_nonneg { &sr.conditions } else { &sr.conditions_nonpos };
    match oriented {
        Some(cs) if !cs.is_empty() => (
            Truth::Conditional,
            format!("depends on the parameters; conditions: {}", cs.render()),
        ),
        _ => (Truth::Unknown, sr.verdict.describe()),
    }
}

fn symbolic_sign_property(sr: &SignReport, want_nonneg: bool, label: &str) -> PropertyReport {
    let (t, text) = symbolic_sign_truth(sr, want_nonneg);
    let rel = if want_nonneg { ">=" } else { "<=" };
    PropertyReport::new(t, format!("{label} {rel} 0: {text}"))
}

fn aggregate_property(
    reports: &[(ClassificationReport, String)],
    pick: fn(&ClassificationReport) -> &PropertyReport,
    note: &str,
) -> PropertyReport {
    let total = reports.len();
    let mut t = 0usize;
    let mut f = 0usize;
    let mut u = 0usize;
    let mut first_true: Option<&str> = None;
    let mut first_false: Option<&str> = None;
    for (r, witness) in reports {
        match pick(r).verdict {
            Truth::True => {
                t += 1;
                first_true.get_or_insert(witness.as_str());
            }
            Truth::False => {
                f += 1;
                first_false.get_or_insert(witness.as_str());
            }
            _ => u += 1,
        }
    }
    let verdict = if u > 0 && f == 0 {
        Truth::Unknown
    } else if u > 0 && t == 0 {
        Truth::Unknown
    } else if t > 0 && f > 0 {
        Truth::Conditional
    } else if t == total {
        Truth::True
    } else if f == total {
        Truth::False
    } else {
        Truth::Unknown
    };
    let certificate = format!(
        "sampled evidence ({note}): true at {t}, false at {f}, undecided at {u} of {total} admissible assignments"
    );
    let witness = match verdict {
        Truth::True => first_true.map(|w| format!("holds at {w}")),
        Truth::False => first_false.map(|w| format!("fails at {w}")),
        Truth::Conditional => match (first_true, first_false) {
            (Some(a), Some(b)) => Some(format!("holds at {a}; fails at {b}")),
            _ => None,
        },
        Truth::Unknown => None,
    };
    PropertyReport { verdict, certificate, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecomplex::StructureSpec;

    fn heisenberg_like() -> StructureSpec {
        let p = ParamSet::empty();
        let zero = Form::zero(3, &p);
        let d3 = Form::parse_terms(3, &p, &[("12", "1")]).unwrap();
        StructureSpec::new("heisenberg-like", 3, p, vec![zero.clone(), zero, d3], vec![]).unwrap()
    }

    fn torus(n: u8) -> StructureSpec {
        let p = ParamSet::empty();
        let zero = Form::zero(n, &p);
        StructureSpec::new("torus", n, p, vec![zero; n as usize], vec![]).unwrap()
    }

    fn eight_dim_product() -> StructureSpec {
        let p = ParamSet::empty();
        let zero = Form::zero(4, &p);
        let d3 = Form::parse_terms(4, &p, &[("12", "1")]).unwrap();
        let d4 = Form::parse_terms(4, &p, &[("2~1", "1")]).unwrap();
        StructureSpec::new("eight-dim", 4, p, vec![zero.clone(), zero, d3, d4], vec![]).unwrap()
    }

    fn scaled_solvable(alpha: i64) -> StructureSpec {
        let p = ParamSet::empty();
        let zero = Form::zero(4, &p);
        let d2 = Form::parse_terms(4, &p, &[("12", "1")]).unwrap();
        let d3 = Form::parse_terms(4, &p, &[("13", &alpha.to_string())]).unwrap();
        let d4 = Form::parse_terms(4, &p, &[("14", &(-(1 + alpha)).to_string())]).unwrap();
        StructureSpec::new("scaled-solvable", 4, p, vec![zero, d2, d3, d4], vec![]).unwrap()
    }

    fn unit_diagonal(c: &Classifier) -> Assignment {
        let pairs: Vec<(String, GaussianRational)> = c
            .metric()
            .metric_names()
            .iter()
            .map(|n| (n.clone(), GaussianRational::from_int(1)))
            .collect();
        c.metric().params().assignment(&pairs).unwrap()
    }

    #[test]
    fn generic_three_dim_metric_matches_the_classical_parametrization() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        assert!(m.omega().is_real());
        let u_coeff = m.omega().coeff(&BasisMonomial::parse("1~2", 3).unwrap());
        let expected = Scalar::param(m.params(), "u")
            .unwrap()
            .scale(&GaussianRational::ratio(1, 2));
        assert_eq!(u_coeff, expected);
        assert_eq!(m.positivity().len(), 7);
        let det = scalar_determinant(m.gram(), m.params());
        assert_eq!(det, m.positivity()[6]);
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(m.gram()[k][j], m.gram()[j][k].conjugate());
            }
        }
    }

    #[test]
    fn diagonal_metric_and_its_volume_power() {
        let s = torus(3);
        let m = MetricSpec::diagonal(&s).unwrap();
        assert_eq!(m.positivity().len(), 3);
        let c = Classifier::new(&s, &m).unwrap();
        let asg = unit_diagonal(&c);
        let top = c.omega_power(3).unwrap().instantiate(&asg).unwrap();
        let coeff = top.vol_coefficient().unwrap().as_constant().unwrap();
        assert_eq!(coeff, GaussianRational::from_int(6));
        assert!(m.power(4).is_err());
    }

    #[test]
    fn admissibility_rejects_with_the_violated_polynomial() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let mut pairs: Vec<(String, GaussianRational)> = vec![
            ("r2".into(), GaussianRational::from_int(1)),
            ("s2".into(), GaussianRational::from_int(1)),
            ("t2".into(), GaussianRational::from_int(1)),
            ("u".into(), GaussianRational::from_int(5)),
            ("v".into(), GaussianRational::zero()),
            ("z".into(), GaussianRational::zero()),
        ];
        let asg = m.params().assignment(&pairs).unwrap();
        let err = m.check_admissible(&asg).unwrap_err();
        match err {
            HermitianError::Inadmissible { polynomial, .. } => {
                assert!(polynomial.contains("u"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        pairs[3].1 = GaussianRational::ratio(1, 2);
        let ok = m.params().assignment(&pairs).unwrap();
        m.check_admissible(&ok).unwrap();
    }

    #[test]
    fn sampled_metric_values_are_admissible() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..20 {
            let pairs = m.sample_values(&mut rng);
            let asg = m.params().assignment(&pairs).unwrap();
            m.check_admissible(&asg).unwrap();
        }
    }

    #[test]
    fn classification_of_the_nilpotent_benchmark() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let pairs: Vec<(String, GaussianRational)> = vec![
            ("r2".into(), GaussianRational::from_int(2)),
            ("s2".into(), GaussianRational::from_int(2)),
            ("t2".into(), GaussianRational::from_int(2)),
            ("u".into(), GaussianRational::zero()),
            ("v".into(), GaussianRational::zero()),
            ("z".into(), GaussianRational::zero()),
        ];
        let asg = c.metric().params().assignment(&pairs).unwrap();
        let report = c.classify_numeric(&asg, None).unwrap();
        assert_eq!(report.kahler.verdict, Truth::False);
        assert_eq!(report.pluriclosed.verdict, Truth::False);
        assert_eq!(report.pluripositive.verdict, Truth::True);
        assert_eq!(report.plurinegative.verdict, Truth::False);
        assert_eq!(report.balanced.verdict, Truth::True);
        assert!(c.rigidity_identity_check().unwrap());
    }

    #[test]
    fn symbolic_balance_of_the_benchmark_is_an_identity() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let report = c.classify_symbolic(None).unwrap();
        assert_eq!(report.balanced.verdict, Truth::True);
        assert_eq!(report.pluripositive.verdict, Truth::True);
        assert_eq!(report.kahler.verdict, Truth::Conditional);
    }

    #[test]
    fn ladder_matches_the_direct_expansions() {
        let s3 = heisenberg_like();
        let m3 = MetricSpec::generic(&s3).unwrap();
        let c3 = Classifier::new(&s3, &m3).unwrap();
        assert_eq!(c3.ladder().len(), 1);
        let expected = c3.curvature().ddc_powers[0].scale_constant(&GaussianRational::from_int(3));
        assert_eq!(c3.ladder()[0], expected);

        let s4 = eight_dim_product();
        let m4 = MetricSpec::diagonal(&s4).unwrap();
        let c4 = Classifier::new(&s4, &m4).unwrap();
        assert_eq!(c4.ladder().len(), 2);
        let ddc1 = &c4.curvature().ddc_powers[0];
        let ddc2 = &c4.curvature().ddc_powers[1];
        let ell1 = ddc1.scale_constant(&GaussianRational::from_int(4));
        assert_eq!(c4.ladder()[1], ell1);
        let ell0 = ddc2
            .scale_constant(&GaussianRational::from_int(6))
            .sub(
                &c4.omega_power(1)
                    .unwrap()
                    .wedge(ddc1)
                    .unwrap()
                    .scale_constant(&GaussianRational::from_int(4)),
            )
            .unwrap();
        assert_eq!(c4.ladder()[0], ell0);
    }

    #[test]
    fn rigidity_identity_holds_in_dimension_four() {
        let s = eight_dim_product();
        let m = MetricSpec::diagonal(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        assert!(c.rigidity_identity_check().unwrap());
        let mg = MetricSpec::generic(&s).unwrap();
        let cg = Classifier::new(&s, &mg).unwrap();
        assert!(cg.rigidity_identity_check().unwrap());
    }

    #[test]
    fn supremal_epsilon_for_the_unit_diagonal_product() {
        let s = eight_dim_product();
        let m = MetricSpec::diagonal(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let asg = unit_diagonal(&c);
        let (sup, note) = c.sup_epsilon(&asg).unwrap();
        assert_eq!(sup, SupEpsilon::Value(BigRational::from_integer(1.into())));
        assert!(note.contains("diagonal"));
        let ok = c
            .higher_dim_numeric(&asg, Some(&BigRational::new(1.into(), 2.into())))
            .unwrap();
        assert_eq!(ok.verdict, Truth::True);
        let too_big = c
            .higher_dim_numeric(&asg, Some(&BigRational::from_integer(2.into())))
            .unwrap();
        assert_eq!(too_big.verdict, Truth::False);
    }

    #[test]
    fn supremal_epsilon_for_the_scaled_solvable_example() {
        let s = scaled_solvable(1);
        let m = MetricSpec::diagonal(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let asg = unit_diagonal(&c);
        let (sup, _) = c.sup_epsilon(&asg).unwrap();
        assert_eq!(sup, SupEpsilon::Value(BigRational::new(2.into(), 5.into())));
    }

    #[test]
    fn three_dim_supremum_is_unbounded_or_infeasible() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let pairs: Vec<(String, GaussianRational)> = vec![
            ("r2".into(), GaussianRational::from_int(2)),
            ("s2".into(), GaussianRational::from_int(2)),
            ("t2".into(), GaussianRational::from_int(2)),
            ("u".into(), GaussianRational::zero()),
            ("v".into(), GaussianRational::zero()),
            ("z".into(), GaussianRational::zero()),
        ];
        let asg = c.metric().params().assignment(&pairs).unwrap();
        let (sup, _) = c.sup_epsilon(&asg).unwrap();
        assert_eq!(sup, SupEpsilon::Unbounded);
    }

    #[test]
    fn sampled_classification_aggregates() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let report =
            c.classify(&SignMode::Sampled { count: 8, seed: 7 }, None).unwrap();
        assert_eq!(report.kahler.verdict, Truth::False);
        assert_eq!(report.pluripositive.verdict, Truth::True);
        assert_eq!(report.balanced.verdict, Truth::True);
        assert!(report.pluripositive.certificate.contains("8"));
    }

    #[test]
    fn balanced_condition_lists_the_obstruction() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let cs = c.balanced_condition();
        assert!(cs.is_empty(), "this structure is balanced for every metric");

        let p = ParamSet::empty();
        let zero = Form::zero(3, &p);
        let d3 = Form::parse_terms(3, &p, &[("1~1", "1")]).unwrap();
        let s_kt =
            StructureSpec::new("kodaira-like", 3, p, vec![zero.clone(), zero, d3], vec![])
                .unwrap();
        let m_kt = MetricSpec::diagonal(&s_kt).unwrap();
        let c_kt = Classifier::new(&s_kt, &m_kt).unwrap();
        let cs_kt = c_kt.balanced_condition();
        assert!(!cs_kt.is_empty());
    }

    #[test]
    fn validation_rejects_inadmissible_and_constraint_breaking_input() {
        let s = heisenberg_like();
        let m = MetricSpec::generic(&s).unwrap();
        let c = Classifier::new(&s, &m).unwrap();
        let pairs: Vec<(String, GaussianRational)> = vec![
            ("r2".into(), GaussianRational::from_int(-1)),
            ("s2".into(), GaussianRational::from_int(1)),
            ("t2".into(), GaussianRational::from_int(1)),
            ("u".into(), GaussianRational::zero()),
            ("v".into(), GaussianRational::zero()),
            ("z".into(), GaussianRational::zero()),
        ];
        let asg = c.metric().params().assignment(&pairs).unwrap();
        assert!(matches!(
            c.classify_numeric(&asg, None),
            Err(HermitianError::ConstraintViolated { .. })
        ));
    }
}
