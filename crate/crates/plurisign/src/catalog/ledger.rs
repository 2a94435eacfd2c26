//! Expected-behaviour ledger for the built-in families. The ledger is a
//! versioned JSON document embedded in the build; each entry names a family
//! variant, cites the catalog notes it came from, and lists claims about
//! curvature forms, balanced conditions, property verdicts, and admissible
//! epsilon ranges. Replaying an entry re-derives everything from the engine
//! and reports claim-by-claim agreement. Structural problems (a claim that
//! cannot even be evaluated) surface as errors naming the entry; honest
//! disagreements surface as failed claim outcomes.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{BigRational, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    default_metric, instantiate_family, sample_structure, CatalogError, Choices, FamilyId,
};
use crate::exterior::{BasisMonomial, Form};
use crate::hermitian::{
    nonneg_certificate, render_assignment, sign_of_form, Classifier, ClassificationReport,
    HermitianError, MetricSpec, MetricShape, SignMode, SignTag, SupEpsilon, Truth,
};
use crate::liecomplex::StructureSpec;
use crate::scalar::{parse_scalar, Assignment, Constraint, GaussianRational, ParamSet, Scalar};

const LEDGER_JSON: &str = include_str!("ledger.json");

/// Named values, e.g. `{"rho": "1", "u": "-1/2*i"}`. Values are scalar
/// literals in the same grammar the parser accepts everywhere else.
pub type Bindings = BTreeMap<String, String>;

/// One checkable statement about a family variant.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// The rendered text of `dd^c(omega^power)` matches exactly.
    DdcText { power: u32, text: String },
    /// The balanced condition system is empty: every admissible metric is
    /// balanced.
    BalancedIdentically,
    /// The balanced condition system matches the stored polynomials, where
    /// each side may differ by a nonzero constant factor or conjugation.
    BalancedSystem { polys: Vec<String> },
    /// No admissible metric is balanced: a positive combination of
    /// admissibility polynomials equals (a nonzero multiple of) one of the
    /// balanced conditions, so that condition cannot vanish.
    BalancedNever { combination: Vec<(String, String)> },
    /// The coefficient of `dd^c(omega)` at the given basis monomial is a
    /// real multiple of `poly`, `poly` has a sum-of-products nonnegativity
    /// certificate, and it is genuinely positive: either structurally (a
    /// term in positive parameters only, when `unless` is empty) or away
    /// from the stated vanishing locus.
    ObstructionPositive {
        monomial: String,
        poly: String,
        #[serde(default)]
        unless: Bindings,
        #[serde(default)]
        samples: u32,
        #[serde(default)]
        seed: u64,
    },
    /// A single admissible point with a definite verdict for one property.
    Witness {
        property: String,
        expect: bool,
        #[serde(default)]
        structure: Bindings,
        metric: Bindings,
        #[serde(default, skip_serializing_if = "String::is_empty")]
        note: String,
    },
    /// The property has the stated verdict for every admissible metric,
    /// checked on a deterministic grid, on seeded random samples, and
    /// (when `symbolic_decides`) by the symbolic classifier.
    Universal {
        property: String,
        expect: bool,
        #[serde(default)]
        fixed: Bindings,
        samples: u32,
        seed: u64,
        #[serde(default)]
        symbolic_decides: bool,
    },
    /// The strengthened positivity verdict at one epsilon and one metric.
    EpsilonCheck {
        epsilon: String,
        #[serde(default)]
        fixed: Bindings,
        values: Bindings,
        expect: bool,
    },
    /// The supremal admissible epsilon at one metric: an exact rational,
    /// "unbounded", or "infeasible".
    SupEpsilon {
        #[serde(default)]
        fixed: Bindings,
        values: Bindings,
        expect: String,
    },
    /// At each listed epsilon the degree-two step form is indefinite and
    /// the strengthened positivity verdict is false.
    EpsilonIndefinite {
        epsilons: Vec<String>,
        #[serde(default)]
        fixed: Bindings,
        values: Bindings,
    },
    /// At each listed epsilon and each listed diagonal metric the
    /// strengthened positivity check fails with a certified negative
    /// direction, found in the degree-two step form or in the base form.
    EpsilonNegativeDirection { epsilons: Vec<String>, diagonals: Vec<Bindings> },
    /// The purely holomorphic positivity check applies, certifies every
    /// degree, and the all-degrees-vanish flag matches.
    ParallelCertificate {
        #[serde(default)]
        fixed: Bindings,
        all_zero: bool,
    },
}

impl Claim {
    pub fn label(&self) -> String {
        match self {
            Claim::DdcText { power, .. } => format!("curvature text, power {power}"),
            Claim::BalancedIdentically => "balanced identically".into(),
            Claim::BalancedSystem { .. } => "balanced condition system".into(),
            Claim::BalancedNever { .. } => "never balanced".into(),
            Claim::ObstructionPositive { monomial, .. } => {
                format!("positive obstruction at {monomial}")
            }
            Claim::Witness { property, expect, .. } => format!("witness: {property} = {expect}"),
            Claim::Universal { property, expect, .. } => {
                format!("universal: {property} = {expect}")
            }
            Claim::EpsilonCheck { epsilon, expect, .. } => {
                format!("epsilon = {epsilon} admissible: {expect}")
            }
            Claim::SupEpsilon { expect, .. } => format!("sup epsilon: {expect}"),
            Claim::EpsilonIndefinite { .. } => "epsilon step indefinite".into(),
            Claim::EpsilonNegativeDirection { .. } => "epsilon step negative direction".into(),
            Claim::ParallelCertificate { .. } => "holomorphic positivity certificate".into(),
        }
    }
}

fn choices_unset(c: &Choices) -> bool {
    c.sign.is_none() && c.x.is_none()
}

/// One ledger entry: a family variant plus its claims.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedLedgerEntry {
    pub family: FamilyId,
    #[serde(default, skip_serializing_if = "choices_unset")]
    pub discrete: Choices,
    pub citation: String,
    pub claims: Vec<Claim>,
}

/// The embedded expected-behaviour document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExpectedLedger {
    pub version: u32,
    pub entries: Vec<ExpectedLedgerEntry>,
}

impl ExpectedLedger {
    /// No point may be claimed both strictly pluripositive and strictly
    /// plurinegative: the same witness bindings, or the same universally
    /// quantified instance, must not carry both strict signs with a true
    /// verdict. Different points of one family may of course differ.
    pub fn strictness_consistent(&self) -> bool {
        self.entries.iter().all(|entry| {
            let keys = |wanted: &str| -> Vec<String> {
                entry
                    .claims
                    .iter()
                    .filter_map(|c| match c {
                        Claim::Witness { property, expect, structure, metric, .. }
                            if *expect && property == wanted =>
                        {
                            Some(format!("point {structure:?} {metric:?}"))
                        }
                        Claim::Universal { property, expect, fixed, .. }
                            if *expect && property == wanted =>
                        {
                            Some(format!("forall {fixed:?}"))
                        }
                        _ => None,
                    })
                    .collect()
            };
            let positive = keys("pluripositive_strict");
            let negative = keys("plurinegative_strict");
            positive.iter().all(|k| !negative.contains(k))
        })
    }
}

/// Outcome of replaying a single claim.
#[derive(Clone, Debug, Serialize)]
pub struct ClaimOutcome {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

/// Outcome of replaying all claims of one entry.
#[derive(Clone, Debug, Serialize)]
pub struct EntryOutcome {
    pub family: FamilyId,
    pub label: String,
    pub citation: String,
    pub claims: Vec<ClaimOutcome>,
}

impl EntryOutcome {
    pub fn pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

/// Ledger-wide replay outcome.
#[derive(Clone, Debug, Serialize)]
pub struct LedgerReport {
    pub entries: Vec<EntryOutcome>,
}

impl LedgerReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(EntryOutcome::pass)
    }

    /// Failed claims as `(entry label, claim label, detail)` triples.
    pub fn mismatches(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for entry in &self.entries {
            for claim in &entry.claims {
                if !claim.pass {
                    out.push((entry.label.clone(), claim.label.clone(), claim.detail.clone()));
                }
            }
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| family | claim | outcome | detail | source |\n");
        out.push_str("|---|---|---|---|---|\n");
        for entry in &self.entries {
            for claim in &entry.claims {
                out.push_str(&format!(
                    "| {} | {} | {} | {} | {} |\n",
                    entry.label,
                    claim.label,
                    if claim.pass { "pass" } else { "FAIL" },
                    claim.detail.replace('|', "\\|"),
                    entry.citation.replace('|', "\\|"),
                ));
            }
        }
        out
    }
}

/// The raw embedded ledger document.
pub fn ledger_source() -> &'static str {
    LEDGER_JSON
}

/// Parses a ledger document, checking the schema version.
pub fn parse_ledger(text: &str) -> Result<ExpectedLedger, CatalogError> {
    let ledger: ExpectedLedger = serde_json::from_str(text)
        .map_err(|e| CatalogError::Ledger(format!("malformed ledger JSON: {e}")))?;
    if ledger.version != 1 {
        return Err(CatalogError::Ledger(format!(
            "unsupported ledger version {}",
            ledger.version
        )));
    }
    Ok(ledger)
}

/// The embedded expected-behaviour ledger.
pub fn expected_ledger() -> Result<ExpectedLedger, CatalogError> {
    parse_ledger(LEDGER_JSON)
}

/// Replays every entry of a ledger against the engine.
pub fn replay_ledger(ledger: &ExpectedLedger) -> Result<LedgerReport, CatalogError> {
    let entries =
        ledger.entries.iter().map(replay_entry).collect::<Result<Vec<_>, CatalogError>>()?;
    Ok(LedgerReport { entries })
}

/// Replays one entry against the engine.
pub fn replay_entry(entry: &ExpectedLedgerEntry) -> Result<EntryOutcome, CatalogError> {
    let base = Instance::build(entry.family, &entry.discrete, &Bindings::new())?;
    let label = base.spec.label().to_string();
    let mut claims = Vec::with_capacity(entry.claims.len());
    for (index, claim) in entry.claims.iter().enumerate() {
        let (pass, detail) = check_claim(entry, &base, claim).map_err(|e| {
            CatalogError::Ledger(format!(
                "entry `{label}` claim {} ({}): {e}",
                index + 1,
                claim.label()
            ))
        })?;
        claims.push(ClaimOutcome { label: claim.label(), pass, detail });
    }
    Ok(EntryOutcome { family: entry.family, label, citation: entry.citation.clone(), claims })
}

struct Instance {
    family: FamilyId,
    spec: StructureSpec,
    metric: MetricSpec,
    classifier: Classifier,
}

impl Instance {
    fn build(
        family: FamilyId,
        discrete: &Choices,
        fixed: &Bindings,
    ) -> Result<Instance, CatalogError> {
        let mut spec = instantiate_family(family, discrete)?;
        if !fixed.is_empty() {
            spec = spec.substitute(&parse_bindings(fixed)?)?;
        }
        let metric = default_metric(&spec)?;
        let classifier = Classifier::new(&spec, &metric)?;
        Ok(Instance { family, spec, metric, classifier })
    }

    fn assignment(&self, maps: &[&Bindings]) -> Result<Assignment, CatalogError> {
        let mut pairs = Vec::new();
        for bindings in maps {
            pairs.extend(parse_bindings(bindings)?);
        }
        self.metric
            .params()
            .assignment(&pairs)
            .map_err(|e| CatalogError::Ledger(format!("bad point: {e}")))
    }

    fn validated(&self, maps: &[&Bindings]) -> Result<Assignment, CatalogError> {
        let asg = self.assignment(maps)?;
        self.classifier
            .validate_assignment(&asg)
            .map_err(|e| CatalogError::Ledger(format!("inadmissible point: {e}")))?;
        Ok(asg)
    }
}

fn constant(text: &str) -> Result<GaussianRational, CatalogError> {
    let empty = ParamSet::empty();
    let scalar = parse_scalar(&empty, text)
        .map_err(|e| CatalogError::Ledger(format!("bad constant `{text}`: {e}")))?;
    scalar
        .as_constant()
        .ok_or_else(|| CatalogError::Ledger(format!("`{text}` is not a constant")))
}

fn parse_bindings(bindings: &Bindings) -> Result<Vec<(String, GaussianRational)>, CatalogError> {
    bindings.iter().map(|(name, value)| Ok((name.clone(), constant(value)?))).collect()
}

fn rational(text: &str) -> Result<BigRational, CatalogError> {
    let value = constant(text)?;
    if !value.im().is_zero() {
        return Err(CatalogError::Ledger(format!("`{text}` is not a real rational")));
    }
    Ok(value.re().clone())
}

/// The factor `lambda` with `target = lambda * base`, if any.
fn proportional(base: &Scalar, target: &Scalar) -> Option<GaussianRational> {
    if base.is_zero() || target.is_zero() {
        return if base.is_zero() && target.is_zero() {
            Some(GaussianRational::one())
        } else {
            None
        };
    }
    let (mono, base_coeff) = base.leading()?;
    let target_coeff = target.coeff(mono);
    if target_coeff.is_zero() {
        return None;
    }
    let lambda = &target_coeff * &base_coeff.inv()?;
    if base.scale(&lambda) == *target {
        Some(lambda)
    } else {
        None
    }
}

/// Whether two polynomials agree up to a nonzero constant factor or
/// conjugation followed by such a factor.
fn matches_up_to_scale(stored: &Scalar, engine: &Scalar) -> bool {
    proportional(stored, engine).is_some()
        || proportional(&stored.conjugate(), engine).is_some()
}

fn positive_real(c: &GaussianRational) -> bool {
    c.im().is_zero() && c.re().is_positive()
}

fn indet_is_positive(params: &Arc<ParamSet>, slot: usize) -> bool {
    params.params().iter().enumerate().any(|(pi, p)| {
        params.indet_of_param(pi) == slot && p.constraints.contains(&Constraint::Positive)
    })
}

/// A term `c * m` with positive real `c` whose monomial involves only
/// positive-constrained parameters, so it is bounded away from zero on the
/// admissible set in the remaining variables.
fn has_structurally_positive_term(poly: &Scalar, params: &Arc<ParamSet>) -> bool {
    poly.terms().any(|(mono, coeff)| {
        positive_real(coeff)
            && mono
                .0
                .iter()
                .enumerate()
                .all(|(slot, &exp)| exp == 0 || indet_is_positive(params, slot))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BaseProperty {
    Kahler,
    Pluriclosed,
    Pluripositive,
    Plurinegative,
    Balanced,
    Gauduchon,
    GuanLi,
    PlurinegN,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Property {
    base: BaseProperty,
    strict: bool,
}

fn parse_property(name: &str) -> Result<Property, CatalogError> {
    let (base_name, strict) = match name.strip_suffix("_strict") {
        Some(prefix) => (prefix, true),
        None => (name, false),
    };
    let base = match base_name {
        "kahler" => BaseProperty::Kahler,
        "pluriclosed" => BaseProperty::Pluriclosed,
        "pluripositive" => BaseProperty::Pluripositive,
        "plurinegative" => BaseProperty::Plurinegative,
        "balanced" => BaseProperty::Balanced,
        "gauduchon" => BaseProperty::Gauduchon,
        "guan_li" => BaseProperty::GuanLi,
        "plurineg_n" => BaseProperty::PlurinegN,
        other => {
            return Err(CatalogError::Ledger(format!("unknown property `{other}`")));
        }
    };
    if strict && !matches!(base, BaseProperty::Pluripositive | BaseProperty::Plurinegative) {
        return Err(CatalogError::Ledger(format!(
            "`{name}`: only the curvature sign properties have strict variants"
        )));
    }
    Ok(Property { base, strict })
}

fn truth_of_zero(form: &Form, asg: &Assignment) -> Result<Truth, CatalogError> {
    Ok(if form.instantiate(asg)?.is_zero() { Truth::True } else { Truth::False })
}

fn truth_nonneg(tag: SignTag) -> Truth {
    match tag {
        SignTag::Zero | SignTag::Positive | SignTag::StrictlyPositive => Truth::True,
        SignTag::Unknown => Truth::Unknown,
        _ => Truth::False,
    }
}

fn truth_nonpos(tag: SignTag) -> Truth {
    match tag {
        SignTag::Zero | SignTag::Negative | SignTag::StrictlyNegative => Truth::True,
        SignTag::Unknown => Truth::Unknown,
        _ => Truth::False,
    }
}

fn combine_strict(base: Truth, pluriclosed: Truth) -> Truth {
    match (base, pluriclosed) {
        (Truth::False, _) => Truth::False,
        (_, Truth::True) => Truth::False,
        (Truth::True, Truth::False) => Truth::True,
        _ => Truth::Unknown,
    }
}

/// Evaluates a single property at a numeric point without running the full
/// classification, so universal claims stay fast.
fn property_truth(
    inst: &Instance,
    asg: &Assignment,
    property: Property,
) -> Result<Truth, CatalogError> {
    let curvature = inst.classifier.curvature();
    let ddc = &curvature.ddc_powers[0];
    let base = match property.base {
        BaseProperty::Kahler => truth_of_zero(&curvature.d_omega, asg)?,
        BaseProperty::Pluriclosed => truth_of_zero(ddc, asg)?,
        BaseProperty::Balanced => truth_of_zero(&curvature.d_omega_top, asg)?,
        BaseProperty::Gauduchon => {
            truth_of_zero(curvature.ddc_powers.last().expect("n >= 2"), asg)?
        }
        BaseProperty::GuanLi => truth_of_zero(ddc, asg)?
            .and(truth_of_zero(&curvature.torsion, asg)?),
        BaseProperty::Pluripositive => {
            let report = sign_of_form(ddc, &SignMode::Numeric(asg.clone()))?;
            truth_nonneg(report.verdict.tag)
        }
        BaseProperty::Plurinegative => {
            let report = sign_of_form(ddc, &SignMode::Numeric(asg.clone()))?;
            truth_nonpos(report.verdict.tag)
        }
        BaseProperty::PlurinegN => {
            inst.classifier.plurineg(&SignMode::Numeric(asg.clone()))?.verdict
        }
    };
    if !property.strict {
        return Ok(base);
    }
    let pluriclosed = truth_of_zero(ddc, asg)?;
    Ok(combine_strict(base, pluriclosed))
}

/// Reads a property verdict off a full classification report.
fn report_truth(report: &ClassificationReport, property: Property) -> Truth {
    let base = match property.base {
        BaseProperty::Kahler => report.kahler.verdict,
        BaseProperty::Pluriclosed => report.pluriclosed.verdict,
        BaseProperty::Pluripositive => report.pluripositive.verdict,
        BaseProperty::Plurinegative => report.plurinegative.verdict,
        BaseProperty::Balanced => report.balanced.verdict,
        BaseProperty::Gauduchon => report.gauduchon.verdict,
        BaseProperty::GuanLi => report.guan_li.verdict,
        BaseProperty::PlurinegN => report.plurineg_n.verdict,
    };
    if !property.strict {
        return base;
    }
    combine_strict(base, report.pluriclosed.verdict)
}

/// Deterministic admissible metric points used by universal claims.
fn canonical_grid(metric: &MetricSpec) -> Vec<Vec<(String, GaussianRational)>> {
    let names: Vec<String> = metric.metric_names().to_vec();
    let point = |values: Vec<GaussianRational>| -> Vec<(String, GaussianRational)> {
        names.iter().cloned().zip(values).collect()
    };
    match metric.shape() {
        MetricShape::GenericDim3 => vec![
            point(vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::zero(),
                GaussianRational::zero(),
                GaussianRational::zero(),
            ]),
            point(vec![
                GaussianRational::from_int(2),
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::ratio(1, 2),
                GaussianRational::zero(),
                GaussianRational::zero(),
            ]),
            point(vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(2),
                GaussianRational::from_int(3),
                GaussianRational::i_ratio(1, 3),
                GaussianRational::ratio(1, 4),
                GaussianRational::ratio(-1, 5),
            ]),
        ],
        MetricShape::Diagonal => vec![
            point(vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
            ]),
            point(vec![
                GaussianRational::from_int(1),
                GaussianRational::from_int(2),
                GaussianRational::from_int(3),
                GaussianRational::from_int(4),
            ]),
            point(vec![
                GaussianRational::from_int(2),
                GaussianRational::from_int(1),
                GaussianRational::from_int(1),
                GaussianRational::from_int(3),
            ]),
        ],
        MetricShape::GenericGram => Vec::new(),
    }
}

/// Structure parameter values for one random draw, restricted to the
/// parameters the (possibly substituted) structure still carries.
fn draw_structure(
    family: FamilyId,
    spec: &StructureSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(String, GaussianRational)>, HermitianError> {
    let pairs = sample_structure(family, spec, rng)?;
    Ok(pairs
        .into_iter()
        .filter(|(name, _)| spec.params().indet_index(name).is_some())
        .collect())
}

type CheckResult = Result<(bool, String), CatalogError>;

fn check_claim(entry: &ExpectedLedgerEntry, base: &Instance, claim: &Claim) -> CheckResult {
    match claim {
        Claim::DdcText { power, text } => check_ddc_text(base, *power, text),
        Claim::BalancedIdentically => check_balanced_identically(base),
        Claim::BalancedSystem { polys } => check_balanced_system(base, polys),
        Claim::BalancedNever { combination } => check_balanced_never(base, combination),
        Claim::ObstructionPositive { monomial, poly, unless, samples, seed } => {
            check_obstruction(base, monomial, poly, unless, *samples, *seed)
        }
        Claim::Witness { property, expect, structure, metric, .. } => {
            check_witness(base, property, *expect, structure, metric)
        }
        Claim::Universal { property, expect, fixed, samples, seed, symbolic_decides } => {
            check_universal(entry, base, property, *expect, fixed, *samples, *seed, *symbolic_decides)
        }
        Claim::EpsilonCheck { epsilon, fixed, values, expect } => {
            check_epsilon(entry, base, epsilon, fixed, values, *expect)
        }
        Claim::SupEpsilon { fixed, values, expect } => {
            check_sup_epsilon(entry, base, fixed, values, expect)
        }
        Claim::EpsilonIndefinite { epsilons, fixed, values } => {
            check_epsilon_indefinite(entry, base, epsilons, fixed, values)
        }
        Claim::EpsilonNegativeDirection { epsilons, diagonals } => {
            check_epsilon_negative_direction(base, epsilons, diagonals)
        }
        Claim::ParallelCertificate { fixed, all_zero } => {
            check_parallel(entry, fixed, *all_zero)
        }
    }
}

fn check_ddc_text(inst: &Instance, power: u32, text: &str) -> CheckResult {
    let n = inst.spec.n() as u32;
    if power == 0 || power >= n {
        return Err(CatalogError::Ledger(format!(
            "power {power} out of range for n = {n}"
        )));
    }
    let rendered = inst.classifier.curvature().ddc_powers[(power - 1) as usize].render_text();
    let pass = rendered == text;
    Ok((pass, format!("engine renders {rendered}")))
}

fn check_balanced_identically(inst: &Instance) -> CheckResult {
    let conditions = inst.classifier.balanced_condition();
    let pass = conditions.items.iter().all(|item| item.poly.is_zero());
    Ok((pass, format!("{} conditions", conditions.items.len())))
}

fn check_balanced_system(inst: &Instance, polys: &[String]) -> CheckResult {
    let conditions = inst.classifier.balanced_condition();
    let engine: Vec<&Scalar> = conditions
        .items
        .iter()
        .map(|item| &item.poly)
        .filter(|poly| !poly.is_zero())
        .collect();
    let params = inst.metric.params();
    let mut stored = Vec::with_capacity(polys.len());
    for text in polys {
        let poly = parse_scalar(params, text)
            .map_err(|e| CatalogError::Ledger(format!("bad polynomial `{text}`: {e}")))?;
        if poly.is_zero() {
            return Err(CatalogError::Ledger(format!("stored polynomial `{text}` is zero")));
        }
        stored.push(poly);
    }
    if stored.is_empty() {
        return Err(CatalogError::Ledger("empty system; use the identically-balanced claim".into()));
    }
    for (text, poly) in polys.iter().zip(&stored) {
        if !engine.iter().any(|e| matches_up_to_scale(poly, e)) {
            return Ok((false, format!("`{text}` matches no engine condition")));
        }
    }
    for e in &engine {
        if !stored.iter().any(|poly| matches_up_to_scale(poly, e)) {
            return Ok((false, format!("engine condition {} unmatched", e.render_plain())));
        }
    }
    Ok((true, format!("{} engine conditions matched", engine.len())))
}

fn check_balanced_never(inst: &Instance, combination: &[(String, String)]) -> CheckResult {
    if combination.is_empty() {
        return Err(CatalogError::Ledger("empty positive combination".into()));
    }
    let params = inst.metric.params();
    let mut sum = Scalar::zero(params);
    for (coeff_text, poly_text) in combination {
        let coeff = constant(coeff_text)?;
        if !positive_real(&coeff) {
            return Err(CatalogError::Ledger(format!(
                "combination coefficient `{coeff_text}` is not a positive rational"
            )));
        }
        let poly = parse_scalar(params, poly_text)
            .map_err(|e| CatalogError::Ledger(format!("bad polynomial `{poly_text}`: {e}")))?;
        let admissible = inst.metric.positivity().iter().any(|p| *p == poly)
            || (poly.terms().count() == 1 && has_structurally_positive_term(&poly, params));
        if !admissible {
            return Ok((
                false,
                format!("`{poly_text}` is not an admissibility polynomial or positive monomial"),
            ));
        }
        sum = sum.try_add(&poly.scale(&coeff))?;
    }
    let conditions = inst.classifier.balanced_condition();
    let hit = conditions.items.iter().any(|item| matches_up_to_scale(&sum, &item.poly));
    Ok((
        hit,
        if hit {
            "a positive-definite combination equals one balanced condition".into()
        } else {
            "no balanced condition is proportional to the combination".into()
        },
    ))
}

fn check_obstruction(
    inst: &Instance,
    monomial: &str,
    poly_text: &str,
    unless: &Bindings,
    samples: u32,
    seed: u64,
) -> CheckResult {
    let n = inst.spec.n();
    let mono = BasisMonomial::parse(monomial, n)
        .map_err(|e| CatalogError::Ledger(format!("bad basis monomial `{monomial}`: {e}")))?;
    let coeff = inst.classifier.curvature().ddc_powers[0].coeff(&mono);
    let params = inst.metric.params();
    let poly = parse_scalar(params, poly_text)
        .map_err(|e| CatalogError::Ledger(format!("bad polynomial `{poly_text}`: {e}")))?;
    let Some(lambda) = proportional(&poly, &coeff) else {
        return Ok((false, "stated polynomial is not proportional to the coefficient".into()));
    };
    if !lambda.im().is_zero() {
        return Ok((false, "proportionality factor is not real".into()));
    }
    if nonneg_certificate(&poly).is_none() {
        return Ok((false, "no nonnegativity certificate".into()));
    }
    if unless.is_empty() {
        if !has_structurally_positive_term(&poly, params) {
            return Ok((false, "no structurally positive term".into()));
        }
    } else {
        let pairs = parse_bindings(unless)?;
        let partial = params
            .partial_assignment(&pairs)
            .map_err(|e| CatalogError::Ledger(format!("bad vanishing locus: {e}")))?;
        if !poly.substitute(&partial)?.is_zero() {
            return Ok((false, "does not vanish on the stated locus".into()));
        }
        if samples > 0 {
            let mut source = |rng: &mut ChaCha8Rng| draw_structure(inst.family, &inst.spec, rng);
            let points = inst.classifier.sample_assignments_with(samples, seed, &mut source)?;
            for asg in &points {
                if poly.instantiate(asg)?.is_zero() {
                    return Ok((
                        false,
                        format!("vanished at sampled point {}", render_assignment(asg)),
                    ));
                }
            }
        }
    }
    Ok((true, "nonnegative, and positive away from the stated locus".into()))
}

fn check_witness(
    inst: &Instance,
    property: &str,
    expect: bool,
    structure: &Bindings,
    metric: &Bindings,
) -> CheckResult {
    let property = parse_property(property)?;
    let asg = inst.validated(&[structure, metric])?;
    let verdict = property_truth(inst, &asg, property)?;
    let wanted = if expect { Truth::True } else { Truth::False };
    Ok((verdict == wanted, format!("verdict {} at {}", verdict.label(), render_assignment(&asg))))
}

#[allow(clippy::too_many_arguments)]
fn check_universal(
    entry: &ExpectedLedgerEntry,
    base: &Instance,
    property: &str,
    expect: bool,
    fixed: &Bindings,
    samples: u32,
    seed: u64,
    symbolic_decides: bool,
) -> CheckResult {
    let property = parse_property(property)?;
    let inst = if fixed.is_empty() {
        None
    } else {
        Some(Instance::build(entry.family, &entry.discrete, fixed)?)
    };
    let inst = inst.as_ref().unwrap_or(base);
    let wanted = if expect { Truth::True } else { Truth::False };

    let mut prongs: Vec<String> = Vec::new();
    if symbolic_decides {
        let report = inst.classifier.classify(&SignMode::Symbolic, None)?;
        let verdict = report_truth(&report, property);
        if verdict != wanted {
            return Ok((false, format!("symbolic verdict is {}", verdict.label())));
        }
        prongs.push("symbolic".into());
    }

    let mut grid_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    let mut structure_draws: Vec<Vec<(String, GaussianRational)>> = vec![Vec::new()];
    if !inst.spec.params().params().is_empty() {
        for _ in 0..2 {
            structure_draws.push(draw_structure(inst.family, &inst.spec, &mut grid_rng)?);
        }
        structure_draws.remove(0);
    }
    let mut grid_checked = 0usize;
    for metric_point in canonical_grid(&inst.metric) {
        for structure_point in &structure_draws {
            let mut pairs = structure_point.clone();
            pairs.extend(metric_point.iter().cloned());
            let asg = inst
                .metric
                .params()
                .assignment(&pairs)
                .map_err(|e| CatalogError::Ledger(format!("grid point rejected: {e}")))?;
            if inst.classifier.validate_assignment(&asg).is_err() {
                continue;
            }
            let verdict = property_truth(inst, &asg, property)?;
            if verdict != wanted {
                return Ok((
                    false,
                    format!(
                        "verdict {} at grid point {}",
                        verdict.label(),
                        render_assignment(&asg)
                    ),
                ));
            }
            grid_checked += 1;
        }
    }
    prongs.push(format!("{grid_checked} grid points"));

    if samples > 0 {
        let mut source = |rng: &mut ChaCha8Rng| draw_structure(inst.family, &inst.spec, rng);
        let points = inst.classifier.sample_assignments_with(samples, seed, &mut source)?;
        for asg in &points {
            let verdict = property_truth(inst, asg, property)?;
            if verdict != wanted {
                return Ok((
                    false,
                    format!("verdict {} at sample {}", verdict.label(), render_assignment(asg)),
                ));
            }
        }
        prongs.push(format!("{samples} samples"));
    }

    Ok((true, format!("agree: {}", prongs.join(", "))))
}

fn check_epsilon(
    entry: &ExpectedLedgerEntry,
    base: &Instance,
    epsilon: &str,
    fixed: &Bindings,
    values: &Bindings,
    expect: bool,
) -> CheckResult {
    let eps = rational(epsilon)?;
    let inst = if fixed.is_empty() {
        None
    } else {
        Some(Instance::build(entry.family, &entry.discrete, fixed)?)
    };
    let inst = inst.as_ref().unwrap_or(base);
    let asg = inst.validated(&[values])?;
    let report = inst.classifier.higher_dim(&SignMode::Numeric(asg), Some(&eps))?;
    let wanted = if expect { Truth::True } else { Truth::False };
    Ok((report.verdict == wanted, report.certificate))
}

fn check_sup_epsilon(
    entry: &ExpectedLedgerEntry,
    base: &Instance,
    fixed: &Bindings,
    values: &Bindings,
    expect: &str,
) -> CheckResult {
    let inst = if fixed.is_empty() {
        None
    } else {
        Some(Instance::build(entry.family, &entry.discrete, fixed)?)
    };
    let inst = inst.as_ref().unwrap_or(base);
    let asg = inst.validated(&[values])?;
    let (sup, note) = inst.classifier.sup_epsilon(&asg)?;
    let pass = match expect {
        "unbounded" => sup == SupEpsilon::Unbounded,
        "infeasible" => sup == SupEpsilon::Infeasible,
        value => sup == SupEpsilon::Value(rational(value)?),
    };
    Ok((pass, format!("{} ({note})", sup.render())))
}

fn check_epsilon_indefinite(
    entry: &ExpectedLedgerEntry,
    base: &Instance,
    epsilons: &[String],
    fixed: &Bindings,
    values: &Bindings,
) -> CheckResult {
    let inst = if fixed.is_empty() {
        None
    } else {
        Some(Instance::build(entry.family, &entry.discrete, fixed)?)
    };
    let inst = inst.as_ref().unwrap_or(base);
    let asg = inst.validated(&[values])?;
    for text in epsilons {
        let eps = rational(text)?;
        let report = inst.classifier.higher_dim(&SignMode::Numeric(asg.clone()), Some(&eps))?;
        let step = report
            .steps
            .iter()
            .find(|(q, _)| *q == 2)
            .ok_or_else(|| CatalogError::Ledger("no degree-two step".into()))?;
        if step.1.verdict.tag != SignTag::Indefinite {
            return Ok((
                false,
                format!("epsilon = {text}: step tag {}", step.1.verdict.tag.label()),
            ));
        }
        if report.verdict != Truth::False {
            return Ok((
                false,
                format!("epsilon = {text}: verdict {}", report.verdict.label()),
            ));
        }
    }
    Ok((true, format!("indefinite at {} epsilon values", epsilons.len())))
}

fn check_epsilon_negative_direction(
    base: &Instance,
    epsilons: &[String],
    diagonals: &[Bindings],
) -> CheckResult {
    if diagonals.is_empty() || epsilons.is_empty() {
        return Err(CatalogError::Ledger("empty epsilon or diagonal list".into()));
    }
    let mut equal_diagonal = 0usize;
    for values in diagonals {
        let asg = base.validated(&[values])?;
        if values.get("a3").is_some() && values.get("a3") == values.get("a4") {
            equal_diagonal += 1;
        }
        for text in epsilons {
            let eps = rational(text)?;
            let report =
                base.classifier.higher_dim(&SignMode::Numeric(asg.clone()), Some(&eps))?;
            let step = report
                .steps
                .iter()
                .find(|(q, _)| *q == 2)
                .ok_or_else(|| CatalogError::Ledger("no degree-two step".into()))?;
            let refuted = step.1.verdict.negative_witness.is_some()
                || report.base.verdict.negative_witness.is_some();
            if !refuted {
                return Ok((
                    false,
                    format!(
                        "no negative direction at epsilon = {text}, point {}",
                        render_assignment(&asg)
                    ),
                ));
            }
            if report.verdict != Truth::False {
                return Ok((
                    false,
                    format!("verdict {} at epsilon = {text}", report.verdict.label()),
                ));
            }
        }
    }
    if equal_diagonal == 0 {
        return Err(CatalogError::Ledger(
            "diagonal list must include a point with a3 = a4".into(),
        ));
    }
    Ok((
        true,
        format!(
            "negative directions at {} points x {} epsilon values",
            diagonals.len(),
            epsilons.len()
        ),
    ))
}

fn check_parallel(entry: &ExpectedLedgerEntry, fixed: &Bindings, all_zero: bool) -> CheckResult {
    let mut spec = instantiate_family(entry.family, &entry.discrete)?;
    if !fixed.is_empty() {
        spec = spec.substitute(&parse_bindings(fixed)?)?;
    }
    let report = super::parallel::proposition_parallel_check(&spec)?;
    let pass = report.certified() && report.all_zero() == all_zero;
    Ok((pass, report.summary()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_ledger_parses_and_is_consistent() {
        let ledger = expected_ledger().unwrap();
        assert_eq!(ledger.version, 1);
        assert_eq!(ledger.entries.len(), 22);
        assert!(ledger.strictness_consistent());
        let roundtrip = serde_json::to_string(&ledger).unwrap();
        let back = parse_ledger(&roundtrip).unwrap();
        assert_eq!(back.entries.len(), ledger.entries.len());
    }

    #[test]
    fn slim_property_evaluation_matches_full_classification() {
        let ledger = expected_ledger().unwrap();
        let entry = ledger
            .entries
            .iter()
            .find(|e| e.family == FamilyId::Siii3)
            .unwrap();
        let inst = Instance::build(entry.family, &entry.discrete, &Bindings::new()).unwrap();
        let asg = inst.classifier.sample_assignments(1, 7).unwrap().remove(0);
        let report = inst.classifier.classify(&SignMode::Numeric(asg.clone()), None).unwrap();
        for (name, _) in report.properties() {
            if name == "higher_dim" {
                continue;
            }
            let property = parse_property(name).unwrap();
            assert_eq!(
                property_truth(&inst, &asg, property).unwrap(),
                report_truth(&report, property),
                "slim and full verdicts differ for {name}"
            );
        }
    }

    #[test]
    fn replaying_a_small_entry_passes() {
        let ledger = expected_ledger().unwrap();
        let entry = ledger.entries.iter().find(|e| e.family == FamilyId::Sv).unwrap();
        let outcome = replay_entry(entry).unwrap();
        for claim in &outcome.claims {
            assert!(claim.pass, "{}: {}", claim.label, claim.detail);
        }
    }

    #[test]
    fn corrupted_claims_error_with_the_entry_name() {
        let ledger = expected_ledger().unwrap();
        let mut entry = ledger.entries[0].clone();
        entry.claims = vec![Claim::DdcText { power: 9, text: "0".into() }];
        let err = replay_entry(&entry).unwrap_err();
        let text = err.to_string();
        assert!(text.contains("entry `Np`"), "error does not name the entry: {text}");

        let bad = parse_ledger("{\"version\": 3, \"entries\": []}").unwrap_err();
        assert!(bad.to_string().contains("version"));
    }
}
