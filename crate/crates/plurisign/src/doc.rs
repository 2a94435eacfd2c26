//! JSON interchange format for structure equations. A document carries the
//! dimension, the parameter declarations, the rewrite rules, and the
//! differential of each generator as a list of (monomial, coefficient)
//! pairs; it round-trips through [`StructureSpec`] without loss, so custom
//! algebras can be classified with the same pipeline as the built-in ones.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::exterior::FormError;
use crate::liecomplex::{StructureError, StructureSpec};
use crate::scalar::{
    parse_scalar, Constraint, ParamKind, ParamSet, Parameter, RewriteRule, Scalar, ScalarError,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(thiserror::Error, Debug)]
pub enum DocError {
    #[error("malformed document JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("bad parameter kind `{0}` (expected `real` or `complex`)")]
    Kind(String),
    #[error("bad constraint `{0}`")]
    BadConstraint(String),
    #[error("generator key `{0}` is not of the form `phi<j>` with 1 <= j <= n")]
    BadGenerator(String),
    #[error("rewrite left side `{0}` must be a single monomial with coefficient one")]
    BadRewrite(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// One declared parameter.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParameterDoc {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
}

/// One rewrite rule, both sides in the scalar grammar.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RewriteDoc {
    pub lhs: String,
    pub rhs: String,
}

/// One term of a differential.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDoc {
    /// Compact basis monomial, e.g. `12` for `phi^{12}` or `2~1` for
    /// `phi^2 wedge conj(phi^1)`.
    pub monomial: String,
    /// Coefficient in the scalar grammar.
    pub coeff: String,
}

/// A complete structure-equation document.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDocument {
    pub schema: u32,
    pub label: String,
    pub n: u8,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<ParameterDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rewrites: Vec<RewriteDoc>,
    pub d: BTreeMap<String, Vec<TermDoc>>,
}

fn render_constraint(c: &Constraint) -> String {
    match c {
        Constraint::NonNeg => "nonneg".into(),
        Constraint::Positive => "positive".into(),
        Constraint::InZeroOne => "zero-or-one".into(),
        Constraint::UnitModulus => "unit-modulus".into(),
        Constraint::Interval { lo, hi } => {
            let side = |b: &Option<BigRational>| b.as_ref().map(|q| q.to_string());
            format!(
                "interval {}..{}",
                side(lo).unwrap_or_default(),
                side(hi).unwrap_or_default()
            )
        }
    }
}

fn parse_constraint(text: &str) -> Result<Constraint, DocError> {
    match text {
        "nonneg" => return Ok(Constraint::NonNeg),
        "positive" => return Ok(Constraint::Positive),
        "zero-or-one" => return Ok(Constraint::InZeroOne),
        "unit-modulus" => return Ok(Constraint::UnitModulus),
        _ => {}
    }
    let rest = text
        .strip_prefix("interval ")
        .ok_or_else(|| DocError::BadConstraint(text.into()))?;
    let (lo, hi) = rest.split_once("..").ok_or_else(|| DocError::BadConstraint(text.into()))?;
    let side = |s: &str| -> Result<Option<BigRational>, DocError> {
        if s.is_empty() {
            return Ok(None);
        }
        s.parse().map(Some).map_err(|_| DocError::BadConstraint(text.into()))
    };
    Ok(Constraint::Interval { lo: side(lo)?, hi: side(hi)? })
}

impl AlgebraDocument {
    /// Serializes a structure specification.
    pub fn from_spec(spec: &StructureSpec) -> AlgebraDocument {
        let parameters = spec
            .params()
            .params()
            .iter()
            .map(|p| ParameterDoc {
                name: p.name.clone(),
                kind: match p.kind {
                    ParamKind::Real => "real".into(),
                    ParamKind::Complex => "complex".into(),
                },
                constraints: p.constraints.iter().map(render_constraint).collect(),
            })
            .collect();
        let rewrites = spec
            .rules()
            .iter()
            .map(|rule| {
                let described = rule.describe();
                let (lhs, rhs) = described.split_once(" -> ").expect("describe format");
                RewriteDoc { lhs: lhs.to_string(), rhs: rhs.to_string() }
            })
            .collect();
        let mut d = BTreeMap::new();
        for j in 1..=spec.n() as u32 {
            let terms = spec
                .d_of_generator(j)
                .terms()
                .map(|(mono, coeff)| TermDoc {
                    monomial: mono.compact(),
                    coeff: coeff.render_plain(),
                })
                .collect();
            d.insert(format!("phi{j}"), terms);
        }
        AlgebraDocument {
            schema: SCHEMA_VERSION,
            label: spec.label().to_string(),
            n: spec.n(),
            parameters,
            rewrites,
            d,
        }
    }

    /// Rebuilds and validates the structure specification.
    pub fn to_spec(&self) -> Result<StructureSpec, DocError> {
        if self.schema != SCHEMA_VERSION {
            return Err(DocError::Schema(self.schema));
        }
        let mut params = Vec::with_capacity(self.parameters.len());
        for p in &self.parameters {
            let mut parameter = match p.kind.as_str() {
                "real" => Parameter::real(&p.name),
                "complex" => Parameter::complex(&p.name),
                other => return Err(DocError::Kind(other.into())),
            };
            for c in &p.constraints {
                parameter = parameter.with(parse_constraint(c)?);
            }
            params.push(parameter);
        }
        let ps = ParamSet::new(params)?;
        let rules = self
            .rewrites
            .iter()
            .map(|r| parse_rule(&ps, r))
            .collect::<Result<Vec<_>, DocError>>()?;
        let mut d_phi = Vec::with_capacity(self.n as usize);
        for j in 1..=self.n {
            let key = format!("phi{j}");
            let terms = self
                .d
                .get(&key)
                .ok_or_else(|| DocError::BadGenerator(key.clone()))?;
            let pairs: Vec<(&str, &str)> = terms
                .iter()
                .map(|t| (t.monomial.as_str(), t.coeff.as_str()))
                .collect();
            d_phi.push(crate::exterior::Form::parse_terms(self.n, &ps, &pairs)?);
        }
        for key in self.d.keys() {
            let valid = key
                .strip_prefix("phi")
                .and_then(|s| s.parse::<u8>().ok())
                .is_some_and(|j| 1 <= j && j <= self.n);
            if !valid {
                return Err(DocError::BadGenerator(key.clone()));
            }
        }
        Ok(StructureSpec::new(&self.label, self.n, ps, d_phi, rules)?)
    }

    pub fn from_json(text: &str) -> Result<AlgebraDocument, DocError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }
}

fn parse_rule(ps: &Arc<ParamSet>, rule: &RewriteDoc) -> Result<RewriteRule, DocError> {
    let lhs: Scalar = parse_scalar(ps, &rule.lhs)?;
    let rhs: Scalar = parse_scalar(ps, &rule.rhs)?;
    RewriteRule::new(&lhs, rhs).map_err(|_| DocError::BadRewrite(rule.lhs.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{instantiate_family, Choices, FamilyId};

    #[test]
    fn every_family_round_trips() {
        let variants = [
            (FamilyId::Np, Choices::default()),
            (FamilyId::Ni, Choices::default()),
            (FamilyId::Nii, Choices::default()),
            (FamilyId::Niii, Choices::sign(-1)),
            (FamilyId::Si, Choices::default()),
            (FamilyId::Sii, Choices::default()),
            (FamilyId::Siii1, Choices::sign(1)),
            (FamilyId::Siii2, Choices::default()),
            (FamilyId::Siii3, Choices::default()),
            (FamilyId::Siii4, Choices::sign(-1)),
            (FamilyId::Siv1, Choices::default()),
            (FamilyId::Siv2, Choices::x(0)),
            (FamilyId::Siv3, Choices::default()),
            (FamilyId::Sv, Choices::default()),
            (FamilyId::EfvA, Choices::default()),
            (FamilyId::EfvB, Choices::default()),
            (FamilyId::NakIv2, Choices::default()),
            (FamilyId::NakIv5, Choices::default()),
        ];
        for (id, choices) in variants {
            let spec = instantiate_family(id, &choices).unwrap();
            let doc = AlgebraDocument::from_spec(&spec);
            let text = doc.to_json();
            let back = AlgebraDocument::from_json(&text).unwrap();
            let spec2 = back.to_spec().unwrap();
            assert_eq!(spec.label(), spec2.label());
            assert_eq!(spec.n(), spec2.n());
            for j in 1..=spec.n() as u32 {
                assert_eq!(
                    spec.d_of_generator(j).render_text(),
                    spec2.d_of_generator(j).render_text(),
                    "{id} generator {j}"
                );
            }
            assert_eq!(spec.rules().len(), spec2.rules().len());
            assert_eq!(AlgebraDocument::from_spec(&spec2).to_json(), text);
        }
    }

    #[test]
    fn schema_and_shape_errors_are_reported() {
        let spec = instantiate_family(FamilyId::Np, &Choices::default()).unwrap();
        let mut doc = AlgebraDocument::from_spec(&spec);
        doc.schema = 2;
        assert!(matches!(doc.to_spec(), Err(DocError::Schema(2))));

        let mut doc = AlgebraDocument::from_spec(&spec);
        doc.parameters[0].kind = "quaternionic".into();
        assert!(matches!(doc.to_spec(), Err(DocError::Kind(_))));

        let mut doc = AlgebraDocument::from_spec(&spec);
        doc.d.remove("phi3");
        assert!(matches!(doc.to_spec(), Err(DocError::BadGenerator(_))));

        let mut doc = AlgebraDocument::from_spec(&spec);
        doc.d.insert("phi9".into(), Vec::new());
        assert!(matches!(doc.to_spec(), Err(DocError::BadGenerator(_))));
    }

    #[test]
    fn constraints_round_trip() {
        let cases = [
            Constraint::NonNeg,
            Constraint::Positive,
            Constraint::InZeroOne,
            Constraint::UnitModulus,
            Constraint::Interval { lo: Some(BigRational::new(1.into(), 2.into())), hi: None },
            Constraint::Interval {
                lo: None,
                hi: Some(BigRational::new((-3).into(), 4.into())),
            },
            Constraint::Interval {
                lo: Some(BigRational::new(0.into(), 1.into())),
                hi: Some(BigRational::new(1.into(), 1.into())),
            },
        ];
        for c in cases {
            let text = render_constraint(&c);
            let back = parse_constraint(&text).unwrap();
            assert_eq!(c, back, "constraint `{text}`");
        }
    }

    #[test]
    fn invalid_structures_are_rejected() {
        let spec = instantiate_family(FamilyId::Np, &Choices::default()).unwrap();
        let mut doc = AlgebraDocument::from_spec(&spec);
        doc.d.insert(
            "phi1".into(),
            vec![TermDoc { monomial: "~2~3".into(), coeff: "1".into() }],
        );
        assert!(matches!(doc.to_spec(), Err(DocError::Structure(_))));
    }
}
