//! Exact scalar arithmetic: multivariate polynomials over the Gaussian
//! rationals with declared parameters, a formal conjugation, terminating
//! rewrite rules, and exact evaluation.

mod display;
mod gauss;
mod params;
mod parse;
mod poly;
mod rewrite;

pub use gauss::GaussianRational;
pub use params::{
    Assignment, Constraint, Indet, ParamKind, ParamSet, Parameter, PartialAssignment,
};
pub use parse::{parse_gaussian, parse_scalar};
pub use poly::{Monomial, Scalar};
pub use rewrite::{rewrite_fixpoint, RewriteRule};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ScalarError {
    #[error("operands belong to mismatched parameter sets")]
    MismatchedParams,
    #[error("parameter name '{0}' is not usable")]
    BadParameterName(String),
    #[error("parameter '{0}' declared twice")]
    DuplicateParameter(String),
    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),
    #[error("parameter '{0}' assigned twice")]
    DuplicateAssignment(String),
    #[error("no value assigned for '{0}'")]
    MissingAssignment(String),
    #[error("real parameter '{0}' given a non-real value")]
    NonRealValue(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("divisor '{0}' is not a constant")]
    NonConstantDivisor(String),
    #[error("rewrite rule is not order-decreasing")]
    NonDecreasingRule,
    #[error("malformed rewrite rule: {0}")]
    BadRuleShape(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Binary arithmetic with explicit parameter-set checking.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Sub => a.try_sub(b),
        ArithOp::Mul => a.try_mul(b),
    }
}
