//! Exact computer algebra for the sign behaviour of `dd^c`-curvature forms of
//! left-invariant hermitian metrics on Lie algebras carrying an integrable
//! complex structure.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — multivariate polynomials over the Gaussian rationals, with a
//!   formal conjugation and terminating rewrite rules,
//! * [`exterior`] — the bigraded exterior algebra on the dual of `C^n`,
//! * [`liecomplex`] — structure equations and the operators `d`, `del`,
//!   `dbar`, `d^c`, `dd^c`,
//! * [`hermitian`] — metrics, curvature forms, exact positivity verdicts and
//!   the classification predicates,
//! * [`catalog`] — the built-in six- and eight-dimensional families together
//!   with their expected-behaviour ledger,
//! * [`doc`] — the JSON interchange format for custom structures,
//! * [`run`] — report types shared by the command-line interface.

pub mod catalog;
pub mod doc;
pub mod exterior;
pub mod hermitian;
pub mod liecomplex;
pub mod run;
pub mod scalar;
