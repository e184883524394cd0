//! Independent ground-truth layer: adaptive quadrature for weakly singular
//! integrals and closed-form series derivatives of analytic test functions,
//! plus the self-test suite exercising every invariant in the crate.
//!
//! The ground-truth operations ([`adaptive_singular_quad`],
//! [`ac_closed_form`]) never call the `operators` module, so operator/oracle
//! agreement is evidence rather than tautology. The self-test runner is the
//! one place both sides meet.

mod closed_form;
mod quad;
pub mod selftest;

pub use closed_form::{ac_closed_form, ac_reference, TestFunction};
pub use quad::{
    adaptive_quad, adaptive_singular_quad, adaptive_singular_quad_with_rule, QuadResult, QuadRule,
};
pub use selftest::{selftest_suite, CheckResult, SelftestReport};

use crate::special_functions::SpecialFnError;
use std::fmt;

/// Errors from the oracle layer.
#[derive(Debug, Clone, PartialEq)]
pub enum OracleError {
    /// Bad interval, exponent, or parameters.
    Domain(String),
    /// Panel budget exhausted before the tolerance was met.
    NonConvergence { err_estimate: f64, detail: String },
    /// The requested test-function kind has no closed form here.
    UnsupportedKind(String),
    /// Propagated special-function failure.
    Special(SpecialFnError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::Domain(m) => write!(f, "oracle domain error: {m}"),
            OracleError::NonConvergence {
                err_estimate,
                detail,
            } => write!(f, "quadrature did not converge ({detail}); err ~ {err_estimate:e}"),
            OracleError::UnsupportedKind(m) => write!(f, "unsupported test-function kind: {m}"),
            OracleError::Special(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for OracleError {}

impl From<SpecialFnError> for OracleError {
    fn from(e: SpecialFnError) -> Self {
        OracleError::Special(e)
    }
}
