//! Laplace and Sumudu transform machinery.
//!
//! Numerical transforms by damped quadrature are the ground truth; the
//! kernel-transform series are truncated asymptotics in 1/s (Laplace) or u
//! (Sumudu) evaluated by smallest-term truncation with honest error
//! estimates. The transform variable is written s throughout (the symbol p
//! is reserved for power-law exponents).

mod laplace;
mod sumudu;

pub use laplace::{
    laplace_ar_product, laplace_ar_product_form, laplace_kernel_numeric, laplace_kernel_series,
    laplace_numeric, laplace_numeric_with_rule, theorem2_transform_check, ArProductForm,
    QuadTransform, TimeDomain,
};
pub use sumudu::{
    sumudu_ar, sumudu_kernel_numeric, sumudu_kernel_series, sumudu_numeric, SumuduSeriesForm,
};

use crate::oracle::OracleError;
use crate::special_functions::{SeriesTruncation, SpecialFnError};
use std::fmt;

/// Errors from transform evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformError {
    Domain(String),
    Special(SpecialFnError),
    Quadrature(OracleError),
}

impl fmt::Display for TransformError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformError::Domain(m) => write!(f, "transform domain error: {m}"),
            TransformError::Special(e) => write!(f, "{e}"),
            TransformError::Quadrature(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TransformError {}

impl From<SpecialFnError> for TransformError {
    fn from(e: SpecialFnError) -> Self {
        TransformError::Special(e)
    }
}

impl From<OracleError> for TransformError {
    fn from(e: OracleError) -> Self {
        TransformError::Quadrature(e)
    }
}

/// A transform evaluation request: the (positive) transform variable, the
/// truncation horizon of the time integral, and the series budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformQuery {
    pub variable: f64,
    pub horizon: f64,
    pub trunc: SeriesTruncation,
}

impl TransformQuery {
    pub fn new(
        variable: f64,
        horizon: f64,
        trunc: SeriesTruncation,
    ) -> Result<TransformQuery, TransformError> {
        if !(variable > 0.0) || !variable.is_finite() {
            return Err(TransformError::Domain(format!(
                "transform variable must be positive and finite, got {variable}"
            )));
        }
        if !(horizon > 0.0) || !horizon.is_finite() {
            return Err(TransformError::Domain(format!(
                "horizon must be positive and finite, got {horizon}"
            )));
        }
        Ok(TransformQuery {
            variable,
            horizon,
            trunc,
        })
    }

    /// Warn when the damping at the horizon exceeds 1e-16 (Laplace:
    /// e^(−s·T); the truncated tail may then be visible in the result).
    pub fn laplace_horizon_warning(&self) -> Option<String> {
        let damping = (-self.variable * self.horizon).exp();
        if damping > 1e-16 {
            Some(format!(
                "horizon {} leaves e^(-s*T) = {damping:.2e} > 1e-16 at s = {}; \
                 the truncated tail may be visible",
                self.horizon, self.variable
            ))
        } else {
            None
        }
    }

    /// Sumudu damping is e^(−t) itself: warn when e^(−horizon) > 1e-16.
    pub fn sumudu_horizon_warning(&self) -> Option<String> {
        let damping = (-self.horizon).exp();
        if damping > 1e-16 {
            Some(format!(
                "horizon {} leaves e^(-T) = {damping:.2e} > 1e-16; \
                 the truncated tail may be visible",
                self.horizon
            ))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn query_validation() {
        let t = SeriesTruncation::default();
        assert!(TransformQuery::new(0.0, 1.0, t).is_err());
        assert!(TransformQuery::new(-2.0, 1.0, t).is_err());
        assert!(TransformQuery::new(2.0, 0.0, t).is_err());
        assert!(TransformQuery::new(2.0, 40.0, t).is_ok());
    }

    #[test]
    fn horizon_warnings() {
        let t = SeriesTruncation::default();
        let q = TransformQuery::new(2.0, 1.0, t).unwrap();
        assert!(q.laplace_horizon_warning().is_some());
        let q2 = TransformQuery::new(50.0, 1.0, t).unwrap();
        assert!(q2.laplace_horizon_warning().is_none());
        let q3 = TransformQuery::new(1.0, 10.0, t).unwrap();
        assert!(q3.sumudu_horizon_warning().is_some());
        let q4 = TransformQuery::new(1.0, 40.0, t).unwrap();
        assert!(q4.sumudu_horizon_warning().is_none());
    }
}
