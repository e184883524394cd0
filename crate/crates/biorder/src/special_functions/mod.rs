//! Special functions: gamma, Mittag-Leffler, the bi-order kernel with its
//! exact primitive, and the generalized Wright series.
//!
//! Everything here is a pure function of its inputs. The Mittag-Leffler and
//! kernel-primitive power series are summed in double-double precision with
//! precomputed gamma-ratio tables; on the negative real axis an algebraic
//! asymptotic expansion takes over past a per-parameter crossover chosen so
//! both branches agree at the seam.

pub(crate) mod dd;
mod gamma;
mod kernel;
mod mittag_leffler;
mod wright;

pub use gamma::{beta, gamma, gamma_reciprocal, lgamma, lgamma_sign};
pub(crate) use gamma::{lgamma_dd, GammaRatioTable};
pub use kernel::{kernel_primitive, kernel_primitive_paper_literal, kernel_value, Kernel};
pub use mittag_leffler::{mittag_leffler, ml_seam_check, MlBranch, MlEvaluator, MlValue};
pub use wright::{wright_2psi1, WrightParams};

use dd::Dd;
use std::fmt;

/// Errors from special-function evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecialFnError {
    /// Argument outside the function's domain.
    Domain(String),
    /// Gamma pole at a nonpositive integer argument.
    Pole(f64),
    /// Result above the representable range.
    Overflow(f64),
    /// A numerator gamma factor hit a pole at a retained series term.
    NumeratorPole { term: usize, argument: f64 },
    /// Convergent-mode summation did not meet the floor within the budget.
    TruncationBudget { max_terms: usize, last_term: f64 },
    /// Convergent mode requested for a formally divergent parameter set.
    DivergentSeries(String),
}

impl fmt::Display for SpecialFnError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialFnError::Domain(msg) => write!(f, "domain error: {msg}"),
            SpecialFnError::Pole(x) => write!(f, "gamma pole at nonpositive integer {x}"),
            SpecialFnError::Overflow(x) => write!(f, "overflow evaluating gamma({x})"),
            SpecialFnError::NumeratorPole { term, argument } => write!(
                f,
                "numerator gamma pole at term {term} (argument {argument})"
            ),
            SpecialFnError::TruncationBudget { max_terms, last_term } => write!(
                f,
                "series did not meet the floor within {max_terms} terms (last term {last_term:e})"
            ),
            SpecialFnError::DivergentSeries(msg) => {
                write!(f, "divergent series in convergent mode: {msg}")
            }
        }
    }
}

impl std::error::Error for SpecialFnError {}

/// The bi-order parameter pair (α, β) with its derived quantities.
///
/// λ = β/(1−β) and σ = α+β are recomputed from (α, β) and never user-set;
/// the normalization A(β) defaults to 1 (the conventional A(0) = A(1) = 1
/// constraint) and is a pure scale factor on every operator, overridable via
/// [`BiOrder::with_normalization`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiOrder {
    alpha: f64,
    beta: f64,
    a_of_beta: f64,
}

impl BiOrder {
    /// Construct with orders strictly inside (0,1); boundary values are
    /// rejected. A(β) = 1.
    pub fn new(alpha: f64, beta: f64) -> Result<BiOrder, SpecialFnError> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(SpecialFnError::Domain(format!(
                "alpha must lie strictly in (0,1), got {alpha}"
            )));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(SpecialFnError::Domain(format!(
                "beta must lie strictly in (0,1), got {beta}"
            )));
        }
        Ok(BiOrder {
            alpha,
            beta,
            a_of_beta: 1.0,
        })
    }

    /// Override the normalization A(β) > 0.
    pub fn with_normalization(mut self, a_of_beta: f64) -> Result<BiOrder, SpecialFnError> {
        if !(a_of_beta > 0.0 && a_of_beta.is_finite()) {
            return Err(SpecialFnError::Domain(format!(
                "A(beta) must be positive and finite, got {a_of_beta}"
            )));
        }
        self.a_of_beta = a_of_beta;
        Ok(self)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn a_of_beta(&self) -> f64 {
        self.a_of_beta
    }

    /// λ = β/(1−β), recomputed on demand.
    pub fn lambda(&self) -> f64 {
        self.beta / (1.0 - self.beta)
    }

    /// σ = α + β ∈ (0, 2).
    pub fn sigma(&self) -> f64 {
        self.alpha + self.beta
    }

    /// λ in double-double precision (1−β is exact, so the quotient carries
    /// full working precision into the series).
    pub(crate) fn lambda_dd(&self) -> Dd {
        Dd::from_f64(self.beta).div(Dd::ONE.sub_f64(self.beta))
    }

    pub(crate) fn sigma_dd(&self) -> Dd {
        Dd::from_f64(self.alpha).add_f64(self.beta)
    }

    /// The operator prefactor C = A(β) / ((1−β) Γ(1−α)).
    pub fn prefactor(&self) -> f64 {
        let g = gamma::gamma(1.0 - self.alpha).expect("1-alpha in (0,1): no pole");
        self.a_of_beta / ((1.0 - self.beta) * g)
    }
}

/// Which stopping rule a series evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMode {
    /// Sum until terms are machine-negligible (or below the floor); exceeding
    /// the budget is an error.
    Convergent,
    /// Optimal truncation of an asymptotic series: stop at the smallest term
    /// and report its magnitude as the error estimate.
    SmallestTerm,
}

/// Truncation policy governing every infinite or asymptotic series.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SeriesTruncation {
    /// Hard cap on retained terms (≥ 1).
    pub max_terms: usize,
    /// Stop once |term| falls below this magnitude.
    pub abs_floor: f64,
    pub mode: TruncationMode,
}

impl SeriesTruncation {
    pub fn new(
        max_terms: usize,
        abs_floor: f64,
        mode: TruncationMode,
    ) -> Result<SeriesTruncation, SpecialFnError> {
        if max_terms == 0 {
            return Err(SpecialFnError::Domain(
                "max_terms must be at least 1".into(),
            ));
        }
        if !(abs_floor >= 0.0) {
            return Err(SpecialFnError::Domain(format!(
                "abs_floor must be nonnegative, got {abs_floor}"
            )));
        }
        Ok(SeriesTruncation {
            max_terms,
            abs_floor,
            mode,
        })
    }

    pub fn convergent(max_terms: usize) -> SeriesTruncation {
        SeriesTruncation {
            max_terms,
            abs_floor: 0.0,
            mode: TruncationMode::Convergent,
        }
    }

    pub fn smallest_term(max_terms: usize) -> SeriesTruncation {
        SeriesTruncation {
            max_terms,
            abs_floor: 0.0,
            mode: TruncationMode::SmallestTerm,
        }
    }

    /// Generous internal budget for the operator layer's primitive tables.
    pub(crate) fn internal() -> SeriesTruncation {
        SeriesTruncation::convergent(1400)
    }
}

impl Default for SeriesTruncation {
    /// 200 terms, no floor, convergent.
    fn default() -> SeriesTruncation {
        SeriesTruncation::convergent(200)
    }
}

/// A series evaluation result: value, an error estimate covering both
/// truncation and roundoff-cancellation, and whether the underlying series
/// is mathematically convergent (asymptotic expansions report `false`).
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct SeriesValue {
    pub value: f64,
    pub err_estimate: f64,
    pub converged: bool,
}
