//! Sumudu-transform operations.
//!
//! Definition used throughout (matching the substitution that produces the
//! kernel series): S(g)(u) = ∫₀^∞ e^(−t) g(ut) dt, so that
//! S(g)(u) = (1/u) L(g)(1/u).
//!
//! The kernel transform series is
//!
//! ```text
//! S(k)(u) = u^(−α) Σ_j (−λ(u))^j Γ(σj+1−α) / Γ(βj+1),   λ(u) = λ uᵟ,
//! ```
//!
//! where the Γ(βj+1) denominator follows the E_β series definition
//! (`corrected` mode); `paper_literal` keeps the printed Γ(αj+1) denominator
//! for comparison. Both are formal series evaluated by smallest-term
//! truncation with the first omitted term as the error estimate.

use super::laplace::QuadTransform;
use super::{TransformError, TransformQuery};
use crate::oracle::{adaptive_singular_quad_with_rule, QuadRule};
use crate::special_functions::{lgamma, BiOrder, Kernel, SeriesTruncation, SeriesValue};

/// Denominator convention of the Sumudu kernel series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumuduSeriesForm {
    /// Γ(βj+1) denominators (the E_β expansion's own).
    Corrected,
    /// Γ(αj+1) denominators, as printed; comparison only.
    PaperLiteral,
}

/// Numeric Sumudu transform ∫₀^horizon e^(−t) g(ut) dt of a callable with a
/// declared t = 0 singularity exponent.
pub fn sumudu_numeric(
    g: &dyn Fn(f64) -> f64,
    singular_alpha: f64,
    q: &TransformQuery,
) -> Result<QuadTransform, TransformError> {
    sumudu_numeric_with_rule(g, singular_alpha, q, QuadRule::Gauss16)
}

fn sumudu_numeric_with_rule(
    g: &dyn Fn(f64) -> f64,
    singular_alpha: f64,
    q: &TransformQuery,
    rule: QuadRule,
) -> Result<QuadTransform, TransformError> {
    let u = q.variable;
    let mut warnings = Vec::new();
    if let Some(w) = q.sumudu_horizon_warning() {
        warnings.push(w);
    }
    let integrand = move |t: f64| (-t).exp() * g(u * t);
    let r = adaptive_singular_quad_with_rule(&integrand, 0.0, q.horizon, singular_alpha, 1e-11, rule)?;
    Ok(QuadTransform {
        value: r.value,
        err_estimate: r.err_estimate.max(r.value.abs() * 1e-10),
        warnings,
    })
}

/// Numeric Sumudu transform of the kernel (quadrature ground truth for the
/// series).
pub fn sumudu_kernel_numeric(
    order: &BiOrder,
    q: &TransformQuery,
    rule: QuadRule,
) -> Result<QuadTransform, TransformError> {
    let kernel = Kernel::new(order);
    let g = move |y: f64| kernel.value(y).unwrap_or(f64::NAN);
    sumudu_numeric_with_rule(&g, order.alpha(), q, rule)
}

/// The Sumudu kernel series, smallest-term truncated.
pub fn sumudu_kernel_series(
    order: &BiOrder,
    u: f64,
    trunc: &SeriesTruncation,
    form: SumuduSeriesForm,
) -> Result<SeriesValue, TransformError> {
    if !(u > 0.0) {
        return Err(TransformError::Domain(format!(
            "sumudu variable must be positive, got {u}"
        )));
    }
    let alpha = order.alpha();
    let beta = order.beta();
    let sigma = order.sigma();
    // λ(u) = λ uᵟ
    let ln_lambda_u = order.lambda().ln() + sigma * u.ln();
    let mut sum = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut prev_mag = f64::INFINITY;
    let mut omitted = f64::INFINITY;
    let mut hit_floor = false;
    for j in 0..trunc.max_terms {
        let jf = j as f64;
        let num = lgamma(sigma * jf + 1.0 - alpha)?;
        let den = match form {
            SumuduSeriesForm::Corrected => lgamma(beta * jf + 1.0)?,
            SumuduSeriesForm::PaperLiteral => lgamma(alpha * jf + 1.0)?,
        };
        let mag = (jf * ln_lambda_u + num - den).exp();
        if mag >= prev_mag {
            omitted = mag;
            break;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * mag;
        abs_sum += mag;
        prev_mag = mag;
        omitted = mag;
        if mag <= trunc.abs_floor || mag <= f64::EPSILON * 1e-3 * sum.abs() + 1e-315 {
            hit_floor = true;
            break;
        }
    }
    let scale = u.powf(-alpha);
    Ok(SeriesValue {
        value: scale * sum,
        err_estimate: scale * (omitted + abs_sum * f64::EPSILON),
        // formally asymptotic: report false unless terms vanished outright
        converged: hit_floor && omitted == 0.0,
    })
}

/// S{AR f}(u) = C · (1/u) · S(f)(u) · S(k)(u), with the S(f) factor
/// restored (the printed final line drops it; the derivation chain keeps
/// it).
pub fn sumudu_ar(
    order: &BiOrder,
    u: f64,
    s_f: f64,
    trunc: &SeriesTruncation,
) -> Result<SeriesValue, TransformError> {
    let k = sumudu_kernel_series(order, u, trunc, SumuduSeriesForm::Corrected)?;
    let c = order.prefactor() / u;
    Ok(SeriesValue {
        value: c * s_f * k.value,
        err_estimate: (c * s_f).abs() * k.err_estimate,
        converged: k.converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::{laplace_numeric_with_rule, TimeDomain};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn order(a: f64, b: f64) -> BiOrder {
        BiOrder::new(a, b).unwrap()
    }

    #[test]
    fn power_law_leading_term() {
        // j = 0 truncation: u^(−α) Γ(1−α); at α = 0.5, u = 1 this is √π
        // (also the full λ→0 value).
        let o = order(0.5, 0.5);
        let t = SeriesTruncation::smallest_term(1);
        let k = sumudu_kernel_series(&o, 1.0, &t, SumuduSeriesForm::Corrected).unwrap();
        assert!(rel(k.value, 1.7724538509055160273) < 1e-13);
    }

    #[test]
    fn series_matches_quadrature_at_small_u() {
        let o = order(0.5, 0.5);
        for &u in &[0.02, 0.05, 0.1] {
            let series =
                sumudu_kernel_series(&o, u, &SeriesTruncation::smallest_term(400), SumuduSeriesForm::Corrected)
                    .unwrap();
            let q = TransformQuery::new(u, 45.0, SeriesTruncation::default()).unwrap();
            let quad = sumudu_kernel_numeric(&o, &q, QuadRule::Gauss16).unwrap();
            let gap = (series.value - quad.value).abs();
            assert!(
                gap <= series.err_estimate + quad.err_estimate,
                "u = {u}: gap {gap} vs estimates {} + {}",
                series.err_estimate,
                quad.err_estimate
            );
            assert!(rel(series.value, quad.value) < 1e-6, "u = {u}");
        }
    }

    #[test]
    fn paper_literal_denominators_deviate_more() {
        let o = order(0.5, 0.25);
        let u = 0.05;
        let t = SeriesTruncation::smallest_term(400);
        let corrected = sumudu_kernel_series(&o, u, &t, SumuduSeriesForm::Corrected).unwrap();
        let literal = sumudu_kernel_series(&o, u, &t, SumuduSeriesForm::PaperLiteral).unwrap();
        let q = TransformQuery::new(u, 45.0, SeriesTruncation::default()).unwrap();
        let quad = sumudu_kernel_numeric(&o, &q, QuadRule::Gauss16).unwrap().value;
        assert!((corrected.value - quad).abs() < (literal.value - quad).abs());
    }

    #[test]
    fn ar_scaling_in_s_f() {
        let o = order(0.5, 0.5);
        let t = SeriesTruncation::smallest_term(200);
        let zero = sumudu_ar(&o, 0.05, 0.0, &t).unwrap();
        assert_eq!(zero.value, 0.0);
        let one = sumudu_ar(&o, 0.05, 1.0, &t).unwrap();
        let three = sumudu_ar(&o, 0.05, 3.0, &t).unwrap();
        assert!(rel(three.value, 3.0 * one.value) < 1e-14);
    }

    #[test]
    fn duality_with_laplace() {
        // S(k)(u) = (1/u) L(k)(1/u), both by quadrature.
        let o = order(0.5, 0.5);
        let u = 0.1;
        let q_s = TransformQuery::new(u, 45.0, SeriesTruncation::default()).unwrap();
        let s_side = sumudu_kernel_numeric(&o, &q_s, QuadRule::Gauss16).unwrap().value;
        let kernel = Kernel::new(&o);
        let f = move |t: f64| kernel.value(t).unwrap_or(f64::NAN);
        let q_l = TransformQuery::new(1.0 / u, 4.5, SeriesTruncation::default()).unwrap();
        let l_side = laplace_numeric_with_rule(
            &TimeDomain::Callable {
                f: &f,
                singular_alpha: o.alpha(),
            },
            &q_l,
            QuadRule::Gauss24,
        )
        .unwrap()
        .value
            / u;
        assert!(rel(s_side, l_side) < 1e-8);
    }
}
