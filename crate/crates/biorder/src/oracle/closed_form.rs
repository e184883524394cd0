//! Closed-form AC derivatives of analytic test functions.
//!
//! For f(t) = t^k the convolution integrates term by term through the Beta
//! function:
//!
//! ```text
//! AC(t^k)(t) = C k Σ_j (−λ)^j / Γ(βj+1) · B(k, 1−α+σj) · t^(k−α+σj)
//! ```
//!
//! which is the convergence target for the grid scheme. Exponential and sine
//! test functions have no elementary closed form here and go through the
//! singular quadrature instead ([`ac_reference`]).

use super::quad::adaptive_singular_quad;
use super::OracleError;
use crate::special_functions::dd::Dd;
use crate::special_functions::{
    lgamma_dd, BiOrder, GammaRatioTable, Kernel, SeriesTruncation, SeriesValue, TruncationMode,
};

/// Analytic test functions for operator validation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    Constant { value: f64 },
    Monomial { degree: u32 },
    Exponential { rate: f64 },
    Sine { frequency: f64 },
}

impl TestFunction {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            TestFunction::Constant { value } => value,
            TestFunction::Monomial { degree } => t.powi(degree as i32),
            TestFunction::Exponential { rate } => (rate * t).exp(),
            TestFunction::Sine { frequency } => (frequency * t).sin(),
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        match *self {
            TestFunction::Constant { .. } => 0.0,
            TestFunction::Monomial { degree } => {
                if degree == 0 {
                    0.0
                } else {
                    degree as f64 * t.powi(degree as i32 - 1)
                }
            }
            TestFunction::Exponential { rate } => rate * (rate * t).exp(),
            TestFunction::Sine { frequency } => frequency * (frequency * t).cos(),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            TestFunction::Constant { value } => format!("const:{value}"),
            TestFunction::Monomial { degree } => format!("t^{degree}"),
            TestFunction::Exponential { rate } => format!("exp({rate}t)"),
            TestFunction::Sine { frequency } => format!("sin({frequency}t)"),
        }
    }
}

/// Closed-form AC derivative of a monomial or constant at time t > 0,
/// summed in double-double precision with a truncation-error estimate.
pub fn ac_closed_form(
    tf: &TestFunction,
    order: &BiOrder,
    t: f64,
    trunc: &SeriesTruncation,
) -> Result<SeriesValue, OracleError> {
    let k = match *tf {
        TestFunction::Constant { .. } => {
            return Ok(SeriesValue {
                value: 0.0,
                err_estimate: 0.0,
                converged: true,
            })
        }
        TestFunction::Monomial { degree } => {
            if degree == 0 {
                return Ok(SeriesValue {
                    value: 0.0,
                    err_estimate: 0.0,
                    converged: true,
                });
            }
            degree as f64
        }
        other => {
            return Err(OracleError::UnsupportedKind(format!(
                "{}: closed form covers monomials and constants only",
                other.label()
            )))
        }
    };
    if !(t >= 0.0) {
        return Err(OracleError::Domain(format!(
            "closed form requires t >= 0, got {t}"
        )));
    }
    if t == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            err_estimate: 0.0,
            converged: true,
        });
    }

    let alpha = order.alpha();
    let beta = order.beta();
    let sigma = order.sigma();
    let c0 = Dd::ONE.sub_f64(alpha); // c_j = 1−α+σj
    let sigma_dd = order.sigma_dd();
    let ln_t = Dd::from_f64(t).ln();

    // Ratio tables stepping the three gamma arguments.
    let len = ((90.0 / beta).ceil() as usize + 256)
        .max((90.0 / sigma).ceil() as usize + 256)
        .min(1400);
    let tab_beta = GammaRatioTable::build(Dd::ONE, beta, len).ratios;
    let tab_c = GammaRatioTable::build(c0, sigma, len).ratios;
    let tab_kc = GammaRatioTable::build(c0.add_f64(k), sigma, len).ratios;

    // t_0 = B(k, c_0) t^(k−α) = Γ(k)Γ(c_0)/Γ(k+c_0) · t^(k−α)
    let b0 = lgamma_dd(Dd::from_f64(k))
        .add(lgamma_dd(c0))
        .sub(lgamma_dd(c0.add_f64(k)));
    let mut term = b0.add(ln_t.mul(Dd::from_f64(k - alpha))).exp();
    let mut sum = term;
    let mut max_term = term.hi.abs();
    // z = −λ tᵟ in double-double
    let z = order.lambda_dd().mul(sigma_dd.mul(ln_t).exp()).neg();

    let budget = trunc.max_terms.min(len);
    for j in 0..budget {
        // ratio: z · [Γ(1+βj)/Γ(1+βj+β)] · [Γ(c_{j+1})/Γ(c_j)] · [Γ(k+c_j)/Γ(k+c_{j+1})]
        term = term
            .mul(z)
            .mul(tab_beta[j])
            .div(tab_c[j])
            .mul(tab_kc[j]);
        sum = sum.add(term);
        let mag = term.hi.abs();
        if mag > max_term {
            max_term = mag;
            if mag > 1e250 {
                return Err(OracleError::Domain(format!(
                    "closed-form series overflow at t = {t}"
                )));
            }
        }
        if mag <= trunc.abs_floor || mag <= 1e-33 * sum.hi.abs() + 1e-315 {
            let pref = order.prefactor() * k;
            let value = pref * sum.to_f64();
            return Ok(SeriesValue {
                value,
                err_estimate: pref.abs()
                    * (mag + max_term * 2.5e-32 * (j + 2) as f64 + sum.hi.abs() * 1e-30),
                converged: true,
            });
        }
    }
    if trunc.mode == TruncationMode::Convergent {
        return Err(OracleError::Special(
            crate::special_functions::SpecialFnError::TruncationBudget {
                max_terms: trunc.max_terms,
                last_term: term.hi,
            },
        ));
    }
    let pref = order.prefactor() * k;
    Ok(SeriesValue {
        value: pref * sum.to_f64(),
        err_estimate: pref.abs() * (term.hi.abs() + max_term * 2.5e-32 * budget as f64),
        converged: false,
    })
}

/// Reference AC derivative for any test function: closed form for
/// monomials/constants, singular quadrature of C·∫₀^t f'(t−y) k(y) dy for
/// exponential and sine. Returns (value, error estimate).
pub fn ac_reference(
    tf: &TestFunction,
    order: &BiOrder,
    t: f64,
    rel_tol: f64,
) -> Result<(f64, f64), OracleError> {
    match tf {
        TestFunction::Constant { .. } | TestFunction::Monomial { .. } => {
            let s = ac_closed_form(tf, order, t, &SeriesTruncation::internal())?;
            Ok((s.value, s.err_estimate))
        }
        _ => {
            if !(t > 0.0) {
                return Err(OracleError::Domain(format!(
                    "quadrature reference requires t > 0, got {t}"
                )));
            }
            let kernel = Kernel::new(order);
            let tf = *tf;
            let integrand =
                move |y: f64| tf.derivative(t - y) * kernel.value(y).unwrap_or(f64::NAN);
            let q = adaptive_singular_quad(&integrand, 0.0, t, order.alpha(), rel_tol)?;
            let c = order.prefactor();
            Ok((c * q.value, c.abs() * q.err_estimate))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn order(a: f64, b: f64) -> BiOrder {
        BiOrder::new(a, b).unwrap()
    }

    #[test]
    fn constant_maps_to_zero() {
        let s = ac_closed_form(
            &TestFunction::Constant { value: 5.0 },
            &order(0.5, 0.5),
            1.0,
            &SeriesTruncation::default(),
        )
        .unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn degree_one_reduces_to_primitive() {
        // AC(t)(t) = C·P(t): B(1, c_j) = 1/c_j collapses the Beta series to
        // the primitive series. Dual derivation of the same number.
        let o = order(0.5, 0.5);
        let s = ac_closed_form(
            &TestFunction::Monomial { degree: 1 },
            &o,
            1.0,
            &SeriesTruncation::internal(),
        )
        .unwrap();
        assert!(rel(s.value, 1.700311773924001366) < 1e-12);
        let kernel = Kernel::new(&o);
        for &t in &[0.25, 0.5, 1.5, 2.0] {
            let s = ac_closed_form(
                &TestFunction::Monomial { degree: 1 },
                &o,
                t,
                &SeriesTruncation::internal(),
            )
            .unwrap();
            let p = kernel
                .primitive(t, &SeriesTruncation::internal())
                .unwrap()
                .value;
            assert!(rel(s.value, o.prefactor() * p) < 1e-9, "t = {t}");
        }
    }

    #[test]
    fn short_time_leading_order() {
        // AC(t) ~ C t^(1−α)/(1−α) as t → 0⁺
        let o = order(0.5, 0.5);
        let t = 1e-6;
        let s = ac_closed_form(
            &TestFunction::Monomial { degree: 1 },
            &o,
            t,
            &SeriesTruncation::default(),
        )
        .unwrap();
        let lead = o.prefactor() * t.powf(0.5) / 0.5;
        assert!(rel(s.value, lead) < 1e-3);
    }

    #[test]
    fn unsupported_kinds_error() {
        let r = ac_closed_form(
            &TestFunction::Exponential { rate: -1.0 },
            &order(0.5, 0.5),
            1.0,
            &SeriesTruncation::default(),
        );
        assert!(matches!(r, Err(OracleError::UnsupportedKind(_))));
    }

    #[test]
    fn quadrature_reference_agrees_with_closed_form_on_monomials() {
        let o = order(0.3, 0.7);
        let tf = TestFunction::Monomial { degree: 2 };
        let (closed, _) = ac_reference(&tf, &o, 1.0, 1e-11).unwrap();
        // independent route: quadrature of f'(t−y)k(y)
        let kernel = Kernel::new(&o);
        let integrand = move |y: f64| 2.0 * (1.0 - y) * kernel.value(y).unwrap();
        let q = adaptive_singular_quad(&integrand, 0.0, 1.0, 0.3, 1e-11).unwrap();
        assert!(rel(closed, o.prefactor() * q.value) < 1e-9);
    }
}
