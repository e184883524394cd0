//! Generalized Wright hypergeometric series
//!
//! ```text
//! ₂Ψ₁[(a₁,A₁),(a₂,A₂);(b₁,B₁); z] = Σ_r Γ(a₁+A₁r) Γ(a₂+A₂r) / Γ(b₁+B₁r) · z^r / r!
//! ```
//!
//! Convergence is governed by Δ = B₁ − A₁ − A₂: the series converges for all
//! z when Δ > −1, inside |z| < A₁^(−A₁) A₂^(−A₂) B₁^(B₁) when Δ = −1, and is
//! a formal (asymptotic) series when Δ < −1 — then smallest-term truncation
//! applies and `converged = false` comes back with the optimally truncated
//! value. A pole of the denominator gamma zeroes the term; a pole of a
//! numerator gamma at a retained term is an error.

use super::gamma::lgamma_sign;
use super::{SeriesTruncation, SeriesValue, SpecialFnError, TruncationMode};

/// Parameter triple of ₂Ψ₁: two numerator pairs, one denominator pair, each
/// (offset, weight) with weight > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WrightParams {
    pub a1: (f64, f64),
    pub a2: (f64, f64),
    pub b1: (f64, f64),
}

impl WrightParams {
    /// Δ = B₁ − A₁ − A₂.
    pub fn convergence_index(&self) -> f64 {
        self.b1.1 - self.a1.1 - self.a2.1
    }

    /// Convergence radius for Δ = −1 (∞ for Δ > −1, 0 for Δ < −1).
    pub fn radius(&self) -> f64 {
        let d = self.convergence_index();
        if d > -1.0 {
            f64::INFINITY
        } else if d < -1.0 {
            0.0
        } else {
            let (_, aa1) = self.a1;
            let (_, aa2) = self.a2;
            let (_, bb1) = self.b1;
            (-aa1 * aa1.ln() - aa2 * aa2.ln() + bb1 * bb1.ln()).exp()
        }
    }

    fn validate(&self) -> Result<(), SpecialFnError> {
        for (name, w) in [("A1", self.a1.1), ("A2", self.a2.1), ("B1", self.b1.1)] {
            if !(w > 0.0) || !w.is_finite() {
                return Err(SpecialFnError::Domain(format!(
                    "wright weight {name} must be positive, got {w}"
                )));
            }
        }
        Ok(())
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Evaluate ₂Ψ₁ at real z under the given truncation policy.
pub fn wright_2psi1(
    params: &WrightParams,
    z: f64,
    trunc: &SeriesTruncation,
) -> Result<SeriesValue, SpecialFnError> {
    params.validate()?;
    if z == 0.0 {
        // only the r = 0 term survives regardless of convergence class
        if is_nonpositive_integer(params.a1.0) || is_nonpositive_integer(params.a2.0) {
            return Err(SpecialFnError::NumeratorPole {
                term: 0,
                argument: if is_nonpositive_integer(params.a1.0) {
                    params.a1.0
                } else {
                    params.a2.0
                },
            });
        }
        let (l1, s1) = lgamma_sign(params.a1.0)?;
        let (l2, s2) = lgamma_sign(params.a2.0)?;
        let (value, err) = if is_nonpositive_integer(params.b1.0) {
            (0.0, 0.0)
        } else {
            let (l3, s3) = lgamma_sign(params.b1.0)?;
            let v = s1 * s2 * s3 * (l1 + l2 - l3).exp();
            (v, v.abs() * f64::EPSILON)
        };
        return Ok(SeriesValue {
            value,
            err_estimate: err,
            converged: true,
        });
    }
    let divergent = {
        let d = params.convergence_index();
        d < -1.0 || (d == -1.0 && z.abs() >= params.radius())
    };
    if divergent && trunc.mode == TruncationMode::Convergent {
        return Err(SpecialFnError::DivergentSeries(format!(
            "convergence index {} with |z| = {}",
            params.convergence_index(),
            z.abs()
        )));
    }

    let ln_abs_z = z.abs().ln();
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut prev_mag = f64::INFINITY;
    let mut last_mag = f64::INFINITY;
    let mut lgamma_r_plus_1 = 0.0f64; // ln r!

    for r in 0..trunc.max_terms {
        let rf = r as f64;
        let na1 = params.a1.0 + params.a1.1 * rf;
        let na2 = params.a2.0 + params.a2.1 * rf;
        let db1 = params.b1.0 + params.b1.1 * rf;
        if is_nonpositive_integer(na1) || is_nonpositive_integer(na2) {
            return Err(SpecialFnError::NumeratorPole {
                term: r,
                argument: if is_nonpositive_integer(na1) { na1 } else { na2 },
            });
        }
        let (l1, s1) = lgamma_sign(na1)?;
        let (l2, s2) = lgamma_sign(na2)?;
        let (term, mag) = if is_nonpositive_integer(db1) {
            (0.0, 0.0)
        } else {
            let (l3, s3) = lgamma_sign(db1)?;
            let ln_mag = l1 + l2 - l3 + rf * ln_abs_z - lgamma_r_plus_1;
            let zsign = if z < 0.0 && r % 2 == 1 { -1.0 } else { 1.0 };
            let mag = ln_mag.exp();
            (s1 * s2 * s3 * zsign * mag, mag)
        };
        lgamma_r_plus_1 += (rf + 1.0).ln();

        if divergent && mag > prev_mag && mag > 0.0 {
            // Optimal truncation of the asymptotic series.
            return Ok(SeriesValue {
                value: sum + comp,
                err_estimate: mag + abs_sum * f64::EPSILON,
                converged: false,
            });
        }
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
        abs_sum += mag;
        if mag > 0.0 {
            prev_mag = mag;
        }
        last_mag = mag;
        if r > 0 && (mag <= trunc.abs_floor || mag <= f64::EPSILON * 1e-3 * sum.abs() + 1e-315) {
            return Ok(SeriesValue {
                value: sum + comp,
                err_estimate: mag + abs_sum * f64::EPSILON,
                converged: !divergent,
            });
        }
        if z == 0.0 {
            return Ok(SeriesValue {
                value: sum + comp,
                err_estimate: abs_sum * f64::EPSILON,
                converged: true,
            });
        }
    }
    if trunc.mode == TruncationMode::Convergent {
        return Err(SpecialFnError::TruncationBudget {
            max_terms: trunc.max_terms,
            last_term: last_mag,
        });
    }
    Ok(SeriesValue {
        value: sum + comp,
        err_estimate: last_mag + abs_sum * f64::EPSILON,
        converged: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_functions::TruncationMode;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn only_first_term_at_zero() {
        // Γ(1)Γ(0.5)/Γ(1) = √π
        let p = WrightParams {
            a1: (1.0, 1.0),
            a2: (0.5, 1.0),
            b1: (1.0, 0.5),
        };
        let v = wright_2psi1(&p, 0.0, &SeriesTruncation::default()).unwrap();
        assert!(rel(v.value, 1.7724538509055160273) < 1e-14);
        assert!(v.converged);
    }

    #[test]
    fn geometric_series_case() {
        // all parameters (1,1): Σ Γ(1+r) z^r / r! = Σ z^r = 1/(1−z); Δ = −1,
        // radius 1, so z = 0.5 converges to 2.
        let p = WrightParams {
            a1: (1.0, 1.0),
            a2: (1.0, 1.0),
            b1: (1.0, 1.0),
        };
        assert_eq!(p.convergence_index(), -1.0);
        assert!((p.radius() - 1.0).abs() < 1e-14);
        let v = wright_2psi1(&p, 0.5, &SeriesTruncation::convergent(500)).unwrap();
        assert!(rel(v.value, 2.0) < 1e-12);
        assert!(v.converged);
    }

    #[test]
    fn divergent_set_rejected_in_convergent_mode() {
        // The bi-order Laplace instance: Δ = β − 1 − (α+β) = −(1+α) < −1.
        let p = WrightParams {
            a1: (1.0, 1.0),
            a2: (0.5, 1.0),
            b1: (1.0, 0.5),
        };
        assert!(p.convergence_index() < -1.0);
        let r = wright_2psi1(&p, -0.1, &SeriesTruncation::convergent(100));
        assert!(matches!(r, Err(SpecialFnError::DivergentSeries(_))));
        // smallest-term mode returns the asymptotic value with converged=false
        let v = wright_2psi1(&p, -0.001, &SeriesTruncation::smallest_term(100)).unwrap();
        assert!(!v.converged);
        assert!(v.err_estimate > 0.0 && v.err_estimate.is_finite());
    }

    #[test]
    fn numerator_pole_is_error() {
        let p = WrightParams {
            a1: (0.0, 1.0), // Γ(0) at r = 0
            a2: (1.0, 1.0),
            b1: (1.0, 1.0),
        };
        let r = wright_2psi1(&p, 0.5, &SeriesTruncation::default());
        assert!(matches!(r, Err(SpecialFnError::NumeratorPole { term: 0, .. })));
    }

    #[test]
    fn denominator_pole_zeroes_term() {
        // b1 = (1, -?) not allowed; use b1 offset 0 weight 1: Γ(0+r) poles at
        // r=0 only; the r=0 term must vanish and the rest still sum.
        let p = WrightParams {
            a1: (1.0, 1.0),
            a2: (2.0, 1.0),
            b1: (0.0, 1.0),
        };
        // Σ_{r≥1} Γ(1+r)Γ(2+r)/Γ(r) z^r/r! = Σ_{r≥1} r(r+1)! z^r / r! ;
        // at z=0.1: r=1: 1·2·0.1 = 0.2; r=2: 2·6·0.01/2 = 0.06; r=3: 3·24·0.001/6=0.012; ...
        let v = wright_2psi1(&p, 0.1, &SeriesTruncation::convergent(400)).unwrap();
        assert!(v.value > 0.2 && v.value < 0.4);
        assert!(v.converged);
    }

    #[test]
    fn invalid_weights_rejected() {
        let p = WrightParams {
            a1: (1.0, 0.0),
            a2: (1.0, 1.0),
            b1: (1.0, 1.0),
        };
        assert!(wright_2psi1(&p, 0.5, &SeriesTruncation::default()).is_err());
    }

    #[test]
    fn budget_error_in_convergent_mode() {
        let p = WrightParams {
            a1: (1.0, 0.5),
            a2: (1.0, 0.5),
            b1: (1.0, 2.0),
        };
        // Entire series (Δ = 1) but z large enough that 3 terms are nowhere
        // near the floor.
        let t = SeriesTruncation::new(3, 1e-30, TruncationMode::Convergent).unwrap();
        assert!(matches!(
            wright_2psi1(&p, 5.0, &t),
            Err(SpecialFnError::TruncationBudget { .. })
        ));
    }
}
