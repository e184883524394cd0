//! Two-parameter Mittag-Leffler function E_{β,γ}(z) = Σ_k z^k / Γ(βk + γ).
//!
//! Evaluation strategy: the power series summed in double-double precision
//! with a precomputed gamma-ratio table, and — on the negative real axis for
//! β < 1 — the algebraic-decay asymptotic expansion
//!
//! ```text
//! E_{β,γ}(−x) ≈ Σ_{k≥1} (−1)^{k−1} x^(−k) / Γ(γ − βk)
//! ```
//!
//! truncated at its smallest term. The crossover is per-(β,γ): the asymptotic
//! branch is used once its smallest-term estimate clears 1e-12 relative, and
//! the two branches are required to agree at the seam (see [`ml_seam_check`]).
//! Arguments where neither branch reaches target accuracy yield a value with
//! `accuracy_warning` set rather than a failure.

use super::dd::Dd;
use super::gamma::{gamma_reciprocal, lgamma_dd, lgamma_sign, GammaRatioTable};
use super::SpecialFnError;

/// Which evaluation branch produced a Mittag-Leffler value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlBranch {
    /// Power series in double-double precision.
    PowerSeries,
    /// Algebraic asymptotic expansion, smallest-term truncation.
    Asymptotic,
    /// z = 0 short-circuit: 1/Γ(γ).
    Origin,
}

/// A Mittag-Leffler evaluation with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlValue {
    pub value: f64,
    /// Absolute error estimate (truncation + roundoff-cancellation).
    pub err_estimate: f64,
    pub branch: MlBranch,
    /// Set when the argument falls between regimes and neither branch meets
    /// the 1e-10 relative target.
    pub accuracy_warning: bool,
}

/// Asymptotic branch accepted once its estimate clears this relative level.
const ASYM_ACCEPT_REL: f64 = 1e-12;
/// Warning threshold: the post-condition accuracy target.
const TARGET_REL: f64 = 1e-10;
/// Series terms larger than this abort the power-series branch.
const SERIES_OVERFLOW: f64 = 1e250;

/// Reusable evaluator for fixed (β, γ): owns the gamma-ratio table so that
/// repeated evaluations (grids, quadrature) cost only the series loop.
/// Immutable after construction; safe to share across threads.
pub struct MlEvaluator {
    beta: f64,
    gamma_param: f64,
    table: GammaRatioTable,
}

impl MlEvaluator {
    pub fn new(beta: f64, gamma_param: f64) -> Result<MlEvaluator, SpecialFnError> {
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(SpecialFnError::Domain(format!(
                "mittag_leffler: beta must be positive, got {beta}"
            )));
        }
        if !(gamma_param > 0.0) || !gamma_param.is_finite() {
            return Err(SpecialFnError::Domain(format!(
                "mittag_leffler: gamma must be positive, got {gamma_param}"
            )));
        }
        // Series length: the term hump sits near j ~ exp(ln|z|/β)/β at the
        // crossover, which shrinks rapidly with β; 120/β + 384 covers the
        // lattice β >= 0.1 with slack past the hump.
        let len = ((120.0 / beta).ceil() as usize + 384).min(1600);
        let table = GammaRatioTable::build(Dd::from_f64(gamma_param), beta, len);
        Ok(MlEvaluator {
            beta,
            gamma_param,
            table,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma_param(&self) -> f64 {
        self.gamma_param
    }

    /// Evaluate E_{β,γ}(z).
    pub fn eval(&self, z: f64) -> MlValue {
        self.eval_dd(Dd::from_f64(z))
    }

    /// Evaluate with a double-double argument (used by the kernel, where
    /// z = −λ yᵟ must carry more than f64 accuracy into the series).
    pub(crate) fn eval_dd(&self, z: Dd) -> MlValue {
        let zf = z.to_f64();
        if zf == 0.0 {
            return MlValue {
                value: gamma_reciprocal(self.gamma_param),
                err_estimate: 0.0,
                branch: MlBranch::Origin,
                accuracy_warning: false,
            };
        }
        let mut asym: Option<(f64, f64)> = None;
        if zf < 0.0 && self.beta < 1.0 && -zf >= 1.0 {
            let (value, est) = self.asymptotic(-zf);
            if est <= ASYM_ACCEPT_REL * value.abs() {
                return MlValue {
                    value,
                    err_estimate: est,
                    branch: MlBranch::Asymptotic,
                    accuracy_warning: false,
                };
            }
            asym = Some((value, est));
        }
        match self.series_dd(z) {
            Some((sum, max_term, stop_term, n)) => {
                let value = sum.to_f64();
                let est = max_term * 2.5e-32 * n as f64 + stop_term + value.abs() * 1e-30;
                let warn = est > TARGET_REL * value.abs().max(1e-300);
                // Prefer the asymptotic value if it is the better of the two.
                if let Some((av, ae)) = asym {
                    if ae < est {
                        return MlValue {
                            value: av,
                            err_estimate: ae,
                            branch: MlBranch::Asymptotic,
                            accuracy_warning: ae > TARGET_REL * av.abs().max(1e-300),
                        };
                    }
                }
                MlValue {
                    value,
                    err_estimate: est,
                    branch: MlBranch::PowerSeries,
                    accuracy_warning: warn,
                }
            }
            None => {
                // Series blew past the overflow guard.
                if let Some((av, ae)) = asym {
                    MlValue {
                        value: av,
                        err_estimate: ae,
                        branch: MlBranch::Asymptotic,
                        accuracy_warning: true,
                    }
                } else {
                    MlValue {
                        value: f64::NAN,
                        err_estimate: f64::INFINITY,
                        branch: MlBranch::PowerSeries,
                        accuracy_warning: true,
                    }
                }
            }
        }
    }

    /// Power series in double-double. Returns (sum, max |term|, |term| at
    /// stop, terms used), or None if a term exceeded the overflow guard.
    fn series_dd(&self, z: Dd) -> Option<(Dd, f64, f64, usize)> {
        let mut term = self.table.inv_gamma0;
        let mut sum = term;
        let mut max_term = term.hi.abs();
        for j in 0..self.table.len() {
            term = term.mul(z).mul(self.table.ratios[j]);
            sum = sum.add(term);
            let mag = term.hi.abs();
            if mag > max_term {
                max_term = mag;
                if mag > SERIES_OVERFLOW {
                    return None;
                }
            }
            if mag <= 1e-33 * sum.hi.abs() + 1e-315 {
                return Some((sum, max_term, mag, j + 2));
            }
        }
        let mag = term.hi.abs();
        Some((sum, max_term, mag, self.table.len() + 1))
    }

    /// ln of a smooth envelope of the k-th asymptotic term magnitude
    /// x^(−k) |1/Γ(γ−βk)|. Raw magnitudes oscillate through the reflection
    /// sine (vanishing at the Γ poles), so truncation decisions use
    /// |1/Γ(z)| ≤ Γ(1−z)/π instead (exact value for z ≥ 1/2, where Γ has no
    /// zeros or poles).
    fn ln_term_envelope(&self, k: usize, ln_x: f64) -> f64 {
        let arg = self.gamma_param - self.beta * k as f64;
        let c = if arg >= 0.5 {
            -lgamma_dd(Dd::from_f64(arg)).to_f64()
        } else {
            lgamma_dd(Dd::from_f64(1.0 - arg)).to_f64() - std::f64::consts::PI.ln()
        };
        c - k as f64 * ln_x
    }

    /// Asymptotic expansion of E_{β,γ}(−x), truncated at the minimum of the
    /// term envelope. Returns (value, absolute error estimate). Terms whose
    /// denominator gamma hits a pole contribute exactly zero.
    fn asymptotic(&self, x: f64) -> (f64, f64) {
        const K_MAX: usize = 400;
        let ln_x = x.ln();
        // Locate the envelope minimum (smooth, decreasing then
        // superexponentially increasing; scan with early exit).
        let mut k_best = 1usize;
        let mut ln_env_best = f64::INFINITY;
        for k in 1..=K_MAX {
            let e = self.ln_term_envelope(k, ln_x);
            if e < ln_env_best {
                ln_env_best = e;
                k_best = k;
            } else if e > ln_env_best + 14.0 {
                // well past the minimum (e^14 above it)
                break;
            }
            if ln_env_best < -740.0 {
                break;
            }
        }
        let mut sum = 0.0f64;
        let mut comp = 0.0f64; // Neumaier compensation
        let mut abs_sum = 0.0f64;
        for k in 1..=k_best {
            let arg = self.gamma_param - self.beta * k as f64;
            if arg <= 0.0 && arg == arg.floor() {
                continue; // denominator gamma pole: term is exactly zero
            }
            // log-space: |1/Γ(arg)| spans the full exponent range out here
            let (lg, sign_gamma) = lgamma_sign(arg).expect("pole excluded above");
            let ln_mag = -(k as f64) * ln_x - lg;
            if ln_mag < -740.0 {
                break; // below underflow; envelope is decreasing up to k_best
            }
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let mag = ln_mag.exp();
            let t = sign * sign_gamma * mag;
            let s = sum + t;
            comp += if sum.abs() >= t.abs() {
                (sum - s) + t
            } else {
                (t - s) + sum
            };
            sum = s;
            abs_sum += mag;
        }
        let value = sum + comp;
        let omitted = self.ln_term_envelope(k_best + 1, ln_x).exp();
        let est = omitted + abs_sum * f64::EPSILON;
        (value, est)
    }

    /// Consecutive gamma ratios Γ(γ+jβ)/Γ(γ+(j+1)β) backing the series;
    /// shared with the kernel-primitive series.
    pub(crate) fn ratio_table(&self) -> &[Dd] {
        &self.table.ratios
    }

    /// Smallest argument x at which the asymptotic branch is accepted for
    /// this (β, γ), found by geometric scan. None if no crossover below 2e4.
    pub fn asymptotic_crossover(&self) -> Option<f64> {
        let mut x = 1.0f64;
        while x <= 2e4 {
            let (v, est) = self.asymptotic(x);
            if est <= ASYM_ACCEPT_REL * v.abs() {
                return Some(x);
            }
            x *= 1.1;
        }
        None
    }
}

/// E_{β,γ}(z) for β > 0, γ > 0, real z.
///
/// One-shot convenience; repeated evaluation at fixed (β, γ) should go
/// through [`MlEvaluator`], which amortizes the gamma table.
pub fn mittag_leffler(beta: f64, gam: f64, z: f64) -> Result<f64, SpecialFnError> {
    Ok(MlEvaluator::new(beta, gam)?.eval(z).value)
}

/// Seam self-test: locate the series/asymptotic crossover for (β, γ) and
/// return (crossover x, relative disagreement of the two branches there).
pub fn ml_seam_check(beta: f64, gam: f64) -> Result<(f64, f64), SpecialFnError> {
    let ev = MlEvaluator::new(beta, gam)?;
    let x = ev.asymptotic_crossover().ok_or_else(|| {
        SpecialFnError::Domain(format!(
            "no asymptotic crossover found below 2e4 for beta={beta}, gamma={gam}"
        ))
    })?;
    let (av, _) = ev.asymptotic(x);
    let sv = match ev.series_dd(Dd::from_f64(-x)) {
        Some((sum, _, _, _)) => sum.to_f64(),
        None => {
            return Err(SpecialFnError::Domain(format!(
                "series overflow at the seam x={x} for beta={beta}, gamma={gam}"
            )))
        }
    };
    Ok((x, (av - sv).abs() / av.abs().max(1e-300)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn reduces_to_exp() {
        // E_{1,1}(z) = e^z
        for &z in &[-20.0, -7.3, -1.0, 0.0, 0.5, 1.0, 5.0, 20.0] {
            let v = mittag_leffler(1.0, 1.0, z).unwrap();
            assert!(rel(v, z.exp()) < 1e-12, "z={z}: {v} vs {}", z.exp());
        }
    }

    #[test]
    fn exp_value_at_one() {
        let v = mittag_leffler(1.0, 1.0, 1.0).unwrap();
        assert!(rel(v, std::f64::consts::E) < 1e-14);
    }

    #[test]
    fn origin_value_is_reciprocal_gamma() {
        // E_{β,γ}(0) = 1/Γ(γ); spec example at (0.7, 0.5): 1/Γ(0.5)
        let v = mittag_leffler(0.7, 0.5, 0.0).unwrap();
        assert!(rel(v, 0.5641895835477563) < 1e-13);
    }

    #[test]
    fn half_order_erfc_identity() {
        // E_{1/2}(−1) = e·erfc(1) = 0.42758357615580700441 (frozen from a
        // high-precision evaluation; re-derived against statrs in the
        // integration tests).
        let v = mittag_leffler(0.5, 1.0, -1.0).unwrap();
        assert!(rel(v, 0.42758357615580700441) < 1e-12);
    }

    #[test]
    fn cosine_identity() {
        // E_{2,1}(−z) = cos(√z)
        for &z in &[0.25, 1.0, 9.0, 50.0, 100.0] {
            let v = mittag_leffler(2.0, 1.0, -z).unwrap();
            assert!(rel(v, z.sqrt().cos()) < 1e-11, "z={z}");
        }
    }

    #[test]
    fn branches_agree_at_seam() {
        for &beta in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let (x, d) = ml_seam_check(beta, 1.0).unwrap();
            assert!(d < 1e-9, "beta={beta}: seam at {x} disagrees by {d}");
        }
    }

    #[test]
    fn asymptotic_branch_used_deep_in_the_tail() {
        let ev = MlEvaluator::new(0.5, 1.0).unwrap();
        let r = ev.eval(-50.0);
        assert_eq!(r.branch, MlBranch::Asymptotic);
        assert!(!r.accuracy_warning);
        // E_{1/2}(−50) = e^{2500} erfc(50); leading asymptotics 1/(50·Γ(1/2))·(1 − ...)
        assert!(r.value > 0.0 && r.value < 0.012);
    }

    #[test]
    fn domain_errors() {
        assert!(mittag_leffler(0.0, 1.0, 1.0).is_err());
        assert!(mittag_leffler(-0.5, 1.0, 1.0).is_err());
        assert!(mittag_leffler(0.5, 0.0, 1.0).is_err());
        assert!(mittag_leffler(0.5, -2.0, 1.0).is_err());
    }

    #[test]
    fn warning_between_regimes() {
        // β = 1 deep on the negative axis: the asymptotic branch is void and
        // the series has lost too much; a warning (not a failure) comes back.
        let ev = MlEvaluator::new(1.0, 1.0).unwrap();
        let r = ev.eval(-45.0);
        assert!(r.accuracy_warning);
        assert!(r.value.is_finite());
    }

    #[test]
    fn positive_on_negative_axis() {
        // Complete monotonicity: E_{β}(−x) > 0 for β ∈ (0,1).
        for &beta in &[0.1, 0.5, 0.9] {
            let ev = MlEvaluator::new(beta, 1.0).unwrap();
            for &x in &[0.01, 0.5, 1.0, 3.0, 10.0, 40.0] {
                let v = ev.eval(-x).value;
                assert!(v > 0.0, "beta={beta}, x={x}: {v}");
            }
        }
    }
}
