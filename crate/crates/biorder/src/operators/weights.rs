//! Product-integration weights δ_{n,i}.
//!
//! Corrected form: δ_{n,i} = P(t_n − t_i) − P(t_n − t_{i+1}), the exact
//! integral of the kernel over [t_i, t_{i+1}] shifted to t_n; strictly
//! positive by kernel positivity.
//!
//! Paper-literal form: the published expression built from E_{β,2−α}, kept
//! verbatim — the Mittag-Leffler argument repeats t_{i+1} in both factors,
//! so the bracket collapses to a difference of the power prefactors times a
//! single E value (and comes out negative).

use super::{Grid, OperatorError, Scheme};
use crate::special_functions::dd::Dd;
use crate::special_functions::{BiOrder, Kernel, MlEvaluator, SeriesTruncation};

/// Table of kernel primitives on the uniform lags of a grid:
/// `prim[k] = P(k·Δt)`, k = 0..=n_intervals. Every δ_{n,i} on the grid is a
/// difference of two entries (t_n − t_i = (n−i)Δt).
pub(super) fn primitive_table(kernel: &Kernel, grid: &Grid) -> Result<Vec<f64>, OperatorError> {
    let trunc = SeriesTruncation::internal();
    let step = grid.step();
    (0..=grid.n_intervals())
        .map(|k| {
            kernel
                .primitive(k as f64 * step, &trunc)
                .map(|s| s.value)
                .map_err(OperatorError::from)
        })
        .collect()
}

/// Table of the paper-literal weight pieces on uniform lags:
/// `w[k] = (kΔt)^(1−α) · E_{β,2−α}(−λ (kΔt)ᵟ)`, so that
/// δ_{n,i} = w-prefactor differences sharing the E value at lag n−i−1.
pub(super) fn paper_literal_table(
    order: &BiOrder,
    grid: &Grid,
) -> Result<(Vec<f64>, Vec<f64>), OperatorError> {
    let ml = MlEvaluator::new(order.beta(), 2.0 - order.alpha())?;
    let step = grid.step();
    let lambda = order.lambda_dd();
    let sigma = order.sigma_dd();
    let one_minus_alpha = 1.0 - order.alpha();
    let mut pow = Vec::with_capacity(grid.n_nodes());
    let mut evals = Vec::with_capacity(grid.n_nodes());
    for k in 0..=grid.n_intervals() {
        let y = k as f64 * step;
        if k == 0 {
            pow.push(0.0);
            evals.push(ml.eval(0.0).value);
        } else {
            let ln_y = Dd::from_f64(y).ln();
            pow.push(ln_y.mul_f64(one_minus_alpha).exp().to_f64());
            let z = lambda.mul(sigma.mul(ln_y).exp()).neg();
            evals.push(ml.eval_dd(z).value);
        }
    }
    Ok((pow, evals))
}

/// The paper-literal δ_{n,i} from the tables of [`paper_literal_table`],
/// with lag k = n − i:
/// δ = [(k−1 lag)^(1−α) − (k lag)^(1−α)] · E_{β,2−α} evaluated at the k−1 lag.
#[inline]
pub(super) fn paper_literal_delta(pow: &[f64], evals: &[f64], k: usize) -> f64 {
    (pow[k - 1] - pow[k]) * evals[k - 1]
}

/// The quadrature weight δ_{n,i} for 0 ≤ i < n ≤ N.
///
/// One-shot convenience; grid sweeps use the shared tables internally.
pub fn delta_coefficients(
    order: &BiOrder,
    grid: &Grid,
    n: usize,
    i: usize,
    scheme: Scheme,
) -> Result<f64, OperatorError> {
    if n > grid.n_intervals() {
        return Err(OperatorError::Index(format!(
            "n = {n} exceeds the grid's {} intervals",
            grid.n_intervals()
        )));
    }
    if i >= n {
        return Err(OperatorError::Index(format!(
            "weight index i = {i} must be below n = {n}"
        )));
    }
    match scheme {
        Scheme::Corrected => {
            let kernel = Kernel::new(order);
            let trunc = SeriesTruncation::internal();
            let step = grid.step();
            let hi = kernel.primitive((n - i) as f64 * step, &trunc)?.value;
            let lo = kernel.primitive((n - i - 1) as f64 * step, &trunc)?.value;
            Ok(hi - lo)
        }
        Scheme::PaperLiteral => {
            let (pow, evals) = paper_literal_table(order, grid)?;
            Ok(paper_literal_delta(&pow, &evals, n - i))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn index_errors() {
        let o = BiOrder::new(0.5, 0.5).unwrap();
        let g = Grid::new(0.0, 1.0, 4).unwrap();
        assert!(delta_coefficients(&o, &g, 2, 2, Scheme::Corrected).is_err());
        assert!(delta_coefficients(&o, &g, 2, 3, Scheme::Corrected).is_err());
        assert!(delta_coefficients(&o, &g, 5, 0, Scheme::Corrected).is_err());
        assert!(delta_coefficients(&o, &g, 2, 1, Scheme::Corrected).is_ok());
    }

    #[test]
    fn corrected_weights_positive() {
        for (a, b) in [(0.25, 0.75), (0.5, 0.5), (0.9, 0.1)] {
            let o = BiOrder::new(a, b).unwrap();
            let g = Grid::new(0.0, 2.0, 16).unwrap();
            for n in 1..=16 {
                for i in 0..n {
                    let d = delta_coefficients(&o, &g, n, i, Scheme::Corrected).unwrap();
                    assert!(d > 0.0, "δ({n},{i}) = {d} at α={a}, β={b}");
                }
            }
        }
    }

    #[test]
    fn power_law_first_weight() {
        // λ = 0, α = 0.5, Δt = 1: δ_{1,0} = P(1) − P(0) = 2. BiOrder cannot
        // force λ = 0, so go through the kernel directly.
        let k = Kernel::with_lambda(0.5, 0.5, 0.0).unwrap();
        let t = SeriesTruncation::default();
        let d = k.primitive(1.0, &t).unwrap().value - k.primitive(0.0, &t).unwrap().value;
        assert!(rel(d, 2.0) < 1e-13);
    }

    #[test]
    fn half_orders_weight_against_primitive() {
        // α=β=0.5, Δt=0.5, n=2, i=0: δ = P(1) − P(0.5); P(1) frozen.
        let o = BiOrder::new(0.5, 0.5).unwrap();
        let g = Grid::new(0.0, 1.0, 2).unwrap();
        let d = delta_coefficients(&o, &g, 2, 0, Scheme::Corrected).unwrap();
        let k = Kernel::new(&o);
        let t = SeriesTruncation::default();
        let expect = 1.5068620757157926956 - k.primitive(0.5, &t).unwrap().value;
        assert!(rel(d, expect) < 1e-12);
    }

    #[test]
    fn paper_literal_weights_negative() {
        // The verbatim published weight is negative: the power prefactor
        // difference (k−1)^(1−α) − k^(1−α) < 0 times a positive E value.
        let o = BiOrder::new(0.5, 0.5).unwrap();
        let g = Grid::new(0.0, 1.0, 4).unwrap();
        for n in 1..=4 {
            for i in 0..n {
                let d = delta_coefficients(&o, &g, n, i, Scheme::PaperLiteral).unwrap();
                assert!(d < 0.0, "paper-literal δ({n},{i}) = {d}");
            }
        }
    }
}
