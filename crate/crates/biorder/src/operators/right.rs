//! Right-sided operators on [x₀, H]: the reflected convolution ∫_x^H with
//! kernel argument (t − x). The infinite upper limit of the continuum
//! definitions is replaced by the caller's horizon H, and the output carries
//! a tail-estimate warning ‖f‖∞ · C · (P(y_cap) − P(H−x)) with the primitive
//! capped at its largest validated argument y_cap = 100.

use super::left::difference_nodes;
use super::weights::primitive_table;
use super::{OperatorError, OperatorOutput, SampledFunction, Scheme, Variant};
use crate::special_functions::{BiOrder, Kernel, SeriesTruncation};

/// Largest validated primitive argument used for the tail proxy.
const TAIL_PROXY_Y: f64 = 100.0;

/// Right-sided AC or AR derivative of f sampled on [x₀, H].
///
/// AC: values[m] = C · Σ_{i≥m} slope_i · [P(x_{i+1}−x_m) − P(x_i−x_m)];
/// values at the horizon node are 0 (empty integral). AR convolves midpoint
/// values and differences the running integral in x.
pub fn right_sided_derivative(
    f: &SampledFunction,
    order: &BiOrder,
    variant: Variant,
) -> Result<OperatorOutput, OperatorError> {
    let grid = f.grid();
    let n_int = grid.n_intervals();
    if n_int < 2 {
        return Err(OperatorError::Grid(
            "right-sided operator needs at least two intervals".into(),
        ));
    }
    if !(grid.end() > grid.start()) {
        return Err(OperatorError::Horizon(format!(
            "horizon {} must exceed every requested node (start {})",
            grid.end(),
            grid.start()
        )));
    }
    let step = grid.step();
    let c = order.prefactor();
    let v = f.values();
    let kernel = Kernel::new(order);
    let prim = primitive_table(&kernel, grid)?;

    let values = match variant {
        Variant::Ac => {
            let mut out = vec![0.0; grid.n_nodes()];
            for m in 0..n_int {
                let mut acc = 0.0;
                for i in m..n_int {
                    let slope = (v[i + 1] - v[i]) / step;
                    acc += slope * (prim[i + 1 - m] - prim[i - m]);
                }
                out[m] = c * acc;
            }
            out
        }
        Variant::Ar => {
            let mut integral = vec![0.0; grid.n_nodes()];
            for m in 0..n_int {
                let mut acc = 0.0;
                for i in m..n_int {
                    let fbar = 0.5 * (v[i] + v[i + 1]);
                    acc += fbar * (prim[i + 1 - m] - prim[i - m]);
                }
                integral[m] = c * acc;
            }
            difference_nodes(&integral, step)
        }
    };

    // Tail estimate: what the truncated (H, ∞) part could contribute.
    let f_max = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let trunc = SeriesTruncation::internal();
    let p_cap = kernel.primitive(TAIL_PROXY_Y, &trunc)?.value;
    let mut tail_est = 0.0f64;
    for m in 0..grid.n_nodes() {
        let reach = grid.end() - grid.node(m);
        if reach < TAIL_PROXY_Y {
            let p_reach = kernel.primitive(reach, &trunc)?.value;
            tail_est = tail_est.max(f_max * c * (p_cap - p_reach));
        }
    }
    let warnings = vec![format!(
        "horizon truncation at H = {}: worst-node tail estimate {:.3e} \
         (computed with the primitive capped at y = {})",
        grid.end(),
        tail_est,
        TAIL_PROXY_Y
    )];

    Ok(OperatorOutput {
        values,
        scheme: Scheme::Corrected,
        variant,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{ac_derivative_grid, Grid};

    fn order(a: f64, b: f64) -> BiOrder {
        BiOrder::new(a, b).unwrap()
    }

    #[test]
    fn zero_function_gives_zeros() {
        let g = Grid::new(0.0, 3.0, 24).unwrap();
        let f = SampledFunction::from_fn(g, |_| 0.0).unwrap();
        for variant in [Variant::Ac, Variant::Ar] {
            let out = right_sided_derivative(&f, &order(0.5, 0.5), variant).unwrap();
            assert!(out.values.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn linear_ramp_matches_negative_primitive() {
        // f(t) = H − t has reflected slope −1, so right-AC(x) = −C·P(H−x).
        let o = order(0.5, 0.5);
        let h = 1.0;
        let g = Grid::new(0.0, h, 64).unwrap();
        let f = SampledFunction::from_fn(g, |t| h - t).unwrap();
        let out = right_sided_derivative(&f, &o, Variant::Ac).unwrap();
        let kernel = Kernel::new(&o);
        let trunc = SeriesTruncation::internal();
        for m in 0..=64 {
            let expect = -o.prefactor() * kernel.primitive(h - g.node(m), &trunc).unwrap().value;
            assert!(
                (out.values[m] - expect).abs() <= 1e-10 * expect.abs().max(1.0),
                "node {m}: {} vs {expect}",
                out.values[m]
            );
        }
    }

    #[test]
    fn reflection_identity() {
        // right-AC of f on [0,H] at x_m equals − left-AC of f(H−t) at node
        // N−m, exactly up to float reassociation.
        let o = order(0.3, 0.7);
        let h = 2.0;
        let n = 40;
        let g = Grid::new(0.0, h, n).unwrap();
        let f = SampledFunction::from_fn(g, |t| (t * 1.3).sin() + 0.5 * t).unwrap();
        let right = right_sided_derivative(&f, &o, Variant::Ac).unwrap();
        let mirrored = SampledFunction::new(
            g,
            (0..=n).map(|i| f.values()[n - i]).collect(),
        )
        .unwrap();
        let left = ac_derivative_grid(&mirrored, &o, Scheme::Corrected).unwrap();
        for m in 0..=n {
            let lhs = right.values[m];
            let rhs = -left.values[n - m];
            assert!(
                (lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0),
                "node {m}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn tail_warning_present() {
        let g = Grid::new(0.0, 1.0, 8).unwrap();
        let f = SampledFunction::from_fn(g, |t| t).unwrap();
        let out = right_sided_derivative(&f, &order(0.5, 0.5), Variant::Ac).unwrap();
        assert_eq!(out.warnings.len(), 1);
        assert!(out.warnings[0].contains("tail estimate"));
    }
}
