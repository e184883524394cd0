//! Partial and mixed bi-order derivatives of f(x, t) on Grid×Grid samples.
//!
//! The partial derivative applies the 1D convolution along one axis at a
//! frozen index of the other (the convolved factor is the slope in the
//! integration variable). The mixed AC derivative is the tensor-product
//! product integration of the discrete mixed difference
//! ∂²f/∂ξ∂λ against the two kernels; being a finite double sum, the two
//! summation orders commute exactly, which is the discrete form of the
//! mixed-derivative symmetry theorem.

use super::weights::primitive_table;
use super::{OperatorError, SampledFunction2d};
use crate::special_functions::{BiOrder, Kernel};

/// Summation nesting for the mixed operators (the symmetry check knob).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedEvalOrder {
    /// Outer loop over the x lag, inner over the t lag.
    XThenT,
    /// Outer loop over the t lag, inner over the x lag.
    TThenX,
}

fn check_2d(f: &SampledFunction2d) -> Result<(), OperatorError> {
    if f.grid_x().n_intervals() < 1 || f.grid_t().n_intervals() < 1 {
        return Err(OperatorError::Grid(
            "2D operators need at least one interval per axis".into(),
        ));
    }
    Ok(())
}

/// AC partial derivative along x at the fixed t row `t_index`: the 1D
/// corrected AC derivative of x ↦ f(x, t_{t_index}).
pub fn ac_partial_x(
    f: &SampledFunction2d,
    order: &BiOrder,
    t_index: usize,
) -> Result<Vec<f64>, OperatorError> {
    check_2d(f)?;
    if t_index >= f.grid_t().n_nodes() {
        return Err(OperatorError::Index(format!(
            "t_index {} out of range for {} t-nodes",
            t_index,
            f.grid_t().n_nodes()
        )));
    }
    let gx = *f.grid_x();
    let step = gx.step();
    let kernel = Kernel::new(order);
    let prim = primitive_table(&kernel, &gx)?;
    let c = order.prefactor();
    let nx = gx.n_intervals();
    let col: Vec<f64> = (0..=nx).map(|i| f.values()[i][t_index]).collect();
    let mut out = vec![0.0; nx + 1];
    for m in 1..=nx {
        let mut acc = 0.0;
        for i in 0..m {
            let slope = (col[i + 1] - col[i]) / step;
            acc += slope * (prim[m - i] - prim[m - i - 1]);
        }
        out[m] = c * acc;
    }
    Ok(out)
}

/// Discrete mixed slopes D2[i][j] = (f_{i+1,j+1} − f_{i,j+1} − f_{i+1,j} +
/// f_{i,j}) / (Δx Δt), the cell average of ∂²f/∂x∂t.
fn mixed_slopes(f: &SampledFunction2d) -> Vec<Vec<f64>> {
    let nx = f.grid_x().n_intervals();
    let nt = f.grid_t().n_intervals();
    let dx = f.grid_x().step();
    let dt = f.grid_t().step();
    let v = f.values();
    (0..nx)
        .map(|i| {
            (0..nt)
                .map(|j| (v[i + 1][j + 1] - v[i][j + 1] - v[i + 1][j] + v[i][j]) / (dx * dt))
                .collect()
        })
        .collect()
}

/// Mixed AC derivative matrix: out[m][n] = C_x C_t Σ_{i<m} Σ_{j<n}
/// D2[i][j] δx_{m,i} δt_{n,j}; `eval_order` selects the summation nesting.
pub fn ac_mixed_xt(
    f: &SampledFunction2d,
    order_x: &BiOrder,
    order_t: &BiOrder,
    eval_order: MixedEvalOrder,
) -> Result<Vec<Vec<f64>>, OperatorError> {
    check_2d(f)?;
    let gx = *f.grid_x();
    let gt = *f.grid_t();
    let prim_x = primitive_table(&Kernel::new(order_x), &gx)?;
    let prim_t = primitive_table(&Kernel::new(order_t), &gt)?;
    let d2 = mixed_slopes(f);
    let c = order_x.prefactor() * order_t.prefactor();
    let nx = gx.n_intervals();
    let nt = gt.n_intervals();
    let mut out = vec![vec![0.0; nt + 1]; nx + 1];
    for m in 1..=nx {
        for n in 1..=nt {
            let mut acc = 0.0;
            match eval_order {
                MixedEvalOrder::XThenT => {
                    for i in 0..m {
                        let wx = prim_x[m - i] - prim_x[m - i - 1];
                        let mut inner = 0.0;
                        for j in 0..n {
                            inner += d2[i][j] * (prim_t[n - j] - prim_t[n - j - 1]);
                        }
                        acc += wx * inner;
                    }
                }
                MixedEvalOrder::TThenX => {
                    for j in 0..n {
                        let wt = prim_t[n - j] - prim_t[n - j - 1];
                        let mut inner = 0.0;
                        for i in 0..m {
                            inner += d2[i][j] * (prim_x[m - i] - prim_x[m - i - 1]);
                        }
                        acc += wt * inner;
                    }
                }
            }
            out[m][n] = c * acc;
        }
    }
    Ok(out)
}

/// Mixed AR derivative: convolve f itself (4-corner cell averages) against
/// both kernels into the double integral I2, then take discrete mixed
/// differences of I2 (central at interior nodes, one-sided at the edges,
/// per axis).
pub fn ar_mixed_xt(
    f: &SampledFunction2d,
    order_x: &BiOrder,
    order_t: &BiOrder,
) -> Result<Vec<Vec<f64>>, OperatorError> {
    check_2d(f)?;
    let gx = *f.grid_x();
    let gt = *f.grid_t();
    if gx.n_intervals() < 2 || gt.n_intervals() < 2 {
        return Err(OperatorError::Grid(
            "mixed AR needs at least two intervals per axis".into(),
        ));
    }
    let prim_x = primitive_table(&Kernel::new(order_x), &gx)?;
    let prim_t = primitive_table(&Kernel::new(order_t), &gt)?;
    let c = order_x.prefactor() * order_t.prefactor();
    let v = f.values();
    let nx = gx.n_intervals();
    let nt = gt.n_intervals();

    let mut integral = vec![vec![0.0; nt + 1]; nx + 1];
    for m in 1..=nx {
        for n in 1..=nt {
            let mut acc = 0.0;
            for i in 0..m {
                let wx = prim_x[m - i] - prim_x[m - i - 1];
                let mut inner = 0.0;
                for j in 0..n {
                    let fbar =
                        0.25 * (v[i][j] + v[i + 1][j] + v[i][j + 1] + v[i + 1][j + 1]);
                    inner += fbar * (prim_t[n - j] - prim_t[n - j - 1]);
                }
                acc += wx * inner;
            }
            integral[m][n] = c * acc;
        }
    }

    // Mixed difference: d/dx then d/dt of I2.
    let dx = gx.step();
    let dt = gt.step();
    let mut ddx = vec![vec![0.0; nt + 1]; nx + 1];
    for n in 0..=nt {
        ddx[0][n] = (integral[1][n] - integral[0][n]) / dx;
        ddx[nx][n] = (integral[nx][n] - integral[nx - 1][n]) / dx;
        for m in 1..nx {
            ddx[m][n] = (integral[m + 1][n] - integral[m - 1][n]) / (2.0 * dx);
        }
    }
    let mut out = vec![vec![0.0; nt + 1]; nx + 1];
    for m in 0..=nx {
        out[m][0] = (ddx[m][1] - ddx[m][0]) / dt;
        out[m][nt] = (ddx[m][nt] - ddx[m][nt - 1]) / dt;
        for n in 1..nt {
            out[m][n] = (ddx[m][n + 1] - ddx[m][n - 1]) / (2.0 * dt);
        }
    }
    Ok(out)
}
