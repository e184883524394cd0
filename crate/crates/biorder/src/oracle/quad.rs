//! Adaptive Gauss–Legendre quadrature with endpoint-singularity
//! regularization.
//!
//! Panels are bisected where the one-level Richardson defect
//! |I(panel) − I(left half) − I(right half)| exceeds the local allowance.
//! For an integrand with an algebraic singularity y^(−α) at the lower
//! endpoint, the leading piece is removed exactly by the substitution
//! u = (y − lo)^(1−α) (equivalently y = lo + u^(1/(1−α))), after which the
//! panels converge at full rate.
//!
//! Nodes and weights are computed at startup by Newton iteration on the
//! Legendre recurrence and cached immutably.

use std::sync::OnceLock;

use super::OracleError;

/// Quadrature result with an error estimate (sum of accepted panel defects).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evaluations: usize,
}

/// Panel rule choice; two sizes so independent cross-checks can avoid
/// sharing nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadRule {
    Gauss16,
    Gauss24,
}

/// Gauss–Legendre nodes and weights on [−1, 1] via Newton on P_n.
fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 1..=(n + 1) / 2 {
        // Tricomi-style initial guess
        let mut x = (std::f64::consts::PI * (i as f64 - 0.25) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((x, w));
        if 2 * i <= n {
            out.push((-x, w));
        }
    }
    out
}

fn rule_nodes(rule: QuadRule) -> &'static [(f64, f64)] {
    static G16: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    static G24: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    match rule {
        QuadRule::Gauss16 => G16.get_or_init(|| legendre_rule(16)),
        QuadRule::Gauss24 => G24.get_or_init(|| legendre_rule(24)),
    }
}

fn panel(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, rule: QuadRule) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in rule_nodes(rule) {
        acc += w * f(c + h * x);
    }
    acc * h
}

/// Adaptive integration of a regular integrand over [a, b].
pub fn adaptive_quad(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    rel_tol: f64,
    rule: QuadRule,
) -> Result<QuadResult, OracleError> {
    if !(b > a) {
        return Err(OracleError::Domain(format!(
            "integration interval must have b > a, got [{a}, {b}]"
        )));
    }
    const MAX_PANELS: usize = 4000;
    const MAX_DEPTH: usize = 52;
    let mut evals = 0usize;
    let count = |f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, e: &mut usize| {
        *e += rule_nodes(rule).len();
        panel(f, a, b, rule)
    };

    // First pass to size the tolerance allocation.
    let whole = count(f, a, b, &mut evals);
    let mut stack: Vec<(f64, f64, f64, usize)> = vec![(a, b, whole, 0)];
    let mut value = 0.0;
    let mut err = 0.0;
    let mut scale = whole.abs();
    let mut panels = 0usize;

    while let Some((lo, hi, coarse, depth)) = stack.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(OracleError::NonConvergence {
                err_estimate: err,
                detail: format!("panel budget exhausted on [{a}, {b}]"),
            });
        }
        let mid = 0.5 * (lo + hi);
        let left = count(f, lo, mid, &mut evals);
        let right = count(f, mid, hi, &mut evals);
        let fine = left + right;
        let defect = (coarse - fine).abs();
        scale = scale.max(fine.abs());
        let allowance = rel_tol * scale.max(1e-300) * ((hi - lo) / (b - a)).max(1e-6);
        if defect <= allowance || depth >= MAX_DEPTH {
            value += fine;
            err += defect;
        } else {
            stack.push((lo, mid, left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    Ok(QuadResult {
        value,
        err_estimate: err.max(value.abs() * 1e-15),
        evaluations: evals,
    })
}

/// ∫_lo^hi g(y) dy where g carries an algebraic singularity y^(−α) at the
/// *lower* endpoint (0 ≤ α < 1; α = 0 means regular).
///
/// The first unit of the range is mapped through y = lo + u^(1/(1−α)), which
/// turns c·(y−lo)^(−α) into the constant c/(1−α); the remainder integrates
/// directly. Default tolerance 1e-10 relative.
pub fn adaptive_singular_quad(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    alpha: f64,
    rel_tol: f64,
) -> Result<QuadResult, OracleError> {
    adaptive_singular_quad_with_rule(g, lo, hi, alpha, rel_tol, QuadRule::Gauss16)
}

/// [`adaptive_singular_quad`] with an explicit panel rule (for dual-rule
/// cross-checks).
pub fn adaptive_singular_quad_with_rule(
    g: &dyn Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    alpha: f64,
    rel_tol: f64,
    rule: QuadRule,
) -> Result<QuadResult, OracleError> {
    if !(alpha >= 0.0 && alpha < 1.0) {
        return Err(OracleError::Domain(format!(
            "singularity exponent must satisfy 0 <= alpha < 1, got {alpha}"
        )));
    }
    if !(hi > lo) {
        return Err(OracleError::Domain(format!(
            "integration interval must have hi > lo, got [{lo}, {hi}]"
        )));
    }
    if alpha == 0.0 {
        let mut f = |y: f64| g(y);
        return adaptive_quad(&mut f, lo, hi, rel_tol, rule);
    }
    let d = (hi - lo).min(1.0);
    let q = 1.0 / (1.0 - alpha);
    let u_max = d.powf(1.0 - alpha);
    let mut transformed = |u: f64| {
        let y = lo + u.powf(q);
        g(y) * u.powf(alpha * q) * q
    };
    let head = adaptive_quad(&mut transformed, 0.0, u_max, rel_tol, rule)?;
    if hi > lo + d {
        let mut rest = |y: f64| g(y);
        let tail = adaptive_quad(&mut rest, lo + d, hi, rel_tol, rule)?;
        Ok(QuadResult {
            value: head.value + tail.value,
            err_estimate: head.err_estimate + tail.err_estimate,
            evaluations: head.evaluations + tail.evaluations,
        })
    } else {
        Ok(head)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn legendre_rule_integrates_polynomials_exactly() {
        // 16-point rule is exact through degree 31
        let nodes = legendre_rule(16);
        assert_eq!(nodes.len(), 16);
        let wsum: f64 = nodes.iter().map(|&(_, w)| w).sum();
        assert!(rel(wsum, 2.0) < 1e-14);
        for k in [2usize, 8, 20, 30] {
            let int: f64 = nodes.iter().map(|&(x, w)| w * x.powi(k as i32)).sum();
            let exact = 2.0 / (k as f64 + 1.0);
            assert!(rel(int, exact) < 1e-13, "degree {k}");
        }
        let odd: f64 = nodes.iter().map(|&(x, w)| w * x.powi(7)).sum();
        assert!(odd.abs() < 1e-15);
    }

    #[test]
    fn smooth_integrals() {
        let mut f = |x: f64| x.sin();
        let r = adaptive_quad(&mut f, 0.0, std::f64::consts::PI, 1e-12, QuadRule::Gauss16)
            .unwrap();
        assert!(rel(r.value, 2.0) < 1e-13);
        let mut g = |x: f64| (-x * x).exp();
        let r2 = adaptive_quad(&mut g, -8.0, 8.0, 1e-12, QuadRule::Gauss24).unwrap();
        assert!(rel(r2.value, std::f64::consts::PI.sqrt()) < 1e-12);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // ∫₀¹ y^(−1/2) dy = 2
        let g = |y: f64| y.powf(-0.5);
        let r = adaptive_singular_quad(&g, 0.0, 1.0, 0.5, 1e-10).unwrap();
        assert!(rel(r.value, 2.0) < 1e-12);
        assert!(r.err_estimate < 1e-8);
    }

    #[test]
    fn strong_singularity() {
        // ∫₀¹ y^(−0.9) dy = 10
        let g = |y: f64| y.powf(-0.9);
        let r = adaptive_singular_quad(&g, 0.0, 1.0, 0.9, 1e-10).unwrap();
        assert!(rel(r.value, 10.0) < 1e-11);
    }

    #[test]
    fn singular_with_smooth_factor() {
        // ∫₀¹ y^(−1/2) e^(−y) dy = √π erf(1) (frozen)
        let g = |y: f64| y.powf(-0.5) * (-y).exp();
        let r = adaptive_singular_quad(&g, 0.0, 1.0, 0.5, 1e-10).unwrap();
        assert!(rel(r.value, 1.4936482656248540508) < 1e-12);
    }

    #[test]
    fn shifted_interval() {
        // ∫₂⁶ (y−2)^(−0.3) dy = 4^0.7 / 0.7
        let g = |y: f64| (y - 2.0f64).powf(-0.3);
        let r = adaptive_singular_quad(&g, 2.0, 6.0, 0.3, 1e-10).unwrap();
        let exact = 4f64.powf(0.7) / 0.7;
        assert!(rel(r.value, exact) < 1e-12);
    }

    #[test]
    fn domain_errors() {
        let g = |y: f64| y;
        assert!(adaptive_singular_quad(&g, 0.0, 1.0, 1.0, 1e-10).is_err());
        assert!(adaptive_singular_quad(&g, 0.0, 1.0, -0.1, 1e-10).is_err());
        assert!(adaptive_singular_quad(&g, 1.0, 1.0, 0.5, 1e-10).is_err());
    }

    #[test]
    fn rules_agree() {
        let g = |y: f64| y.powf(-0.25) * (1.0 + y.cos());
        let a = adaptive_singular_quad_with_rule(&g, 0.0, 3.0, 0.25, 1e-11, QuadRule::Gauss16)
            .unwrap();
        let b = adaptive_singular_quad_with_rule(&g, 0.0, 3.0, 0.25, 1e-11, QuadRule::Gauss24)
            .unwrap();
        assert!(rel(a.value, b.value) < 1e-11);
    }
}
