//! Double-double arithmetic: an unevaluated sum of two f64s giving ~31
//! significant digits.
//!
//! The alternating series in this crate (Mittag-Leffler and kernel-primitive
//! power series) suffer intermediate terms up to ~17 orders of magnitude
//! above the final sum near the series/asymptotic crossover; plain f64 loses
//! everything there. The crate sums those series in this type.
//!
//! Algorithms follow the classical error-free transforms (two_sum, two_prod
//! with FMA) and the usual exp/ln reductions for extended precision.

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Requires |a| >= |b| (or a == 0).
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    /// π to double-double precision.
    pub const PI: Dd = Dd {
        hi: 3.141592653589793,
        lo: 1.2246467991473532e-16,
    };
    /// ln 2 to double-double precision.
    pub const LN2: Dd = Dd {
        hi: 0.6931471805599453,
        lo: 2.3190468138462996e-17,
    };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            self.neg()
        } else {
            self
        }
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn add(self, o: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, o.hi);
        let (t1, t2) = two_sum(self.lo, o.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Dd {
        let (s1, s2) = two_sum(self.hi, b);
        let s2 = s2 + self.lo;
        let (hi, lo) = quick_two_sum(s1, s2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sub(self, o: Dd) -> Dd {
        self.add(o.neg())
    }

    #[inline]
    pub fn sub_f64(self, b: f64) -> Dd {
        self.add_f64(-b)
    }

    #[inline]
    pub fn mul(self, o: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, o.hi);
        let p2 = p2 + self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, b);
        let p2 = p2 + self.lo * b;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn sqr(self) -> Dd {
        let (p1, p2) = two_prod(self.hi, self.hi);
        let p2 = p2 + 2.0 * self.hi * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    #[inline]
    pub fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.sub(o.mul_f64(q1));
        let q2 = r.hi / o.hi;
        let r = r.sub(o.mul_f64(q2));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_f64(q3)
    }

    #[inline]
    pub fn div_f64(self, b: f64) -> Dd {
        self.div(Dd::from_f64(b))
    }

    #[inline]
    pub fn recip(self) -> Dd {
        Dd::ONE.div(self)
    }

    /// Multiply by an exact power of two.
    #[inline]
    pub fn mul_pwr2(self, p: f64) -> Dd {
        Dd {
            hi: self.hi * p,
            lo: self.lo * p,
        }
    }

    /// Scale by 2^n (n may be large; applied in two steps to dodge overflow
    /// of the intermediate power).
    pub fn ldexp(self, n: i32) -> Dd {
        let h = n / 2;
        let p1 = pow2(h);
        let p2 = pow2(n - h);
        Dd {
            hi: self.hi * p1 * p2,
            lo: self.lo * p1 * p2,
        }
    }

    /// e^self. Accurate to ~1e-31 relative for |self| < 700.
    pub fn exp(self) -> Dd {
        if self.hi <= -745.0 {
            return Dd::ZERO;
        }
        if self.hi >= 709.0 {
            return Dd::from_f64(f64::INFINITY);
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        const K: f64 = 512.0;
        let m = (self.hi / Dd::LN2.hi + 0.5).floor();
        let r = self.sub(Dd::LN2.mul_f64(m)).mul_pwr2(1.0 / K);

        // Taylor for e^r − 1 on |r| <= ln2/1024.
        let mut term = r;
        let mut sum = r;
        let mut k = 2.0;
        loop {
            term = term.mul(r).div_f64(k);
            sum = sum.add(term);
            if term.hi.abs() < 1e-36 || k > 24.0 {
                break;
            }
            k += 1.0;
        }
        // Undo the /512 reduction: (1+s) <- (1+s)^2, tracked as s <- 2s + s^2.
        let mut s = sum;
        for _ in 0..9 {
            s = s.mul_pwr2(2.0).add(s.sqr());
        }
        s.add_f64(1.0).ldexp(m as i32)
    }

    /// Natural log; requires self > 0.
    pub fn ln(self) -> Dd {
        debug_assert!(self.hi > 0.0);
        // Scale to O(1) first: near the extremes of the exponent range the
        // Newton residual x·e^(−y) would otherwise pass through denormals
        // and flush the low component.
        let k = self.hi.log2().round();
        let scaled = self.ldexp(-k as i32);
        let mut y = Dd::from_f64(scaled.hi.ln());
        // Newton: y <- y + x e^(−y) − 1, doubling correct digits each pass.
        for _ in 0..2 {
            y = y.add(scaled.mul(y.neg().exp()).sub(Dd::ONE));
        }
        y.add(Dd::LN2.mul_f64(k))
    }

    /// self^p for self > 0 via exp(p ln self).
    pub fn powf_dd(self, p: Dd) -> Dd {
        self.ln().mul(p).exp()
    }
}

fn pow2(n: i32) -> f64 {
    f64::from_bits(((1023 + n) as u64) << 52)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd_close(a: Dd, b: Dd, tol: f64) -> bool {
        let d = a.sub(b).abs().to_f64();
        let scale = b.abs().to_f64().max(1e-300);
        d / scale < tol
    }

    #[test]
    fn add_mul_roundtrip() {
        let a = Dd::from_f64(0.1).add(Dd::from_f64(0.2));
        let b = Dd::from_f64(0.3);
        // 0.1 + 0.2 in dd is closer to 3/10 than either f64 operand pattern
        assert!((a.to_f64() - b.to_f64()).abs() < 1e-16);
        let c = a.sub(b);
        // residual is the f64 representation error of 0.1/0.2/0.3, ~1e-17
        assert!(c.to_f64().abs() < 1e-16);
    }

    #[test]
    fn division_identity() {
        let x = Dd::from_f64(std::f64::consts::PI);
        let y = Dd::from_f64(7.3);
        let z = x.div(y).mul(y);
        assert!(dd_close(z, x, 1e-30));
    }

    #[test]
    fn exp_known_values() {
        let e1 = Dd::ONE.exp();
        // e = 2.718281828459045235360287...
        assert!((e1.hi - 2.718281828459045).abs() < 1e-15);
        assert!((e1.to_f64() - std::f64::consts::E).abs() < 1e-15);
        // exp(ln 2) = 2 to dd accuracy
        let two = Dd::LN2.exp();
        assert!(dd_close(two, Dd::from_f64(2.0), 1e-30));
        // large negative argument
        let small = Dd::from_f64(-20.0).exp();
        assert!((small.to_f64() - (-20.0f64).exp()).abs() / (-20.0f64).exp() < 1e-14);
    }

    #[test]
    fn ln_inverts_exp() {
        for &x in &[1e-8, 0.37, 1.0, 2.0, 10.0, 123.456, 1e10, 1e300] {
            let l = Dd::from_f64(x).ln();
            let back = l.exp();
            assert!(dd_close(back, Dd::from_f64(x), 1e-29), "x = {x}");
        }
    }

    #[test]
    fn powf_matches_f64() {
        let y = Dd::from_f64(2.0).powf_dd(Dd::from_f64(0.5));
        assert!((y.to_f64() - 2f64.sqrt()).abs() < 1e-16);
        let z = Dd::from_f64(5.0).powf_dd(Dd::from_f64(1.8));
        assert!((z.to_f64() - 5f64.powf(1.8)).abs() / 5f64.powf(1.8) < 1e-15);
    }

    #[test]
    fn ldexp_scales() {
        let x = Dd::from_f64(1.5).ldexp(10);
        assert_eq!(x.to_f64(), 1536.0);
        let y = Dd::from_f64(1.0).ldexp(-1000);
        assert!(y.to_f64() > 0.0 && y.to_f64() < 1e-300);
    }

    #[test]
    fn pi_constant_consistent() {
        // sin(pi) via f64 on the dd residual: pi_dd - pi_f64 should equal
        // the known correction term.
        assert_eq!(Dd::PI.hi, std::f64::consts::PI);
        assert!((Dd::PI.lo - 1.2246467991473532e-16).abs() < 1e-31);
    }
}

