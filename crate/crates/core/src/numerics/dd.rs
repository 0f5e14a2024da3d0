//! Double-double arithmetic: an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`.
//!
//! Products use Dekker splitting rather than a fused multiply-add so the
//! hot convolution loop stays fast on targets without hardware FMA.

#[allow(unused_imports)]
use num_traits::Float;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};


const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

const LN2: DoubleDouble = DoubleDouble {
    hi: 6.931_471_805_599_452_862e-1,
    lo: 2.319_046_813_846_299_558e-17,
};

#[inline]
pub(crate) fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    const SPLIT_THRESH: f64 = 6.696_928_794_914_17e299; // 2^996
    if a.abs() > SPLIT_THRESH {
        let a = a * 3.725_290_298_461_914e-9; // 2^-28
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        return (hi * 268_435_456.0, lo * 268_435_456.0);
    }
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, err)
}

/// Roughly 32 significant decimal digits; the exponent range is that of `f64`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Exact for integers below 2^106.
    pub fn from_i128(n: i128) -> Self {
        let hi = n as f64;
        let lo = (n - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Self { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, t) = two_sum(self.hi, -p);
        let t = t - e + self.lo;
        let q2 = (s + t) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// Multiply by `2^k` exactly (barring overflow or underflow).
    pub fn ldexp(self, k: i32) -> Self {
        Self {
            hi: libm::scalbn(self.hi, k),
            lo: libm::scalbn(self.lo, k),
        }
    }

    /// `e^self`, accurate to a few units of 1e-32 relative over the normal range.
    pub fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.2 {
            return Self::ZERO;
        }
        if self.hi == 0.0 && self.lo == 0.0 {
            return Self::ONE;
        }
        let k = (self.hi / LN2.hi).round();
        let r = self - LN2.mul_f64(k);
        // |r| <= ln2/32 after scaling
        let r = r.ldexp(-4);
        let mut s = r;
        let mut term = r;
        for k in 2..=24 {
            term = (term * r).div_f64(k as f64);
            s += term;
            if term.hi.abs() < 1e-36 {
                break;
            }
        }
        // (1 + s)^16 - 1 via repeated s <- 2s + s^2
        for _ in 0..4 {
            s = s.mul_f64(2.0) + s.sqr();
        }
        (s + Self::ONE).ldexp(k as i32)
    }

    /// Natural logarithm; one Newton step on `exp` from the `f64` estimate.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Self::ZERO;
        }
        // split off the binary exponent so exp(-y) stays clear of subnormals
        let e = match libm::ilogb(self.hi) {
            e if e.abs() > 64 => e,
            _ => 0,
        };
        let m = self.ldexp(-e);
        let y = Self::from_f64(m.hi.ln());
        let r = y + m * (-y).exp() - Self::ONE;
        r + LN2.mul_f64(e as f64)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base.sqr();
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
}

impl fmt::Debug for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DoubleDouble({:e} + {:e})", self.hi, self.lo)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }.add_f64(q3)
    }
}

impl AddAssign for DoubleDouble {
    #[inline]
    fn add_assign(&mut self, b: Self) {
        *self = *self + b;
    }
}

impl SubAssign for DoubleDouble {
    #[inline]
    fn sub_assign(&mut self, b: Self) {
        *self = *self - b;
    }
}

impl MulAssign for DoubleDouble {
    #[inline]
    fn mul_assign(&mut self, b: Self) {
        *self = *self * b;
    }
}

impl core::iter::Sum for DoubleDouble {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: DoubleDouble, b: DoubleDouble, rel: f64) -> bool {
        let d = (a - b).abs().to_f64();
        d <= rel * b.abs().to_f64().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn one_third_times_three() {
        let third = DoubleDouble::ONE / DoubleDouble::from_f64(3.0);
        let back = third.mul_f64(3.0);
        assert!((back - DoubleDouble::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for &x in &[1e-8, 0.3, 1.0, 2.5, 17.0, 123.456, 1e-300, 1e300] {
            let d = DoubleDouble::from_f64(x);
            // conditioning of the round trip is |ln x|
            let tol = 1e-31 * x.ln().abs().max(1.0);
            assert!(close(d.ln().exp(), d, tol), "x = {x}");
        }
        for &x in &[-40.0, -1.0, -1e-9, 0.5, 3.0, 88.0] {
            let d = DoubleDouble::from_f64(x);
            assert!(close(d.exp().ln(), d, 1e-29), "x = {x}");
        }
    }

    #[test]
    fn ln2_constant_consistent() {
        let two = DoubleDouble::from_f64(2.0);
        assert!(close(two.ln(), LN2, 1e-31));
        assert!(close(LN2.exp(), two, 1e-31));
    }

    #[test]
    fn exp_one_matches_e() {
        // e = 2.718281828459045235360287471352662497757...
        let e = DoubleDouble { hi: 2.718_281_828_459_045, lo: 1.445_646_891_729_250_2e-16 };
        assert!(close(DoubleDouble::ONE.exp(), e, 1e-31));
    }

    #[test]
    fn from_i128_exact() {
        let n: i128 = (1i128 << 80) + 12345;
        let d = DoubleDouble::from_i128(n);
        assert_eq!(d.hi as i128 + d.lo as i128, n);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = DoubleDouble::from_f64(1.000_001);
        let mut acc = DoubleDouble::ONE;
        for _ in 0..37 {
            acc *= x;
        }
        assert!(close(x.powi(37), acc, 1e-30));
        assert!(close(x.powi(-37), acc.recip(), 1e-30));
    }
}
