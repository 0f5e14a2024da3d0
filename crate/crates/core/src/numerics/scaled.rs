//! Real numbers with a full-width binary exponent.

#[allow(unused_imports)]
use num_traits::Float;
use core::cmp::Ordering;
use core::ops::{Div, Mul, Neg};


const LN_2: f64 = core::f64::consts::LN_2;

/// `mantissa * 2^exponent` with `|mantissa|` in `[1, 2)` or exactly zero.
///
/// Products and integer powers never overflow for `|exponent| < 2^60`, which
/// is what the recurrence coefficients need: they grow geometrically in `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledReal {
    mantissa: f64,
    exponent: i64,
}

impl ScaledReal {
    pub const ZERO: Self = Self { mantissa: 0.0, exponent: 0 };
    pub const ONE: Self = Self { mantissa: 1.0, exponent: 0 };

    fn normalized(m: f64, e: i64) -> Self {
        if m == 0.0 || !m.is_finite() {
            return Self { mantissa: m, exponent: 0 };
        }
        let (frac, k) = libm::frexp(m);
        // frexp gives |frac| in [0.5, 1)
        Self { mantissa: frac * 2.0, exponent: e + i64::from(k) - 1 }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::normalized(x, 0)
    }

    pub fn from_parts(mantissa: f64, exponent: i64) -> Self {
        Self::normalized(mantissa, exponent)
    }

    /// Positive value with the given natural logarithm.
    pub fn from_ln(ln: f64) -> Self {
        let log2 = ln / LN_2;
        let e = log2.floor();
        let m = ((log2 - e) * LN_2).exp();
        Self::normalized(m, e as i64)
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    pub fn is_sign_positive(&self) -> bool {
        self.mantissa > 0.0
    }

    /// Overflows to infinity / underflows to zero outside the `f64` range.
    pub fn to_f64(&self) -> f64 {
        let e = self.exponent.clamp(-2200, 2200) as i32;
        libm::scalbn(self.mantissa, e)
    }

    /// Natural log of the magnitude.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.abs().ln() + self.exponent as f64 * LN_2
    }

    pub fn abs(self) -> Self {
        Self { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    pub fn recip(self) -> Self {
        Self::normalized(1.0 / self.mantissa, -self.exponent)
    }

    pub fn powi(self, n: i64) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        let mut base = self;
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
}

impl From<f64> for ScaledReal {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl Neg for ScaledReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mantissa: -self.mantissa, exponent: self.exponent }
    }
}

impl Mul for ScaledReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Div for ScaledReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa / rhs.mantissa, self.exponent - rhs.exponent)
    }
}

impl PartialOrd for ScaledReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let sa = self.mantissa.signum() * f64::from(u8::from(!self.is_zero()));
        let sb = other.mantissa.signum() * f64::from(u8::from(!other.is_zero()));
        if sa != sb || sa == 0.0 {
            return sa.partial_cmp(&sb);
        }
        let mag = match self.exponent.cmp(&other.exponent) {
            Ordering::Equal => self.mantissa.abs().partial_cmp(&other.mantissa.abs()),
            o => Some(o),
        };
        if sa > 0.0 {
            mag
        } else {
            mag.map(Ordering::reverse)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn huge_powers_do_not_overflow() {
        let x = ScaledReal::from_f64(0.5);
        let y = x.powi(1 << 40);
        assert_eq!(y.exponent(), -(1i64 << 40));
        assert_eq!(y.mantissa(), 1.0);
        assert_eq!(y.to_f64(), 0.0);
    }

    #[test]
    fn ln_roundtrip() {
        let x = ScaledReal::from_ln(-5000.25);
        assert!((x.ln_abs() + 5000.25).abs() < 1e-9);
    }

    #[test]
    fn ordering() {
        let a = ScaledReal::from_f64(-3.0);
        let b = ScaledReal::from_f64(2.0);
        assert!(a < b);
        assert!(ScaledReal::from_parts(1.0, 2000) > ScaledReal::from_parts(1.9, 1999));
        assert!(-ScaledReal::from_parts(1.0, 2000) < -ScaledReal::from_parts(1.9, 1999));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]
        #[test]
        fn f64_roundtrip_is_exact(bits in any::<u64>()) {
            let d = f64::from_bits(bits);
            prop_assume!(d.is_finite());
            prop_assert_eq!(ScaledReal::from_f64(d).to_f64().to_bits(), d.to_bits());
        }
    }

    proptest! {
        #[test]
        fn product_law(a in -1e150f64..1e150, b in -1e150f64..1e150) {
            let prod = (ScaledReal::from_f64(a) * ScaledReal::from_f64(b)).to_f64();
            let direct = a * b;
            prop_assume!(direct.is_normal());
            // both round the same exact product once
            let ulp = f64::EPSILON * direct.abs();
            prop_assert!((prod - direct).abs() <= ulp);
        }
    }
}
