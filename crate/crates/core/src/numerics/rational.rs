//! Exact rationals over arbitrary-precision integers.
//!
//! Thin newtype over `num_rational::BigRational`, which keeps values reduced
//! with a positive denominator after every operation.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::NumericsError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Result<Self, NumericsError> {
        if denom == 0 {
            return Err(NumericsError::DivideByZero);
        }
        Ok(Self(BigRational::new(BigInt::from(numer), BigInt::from(denom))))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    /// The exact dyadic value of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Self)
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumericsError> {
        if rhs.is_zero() {
            return Err(NumericsError::DivideByZero);
        }
        Ok(Self(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Self, NumericsError> {
        Self::one().checked_div(self)
    }

    /// Integer power; negative exponents fail on zero.
    pub fn pow(&self, n: i32) -> Result<Self, NumericsError> {
        if n < 0 && self.is_zero() {
            return Err(NumericsError::DivideByZero);
        }
        Ok(Self(Pow::pow(&self.0, n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Evaluate a polynomial given by coefficients lowest degree first.
    pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
        coeffs.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
        assert_eq!(r(1, 2) * r(1, 2), r(1, 4));
        assert_eq!(r(3, 4).checked_div(&r(3, 2)).unwrap(), r(1, 2));
        assert_eq!(r(2, 3).pow(-2).unwrap(), r(9, 4));
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let x = r(6, -8);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(4));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(Rational::new(1, 0), Err(NumericsError::DivideByZero));
        assert_eq!(r(1, 2).checked_div(&Rational::zero()), Err(NumericsError::DivideByZero));
        assert_eq!(Rational::zero().pow(-1), Err(NumericsError::DivideByZero));
    }

    #[test]
    fn symmetrized_value_of_quadratic() {
        // f = 6g^2 - 10g + 4, f(1/3) + f(2/3) = 4/3
        let f = [Rational::from_integer(4), Rational::from_integer(-10), Rational::from_integer(6)];
        let s = Rational::eval_poly(&f, &r(1, 3)) + Rational::eval_poly(&f, &r(2, 3));
        assert_eq!(s, r(4, 3));
    }

    #[test]
    fn exact_dyadic_from_double() {
        assert_eq!(Rational::from_f64(0.375).unwrap(), r(3, 8));
        assert!(Rational::from_f64(f64::NAN).is_none());
    }
}
