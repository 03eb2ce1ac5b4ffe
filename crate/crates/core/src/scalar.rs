//! Exact rational scalars.
//!
//! Every coefficient in this crate is an element of the field of rational
//! numbers, stored in lowest terms with a positive denominator and with
//! arbitrary-precision integer parts.  There is no floating point anywhere:
//! equality of scalars is exact, so equality of algebra elements and module
//! vectors is decidable.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Pow;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// An exact rational number.
///
/// Internally a reduced fraction of arbitrary-precision integers.  The type
/// is ordered (by the usual order on the rationals), hashable and cheap to
/// clone for the sizes that arise here.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    /// `num / den` in lowest terms.  Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The integer `n` as a scalar.
    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }

    /// `self^k` for any integer `k` (negative powers require `self != 0`).
    pub fn pow(&self, k: i32) -> Self {
        if k < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Scalar(Pow::pow(&self.0, k))
    }

    /// Largest integer `<= self`, as a scalar.
    pub fn floor(&self) -> Self {
        Scalar(self.0.floor())
    }

    /// The fractional part `self - floor(self)`, in `[0, 1)`.
    pub fn fract_from_floor(&self) -> Self {
        self.clone() - self.floor()
    }

    /// The value as an `i64` when it is an integer in range, else `None`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.to_integer().to_i64()
        } else {
            None
        }
    }

    /// True when `self` is of the form `-1/2 + n` for a natural number `n`,
    /// i.e. a half-odd-integer that is `>= -1/2`.
    pub fn is_half_odd_nonneg(&self) -> bool {
        let shifted = self.clone() + Scalar::new(1, 2);
        shifted.is_integer() && !shifted.is_negative()
    }

    /// Internal view of the underlying reduced fraction.
    pub(crate) fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub(crate) fn from_ratio(r: BigRational) -> Self {
        Scalar(r)
    }
}

/// Binomial coefficient `C(n, k)` as a scalar (`0` when `k > n` or `k < 0`).
pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 || k > n {
        return Scalar::zero();
    }
    Scalar(BigRational::from_integer(num::integer::binomial(
        BigInt::from(n),
        BigInt::from(k),
    )))
}

impl fmt::Display for Scalar {
    /// Prints `num/den` in lowest terms, or just `num` for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = String;

    /// Parses `"p"` or `"p/q"` with optional leading `-`.  Rejects floats.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigRational::from_str(s)
            .map(Scalar)
            .map_err(|_| format!("not an exact rational: {s:?} (expected \"p\" or \"p/q\")"))
    }
}

impl Serialize for Scalar {
    /// Serialized as the exact string form (`"3"`, `"-1/2"`), never a float.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_and_sign_normalized() {
        assert_eq!(Scalar::new(2, 4), Scalar::new(1, 2));
        assert_eq!(Scalar::new(1, -2), Scalar::new(-1, 2));
        assert_eq!(Scalar::new(-3, -6), Scalar::new(1, 2));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "3", "-7", "1/2", "-22/7", "355/113"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
    }

    #[test]
    fn rejects_floats_and_garbage() {
        assert!(Scalar::from_str("0.5").is_err());
        assert!(Scalar::from_str("1e3").is_err());
        assert!(Scalar::from_str("").is_err());
        assert!(Scalar::from_str("1/0").is_err());
    }

    #[test]
    fn exact_arithmetic() {
        let a = Scalar::new(1, 3);
        let b = Scalar::new(1, 6);
        assert_eq!(a.clone() + b.clone(), Scalar::new(1, 2));
        assert_eq!(a.clone() - b.clone(), Scalar::new(1, 6));
        assert_eq!(a.clone() * b.clone(), Scalar::new(1, 18));
        assert_eq!(a / b, Scalar::from_int(2));
    }

    #[test]
    fn pow_and_recip() {
        assert_eq!(Scalar::new(2, 3).pow(2), Scalar::new(4, 9));
        assert_eq!(Scalar::new(2, 3).pow(-2), Scalar::new(9, 4));
        assert_eq!(Scalar::new(2, 3).pow(0), Scalar::one());
        assert_eq!(Scalar::new(-4, 6).recip(), Scalar::new(-3, 2));
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(Scalar::new(7, 3).floor(), Scalar::from_int(2));
        assert_eq!(Scalar::new(-7, 3).floor(), Scalar::from_int(-3));
        assert_eq!(Scalar::new(-7, 3).fract_from_floor(), Scalar::new(2, 3));
        assert_eq!(Scalar::from_int(5).fract_from_floor(), Scalar::zero());
    }

    #[test]
    fn half_odd_detection() {
        assert!(Scalar::new(-1, 2).is_half_odd_nonneg());
        assert!(Scalar::new(1, 2).is_half_odd_nonneg());
        assert!(Scalar::new(3, 2).is_half_odd_nonneg());
        assert!(!Scalar::new(-3, 2).is_half_odd_nonneg());
        assert!(!Scalar::from_int(1).is_half_odd_nonneg());
        assert!(!Scalar::new(1, 3).is_half_odd_nonneg());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(3, 0), Scalar::from_int(1));
        assert_eq!(binomial(3, 1), Scalar::from_int(3));
        assert_eq!(binomial(3, 2), Scalar::from_int(3));
        assert_eq!(binomial(3, 3), Scalar::from_int(1));
        assert_eq!(binomial(3, 4), Scalar::zero());
        assert_eq!(binomial(3, -1), Scalar::zero());
    }

    #[test]
    fn to_i64_only_for_integers() {
        assert_eq!(Scalar::from_int(-9).to_i64(), Some(-9));
        assert_eq!(Scalar::new(1, 2).to_i64(), None);
    }
}
