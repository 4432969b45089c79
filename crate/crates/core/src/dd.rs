//! Double-double working precision.
//!
//! A thin wrapper over [`twofloat::TwoFloat`]. Addition and multiplication
//! are delegated; division is redone as a three-step long division because
//! the wrapped quotient is only accurate to `f64` precision, and conversions
//! from `f64` are exact.

use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use twofloat::TwoFloat;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble(TwoFloat);

impl DoubleDouble {
    pub fn hi(&self) -> f64 {
        self.0.hi()
    }

    pub fn lo(&self) -> f64 {
        self.0.lo()
    }

    pub fn inner(&self) -> TwoFloat {
        self.0
    }
}

impl From<f64> for DoubleDouble {
    fn from(v: f64) -> Self {
        DoubleDouble(TwoFloat::from(v))
    }
}

impl From<DoubleDouble> for f64 {
    fn from(v: DoubleDouble) -> f64 {
        v.hi() + v.lo()
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        DoubleDouble(self.0 + rhs.0)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        DoubleDouble(self.0 - rhs.0)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        DoubleDouble(self.0 * rhs.0)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let b = rhs.0;
        let q1 = self.hi() / b.hi();
        let r = self.0 - b * q1;
        let q2 = r.hi() / b.hi();
        let r = r - b * q2;
        let q3 = r.hi() / b.hi();
        DoubleDouble(TwoFloat::new_add(q1, q2) + q3)
    }
}

impl Rem for DoubleDouble {
    type Output = Self;
    fn rem(self, rhs: Self) -> Self {
        self - DoubleDouble((self / rhs).0.trunc()) * rhs
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble(-self.0)
    }
}

impl Zero for DoubleDouble {
    fn zero() -> Self {
        DoubleDouble(TwoFloat::from(0.0))
    }

    fn is_zero(&self) -> bool {
        self.hi() == 0.0
    }
}

impl One for DoubleDouble {
    fn one() -> Self {
        DoubleDouble(TwoFloat::from(1.0))
    }
}

impl Num for DoubleDouble {
    type FromStrRadixErr = std::num::ParseFloatError;

    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Self::from)
    }
}

impl Signed for DoubleDouble {
    fn abs(&self) -> Self {
        DoubleDouble(self.0.abs())
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Self::zero()
        } else {
            *self - *other
        }
    }

    fn signum(&self) -> Self {
        match self.hi().partial_cmp(&0.0) {
            Some(Ordering::Greater) => Self::one(),
            Some(Ordering::Less) => -Self::one(),
            _ => Self::zero(),
        }
    }

    fn is_positive(&self) -> bool {
        self.hi() > 0.0
    }

    fn is_negative(&self) -> bool {
        self.hi() < 0.0
    }
}

impl FromPrimitive for DoubleDouble {
    fn from_i64(n: i64) -> Option<Self> {
        Some(DoubleDouble(TwoFloat::from(n)))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(DoubleDouble(TwoFloat::from(n)))
    }

    fn from_f64(n: f64) -> Option<Self> {
        Some(Self::from(n))
    }
}

impl ToPrimitive for DoubleDouble {
    fn to_i64(&self) -> Option<i64> {
        self.0.to_i64()
    }

    fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    fn to_f64(&self) -> Option<f64> {
        Some(f64::from(*self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(v: f64) -> DoubleDouble {
        DoubleDouble::from(v)
    }

    #[test]
    fn division_is_double_double_accurate() {
        for (a, b) in [(1.0, 3.0), (3.0, 0.001), (-7.25, 1e-9), (2.0, 7.0)] {
            let q = dd(a) / dd(b);
            let back = q * dd(b) - dd(a);
            assert!(back.abs().hi() <= 1e-30 * a.abs(), "{a}/{b}: {back:?}");
        }
    }

    #[test]
    fn conversions_and_signs() {
        assert_eq!(f64::from(dd(0.001)), 0.001);
        assert_eq!(DoubleDouble::from_f64(0.25).unwrap(), dd(0.25));
        assert!(dd(-2.0).is_negative() && dd(-2.0).abs() == dd(2.0));
        assert_eq!((dd(7.0) % dd(2.0)).hi(), 1.0);
    }
}
