//! Scalar abstractions shared by the polynomial, series and continued-fraction code.
//!
//! Arithmetic-only algorithms (polynomial products, series division, the
//! continued-fraction development, Toeplitz solves) are written against
//! [`Scalar`], which is satisfied by `f32`, `f64`, [`crate::DoubleDouble`] and
//! exact rationals such as `num_rational::BigRational`. Anything that needs
//! transcendental functions or complex evaluation uses [`Real`].

use std::fmt::Debug;

use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive};

/// Field-like scalar with enough structure for exact or floating arithmetic.
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// Converts from `f64`; exact for binary floating point and rationals.
    fn of(value: f64) -> Self {
        assert!(value.is_finite(), "cannot convert {value} to a scalar");
        if let Some(v) = Self::from_f64(value) {
            if v.as_f64() == value {
                return v;
            }
        }
        // Some FromPrimitive impls (twofloat) truncate through i64; rebuild
        // from mantissa and exponent instead.
        from_parts(value)
    }

    /// Nearest `f64`; NaN when the value is not representable.
    fn as_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Floating scalar such as `f32` or `f64`.
pub trait Real: Scalar + Float + Copy {}

impl<T> Real for T where T: Scalar + Float + Copy {}

/// Largest absolute value in a slice, zero for an empty slice.
pub(crate) fn max_abs<S: Scalar>(values: &[S]) -> S {
    values.iter().map(|v| v.abs()).fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}

fn from_parts<S: Scalar>(value: f64) -> S {
    use num_traits::Float;
    let (mantissa, exp, sign) = Float::integer_decode(value);
    let mut v = S::from_u64(mantissa).expect("53-bit mantissa") * S::from_i8(sign).unwrap();
    let chunk = |e: u32| num_traits::pow(S::from_u8(2).unwrap(), e as usize);
    let mut e = exp as i32;
    while e != 0 {
        let step = e.unsigned_abs().min(512);
        v = if e > 0 { v * chunk(step) } else { v / chunk(step) };
        e -= e.signum() * step as i32;
    }
    v
}
