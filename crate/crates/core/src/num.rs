//! Scalar abstraction.
//!
//! Everything numeric in the crate is generic over [`Real`], implemented for
//! `f32` and `f64`. Tolerances are written once in double precision and mapped
//! to the working precision through [`Real::tol`]: a tolerance of `ε₆₄^k`
//! becomes `ε^k`, so "half the digits" stays half the digits.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// A real floating point scalar usable by the linear algebra and synthesis code.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + FromStr
    + Default
    + Send
    + Sync
    + 'static
{
    /// `ln ε / ln ε₆₄` for this type's machine epsilon `ε`.
    const EPS_LOG_RATIO: f64;

    /// Converts an `f64` literal into this type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    /// Maps a double-precision tolerance to this precision.
    #[inline]
    fn tol(tol_f64: f64) -> Self {
        if Self::EPS_LOG_RATIO == 1.0 {
            Self::lit(tol_f64)
        } else {
            Self::lit((tol_f64.ln() * Self::EPS_LOG_RATIO).exp())
        }
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

// ε = 2^-(mantissa bits), so the ratio is the ratio of mantissa widths.
macro_rules! impl_real {
    ($t:ty) => {
        impl Real for $t {
            const EPS_LOG_RATIO: f64 = (<$t>::MANTISSA_DIGITS - 1) as f64 / (f64::MANTISSA_DIGITS - 1) as f64;
        }
    };
}

impl_real!(f32);
impl_real!(f64);

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle<T: Real>(x: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut y = x % two_pi;
    if y > T::PI() {
        y = y - two_pi;
    } else if y <= -T::PI() {
        y = y + two_pi;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn wrap_angle_range() {
        assert_eq!(wrap_angle(PI), PI);
        assert_eq!(wrap_angle(-PI), PI);
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(0.5 - 4.0 * PI) - 0.5).abs() < 1e-12);
        assert_eq!(wrap_angle(0.25f32), 0.25f32);
    }

    #[test]
    fn tolerance_scaling() {
        assert_eq!(f64::tol(1e-10), 1e-10);
        let t = f32::tol(1e-10);
        assert!(t > 1e-5 && t < 1e-4, "{t}");
        assert!((f32::tol(f64::EPSILON) - f32::EPSILON).abs() < 1e-9);
    }
}
