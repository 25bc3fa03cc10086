//! Scalar abstraction shared by every expansion.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, NumAssign};

/// Real scalar type the expansions are generic over.
///
/// Implemented for `f32` and `f64` through the blanket impl; the library is
/// tuned and tested for `f64`.
pub trait Real:
    Float + FloatConst + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal. Every `Real` can represent (a rounding of)
    /// any finite `f64`, so this never fails for finite input.
    #[inline]
    fn lit(v: f64) -> Self {
        <Self as num_traits::NumCast>::from(v).expect("finite f64 literal")
    }

    #[inline]
    fn from_usize(n: usize) -> Self {
        <Self as num_traits::NumCast>::from(n).expect("usize fits the scalar range")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + NumAssign + Debug + Display + LowerExp + Send + Sync + 'static
{
}

/// Replaces negative zeros by positive zeros so that `arg`, `sqrt` and `ln`
/// follow the principal branch `arg z ∈ (−π, π]` on the negative real axis.
#[inline]
pub fn canonical<T: Real>(z: Complex<T>) -> Complex<T> {
    let fix = |v: T| if v == T::zero() { T::zero() } else { v };
    Complex::new(fix(z.re), fix(z.im))
}

/// Principal argument in `(−π, π]`.
#[inline]
pub fn principal_arg<T: Real>(z: Complex<T>) -> T {
    canonical(z).arg()
}

#[inline]
pub(crate) fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_imaginary_part_maps_to_pi() {
        let z = Complex::new(-5.0_f64, -0.0);
        assert_eq!(principal_arg(z), std::f64::consts::PI);
        assert!(canonical(z).sqrt().im > 0.0);
    }
}
