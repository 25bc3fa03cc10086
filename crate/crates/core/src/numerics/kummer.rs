use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// `M(−2n; b; z)` as the terminating sum `Σ_{m=0}^{2n} (−2n)_m / ((b)_m m!) z^m`.
pub fn kummer_m_negint<T: Real>(n: usize, b: T, z: Complex<T>) -> Result<Complex<T>> {
    if !b.is_finite() || (b <= T::zero() && b == b.floor()) {
        return Err(Error::Domain(format!(
            "Kummer M lower parameter must not be a nonpositive integer, got {b}"
        )));
    }
    let top = -T::from_usize(2 * n);
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    for m in 0..2 * n {
        let mf = T::from_usize(m);
        term = term * z * ((top + mf) / ((b + mf) * (mf + T::one())));
        sum += term;
    }
    Ok(sum)
}
