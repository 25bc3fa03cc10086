use crate::error::{Error, Result};
use crate::real::Real;

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for real `x > 0`.
///
/// Arguments below ½ go through the reflection formula so the Lanczos sum is
/// only ever evaluated on `[½, ∞)`.
pub fn gamma_real<T: Real>(x: T) -> Result<T> {
    if !x.is_finite() || x <= T::zero() {
        return Err(Error::Domain(format!(
            "gamma_real needs a finite positive argument, got {x}"
        )));
    }
    Ok(gamma_positive(x))
}

fn gamma_positive<T: Real>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma_positive(T::one() - x));
    }
    // Exact for small integers; avoids the last-ulp error of the Lanczos sum.
    if x == x.floor() && x <= T::lit(20.0) {
        let mut acc = T::one();
        let mut k = T::lit(2.0);
        while k < x {
            acc *= k;
            k += T::one();
        }
        return acc;
    }
    let z = x - T::one();
    let mut sum = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        sum += T::lit(c) / (z + T::from_usize(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    // t^(z+½) e^(−t) split in two halves so moderately large x stays finite.
    let pow_half = t.powf((z + half) / T::lit(2.0));
    (T::lit(2.0) * T::PI()).sqrt() * pow_half * (pow_half * (-t).exp()) * sum
}
