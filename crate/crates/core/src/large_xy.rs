//! Asymptotic expansion for large `|x|` and `|y|` with `y/x` bounded:
//!
//! ```text
//! P(x,y) ~ ½ e^{−y²/(4x) − y⁴/(16x⁴)} Σ_n A_{2n}(γ) Γ(n+½) (x − 6γ²)^{−n−½},   γ = y/(2x)
//! ```
//!
//! where `A_n(γ)` are the Taylor coefficients of `h(t) = e^{4iγ³t − 4iγt³ − t⁴}`.
//! Note `(x − 6γ²)^{−1} = 2x²/(2x³ − 3y²)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::gamma_real;
use crate::real::{canonical, principal_arg, Real};
use crate::result::{EvalResult, MethodTag};

/// Relative distance to the divergence locus below which the expansion is
/// refused, scaled by `max(1, |x|)`.
pub const CAUSTIC_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct LargeXYContext<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    /// `y/(2x)`
    pub gamma: Complex<T>,
    /// `x − 6γ² = x − 3y²/(2x²)`
    pub shifted: Complex<T>,
    /// `e^{−y²/(4x) − y⁴/(16x⁴)} / 2`
    pub prefactor: Complex<T>,
    log_shifted: Complex<T>,
}

/// Outcome of [`validity_large_xy`].
#[derive(Debug, Clone, PartialEq)]
pub struct Validity<T> {
    pub valid: bool,
    pub shifted: Complex<T>,
    /// `|x − 3y²/(2x²)|`, the distance to the locus `2x³ = 3y²`.
    pub caustic_distance: T,
    pub reason: Option<String>,
}

/// `|arg(x − 3y²/(2x²))| < 3π/4` and `|x − 3y²/(2x²)| > ε·max(1,|x|)`.
pub fn validity_large_xy<T: Real>(x: Complex<T>, y: Complex<T>) -> Result<Validity<T>> {
    let x = canonical(x);
    let y = canonical(y);
    if x.norm() == T::zero() {
        return Err(Error::Domain("large_xy needs x ≠ 0".into()));
    }
    let shifted = canonical(x - y * y * T::lit(1.5) / (x * x));
    let distance = shifted.norm();
    let eps = T::lit(CAUSTIC_EPSILON) * x.norm().max(T::one());
    let arg = principal_arg(shifted);
    let reason = if !(distance > eps) {
        Some(format!("too close to the caustic 2x³ = 3y² (distance {distance:e})"))
    } else if !(arg.abs() < T::lit(0.75) * T::PI()) {
        Some(format!("|arg(x − 3y²/(2x²))| = {} is not below 3π/4", arg.abs()))
    } else {
        None
    };
    Ok(Validity {
        valid: reason.is_none(),
        shifted,
        caustic_distance: distance,
        reason,
    })
}

impl<T: Real> LargeXYContext<T> {
    pub fn new(x: Complex<T>, y: Complex<T>) -> Result<Self> {
        let x = canonical(x);
        let y = canonical(y);
        let validity = validity_large_xy(x, y)?;
        if let Some(reason) = validity.reason {
            return Err(Error::Region {
                method: "large_xy",
                reason,
            });
        }
        let gamma = y / (x * T::lit(2.0));
        let g2 = gamma * gamma;
        // y²/(4x) = γ²x and y⁴/(16x⁴) = γ⁴
        let prefactor = (-(g2 * x) - g2 * g2).exp() / T::lit(2.0);
        Ok(LargeXYContext {
            x,
            y,
            gamma,
            shifted: validity.shifted,
            prefactor,
            log_shifted: validity.shifted.ln(),
        })
    }

    /// Summands `A_{2m}(γ) Γ(m+½) (x − 6γ²)^{−m−½}` for `m < count`,
    /// without the prefactor.
    pub fn terms(&self, count: usize) -> Result<Vec<Complex<T>>> {
        let half = T::lit(0.5);
        let mut power = (-self.log_shifted * half).exp();
        let step = (-self.log_shifted).exp();
        let mut gamma_half = gamma_real(half)?;
        let mut out = Vec::with_capacity(count);
        for m in 0..count {
            if m > 0 {
                power = power * step;
                gamma_half *= T::from_usize(m) - half;
            }
            out.push(coeff_an(2 * m, self.gamma) * power * gamma_half);
        }
        Ok(out)
    }
}

/// `A_n(γ) = Σ_k Σ_j (4iγ³)^{n−4k−3j} (−4iγ)^j (−1)^k / (k! j! (n−4k−3j)!)`.
pub fn coeff_an<T: Real>(n: usize, gamma: Complex<T>) -> Complex<T> {
    let i = Complex::new(T::zero(), T::one());
    let linear = i * gamma.powi(3) * T::lit(4.0);
    let cubic = -i * gamma * T::lit(4.0);
    let fact = |m: usize| (1..=m).fold(T::one(), |a, k| a * T::from_usize(k));
    let mut sum = Complex::new(T::zero(), T::zero());
    for k in 0..=n / 4 {
        let rest = n - 4 * k;
        for j in 0..=rest / 3 {
            let m = rest - 3 * j;
            let sign = if k % 2 == 0 { T::one() } else { -T::one() };
            let denom = fact(k) * fact(j) * fact(m);
            sum += linear.powi(m as i32) * cubic.powi(j as i32) * (sign / denom);
        }
    }
    sum
}

/// Partial sum of the first `n` terms; the error estimate is the first
/// omitted term (no rigorous bound is available for this expansion).
pub fn eval_large_xy<T: Real>(x: Complex<T>, y: Complex<T>, n: usize) -> Result<EvalResult<T>> {
    let n = n.max(1);
    let ctx = LargeXYContext::new(x, y)?;
    let terms = ctx.terms(n + 1)?;
    let sum = terms[..n]
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |a, &t| a + t);
    let scale = ctx.prefactor.norm();
    Ok(EvalResult::series(
        ctx.prefactor * sum,
        MethodTag::LargeXY,
        n,
        terms[n].norm() * scale,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    #[test]
    fn low_coefficients() {
        let g = C::new(0.4, -0.2);
        let i = C::new(0.0, 1.0);
        assert_eq!(coeff_an(0, g), C::new(1.0, 0.0));
        assert!((coeff_an(1, g) - i * g.powi(3) * 4.0).norm() < 1e-15);
        assert!((coeff_an(2, g) + g.powi(6) * 8.0).norm() < 1e-15);
    }

    #[test]
    fn coefficient_seven() {
        // Taylor coefficient of h at 40 digits
        let a = coeff_an(7, C::new(0.3, 0.1));
        let expected = C::new(-0.298_973_734_455_516_243, 1.203_519_648_471_714_619);
        assert!((a - expected).norm() < 1e-14);
    }

    #[test]
    fn validity_examples() {
        assert!(validity_large_xy(C::new(20.0, 0.0), C::new(1.0, 0.0)).unwrap().valid);
        let v = validity_large_xy(C::new(1.5, 0.0), C::new(1.5, 0.0)).unwrap();
        assert!(!v.valid);
        assert_eq!(v.caustic_distance, 0.0);
        assert!(!validity_large_xy(C::new(-5.0, 0.0), C::new(0.0, 0.0)).unwrap().valid);
        assert!(matches!(
            validity_large_xy(C::new(0.0, 0.0), C::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn leading_term_at_y_zero() {
        let x = C::new(12.0, -5.0);
        let r = eval_large_xy(x, C::new(0.0, 0.0), 1).unwrap();
        let expected = C::new(PI.sqrt() / 2.0, 0.0) / x.sqrt();
        assert!((r.value - expected).norm() < 1e-15);
    }

    #[test]
    fn shifted_matches_rational_form() {
        let x = C::new(7.0, 3.0);
        let y = C::new(-2.0, 5.0);
        let ctx = LargeXYContext::new(x, y).unwrap();
        let rational = x * x * 2.0 / (x.powi(3) * 2.0 - y * y * 3.0);
        assert!((ctx.shifted.inv() - rational).norm() < 1e-15 * rational.norm());
    }
}
