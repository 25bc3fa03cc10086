//! Asymptotic expansion for large `|x|`, `|arg x| < 3π/4`:
//!
//! ```text
//! P(x,y) = √π e^{−y²/(4x)} / (2√x) · ( Σ_{k<n} (−1)^k H_{4k}(y/(2√x)) / (k! (4x)^{2k}) + R_n )
//! ```
//!
//! Since `H_{4k} = 2^{4k} h_{4k}` and `(4x)^{2k} = 2^{4k} x^{2k}`, the summand is
//! `(−1)^k h_{4k}(α/2) / (k! x^{2k})` with `α = y/√x`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::{gamma_real, hermite_scaled, hermite_scaled_sequence, kummer_m_negint};
use crate::real::{canonical, principal_arg, Real};
use crate::result::EvalResult;
use crate::result::MethodTag;

/// Precomputed quantities for one `(x, y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LargeXContext<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    /// `y/√x`, principal root.
    pub alpha: Complex<T>,
    /// `arg x`
    pub theta: T,
    pub sigma: T,
    /// `√π e^{−y²/(4x)} / (2√x)`
    pub prefactor: Complex<T>,
    log_x: Complex<T>,
}

impl<T: Real> LargeXContext<T> {
    pub fn new(x: Complex<T>, y: Complex<T>) -> Result<Self> {
        let x = canonical(x);
        let y = canonical(y);
        let sigma = choose_sigma(x)?;
        let log_x = x.ln();
        let sqrt_x = (log_x * T::lit(0.5)).exp();
        let alpha = y / sqrt_x;
        let prefactor = (-(y * y) / (x * T::lit(4.0))).exp() * (T::PI().sqrt() / T::lit(2.0)) / sqrt_x;
        Ok(LargeXContext {
            x,
            y,
            alpha,
            theta: principal_arg(x),
            sigma,
            prefactor,
            log_x,
        })
    }

    /// Normalized summands `(−1)^k h_{4k}(α/2) / (k! x^{2k})` for `k < count`.
    pub fn terms(&self, count: usize) -> Vec<Complex<T>> {
        if count == 0 {
            return Vec::new();
        }
        let h = hermite_scaled_sequence(4 * (count - 1), self.alpha / T::lit(2.0));
        let inv_x2 = (-self.log_x * T::lit(2.0)).exp();
        let mut weight = Complex::new(T::one(), T::zero());
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            if k > 0 {
                weight = -weight * inv_x2 / T::from_usize(k);
            }
            out.push(h[4 * k] * weight);
        }
        out
    }
}

/// Path rotation `σ = clamp(−arg(x)/2, −π/8 + π/64, π/8 − π/64)`.
pub fn choose_sigma<T: Real>(x: Complex<T>) -> Result<T> {
    let theta = principal_arg(x);
    let limit = T::lit(0.75) * T::PI();
    if !(theta.abs() < limit) || x.norm() == T::zero() {
        return Err(Error::Region {
            method: "large_x",
            reason: format!("|arg x| = {} is not below 3π/4", theta.abs()),
        });
    }
    let edge = T::PI() / T::lit(8.0) - T::PI() / T::lit(64.0);
    Ok((-theta / T::lit(2.0)).max(-edge).min(edge))
}

/// Partial sum of `n` terms. The error estimate is the smaller of the
/// remainder bound and the first omitted term, both scaled by the prefactor.
pub fn eval_large_x<T: Real>(x: Complex<T>, y: Complex<T>, n: usize) -> Result<EvalResult<T>> {
    let n = n.max(1);
    let ctx = LargeXContext::new(x, y)?;
    let terms = ctx.terms(n + 1);
    let sum = terms[..n]
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |a, &t| a + t);
    let scale = ctx.prefactor.norm();
    let mut estimate = terms[n].norm() * scale;
    if let Ok(b) = bound_large_x(ctx.x, ctx.y, n, ctx.sigma) {
        if b.is_finite() {
            estimate = estimate.min(b * scale);
        }
    }
    Ok(EvalResult::series(
        ctx.prefactor * sum,
        MethodTag::LargeX,
        n,
        estimate,
    ))
}

/// Remainder bound for the bracketed sum:
///
/// ```text
/// |R_n| ≤ exp( |y|²/(4|x|) · cos²(arg y − arg x − σ) / cos(2σ + arg x) )
///         · |H_{4n}( i |y| sin(σ + arg y) / (2√|x| cos(2σ + arg x)) )|
///         / ( n! |4x|^{2n} cos^{2n+1/2}(2σ + arg x) )
/// ```
///
/// `arg 0` is taken as 0.
pub fn bound_large_x<T: Real>(x: Complex<T>, y: Complex<T>, n: usize, sigma: T) -> Result<T> {
    let x = canonical(x);
    let y = canonical(y);
    let arg_x = principal_arg(x);
    let arg_y = if y.norm() == T::zero() { T::zero() } else { principal_arg(y) };
    let c = (T::lit(2.0) * sigma + arg_x).cos();
    if !(c > T::zero()) || !(sigma.abs() < T::PI() / T::lit(8.0)) {
        return Err(Error::Region {
            method: "large_x",
            reason: format!("|2σ + arg x| = {} is not below π/2", (T::lit(2.0) * sigma + arg_x).abs()),
        });
    }
    let ax = x.norm();
    let ay = y.norm();
    let tilt = (arg_y - arg_x - sigma).cos();
    let exponent = ay * ay / (T::lit(4.0) * ax) * (tilt * tilt / c);
    let s = ay * (sigma + arg_y).sin() / (T::lit(2.0) * ax.sqrt() * c);
    // H_{4n}(is) = 2^{4n} h_{4n}(is); the 2^{4n} cancels against |4x|^{2n} = 2^{4n}|x|^{2n}.
    let h = hermite_scaled(4 * n, Complex::new(T::zero(), s)).norm();
    let fact = (1..=n).fold(T::one(), |a, k| a * T::from_usize(k));
    let nf = T::from_usize(n);
    Ok(exponent.exp() * h / (fact * ax.powf(T::lit(2.0) * nf) * c.powf(T::lit(2.0) * nf + T::lit(0.5))))
}

/// Normalized `k`-th summand of the large-`x` series, `(−1)^k H_{4k}(y/(2√x)) / (k! (4x)^{2k})`.
pub fn term_large_x<T: Real>(x: Complex<T>, y: Complex<T>, k: usize) -> Result<Complex<T>> {
    let ctx = LargeXContext::new(x, y)?;
    Ok(ctx.terms(k + 1)[k])
}

/// `k`-th term of the equivalent Kummer form
/// `(−1)^k Γ(2k+½)/(k! x^{2k}) M(−2k; ½; y²/(4x))`, divided by `Γ(½)` so it
/// is directly comparable with [`term_large_x`].
pub fn term_large_x_kummer<T: Real>(x: Complex<T>, y: Complex<T>, k: usize) -> Result<Complex<T>> {
    let x = canonical(x);
    if x.norm() == T::zero() {
        return Err(Error::Domain("x must be nonzero".into()));
    }
    let half = T::lit(0.5);
    let kf = T::from_usize(k);
    let ratio = gamma_real(T::lit(2.0) * kf + half)? / gamma_real(half)?;
    let fact = (1..=k).fold(T::one(), |a, j| a * T::from_usize(j));
    let sign = if k % 2 == 0 { T::one() } else { -T::one() };
    let m = kummer_m_negint(k, half, y * y / (x * T::lit(4.0)))?;
    Ok(m * (sign * ratio / fact) / x.powi(2 * k as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    type C = Complex<f64>;

    #[test]
    fn sigma_examples() {
        assert_eq!(choose_sigma(C::new(3.0, 0.0)).unwrap(), 0.0);
        let s = choose_sigma(C::new(0.0, 2.0)).unwrap();
        assert!((s + 7.0 * PI / 64.0).abs() < 1e-15);
        let s = choose_sigma(C::from_polar(5.0, -0.3)).unwrap();
        assert!((s - 0.15).abs() < 1e-15);
        assert!(choose_sigma(C::new(-1.0, 0.0)).is_err());
        assert!(choose_sigma(C::from_polar(1.0, 0.8 * PI)).is_err());
    }

    #[test]
    fn sigma_keeps_rotated_argument_inside_half_plane() {
        let reach = 23.0 * PI / 32.0;
        for i in 0..200 {
            let theta = -0.999 * reach + 1.998 * reach * i as f64 / 199.0;
            let s = choose_sigma(C::from_polar(2.0, theta)).unwrap();
            assert!((theta + 2.0 * s).abs() < PI / 2.0);
            assert!(s.abs() < PI / 8.0);
        }
    }

    #[test]
    fn clamped_sigma_runs_out_near_the_sector_edge() {
        let x = C::from_polar(50.0, 0.74 * PI);
        let s = choose_sigma(x).unwrap();
        assert!((0.74 * PI + 2.0 * s).abs() > PI / 2.0);
        assert!(bound_large_x(x, C::new(1.0, 0.0), 1, s).is_err());
        let r = eval_large_x(x, C::new(1.0, 0.0), 2).unwrap();
        assert!(r.error_estimate.unwrap().is_finite());
    }

    #[test]
    fn leading_term_at_y_zero() {
        let x = C::new(3.0, 4.0);
        let r = eval_large_x(x, C::new(0.0, 0.0), 1).unwrap();
        let expected = C::new(PI.sqrt() / 2.0, 0.0) / x.sqrt();
        assert!((r.value - expected).norm() < 1e-15);
    }

    #[test]
    fn bound_at_y_zero() {
        let x = C::new(7.0, 0.0);
        let b = bound_large_x(x, C::new(0.0, 0.0), 1, 0.0).unwrap();
        assert!((b - 12.0 / (16.0 * 49.0)).abs() < 1e-16);
    }

    #[test]
    fn bound_rejects_bad_sigma() {
        assert!(bound_large_x(C::new(0.0, 1.0), C::new(1.0, 0.0), 1, 0.3).is_err());
    }

    #[test]
    fn kummer_terms() {
        let x = C::new(2.0, -1.0);
        let y = C::new(0.5, 0.3);
        assert_eq!(term_large_x_kummer(x, y, 0).unwrap(), C::new(1.0, 0.0));
        let t = term_large_x_kummer(x, C::new(0.0, 0.0), 1).unwrap();
        let h = term_large_x(x, C::new(0.0, 0.0), 1).unwrap();
        assert!((t - C::new(-0.75, 0.0) / (x * x)).norm() < 1e-15);
        assert!((t - h).norm() < 1e-15);
        // k = 2, x = 10, y = 3: −1.3745466796875e-4 in both forms
        let t = term_large_x_kummer(C::new(10.0, 0.0), C::new(3.0, 0.0), 2).unwrap();
        let h = term_large_x(C::new(10.0, 0.0), C::new(3.0, 0.0), 2).unwrap();
        assert!((t.re + 1.374_546_679_687_5e-4).abs() < 1e-18);
        assert!((t - h).norm() <= 1e-12 * t.norm());
    }

    #[test]
    fn region_error_outside_sector() {
        assert!(matches!(
            eval_large_x(C::new(-10.0, 0.0), C::new(1.0, 0.0), 2),
            Err(Error::Region { .. })
        ));
    }
}
