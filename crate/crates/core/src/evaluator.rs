//! Public evaluation entry point: runs every valid expansion at its best
//! truncation and keeps the one with the smallest error estimate, falling
//! back to the quadrature oracle when none reaches the requested tolerance.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::large_x::{bound_large_x, LargeXContext};
use crate::large_xy::LargeXYContext;
use crate::real::{canonical, is_finite, Real};
use crate::reference::{berry_howls_sum, oracle_quadrature, OracleConfig};
use crate::result::{EvalResult, MethodTag, Warning};
use crate::small_x::small_x_auto;
use crate::{large_x, large_xy, small_x};

/// Accuracy targets and term limits.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionConfig {
    /// Requested relative accuracy.
    pub target_tol: f64,
    /// Term cap for the asymptotic expansions.
    pub max_asymptotic_terms: usize,
    /// Term cap for the convergent expansions.
    pub max_convergent_terms: usize,
    /// Digits used by the oracle fallback.
    pub oracle_digits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            target_tol: 1e-10,
            max_asymptotic_terms: 10,
            max_convergent_terms: 400,
            oracle_digits: 30,
        }
    }
}

/// Region thresholds and fallback behaviour.
///
/// `r_small` and `r_large` only order the candidates; the final choice is
/// always the smallest error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectorPolicy {
    pub r_small: f64,
    pub r_large: f64,
    pub precision: PrecisionConfig,
    pub allow_oracle_fallback: bool,
}

impl Default for SelectorPolicy {
    fn default() -> Self {
        SelectorPolicy {
            r_small: 2.0,
            r_large: 8.0,
            precision: PrecisionConfig::default(),
            allow_oracle_fallback: true,
        }
    }
}

impl SelectorPolicy {
    pub fn with_tolerance(target_tol: f64) -> Self {
        let mut p = Self::default();
        p.precision.target_tol = target_tol;
        p
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_small > 0.0 && self.r_small <= self.r_large) {
            return Err(Error::Domain(format!(
                "selector thresholds must satisfy 0 < r_small ≤ r_large, got {} and {}",
                self.r_small, self.r_large
            )));
        }
        if !(self.precision.target_tol > 0.0) {
            return Err(Error::Domain("target tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Candidate order seeded by the `(|x|, |y|)` region.
    fn candidate_order(&self, x_abs: f64) -> [MethodTag; 4] {
        use MethodTag::*;
        if x_abs <= self.r_small {
            [SmallX, ConvergentSeries, LargeX, LargeXY]
        } else if x_abs >= self.r_large {
            [LargeX, LargeXY, SmallX, ConvergentSeries]
        } else {
            [SmallX, LargeX, LargeXY, ConvergentSeries]
        }
    }
}

/// Number of leading terms kept before the first strict increase in
/// magnitude; the whole list when it never increases.
pub fn optimal_truncation<T: PartialOrd + Copy>(term_magnitudes: &[T]) -> usize {
    term_magnitudes
        .windows(2)
        .position(|w| w[1] > w[0])
        .map_or(term_magnitudes.len(), |i| i + 1)
}

/// Evaluates `P(x, y)` with automatic method selection.
pub fn evaluate<T: Real>(x: Complex<T>, y: Complex<T>, policy: &SelectorPolicy) -> Result<EvalResult<T>> {
    policy.validate()?;
    if !is_finite(x) || !is_finite(y) {
        return Err(Error::Domain("x and y must be finite".into()));
    }
    let x = canonical(x);
    let y = canonical(y);
    let mut best: Option<EvalResult<T>> = None;
    for method in policy.candidate_order(x.norm().to_f64_lossy()) {
        let Ok(candidate) = run_auto(x, y, method, policy) else {
            continue;
        };
        let Some(est) = candidate.error_estimate else {
            continue;
        };
        if !is_finite(candidate.value) || !est.is_finite() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                let b_est = b.error_estimate.unwrap_or_else(T::infinity);
                est < b_est || (est == b_est && candidate.method < b.method)
            }
        };
        if better {
            best = Some(candidate);
        }
    }

    let tol = T::lit(policy.precision.target_tol);
    let achieved = best.as_ref().map(|b| b.relative_estimate());
    if let (Some(b), Some(rel)) = (&best, achieved) {
        if rel <= tol {
            return Ok(b.clone());
        }
    }
    if policy.allow_oracle_fallback {
        let mut r = run_oracle(x, y, policy.precision.oracle_digits)?;
        r.warnings.push(Warning::ToleranceUnmet {
            requested: policy.precision.target_tol,
            achieved: achieved.map_or(f64::INFINITY, |a| a.to_f64_lossy()),
        });
        return Ok(r);
    }
    match best {
        Some(mut b) => {
            b.warnings.push(Warning::ToleranceUnmet {
                requested: policy.precision.target_tol,
                achieved: achieved.map_or(f64::INFINITY, |a| a.to_f64_lossy()),
            });
            Ok(b)
        }
        None => Err(Error::NonConvergence {
            terms: 0,
            last_term: f64::INFINITY,
        }),
    }
}

/// Evaluates with a forced method. `terms = None` lets the method pick its
/// own truncation; `Some(n)` sums exactly `n` terms.
pub fn evaluate_method<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    method: MethodTag,
    terms: Option<usize>,
    policy: &SelectorPolicy,
) -> Result<EvalResult<T>> {
    policy.validate()?;
    if !is_finite(x) || !is_finite(y) {
        return Err(Error::Domain("x and y must be finite".into()));
    }
    let x = canonical(x);
    let y = canonical(y);
    match (method, terms) {
        (MethodTag::SmallX, Some(n)) => small_x::eval_small_x(x, y, n),
        (MethodTag::LargeX, Some(n)) => large_x::eval_large_x(x, y, n),
        (MethodTag::LargeXY, Some(n)) => large_xy::eval_large_xy(x, y, n),
        (MethodTag::ConvergentSeries, Some(n)) => berry_howls_sum(x, y, T::epsilon(), n.max(1)),
        (MethodTag::Quadrature, _) => run_oracle(x, y, policy.precision.oracle_digits),
        (m, None) => run_auto(x, y, m, policy),
    }
}

/// Pearcey's original oscillatory integral
/// `∫ e^{i(t⁴ + xt² + yt)} dt = 2e^{iπ/8} P(x e^{−iπ/4}, y e^{iπ/8})`.
pub fn pearcey_oscillatory<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    policy: &SelectorPolicy,
) -> Result<EvalResult<T>> {
    let eighth = T::PI() / T::lit(8.0);
    let rx = x * Complex::from_polar(T::one(), -T::lit(2.0) * eighth);
    let ry = y * Complex::from_polar(T::one(), eighth);
    let mut r = evaluate(rx, ry, policy)?;
    let factor = Complex::from_polar(T::lit(2.0), eighth);
    r.value = r.value * factor;
    r.error_estimate = r.error_estimate.map(|e| e * T::lit(2.0));
    Ok(r)
}

fn run_oracle<T: Real>(x: Complex<T>, y: Complex<T>, digits: u32) -> Result<EvalResult<T>> {
    let to64 = |z: Complex<T>| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy());
    let v = oracle_quadrature(to64(x), to64(y), &OracleConfig::with_digits(digits))?;
    let z = v.to_complex64()?;
    let value = Complex::new(T::lit(z.re), T::lit(z.im));
    if !is_finite(value) {
        return Err(Error::Overflow {
            log10_magnitude: v.value.log10_abs(),
        });
    }
    Ok(EvalResult {
        value,
        method: MethodTag::Quadrature,
        terms_used: v.panels,
        error_estimate: None,
        oracle_digits: Some(digits),
        warnings: vec![Warning::OracleFallback { digits }],
    })
}

fn run_auto<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    method: MethodTag,
    policy: &SelectorPolicy,
) -> Result<EvalResult<T>> {
    let prec = &policy.precision;
    match method {
        MethodTag::SmallX => small_x_auto(x, y, prec.max_convergent_terms).map(|(r, _)| r),
        MethodTag::ConvergentSeries => berry_howls_sum(x, y, T::epsilon(), prec.max_convergent_terms),
        MethodTag::LargeX => {
            let ctx = LargeXContext::new(x, y)?;
            let terms = ctx.terms(prec.max_asymptotic_terms + 2);
            let mut r = truncate_asymptotic(MethodTag::LargeX, ctx.prefactor, &terms);
            if let (Ok(b), Some(est)) = (bound_large_x(ctx.x, ctx.y, r.terms_used, ctx.sigma), r.error_estimate) {
                let bound = b * ctx.prefactor.norm() + rounding_floor(ctx.prefactor, &terms);
                if bound.is_finite() && bound < est {
                    r.error_estimate = Some(bound);
                }
            }
            Ok(r)
        }
        MethodTag::LargeXY => {
            let ctx = LargeXYContext::new(x, y)?;
            let terms = ctx.terms(prec.max_asymptotic_terms + 2)?;
            Ok(truncate_asymptotic(MethodTag::LargeXY, ctx.prefactor, &terms))
        }
        MethodTag::Quadrature => run_oracle(x, y, prec.oracle_digits),
    }
}

fn rounding_floor<T: Real>(prefactor: Complex<T>, terms: &[Complex<T>]) -> T {
    let abs_sum = terms.iter().fold(T::zero(), |a, t| a + t.norm());
    T::epsilon() * T::lit(4.0) * abs_sum * prefactor.norm()
}

/// Optimal truncation of an asymptotic series given `max + 2` summands.
///
/// Truncation is decided on the envelope `e_n = max(|t_n|, |t_{n+1}|)` so that
/// an accidentally tiny term (a vanishing coefficient) does not end the sum
/// early; `e_n` is also the error estimate for keeping `n` terms. When the
/// term cap is reached while the terms still shrink by a ratio `ρ`, the tail
/// is estimated as `e_n / (1 − ρ)`.
fn truncate_asymptotic<T: Real>(method: MethodTag, prefactor: Complex<T>, terms: &[Complex<T>]) -> EvalResult<T> {
    let mags: Vec<T> = terms.iter().map(|t| t.norm()).collect();
    let envelope: Vec<T> = mags.windows(2).skip(1).map(|w| w[0].max(w[1])).collect();
    let n = optimal_truncation(&envelope).max(1);
    let sum = terms[..n]
        .iter()
        .fold(Complex::new(T::zero(), T::zero()), |a, &t| a + t);
    let mut tail = envelope[n - 1];
    if n == envelope.len() && mags[n] > T::zero() {
        let ratio = mags[n + 1] / mags[n];
        if ratio < T::one() {
            tail = tail / (T::one() - ratio);
        }
    }
    let estimate = tail * prefactor.norm() + rounding_floor(prefactor, &terms[..n]);
    EvalResult::series(prefactor * sum, method, n, estimate)
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn truncation_examples() {
        assert_eq!(optimal_truncation(&[1.0, 0.1, 0.01, 0.5]), 3);
        assert_eq!(optimal_truncation(&[1.0, 0.5, 0.25]), 3);
        assert_eq!(optimal_truncation(&[2.0, 3.0]), 1);
        assert_eq!(optimal_truncation(&[4.0]), 1);
    }

    #[test]
    fn origin() {
        let r = evaluate(C::new(0.0, 0.0), C::new(0.0, 0.0), &SelectorPolicy::default()).unwrap();
        assert!(matches!(r.method, MethodTag::SmallX | MethodTag::ConvergentSeries));
        assert!((r.value.re - 0.906_402_477_055_477_078).abs() < 1e-15);
    }

    #[test]
    fn large_x_selected_far_out() {
        let r = evaluate(C::new(0.0, 100.0), C::new(2.0, -1.0), &SelectorPolicy::default()).unwrap();
        assert_eq!(r.method, MethodTag::LargeX);
        assert!(r.error_estimate.unwrap() <= 1e-10);
    }

    #[test]
    fn rejects_bad_policy() {
        let mut p = SelectorPolicy::default();
        p.r_small = 10.0;
        p.r_large = 1.0;
        assert!(evaluate(C::new(1.0, 0.0), C::new(0.0, 0.0), &p).is_err());
    }

    #[test]
    fn no_fallback_reports_unmet_tolerance() {
        let mut p = SelectorPolicy::with_tolerance(1e-30);
        p.allow_oracle_fallback = false;
        let r = evaluate(C::new(10.0, 0.0), C::new(0.0, 3.0), &p).unwrap();
        assert!(r.warnings.iter().any(|w| matches!(w, Warning::ToleranceUnmet { .. })));
    }

    #[test]
    fn oscillatory_origin() {
        let r = pearcey_oscillatory(C::new(0.0, 0.0), C::new(0.0, 0.0), &SelectorPolicy::default()).unwrap();
        let expected = C::from_polar(2.0, std::f64::consts::PI / 8.0) * 0.906_402_477_055_477_078;
        assert!((r.value - expected).norm() < 1e-14);
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(evaluate(C::new(f64::NAN, 0.0), C::new(0.0, 0.0), &SelectorPolicy::default()).is_err());
    }
}
