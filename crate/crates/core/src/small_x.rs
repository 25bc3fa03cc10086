//! Convergent expansion in powers of `x`:
//! `P(x,y) = Σ_{k<n} P_k(y) (−x)^k / k! + R_n(x,y)`, with
//! `P_k(y) = ½ ∫ t^{2k} e^{−t⁴+iyt} dt` in closed form through two ₁F₃ series.

use num_complex::Complex;

use crate::error::Result;
use crate::numerics::{gamma_real, hyp_pfq, HypergeometricParams};
use crate::real::{canonical, Real};
use crate::result::{EvalResult, MethodTag, StopReason, TruncationReport, Warning};

const HYP_MAX_TERMS: usize = 2000;

/// How a coefficient list was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffSource {
    Direct,
    Recurrence(RecurrenceForm),
}

/// Four-step recurrence variants for `P_k(y)`.
///
/// `Printed` carries a factor `(k+1)` on `P_{k+2}`; integrating
/// `d/dt[t^m e^{−t⁴+iyt}]` by parts gives the coefficient `(k + 7/4)` instead.
/// The two agree only at `k = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceForm {
    Printed,
    IntegrationByParts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmallXCoeffs<T> {
    pub y: Complex<T>,
    pub values: Vec<Complex<T>>,
    pub source: CoeffSource,
}

/// `P_k(y) = ¼Γ((1+2k)/4) ₁F₃((1+2k)/4; ¼,½,¾; (y/4)⁴)
///         − (y²/8) Γ((3+2k)/4) ₁F₃((3+2k)/4; ¾,5/4,3/2; (y/4)⁴)`.
pub fn coeff_pk<T: Real>(k: usize, y: Complex<T>) -> Result<Complex<T>> {
    coeff_pk_with_rounding(k, y).map(|(v, _)| v)
}

/// `P_k(y)` plus an estimate of the absolute rounding error, driven by the
/// cancellation between the two hypergeometric pieces and inside each sum.
pub(crate) fn coeff_pk_with_rounding<T: Real>(
    k: usize,
    y: Complex<T>,
) -> Result<(Complex<T>, T)> {
    let y = canonical(y);
    let four = T::lit(4.0);
    let kf = T::from_usize(k);
    let a1 = (T::one() + T::lit(2.0) * kf) / four;
    let a2 = (T::lit(3.0) + T::lit(2.0) * kf) / four;
    let q = y / four;
    let q2 = q * q;
    let z = q2 * q2;
    let tol = T::epsilon() / four;

    let first = HypergeometricParams::new(vec![a1], vec![T::lit(0.25), T::lit(0.5), T::lit(0.75)])?;
    let second = HypergeometricParams::new(vec![a2], vec![T::lit(0.75), T::lit(1.25), T::lit(1.5)])?;
    let (f1, r1) = hyp_pfq(&first, z, tol, HYP_MAX_TERMS)?;
    let (f2, r2) = hyp_pfq(&second, z, tol, HYP_MAX_TERMS)?;

    let c1 = gamma_real(a1)? / four;
    let c2 = y * y * (gamma_real(a2)? / T::lit(8.0));
    let value = f1 * c1 - c2 * f2;

    let sum_mag = |r: &TruncationReport<T>| r.term_magnitudes.iter().fold(T::zero(), |a, &m| a + m);
    let rounding =
        T::epsilon() * T::lit(4.0) * (c1.abs() * sum_mag(&r1) + c2.norm() * sum_mag(&r2));
    Ok((value, rounding))
}

/// Extends seeds `P_0..P_3` to `P_0..P_{k_max}` by the selected recurrence.
/// Test and diagnostics only; production coefficients come from [`coeff_pk`].
pub fn coeff_pk_recurrence<T: Real>(
    seeds: [Complex<T>; 4],
    k_max: usize,
    y: Complex<T>,
    form: RecurrenceForm,
) -> SmallXCoeffs<T> {
    let mut values: Vec<Complex<T>> = seeds.iter().copied().take(k_max + 1).collect();
    let q = y / T::lit(4.0);
    let q2 = q * q;
    while values.len() <= k_max {
        let k = values.len() - 4;
        let kf = T::from_usize(k);
        let p2_coeff = match form {
            RecurrenceForm::Printed => (kf + T::one()) * (kf + T::lit(1.75)),
            RecurrenceForm::IntegrationByParts => kf + T::lit(1.75),
        };
        let pk_coeff = (kf + T::one()) * (T::lit(2.0) * kf + T::one()) / T::lit(8.0);
        let next = -(q2 * values[k + 1]) - values[k] * pk_coeff + values[k + 2] * p2_coeff;
        values.push(next);
    }
    SmallXCoeffs {
        y,
        values,
        source: CoeffSource::Recurrence(form),
    }
}

/// Direct-formula coefficients `P_0..P_{n−1}`.
pub fn coeffs_direct<T: Real>(n: usize, y: Complex<T>) -> Result<SmallXCoeffs<T>> {
    let values = (0..n).map(|k| coeff_pk(k, y)).collect::<Result<Vec<_>>>()?;
    Ok(SmallXCoeffs {
        y,
        values,
        source: CoeffSource::Direct,
    })
}

/// `P(x,y) = P(x,−y)`: pick the representative with `Re y > 0`, or `Im y ≥ 0`
/// on the imaginary axis.
pub(crate) fn fold_y<T: Real>(y: Complex<T>) -> Complex<T> {
    let y = canonical(y);
    if y.re < T::zero() || (y.re == T::zero() && y.im < T::zero()) {
        -y
    } else {
        y
    }
}

/// Remainder bound for the `n`-term partial sum.
///
/// `Re x ≥ 0`: `|R_n| ≤ |x|^n/n! · P_n(i Im y)`.
/// `Re x < 0`: `|R_n| ≤ |x√2|^n/n! · 2^{1/4} e^{(Re x)²/2} P_n(i 2^{1/4} Im y)`.
///
/// Returns `+∞` when the bound overflows or its coefficient cannot be
/// evaluated.
pub fn bound_small_x<T: Real>(x: Complex<T>, y: Complex<T>, n: usize) -> T {
    let x = canonical(x);
    let y = canonical(y);
    let nf = T::from_usize(n);
    let fact = (1..=n).fold(T::one(), |a, k| a * T::from_usize(k));
    if x.re >= T::zero() {
        if x.norm() == T::zero() && n > 0 {
            return T::zero();
        }
        let pn = match coeff_pk(n, Complex::new(T::zero(), y.im)) {
            Ok(v) => v.re,
            Err(_) => return T::infinity(),
        };
        x.norm().powf(nf) / fact * pn
    } else {
        let quarter_root_two = T::lit(2.0).powf(T::lit(0.25));
        let pn = match coeff_pk(n, Complex::new(T::zero(), quarter_root_two * y.im)) {
            Ok(v) => v.re,
            Err(_) => return T::infinity(),
        };
        let growth = (x.re * x.re / T::lit(2.0)).exp();
        (x.norm() * T::SQRT_2()).powf(nf) / fact * quarter_root_two * growth * pn
    }
}

/// Partial sum of the first `n` terms.
///
/// The error estimate is [`bound_small_x`] plus coefficient rounding when finite, otherwise the
/// magnitude of the first omitted term (with [`Warning::BoundOverflow`]).
pub fn eval_small_x<T: Real>(x: Complex<T>, y: Complex<T>, n: usize) -> Result<EvalResult<T>> {
    let n = n.max(1);
    let x = canonical(x);
    let y = fold_y(y);
    let series = SmallXSeries::new(x, y, n + 1)?;
    let value = series.partial_sum(n);
    let bound = bound_small_x(x, y, n);
    let rounding = series.rounding[..n].iter().fold(T::zero(), |a, &r| a + r);
    let mut result;
    if bound.is_finite() {
        result = EvalResult::series(value, MethodTag::SmallX, n, bound + rounding);
    } else {
        result = EvalResult::series(value, MethodTag::SmallX, n, series.terms[n].norm() + rounding);
        result.warnings.push(Warning::BoundOverflow);
    }
    Ok(result)
}

/// Terms `P_k(y)(−x)^k/k!` with their rounding estimates.
pub(crate) struct SmallXSeries<T> {
    pub terms: Vec<Complex<T>>,
    pub rounding: Vec<T>,
}

impl<T: Real> SmallXSeries<T> {
    pub fn new(x: Complex<T>, y: Complex<T>, count: usize) -> Result<Self> {
        let mut terms = Vec::with_capacity(count);
        let mut rounding = Vec::with_capacity(count);
        // (−x)^k / k! accumulated multiplicatively
        let mut weight = Complex::new(T::one(), T::zero());
        for k in 0..count {
            if k > 0 {
                weight = weight * (-x) / T::from_usize(k);
            }
            let (pk, err) = coeff_pk_with_rounding(k, y)?;
            terms.push(pk * weight);
            rounding.push(err * weight.norm());
        }
        Ok(SmallXSeries { terms, rounding })
    }

    pub fn partial_sum(&self, n: usize) -> Complex<T> {
        self.terms[..n]
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |a, &t| a + t)
    }
}

/// Sums the convergent series until two consecutive terms drop below
/// machine precision relative to the partial sum, or `max_terms` is reached.
/// The estimate adds the accumulated rounding error to the tail.
pub(crate) fn small_x_auto<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    max_terms: usize,
) -> Result<(EvalResult<T>, TruncationReport<T>)> {
    let x = canonical(x);
    let y = fold_y(y);
    let mut weight = Complex::new(T::one(), T::zero());
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut rounding = T::zero();
    let mut mags = Vec::new();
    let mut small_run = 0;
    let mut stop = StopReason::MaxTerms;
    let mut tail = T::infinity();
    for k in 0..max_terms.max(2) {
        if k > 0 {
            weight = weight * (-x) / T::from_usize(k);
        }
        let (pk, err) = coeff_pk_with_rounding(k, y)?;
        let term = pk * weight;
        let mag = term.norm();
        if !mag.is_finite() {
            break;
        }
        if small_run == 2 {
            // first omitted term
            tail = mag;
            stop = StopReason::Converged;
            break;
        }
        sum += term;
        rounding += err * weight.norm() + T::epsilon() * mag;
        mags.push(mag);
        if mag <= T::epsilon() * sum.norm() {
            small_run += 1;
        } else {
            small_run = 0;
        }
    }
    let used = mags.len();
    if stop != StopReason::Converged {
        tail = mags.last().copied().unwrap_or_else(T::infinity);
    }
    let max_term = mags.iter().fold(T::zero(), |a, &m| a.max(m));
    let mut result = EvalResult::series(sum, MethodTag::SmallX, used, T::lit(2.0) * tail + rounding);
    let ratio = max_term / sum.norm();
    if ratio > T::lit(1e6) {
        result.warnings.push(Warning::Cancellation {
            ratio: ratio.to_f64_lossy(),
        });
    }
    let report = TruncationReport {
        terms_used: used,
        term_magnitudes: mags,
        stop,
    };
    Ok((result, report))
}
