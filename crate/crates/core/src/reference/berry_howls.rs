use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::gamma_real;
use crate::real::{canonical, is_finite, Real};
use crate::result::{EvalResult, MethodTag, Warning};

/// Rolling generator of `a_n(x, y)`:
/// `a_0 = 1`, `a_1 = y`, `a_n = (y a_{n−1} + 2x a_{n−2}) / n`.
#[derive(Debug, Clone)]
pub struct BerryHowlsState<T> {
    pub x: Complex<T>,
    pub y: Complex<T>,
    /// Last four values, newest last.
    pub window: [Complex<T>; 4],
    next_index: usize,
}

impl<T: Real> BerryHowlsState<T> {
    pub fn new(x: Complex<T>, y: Complex<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        BerryHowlsState {
            x,
            y,
            window: [zero, zero, zero, zero],
            next_index: 0,
        }
    }
}

impl<T: Real> Iterator for BerryHowlsState<T> {
    type Item = Complex<T>;

    fn next(&mut self) -> Option<Complex<T>> {
        let n = self.next_index;
        let value = match n {
            0 => Complex::new(T::one(), T::zero()),
            1 => self.y,
            _ => (self.y * self.window[3] + self.x * self.window[2] * T::lit(2.0)) / T::from_usize(n),
        };
        self.window.rotate_left(1);
        self.window[3] = value;
        self.next_index += 1;
        Some(value)
    }
}

/// `P(x,y) = ¼ Σ_n (−1)^n Γ((2n+1)/4) a_{2n}(x,y)`.
///
/// Stops when two consecutive terms are below `tol·|partial sum|`. A
/// [`Warning::Cancellation`] is attached when the largest term exceeds the
/// sum by more than 10⁶, and the error estimate includes the matching
/// rounding floor.
pub fn berry_howls_sum<T: Real>(
    x: Complex<T>,
    y: Complex<T>,
    tol: T,
    nmax: usize,
) -> Result<EvalResult<T>> {
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let mut coeffs = BerryHowlsState::new(canonical(x), canonical(y));
    // Γ(m + ¼) and Γ(m + ¾), advanced by one in m every other n
    let mut g_quarter = gamma_real(T::lit(0.25))?;
    let mut g_three_quarter = gamma_real(T::lit(0.75))?;
    let quarter = T::lit(0.25);
    let mut sum = Complex::new(T::zero(), T::zero());
    let mut max_term = T::zero();
    let mut abs_sum = T::zero();
    let mut small_run = 0;
    let mut last = T::zero();
    for n in 0..nmax {
        let a_even = coeffs.next().expect("infinite");
        let _odd = coeffs.next();
        let m = n / 2;
        let g = if n % 2 == 0 {
            if m > 0 {
                g_quarter *= T::from_usize(m) - T::lit(0.75);
            }
            g_quarter
        } else {
            if m > 0 {
                g_three_quarter *= T::from_usize(m) - quarter;
            }
            g_three_quarter
        };
        let sign = if n % 2 == 0 { T::one() } else { -T::one() };
        let term = a_even * (sign * g * quarter);
        if !is_finite(term) {
            break;
        }
        sum += term;
        let mag = term.norm();
        last = mag;
        max_term = max_term.max(mag);
        abs_sum += mag;
        if n >= 2 && mag <= tol * sum.norm() {
            small_run += 1;
            if small_run == 2 {
                let rounding = T::epsilon() * T::lit(4.0) * abs_sum;
                let mut result = EvalResult::series(
                    sum,
                    MethodTag::ConvergentSeries,
                    n + 1,
                    T::lit(2.0) * mag + rounding,
                );
                let ratio = max_term / sum.norm();
                if ratio > T::lit(1e6) {
                    result.warnings.push(Warning::Cancellation {
                        ratio: ratio.to_f64_lossy(),
                    });
                }
                return Ok(result);
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence {
        terms: nmax,
        last_term: last.to_f64_lossy(),
    })
}
