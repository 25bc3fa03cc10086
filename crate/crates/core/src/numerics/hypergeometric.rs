use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;
use crate::result::{StopReason, TruncationReport};

/// Parameters of `pFq(a_1..a_p; b_1..b_q; z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricParams<T> {
    pub upper: Vec<T>,
    pub lower: Vec<T>,
}

impl<T: Real> HypergeometricParams<T> {
    pub fn new(upper: Vec<T>, lower: Vec<T>) -> Result<Self> {
        if let Some(b) = lower
            .iter()
            .find(|b| !b.is_finite() || (**b <= T::zero() && **b == b.floor()))
        {
            return Err(Error::Domain(format!(
                "lower hypergeometric parameter {b} is zero or a negative integer"
            )));
        }
        if upper.iter().any(|a| !a.is_finite()) {
            return Err(Error::Domain("non-finite upper parameter".into()));
        }
        Ok(HypergeometricParams { upper, lower })
    }

    /// Drops upper/lower pairs that are exactly equal; their Pochhammer
    /// ratios are identically one.
    fn reduced(&self) -> (Vec<T>, Vec<T>) {
        let mut upper = Vec::with_capacity(self.upper.len());
        let mut lower = self.lower.clone();
        for &a in &self.upper {
            match lower.iter().position(|&b| b == a) {
                Some(i) => {
                    lower.swap_remove(i);
                }
                None => upper.push(a),
            }
        }
        (upper, lower)
    }
}

/// Sums `Σ t_m` with `t_0 = 1` and
/// `t_{m+1} = t_m · ∏(a_i+m) / ∏(b_j+m) · z/(m+1)`.
///
/// Stops once two consecutive terms satisfy `|t_m| ≤ tol·|partial sum|`, or
/// fails with [`Error::NonConvergence`] after `max_terms` terms.
pub fn hyp_pfq<T: Real>(
    params: &HypergeometricParams<T>,
    z: Complex<T>,
    tol: T,
    max_terms: usize,
) -> Result<(Complex<T>, TruncationReport<T>)> {
    if !(tol > T::zero()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (upper, lower) = params.reduced();
    let mut term = Complex::new(T::one(), T::zero());
    let mut sum = term;
    let mut mags = vec![T::one()];
    let mut small_run = 0;
    for m in 1..max_terms.max(1) {
        let mf = T::from_usize(m - 1);
        let num = upper.iter().fold(T::one(), |acc, &a| acc * (a + mf));
        let den = lower.iter().fold(T::one(), |acc, &b| acc * (b + mf));
        term = term * z * (num / (den * (mf + T::one())));
        sum += term;
        let mag = term.norm();
        mags.push(mag);
        if mag <= tol * sum.norm() {
            small_run += 1;
            if small_run == 2 {
                return Ok((
                    sum,
                    TruncationReport {
                        terms_used: mags.len(),
                        term_magnitudes: mags,
                        stop: StopReason::Converged,
                    },
                ));
            }
        } else {
            small_run = 0;
        }
        if !mag.is_finite() {
            break;
        }
    }
    Err(Error::NonConvergence {
        terms: mags.len(),
        last_term: mags.last().map(|m| m.to_f64_lossy()).unwrap_or(f64::NAN),
    })
}
