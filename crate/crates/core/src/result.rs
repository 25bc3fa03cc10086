//! Result packaging shared by all evaluation routes.

use std::fmt;

use num_complex::Complex;

use crate::real::Real;

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MethodTag {
    SmallX,
    LargeX,
    LargeXY,
    ConvergentSeries,
    Quadrature,
}

impl MethodTag {
    pub const fn as_str(self) -> &'static str {
        match self {
            MethodTag::SmallX => "small_x",
            MethodTag::LargeX => "large_x",
            MethodTag::LargeXY => "large_xy",
            MethodTag::ConvergentSeries => "convergent_series",
            MethodTag::Quadrature => "quadrature",
        }
    }
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tagged note attached to a result.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// The rigorous remainder bound overflowed; the estimate is the first
    /// omitted term instead.
    BoundOverflow,
    /// Largest term magnitude divided by the magnitude of the sum.
    Cancellation { ratio: f64 },
    /// No candidate met the requested relative tolerance.
    ToleranceUnmet { requested: f64, achieved: f64 },
    /// Result comes from the quadrature oracle.
    OracleFallback { digits: u32 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::BoundOverflow => f.write_str("bound_overflow"),
            Warning::Cancellation { ratio } => write!(f, "cancellation:{ratio:.3e}"),
            Warning::ToleranceUnmet { requested, achieved } => {
                write!(f, "tolerance_unmet:{achieved:.3e}>{requested:.3e}")
            }
            Warning::OracleFallback { digits } => write!(f, "oracle_fallback:{digits}"),
        }
    }
}

/// Why a series evaluation stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// Two consecutive terms fell below the tolerance.
    Converged,
    /// The caller asked for a fixed number of terms.
    Requested,
    /// Stopped before the smallest term of a divergent series.
    OptimalTruncation,
    /// Hit the term limit.
    MaxTerms,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncationReport<T> {
    pub terms_used: usize,
    pub term_magnitudes: Vec<T>,
    pub stop: StopReason,
}

impl<T: Real> TruncationReport<T> {
    pub fn last_term(&self) -> T {
        self.term_magnitudes.last().copied().unwrap_or_else(T::zero)
    }

    pub fn max_term(&self) -> T {
        self.term_magnitudes
            .iter()
            .copied()
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Value of `P(x, y)` together with provenance and an error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult<T> {
    pub value: Complex<T>,
    pub method: MethodTag,
    pub terms_used: usize,
    /// Absolute error estimate. `None` only for oracle-backed results, which
    /// carry `oracle_digits` instead.
    pub error_estimate: Option<T>,
    pub oracle_digits: Option<u32>,
    pub warnings: Vec<Warning>,
}

impl<T: Real> EvalResult<T> {
    pub(crate) fn series(value: Complex<T>, method: MethodTag, terms: usize, err: T) -> Self {
        EvalResult {
            value,
            method,
            terms_used: terms,
            error_estimate: Some(err),
            oracle_digits: None,
            warnings: Vec::new(),
        }
    }

    /// Error estimate relative to `|value|`. Oracle results report zero.
    pub fn relative_estimate(&self) -> T {
        match self.error_estimate {
            Some(e) => e / self.value.norm(),
            None => T::zero(),
        }
    }
}
