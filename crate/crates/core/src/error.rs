use thiserror::Error;

/// Errors produced by the evaluation routines.
///
/// Magnitudes are carried as `f64` regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{method} expansion is not valid here: {reason}")]
    Region { method: &'static str, reason: String },

    #[error("series did not converge after {terms} terms (last term magnitude {last_term:e})")]
    NonConvergence { terms: usize, last_term: f64 },

    #[error("oracle quadrature did not converge: {0}")]
    OracleConvergence(String),

    #[error("|P| exceeds the double-precision range (log10 |P| ≈ {log10_magnitude:.1})")]
    Overflow { log10_magnitude: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
