//! Scalar special-function kernel used by the expansions.

mod gamma;
mod hermite;
mod hypergeometric;
mod kummer;

pub use gamma::gamma_real;
pub use hermite::{hermite_scaled, hermite_scaled_sequence};
pub use hypergeometric::{hyp_pfq, HypergeometricParams};
pub use kummer::kummer_m_negint;
