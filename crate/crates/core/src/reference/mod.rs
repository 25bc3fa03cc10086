//! Independent ground-truth evaluators: a multiprecision quadrature of the
//! defining integral and the classical convergent power series.

mod berry_howls;
mod gauss;
mod mp;
mod oracle;

pub use berry_howls::{berry_howls_sum, BerryHowlsState};
pub use mp::MpComplex;
pub use oracle::{oracle_quadrature, truncation_radius, OracleConfig, OracleValue};
