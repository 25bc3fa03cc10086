//! Evaluation of the Pearcey integral
//!
//! ```text
//! P(x, y) = ∫₀^∞ e^{−t⁴ − xt²} cos(yt) dt
//! ```
//!
//! for complex `x` and `y`, through three expansions with error estimates:
//!
//! - [`small_x`]: a convergent series in powers of `x` with ₁F₃ coefficients,
//! - [`large_x`]: an asymptotic series in `x^{−2}` with Hermite coefficients,
//! - [`large_xy`]: an asymptotic series for large `x` and `y` with `y/x` bounded,
//!
//! plus two independent references in [`reference`] (a multiprecision
//! quadrature oracle and the classical convergent power series) and an
//! automatic selector in [`evaluator`].
//!
//! The numerical core is generic over [`Real`]; the aliases below fix it to
//! `f64`.

pub mod error;
pub mod evaluator;
pub mod large_x;
pub mod large_xy;
pub mod numerics;
pub mod real;
pub mod reference;
pub mod result;
pub mod small_x;
pub mod tables;

pub use error::{Error, Result};
pub use evaluator::{
    evaluate, evaluate_method, optimal_truncation, pearcey_oscillatory, PrecisionConfig,
    SelectorPolicy,
};
pub use large_x::{bound_large_x, choose_sigma, eval_large_x, term_large_x, term_large_x_kummer};
pub use large_xy::{coeff_an, eval_large_xy, validity_large_xy};
pub use real::Real;
pub use reference::{berry_howls_sum, oracle_quadrature, OracleConfig, OracleValue};
pub use result::{EvalResult, MethodTag, StopReason, TruncationReport, Warning};
pub use small_x::{bound_small_x, coeff_pk, eval_small_x};

/// Double-precision complex number, the library's working type.
pub type Complex64 = num_complex::Complex<f64>;
/// Result of a double-precision evaluation.
pub type EvalResult64 = EvalResult<f64>;
pub type TruncationReport64 = TruncationReport<f64>;
