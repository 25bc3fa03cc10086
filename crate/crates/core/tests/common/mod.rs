#![allow(dead_code)]

use num_complex::Complex64;
use pearcey::{oracle_quadrature, OracleConfig, OracleValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn oracle(x: C, y: C, digits: u32) -> OracleValue {
    oracle_quadrature(x, y, &OracleConfig::with_digits(digits)).expect("oracle converges")
}

/// `|approx − P|` resolved at oracle precision.
pub fn abs_error(truth: &OracleValue, approx: C) -> f64 {
    truth.relative_error(approx) * truth.to_complex64().expect("finite").norm()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point in the disc `|z| ≤ r`.
pub fn disc(rng: &mut ChaCha8Rng, r: f64) -> C {
    C::from_polar(
        r * rng.gen::<f64>().sqrt(),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}
