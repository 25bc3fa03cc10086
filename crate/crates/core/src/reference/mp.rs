use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_complex::Complex;

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working-precision context for multiprecision arithmetic.
pub(crate) struct Mp {
    pub p: usize,
    cc: Consts,
}

impl Mp {
    pub fn new(bits: usize) -> Result<Self> {
        let cc = Consts::new()
            .map_err(|e| Error::OracleConvergence(format!("constant cache: {e:?}")))?;
        Ok(Mp { p: bits, cc })
    }

    #[inline]
    pub fn f(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    #[inline]
    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    #[inline]
    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    #[inline]
    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    #[inline]
    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    #[inline]
    pub fn recip(&self, a: &BigFloat) -> BigFloat {
        a.reciprocal(self.p, RM)
    }

    #[inline]
    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.p, RM)
    }

    #[inline]
    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.p, RM, &mut self.cc)
    }

    #[inline]
    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.p, RM, &mut self.cc)
    }

    #[inline]
    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.p, RM, &mut self.cc)
    }

    /// `(sin a, cos a)` with one transcendental call: the smaller of the two
    /// is computed directly, the larger (at least 1/√2 in modulus) from
    /// `√(1 − s²)` with its sign read off a double-precision estimate.
    pub fn sin_cos(&mut self, a: &BigFloat) -> (BigFloat, BigFloat) {
        let approx = approx_f64(a);
        let (s0, c0) = approx.sin_cos();
        let complement = |mp: &Self, v: &BigFloat, negative: bool| {
            let r = mp.sqrt(&mp.f(1.0).sub(&mp.mul(v, v), mp.p, RM));
            if negative {
                r.neg()
            } else {
                r
            }
        };
        if !approx.is_finite() || s0.abs().max(c0.abs()) < 0.7 {
            return (self.sin(a), self.cos(a));
        }
        if s0.abs() <= c0.abs() {
            let s = self.sin(a);
            let c = complement(self, &s, c0 < 0.0);
            (s, c)
        } else {
            let c = self.cos(a);
            let s = complement(self, &c, s0 < 0.0);
            (s, c)
        }
    }

    pub fn cadd(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn csub(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn cscale(&self, a: &MpComplex, s: &BigFloat) -> MpComplex {
        MpComplex {
            re: self.mul(&a.re, s),
            im: self.mul(&a.im, s),
        }
    }

    pub fn cnorm(&self, a: &MpComplex) -> BigFloat {
        self.sqrt(&self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im)))
    }

    pub fn czero(&self) -> MpComplex {
        MpComplex {
            re: self.f(0.0),
            im: self.f(0.0),
        }
    }

    pub fn cfrom(&self, z: Complex<f64>) -> MpComplex {
        MpComplex {
            re: self.f(z.re),
            im: self.f(z.im),
        }
    }
}

/// Approximate `log2 |v|`; `-∞` for zero.
pub(crate) fn log2_abs(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    // mantissa in [½, 1): log2|v| ∈ [e−1, e)
    match v.exponent() {
        Some(e) => e as f64 - 0.5,
        None => f64::NAN,
    }
}

/// `v` to roughly double precision from its leading mantissa word.
pub(crate) fn approx_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    match v.as_raw_parts() {
        Some((words, _, sign, exponent, _)) if !words.is_empty() => {
            let top = *words.last().unwrap_or(&0) as f64;
            let word_bits = (std::mem::size_of_val(&words[0]) * 8) as i32;
            let m = top * 2f64.powi(-word_bits);
            let r = m * 2f64.powi(exponent);
            if sign.is_negative() {
                -r
            } else {
                r
            }
        }
        _ => f64::NAN,
    }
}

/// Nearest `f64` to `v` (correctly rounded decimal conversion).
pub(crate) fn to_f64(v: &BigFloat) -> f64 {
    if v.is_zero() {
        return 0.0;
    }
    v.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Complex number at oracle precision.
#[derive(Debug, Clone)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    /// Rounds to double precision. Fails with [`Error::Overflow`] when a
    /// component exceeds the `f64` range.
    pub fn to_complex64(&self) -> Result<Complex<f64>> {
        let z = Complex::new(to_f64(&self.re), to_f64(&self.im));
        if z.re.is_finite() && z.im.is_finite() {
            Ok(z)
        } else {
            Err(Error::Overflow {
                log10_magnitude: self.log10_abs(),
            })
        }
    }

    /// Approximate `log10 |z|`.
    pub fn log10_abs(&self) -> f64 {
        let l = log2_abs(&self.re).max(log2_abs(&self.im));
        l * std::f64::consts::LOG10_2
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_cos_matches_direct_in_every_quadrant() {
        let mut mp = Mp::new(200).unwrap();
        for a in [0.3, 1.2, 2.0, 3.0, -0.9, -2.5, 4.4, 1000.25, 1e-30] {
            let v = mp.f(a);
            let (s, c) = mp.sin_cos(&v);
            let (s1, c1) = (mp.sin(&v), mp.cos(&v));
            let ds = mp.sub(&s, &s1).abs();
            let dc = mp.sub(&c, &c1).abs();
            assert!(log2_abs(&ds) < -190.0 || ds.is_zero(), "sin {a}");
            assert!(log2_abs(&dc) < -190.0 || dc.is_zero(), "cos {a}");
        }
    }

    #[test]
    fn approximate_conversion() {
        let mp = Mp::new(128).unwrap();
        for v in [1.0, -3.75, 1e-200, 6.02e23] {
            assert!((approx_f64(&mp.f(v)) - v).abs() <= 1e-15 * v.abs());
        }
        assert_eq!(approx_f64(&mp.f(0.0)), 0.0);
    }
}
