//! Grid sweeps over `(x, y)` for region maps.

use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use pearcey::{oracle_quadrature, OracleConfig, SelectorPolicy};
use rayon::prelude::*;

use crate::eval::{run, Method};
use crate::format::full;
use crate::literal::render_complex;

/// `MIN:MAX:COUNT[@AMIN:AMAX:ACOUNT]`: `COUNT` moduli spaced geometrically
/// from `MIN` to `MAX` (linearly when `MIN` is 0) times `ACOUNT` arguments
/// spaced linearly from `AMIN` to `AMAX` (radians; a `pi` suffix multiplies
/// by π). The argument part defaults to `0:0:1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub modulus: (f64, f64, usize),
    pub argument: (f64, f64, usize),
}

fn value(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let (num, scale) = match s.strip_suffix("pi") {
        Some("") => ("1", std::f64::consts::PI),
        Some("-") => ("-1", std::f64::consts::PI),
        Some(n) => (n, std::f64::consts::PI),
        None => (s, 1.0),
    };
    match num.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v * scale),
        _ => Err(format!("invalid number '{s}'")),
    }
}

fn range(s: &str) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected MIN:MAX:COUNT, got '{s}'"));
    };
    let n: usize = n
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("invalid count '{n}'"))?;
    Ok((value(lo)?, value(hi)?, n))
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (m, a) = match s.split_once('@') {
            Some((m, a)) => (m, Some(a)),
            None => (s, None),
        };
        let modulus = range(m)?;
        let (lo, hi, n) = modulus;
        if lo < 0.0 || hi < 0.0 || (lo > 0.0 && hi == 0.0 && n > 1) {
            return Err(format!("moduli must be nonnegative and MAX > 0 when MIN > 0, got '{m}'"));
        }
        let argument = match a {
            Some(a) => range(a)?,
            None => (0.0, 0.0, 1),
        };
        Ok(GridSpec { modulus, argument })
    }
}

fn spaced(lo: f64, hi: f64, n: usize, geometric: bool) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            if i == n - 1 {
                hi
            } else if geometric {
                lo * (hi / lo).powf(t)
            } else {
                lo + (hi - lo) * t
            }
        })
        .collect()
}

impl GridSpec {
    /// Points in modulus-major order.
    pub fn points(&self) -> Vec<Complex64> {
        let (mlo, mhi, mn) = self.modulus;
        let (alo, ahi, an) = self.argument;
        let moduli = spaced(mlo, mhi, mn, mlo > 0.0);
        let args = spaced(alo, ahi, an, false);
        moduli
            .iter()
            .flat_map(|&r| args.iter().map(move |&a| if a == 0.0 { Complex64::new(r, 0.0) } else { Complex64::from_polar(r, a) }))
            .collect()
    }
}

pub fn header(with_oracle: bool) -> Vec<&'static str> {
    let mut h = vec!["x", "y", "method", "terms", "error_estimate", "value_re", "value_im"];
    if with_oracle {
        h.push("oracle_error");
    }
    h.push("error");
    h
}

/// Evaluates the grid (x outer, y inner) and writes CSV rows in that order.
/// Returns whether every row succeeded.
pub fn process<W: Write>(
    xs: &GridSpec,
    ys: &GridSpec,
    policy: &SelectorPolicy,
    oracle_digits: Option<u32>,
    out: W,
) -> Result<bool, String> {
    let grid: Vec<(Complex64, Complex64)> = xs
        .points()
        .into_iter()
        .flat_map(|x| ys.points().into_iter().map(move |y| (x, y)))
        .collect();
    let rows: Vec<(Vec<String>, bool)> = grid
        .par_iter()
        .map(|&(x, y)| {
            let mut row = vec![render_complex(x), render_complex(y)];
            let mut ok = true;
            match run(x, y, Method::Auto, None, policy) {
                Ok(r) => {
                    row.extend([
                        r.method.as_str().to_string(),
                        r.terms_used.to_string(),
                        r.error_estimate.map_or(String::new(), full),
                        full(r.value.re),
                        full(r.value.im),
                    ]);
                    if let Some(d) = oracle_digits {
                        match oracle_quadrature(x, y, &OracleConfig::with_digits(d)) {
                            Ok(o) => row.push(full(o.relative_error(r.value))),
                            Err(e) => {
                                row.push(String::new());
                                row.push(format!("oracle: {e}"));
                                return (row, false);
                            }
                        }
                    }
                    row.push(String::new());
                }
                Err(e) => {
                    row.extend(std::iter::repeat(String::new()).take(5 + oracle_digits.is_some() as usize));
                    row.push(e.to_string());
                    ok = false;
                }
            }
            (row, ok)
        })
        .collect();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(oracle_digits.is_some())).map_err(|e| e.to_string())?;
    for (r, _) in &rows {
        w.write_record(r).map_err(|e| e.to_string())?;
    }
    w.flush().map_err(|e| e.to_string())?;
    Ok(rows.iter().all(|(_, ok)| *ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs() {
        let g: GridSpec = "1:100:3".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 3);
        assert!((p[1].re - 10.0).abs() < 1e-12 && p[2] == Complex64::new(100.0, 0.0));
        let g: GridSpec = "2:2:1@0:0.5pi:3".parse().unwrap();
        let p = g.points();
        assert_eq!(p.len(), 3);
        assert!((p[2] - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        let g: GridSpec = "0:1:3".parse().unwrap();
        assert_eq!(g.points()[1], Complex64::new(0.5, 0.0));
        for bad in ["1:2", "1:2:0", "a:2:3", "1:2:3@0:1", "-1:2:3", "1:2:3@x:1:2"] {
            assert!(bad.parse::<GridSpec>().is_err(), "{bad}");
        }
    }
}
