//! Complex literals: `a`, `bi`, `a+bi`, `a-bi` and `(a,b)`.

use num_complex::Complex64;

/// Parses a complex literal. Both parts must be finite decimals; a bare `i`
/// stands for `1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| format!("expected (re,im), got '{t}'"))?;
        return Ok(Complex64::new(real(a, t)?, real(b, t)?));
    }
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex64::new(real(t, t)?, 0.0));
    };
    // the imaginary part starts at the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (real(&body[..k], t)?, imaginary(&body[k..], t)?),
        None => (0.0, imaginary(body, t)?),
    };
    Ok(Complex64::new(re, im))
}

fn imaginary(s: &str, whole: &str) -> Result<f64, String> {
    match s.trim() {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        v => real(v, whole),
    }
}

fn real(s: &str, whole: &str) -> Result<f64, String> {
    let s = s.trim();
    let ok = !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'));
    match s.parse::<f64>() {
        Ok(v) if ok && v.is_finite() => Ok(v),
        _ => Err(format!("invalid complex literal '{whole}'")),
    }
}

/// Renders `z` as `a+bi` / `a-bi` with the shortest digits that parse back
/// to the same bits.
pub fn render_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:?}{sign}{:?}i", z.re, z.im.abs())
}
