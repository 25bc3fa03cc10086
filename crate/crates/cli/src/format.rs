//! Number formatting for human and machine output.

use num_complex::Complex64;

/// `v` with `digits` significant digits, in exponent form outside
/// `[1e-4, 1e6)`.
pub fn sig(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    if v == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let exp = v.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        // rounding may carry into a new leading digit
        let shown = s.trim_start_matches(['-', '0', '.']);
        if shown.chars().filter(char::is_ascii_digit).count() > digits && decimals > 0 {
            return format!("{v:.*}", decimals - 1);
        }
        s
    } else {
        format!("{v:.*e}", digits - 1)
    }
}

pub fn complex_sig(z: Complex64, digits: usize) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sig(z.re, digits), sig(z.im.abs(), digits))
}

/// Round-trip form with 17 significant digits.
pub fn full(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.9064024770554771, 6), "0.906402");
        assert_eq!(sig(0.9064024770554771, 10), "0.9064024771");
        assert_eq!(sig(123.456789, 6), "123.457");
        assert_eq!(sig(9.9999999, 6), "10.0000");
        assert_eq!(sig(1.766e-3, 6), "0.00176600");
        assert_eq!(sig(3.885e-14, 6), "3.88500e-14");
        assert_eq!(sig(-2.5e7, 3), "-2.50e7");
        assert_eq!(sig(0.0, 6), "0");
    }

    #[test]
    fn full_precision_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.2250738585072014e-308, 6.02214076e23] {
            assert_eq!(full(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }
}
