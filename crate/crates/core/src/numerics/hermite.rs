use num_complex::Complex;

use crate::real::Real;

/// `h_n(z) = 2^{−n} H_n(z)` by the scaled three-term recurrence
/// `h_{n+1} = z h_n − (n/2) h_{n−1}`.
pub fn hermite_scaled<T: Real>(n: usize, z: Complex<T>) -> Complex<T> {
    *hermite_scaled_sequence(n, z)
        .last()
        .expect("sequence holds n + 1 values")
}

/// `[h_0(z), …, h_n(z)]`.
pub fn hermite_scaled_sequence<T: Real>(n: usize, z: Complex<T>) -> Vec<Complex<T>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Complex::new(T::one(), T::zero()));
    if n == 0 {
        return out;
    }
    out.push(z);
    let half = T::lit(0.5);
    for k in 1..n {
        let next = z * out[k] - out[k - 1] * (T::from_usize(k) * half);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn low_orders() {
        let z = C::new(0.3, -1.1);
        assert_eq!(hermite_scaled(0, z), C::new(1.0, 0.0));
        assert_eq!(hermite_scaled(1, z), z);
        assert_eq!(hermite_scaled(4, C::new(0.0, 0.0)), C::new(0.75, 0.0));
    }

    #[test]
    fn order_eight_at_one_plus_i() {
        // H_8(1+i) = 256·(−187.4375 + 7i), expanded exactly from the unscaled recurrence.
        let h = hermite_scaled(8, C::new(1.0, 1.0));
        assert!((h - C::new(-187.4375, 7.0)).norm() < 1e-12);
    }

    #[test]
    fn matches_explicit_h4() {
        // H_4(z) = 16z⁴ − 48z² + 12
        let z = C::new(-0.7, 2.3);
        let explicit = (z.powi(4) * 16.0 - z * z * 48.0 + 12.0) / 16.0;
        assert!((hermite_scaled(4, z) - explicit).norm() < 1e-12 * explicit.norm());
    }
}
