use astro_float::BigFloat;

use super::mp::{log2_abs, Mp};

/// Gauss–Legendre nodes on `[−1, 1]`, positive half only (the rule is
/// symmetric), refined by Newton iteration at the working precision.
pub(crate) struct GaussLegendre {
    pub nodes: Vec<BigFloat>,
    pub weights: Vec<BigFloat>,
}

impl GaussLegendre {
    pub fn new(order: usize, mp: &Mp) -> Self {
        assert!(order % 2 == 0, "even order only");
        let half = order / 2;
        let mut nodes = Vec::with_capacity(half);
        let mut weights = Vec::with_capacity(half);
        let one = mp.f(1.0);
        for i in 0..half {
            let mut guess =
                (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
            for _ in 0..4 {
                let (p, dp) = legendre_f64(order, guess);
                guess -= p / dp;
            }
            let mut x = mp.f(guess);
            for _ in 0..12 {
                let (p, dp) = legendre_mp(order, &x, mp);
                let step = mp.div(&p, &dp);
                x = mp.sub(&x, &step);
                if step.is_zero() || log2_abs(&step) < -(mp.p as f64) + 2.0 {
                    break;
                }
            }
            let (_, dp) = legendre_mp(order, &x, mp);
            let w = mp.div(
                &mp.f(2.0),
                &mp.mul(&mp.sub(&one, &mp.mul(&x, &x)), &mp.mul(&dp, &dp)),
            );
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights }
    }
}

fn legendre_f64(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// `(P_n(x), P_n'(x))`
fn legendre_mp(n: usize, x: &BigFloat, mp: &Mp) -> (BigFloat, BigFloat) {
    let mut p0 = mp.f(1.0);
    let mut p1 = x.clone();
    for k in 1..n {
        let a = mp.mul(&mp.f((2 * k + 1) as f64), &mp.mul(x, &p1));
        let b = mp.mul(&mp.f(k as f64), &p0);
        let p2 = mp.div(&mp.sub(&a, &b), &mp.f((k + 1) as f64));
        p0 = p1;
        p1 = p2;
    }
    let num = mp.mul(&mp.f(n as f64), &mp.sub(&mp.mul(x, &p1), &p0));
    let den = mp.sub(&mp.mul(x, x), &mp.f(1.0));
    let dp = mp.div(&num, &den);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::super::mp::to_f64;
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let mp = Mp::new(192).unwrap();
        let rule = GaussLegendre::new(32, &mp);
        // ∫_{−1}^{1} x^{62} dx = 2/63, the highest even degree the 32-point rule is exact for
        let mut acc = mp.f(0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let p = x.powi(62, mp.p, astro_float::RoundingMode::ToEven);
            acc = mp.add(&acc, &mp.mul(&mp.f(2.0), &mp.mul(w, &p)));
        }
        let exact = mp.div(&mp.f(2.0), &mp.f(63.0));
        let err = mp.sub(&acc, &exact);
        assert!(log2_abs(&err) < -180.0, "err {}", to_f64(&err));
        // weights sum to 2
        let total = rule
            .weights
            .iter()
            .fold(mp.f(0.0), |a, w| mp.add(&a, &mp.mul(&mp.f(2.0), w)));
        assert!(log2_abs(&mp.sub(&total, &mp.f(2.0))) < -180.0);
    }
}
