mod common;

use common::{abs_error, c, oracle, rng, C};
use pearcey::large_x::LargeXContext;
use pearcey::tables::TableId;
use pearcey::{bound_large_x, choose_sigma, eval_large_x, term_large_x, term_large_x_kummer};
use proptest::prelude::*;
use std::f64::consts::PI;

proptest! {
    #[test]
    fn hermite_and_kummer_terms_agree(
        r in 1.0..50.0f64,
        theta in -0.74 * PI..0.74 * PI,
        yr in -10.0..10.0f64,
        yi in -10.0..10.0f64,
        k in 0usize..=6,
    ) {
        let x = C::from_polar(r, theta);
        let y = c(yr, yi);
        let h = term_large_x(x, y, k).unwrap();
        let m = term_large_x_kummer(x, y, k).unwrap();
        let scale = h.norm().max(m.norm());
        prop_assert!((h - m).norm() <= 1e-11 * scale, "{} vs {}", h, m);
    }
}

#[test]
fn remainder_is_order_x_to_the_minus_2n() {
    for theta in [0.0, PI / 4.0] {
        for alpha in [c(1.0, 0.0), c(0.5, 0.5)] {
            for n in 1..=3 {
                let scaled: Vec<f64> = [10.0, 100.0, 1000.0]
                    .iter()
                    .map(|&m: &f64| {
                        let x = C::from_polar(m, theta);
                        let y = alpha * x.sqrt();
                        let truth = oracle(x, y, 40);
                        let rel = truth.relative_error(eval_large_x(x, y, n).unwrap().value);
                        rel * m.powi(2 * n as i32)
                    })
                    .collect();
                for s in &scaled[1..] {
                    assert!(*s <= 2.0 * scaled[0], "arg {theta}, α = {alpha}, n = {n}: {scaled:?}");
                }
            }
        }
    }
}

#[test]
fn bound_dominates_on_table_points() {
    for p in TableId::LargeX.points() {
        let (x, y) = (C::from(p.x), C::from(p.y));
        let truth = oracle(x, y, 50);
        let ctx = LargeXContext::new(x, y).unwrap();
        for n in 1..=5 {
            let Ok(b) = bound_large_x(x, y, n, ctx.sigma) else {
                continue;
            };
            if !b.is_finite() {
                continue;
            }
            let measured = abs_error(&truth, eval_large_x(x, y, n).unwrap().value);
            let bound = b * ctx.prefactor.norm();
            assert!(measured <= bound, "{} n = {n}: |R| = {measured:e} > {bound:e}", p.label);
        }
    }
}

#[test]
fn bound_examples_dominate() {
    for (x, y, n) in [(c(20.0, 0.0), c(1.0, 0.0), 2), (c(0.0, 30.0), c(0.0, -1.0), 1)] {
        let truth = oracle(x, y, 40);
        let ctx = LargeXContext::new(x, y).unwrap();
        let bound = bound_large_x(x, y, n, ctx.sigma).unwrap() * ctx.prefactor.norm();
        let measured = abs_error(&truth, eval_large_x(x, y, n).unwrap().value);
        assert!(bound.is_finite() && measured <= bound, "x = {x}: {measured:e} > {bound:e}");
    }
}

#[test]
fn term_magnitudes_fall_then_rise() {
    for p in TableId::LargeX.points() {
        let ctx = LargeXContext::new(C::from(p.x), C::from(p.y)).unwrap();
        let mags: Vec<f64> = ctx.terms(10).iter().map(|t| t.norm()).collect();
        let turn = mags.windows(2).position(|w| w[1] > w[0]).unwrap_or(mags.len());
        assert!(
            mags[turn..].windows(2).all(|w| w[1] >= w[0]),
            "{}: {mags:?}",
            p.label
        );
    }
}

#[test]
fn value_does_not_depend_on_sigma() {
    let mut r = rng(21);
    use rand::Rng;
    for _ in 0..20 {
        let x = C::from_polar(r.gen_range(5.0..100.0), r.gen_range(-0.3..0.3));
        let y = c(r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let value = eval_large_x(x, y, 4).unwrap().value;
        let ctx = LargeXContext::new(x, y).unwrap();
        let mut other = ctx.clone();
        other.sigma = choose_sigma(x).unwrap() + 0.05;
        let sum = |ctx: &LargeXContext<f64>| ctx.prefactor * ctx.terms(4).iter().sum::<C>();
        assert_eq!(sum(&ctx), value);
        assert_eq!(sum(&other), value);
        let truth = oracle(x, y, 30);
        let measured = abs_error(&truth, value);
        for sigma in [ctx.sigma, other.sigma] {
            let b = bound_large_x(x, y, 4, sigma).unwrap() * ctx.prefactor.norm();
            assert!(measured <= b + 8.0 * f64::EPSILON * value.norm(), "x = {x}, σ = {sigma}");
        }
    }
}

#[test]
fn table_examples() {
    let cases = [(c(20.0, 0.0), c(1.0, 0.0), 1, 0.001766), (c(0.0, 100.0), c(2.0, -1.0), 4, 3.885e-14)];
    for (x, y, n, printed) in cases {
        let truth = oracle(x, y, 50);
        let rel = truth.relative_error(eval_large_x(x, y, n).unwrap().value);
        assert!(rel / printed <= 1.02 && printed / rel <= 1.02, "x = {x}: {rel:e} vs {printed:e}");
    }
}
