use std::f64::consts::PI;

use isoprofile::comparison::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn brute_force(v: f64, n: usize) -> (f64, f64) {
    let hi = 4.0 * PI;
    (1..=n)
        .map(|k| {
            let x = hi * k as f64 / n as f64;
            (product_objective(v, x), x)
        })
        .fold((f64::INFINITY, 0.0), |a, b| if b.0 < a.0 { b } else { a })
}

#[test]
fn minimizer_agrees_with_dense_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let n = 1_000_000;
    for _ in 0..20 {
        let v = rng.random_range(0.5f64..1e4);
        let m = product_minimum(v).unwrap();
        let (value, x) = brute_force(v, n);
        assert!((m.value - value).abs() / value <= 1e-8, "v = {v}: {} vs {value}", m.value);
        assert!(m.value <= value * (1.0 + 1e-15), "optimiser worse than scan at v = {v}");
        assert!((m.x - x).abs() <= 4.0 * PI / n as f64 * 2.0 || v >= 16.0 && x == 4.0 * PI, "argmin at v = {v}");
    }
}

#[test]
fn sqrt_bound_holds_on_grid() {
    let c = certify_product_bound(1000, 1e4, 10_000).unwrap();
    assert!(c.pass, "{}", c.report());
    for v in [16.0, 100.0, 9999.0] {
        assert!((morgan_product_bound(v).unwrap() - sqrt_bound(v)).abs() / sqrt_bound(v) < 1e-12);
    }
}

#[test]
fn auxiliary_exceeds_four_pi_inside() {
    let hi = 4.0 * PI;
    for k in 1..10_000 {
        let x = hi * k as f64 / 10_000.0;
        assert!(morgan_auxiliary(x) > hi, "g({x}) = {}", morgan_auxiliary(x));
    }
    assert!((morgan_auxiliary(hi) - hi).abs() < 1e-12);
}

#[test]
fn below_sixteen_the_minimum_is_interior() {
    let m = product_minimum(5.0).unwrap();
    assert!(m.x < 4.0 * PI - 1e-3);
    assert!(morgan_product_bound(5.0).unwrap() < sqrt_bound(5.0) * 1.5);
}
