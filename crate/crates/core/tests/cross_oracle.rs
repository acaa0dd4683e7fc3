use std::f64::consts::PI;

use isoprofile::cylinder::*;
use isoprofile::profile::Profile;
use isoprofile::sphere::*;

fn etas() -> impl Iterator<Item = f64> {
    (0..50).map(|k| 0.05 + (PI - 0.1) * k as f64 / 49.0)
}

#[test]
fn radial_integrals_match_closed_forms_n2() {
    let mut worst: f64 = 0.0;
    for eta in etas() {
        let q = ball_region_integral(2, eta).unwrap();
        let c = ball_region_closed_n2(mean_curvature(2, eta).unwrap()).unwrap();
        let ea = (q.boundary_area - c.boundary_area).abs() / c.boundary_area;
        let ev = (q.volume - c.volume).abs() / c.volume;
        worst = worst.max(ea).max(ev);
        assert!(ea <= 1e-9 && ev <= 1e-9, "eta = {eta}: area err {ea:e}, volume err {ev:e}");
    }
    println!("worst relative disagreement {worst:e}");
}

#[test]
fn small_regions_approach_euclidean_balls() {
    // as η → 0 the region is a ball of radius η in a 3-manifold
    for eta in [1e-2, 3e-3] {
        let r = ball_region_integral(2, eta).unwrap();
        let ball = 4.0 / 3.0 * PI * eta.powi(3);
        assert!((r.volume / ball - 1.0).abs() < eta, "eta = {eta}");
        assert!((r.boundary_area / (4.0 * PI * eta * eta) - 1.0).abs() < eta);
    }
}

#[test]
fn near_pi_regions_fill_two_cross_sections() {
    let r = ball_region_integral(3, PI - 1e-3).unwrap();
    let cross = unit_sphere_volume(3);
    assert!((r.boundary_area / (2.0 * cross) - 1.0).abs() < 0.05);
}

#[test]
fn u_ratio_endpoints_and_monotonicity() {
    for n in [2, 3] {
        for eta in [0.5, 1.5, 3.0] {
            assert_eq!(u_ratio(n, eta, 0.0).unwrap(), 0.0);
            assert_eq!(u_ratio(n, eta, eta).unwrap(), 1.0);
            let mut prev = 0.0;
            for k in 1..=100 {
                let u = u_ratio(n, eta, eta * k as f64 / 100.0).unwrap();
                assert!(u >= prev - 1e-15 && u <= 1.0 + 1e-15);
                prev = u;
            }
        }
    }
    assert!(u_ratio(2, 1.0, 1.5).is_err());
    assert!(mean_curvature(4, 1.0).is_err());
    assert!(mean_curvature(2, PI).is_err());
}

#[test]
fn thresholds() {
    let t2 = flatten_threshold(2).unwrap();
    assert!((t2.eta0 - 1.97).abs() <= 0.01, "eta0 = {}", t2.eta0);
    assert!((t2.h0 - 0.66).abs() <= 0.01, "h0 = {}", t2.h0);
    assert!((t2.flat_area - 8.0 * PI).abs() < 1e-12);
    assert!((t2.v_threshold - 16.6566).abs() < 1e-3, "v_threshold = {}", t2.v_threshold);
    let t3 = flatten_threshold(3).unwrap();
    assert!((t3.eta0 - 1.9).abs() <= 0.05, "x0 = {}", t3.eta0);
    let flat = 8.0 * 2f64.sqrt() * PI * PI;
    assert!((t3.flat_area - flat).abs() / flat <= 1e-9);
    assert!(t3.v_threshold <= 83.5, "v0 = {}", t3.v_threshold);
}

#[test]
fn profiles_are_monotone_up_to_the_flat_part() {
    let p = profile_s2xr().unwrap();
    let (lo, hi) = Profile::domain(&p);
    let n = 400;
    let mut prev = 0.0;
    for k in 1..=n {
        let v = lo + (hi.min(60.0) - lo) * k as f64 / n as f64;
        let a = p.area(v).unwrap();
        assert!(a >= prev - 1e-9, "not monotone at {v}");
        assert!(a <= 8.0 * PI + 1e-9);
        prev = a;
    }
    assert!((p.area(50.0).unwrap() - 8.0 * PI).abs() < 1e-12);
}

#[test]
fn sphere_profiles_are_symmetric() {
    for s in [SphereSpec::s3_3(), SphereSpec::s4_scaled(1.1).unwrap()] {
        let p = s.profile().unwrap();
        let total = s.total_volume();
        for frac in [0.05, 0.2, 0.4] {
            let a = p.area(frac * total).unwrap();
            let b = p.area((1.0 - frac) * total).unwrap();
            assert!((a - b).abs() / a < 1e-9, "{frac}: {a} vs {b}");
        }
    }
    assert!((s4_total_volume(isoprofile::constants::EPS_DEFAULT) - 438.2337).abs() < 1e-3);
    assert!((s4_max_area(isoprofile::constants::EPS_DEFAULT) - 162.7076).abs() < 1e-3);
}
