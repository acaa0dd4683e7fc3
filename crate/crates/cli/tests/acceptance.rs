//! Acceptance criteria, one line of output per criterion.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use isoprofile::certificate::Certificate;
use isoprofile::comparison::*;
use isoprofile::constants::{comparison_constant, yamabe_ratio, EPS_DEFAULT};
use isoprofile::cylinder::{ball_region_closed_n2, ball_region_integral, flatten_threshold, mean_curvature};
use isoprofile::radial::{DomainTag, RadialTestFunction};
use isoprofile::series::QSqrt2;
use isoprofile::small_volume::*;
use isoprofile::yamabe::{analyze_suite, random_test_functions, yamabe_functional, SYMMETRIZE_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn find<'a>(c: &'a Certificate, id: &str) -> Result<&'a Certificate, String> {
    c.flatten()
        .into_iter()
        .find(|x| x.id == id)
        .ok_or_else(|| format!("certificate '{id}' missing"))
}

fn c1_constants() -> Check {
    let c = comparison_constant(EPS_DEFAULT);
    let c2 = c * c;
    let id = (c2 - yamabe_ratio(EPS_DEFAULT)).abs();
    ensure((0.8245..=0.8255).contains(&c), format!("c = {c}"))?;
    ensure((0.679..=0.681).contains(&c2), format!("c^2 = {c2}"))?;
    ensure(c2 > 2.0 / 3.0, "c^2 <= 2/3")?;
    ensure(id <= 1e-14, format!("identity error {id:e}"))?;
    Ok(format!("c = {c:.6}, c^2 = {c2:.6}, identity error {id:.1e}"))
}

fn c2_thresholds() -> Check {
    let t2 = flatten_threshold(2).map_err(|e| e.to_string())?;
    let t3 = flatten_threshold(3).map_err(|e| e.to_string())?;
    let flat = 8.0 * 2f64.sqrt() * PI * PI;
    ensure((t2.eta0 - 1.97).abs() <= 0.01, format!("eta0 = {}", t2.eta0))?;
    ensure((t2.h0 - 0.66).abs() <= 0.01, format!("h0 = {}", t2.h0))?;
    ensure((t3.eta0 - 1.9).abs() <= 0.05, format!("x0 = {}", t3.eta0))?;
    ensure((t3.flat_area - flat).abs() / flat <= 1e-9, format!("flat value {}", t3.flat_area))?;
    ensure(t3.v_threshold <= 83.5, format!("v0 = {}", t3.v_threshold))?;
    Ok(format!(
        "eta0 = {:.5}, h0 = {:.5}, x0 = {:.5}, v0 = {:.4}",
        t2.eta0, t2.h0, t3.eta0, t3.v_threshold
    ))
}

fn c3_series() -> Check {
    let s = SmallVolumeSeries::compute();
    let q = QSqrt2::rational;
    let pair = QSqrt2::pair;
    let r2 = QSqrt2::sqrt2_multiple;
    let printed = [
        ("A", &s.area_cyl, vec![(2, q(16, 1)), (4, q(-64, 3)), (6, q(128, 5)), (8, q(-1024, 35))]),
        ("V", &s.volume_cyl, vec![(3, q(32, 3)), (5, q(-256, 15)), (7, q(768, 35)), (9, q(-8192, 315))]),
        ("a(r)", &s.area_sphere_r, vec![(2, q(8, 1)), (4, q(-8, 3)), (6, q(16, 45)), (8, q(-8, 315))]),
        (
            "v(r)",
            &s.volume_sphere_r,
            vec![(3, r2(8, 3)), (5, r2(-8, 15)), (7, r2(16, 315)), (9, r2(-8, 2835))],
        ),
        (
            "a(x)",
            &s.area_sphere_x,
            vec![(2, q(16, 1)), (4, q(-352, 15)), (6, pair(5056, 225, 88, 5)), (8, pair(-5504, 315, -2288, 75))],
        ),
        (
            "v(x)",
            &s.volume_sphere_x,
            vec![
                (3, q(32, 3)),
                (5, q(-256, 15)),
                (7, pair(22784, 1575, 88, 5)),
                (9, pair(-699904, 70875, -1936, 75)),
            ],
        ),
    ];
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for (name, series, coeffs) in &printed {
        for (p, c) in coeffs {
            let e = series.coeff(*p).relative_error(c);
            worst = worst.max(e);
            ensure(e <= 1e-12, format!("{name} x^{p}: {} vs {c}", series.coeff(*p)))?;
            count += 1;
        }
    }
    let cert = certify_small_volume_s2xr();
    let area = find(&cert, "area-gap")?;
    let volume = find(&cert, "volume-gap")?;
    ensure(area.pass, format!("A - a >= 3x^4 fails: margin {}", area.worst_margin))?;
    ensure(volume.pass, format!("v - V >= 51x^7 fails: margin {}", volume.worst_margin))?;
    let (_, v) = series_a_v_n2();
    let v02 = v.enclosure(0.2).0;
    ensure(v02 > 0.25, format!("V(0.2) lower bound {v02}"))?;
    Ok(format!(
        "{count} coefficients exact (max rel err {worst:.0e}); (A-a)/x^4 - 3 >= {:.3}, (v-V)/x^7 - 51 >= {:.3}; V(0.2) >= {v02:.6}",
        area.worst_margin, volume.worst_margin
    ))
}

fn c4_anchors() -> Check {
    let (v1, a1) = s3xr_anchor_values().map_err(|e| e.to_string())?;
    let r = euclidean_ratio_4d();
    let c = comparison_constant(EPS_DEFAULT);
    ensure(v1 < 15.0, format!("4V(1) = {v1}"))?;
    ensure(a1 > 39.0, format!("2^(3/2)A(1) = {a1}"))?;
    ensure(r < 6.0, format!("2^(7/4) sqrt(pi) = {r}"))?;
    ensure(c < 5.0 / 6.0, format!("c = {c}"))?;
    let cert = certify_small_volume_s3xr(EPS_DEFAULT).map_err(|e| e.to_string())?;
    ensure(cert.pass, cert.report())?;
    Ok(format!("4V(1) = {v1:.4}, 2^(3/2)A(1) = {a1:.4}, 2^(7/4)sqrt(pi) = {r:.6}, c = {c:.6}"))
}

fn stable(c: &Certificate, coarse: &str, fine: &str) -> Result<(f64, f64), String> {
    let a = find(c, coarse)?;
    let b = find(c, fine)?;
    ensure(a.pass && b.pass, format!("{coarse}: coarse {} refined {}", a.worst_margin, b.worst_margin))?;
    ensure(a.worst_margin > 0.0, format!("{coarse}: margin {} not positive", a.worst_margin))?;
    let d = margin_drift(a.worst_margin, b.worst_margin);
    ensure(d <= 0.1, format!("{coarse}: drift {d}"))?;
    Ok((a.worst_margin, d))
}

fn c5_grids() -> Check {
    let cfg = ComparisonConfig::new(EPS_DEFAULT);
    let p = ComparisonProfiles::new(EPS_DEFAULT).map_err(|e| e.to_string())?;
    let f1 = certify_s2xr_over_s3(&p, &cfg).map_err(|e| e.to_string())?;
    let f2 = certify_s3xr_over_s4(&p, &cfg).map_err(|e| e.to_string())?;
    let lv = certify_large_volume(&p, &cfg).map_err(|e| e.to_string())?;
    let grid = find(&f1, "figure1-grid")?;
    ensure(grid.worst_margin > 0.0, format!("figure 1 grid margin {}", grid.worst_margin))?;
    ensure(find(&f1, "figure1-cap")?.pass, "figure 1 cap closure fails")?;
    let (m1, d1) = stable(&f1, "figure1-branch", "figure1-branch-refined")?;
    let (m2, d2) = stable(&f2, "figure2", "figure2-refined")?;
    let (m3, d3) = stable(&lv, "chord", "chord-refined")?;
    let tail = find(&lv, "chord-tail")?;
    ensure(tail.pass, format!("chord tail margin {}", tail.worst_margin))?;
    ensure(f1.pass && f2.pass && lv.pass, "comparison certificate failed")?;
    Ok(format!(
        "figure1 min {:.3e} at {:.3}; branch {m1:.3e} (drift {d1:.1e}); figure2 {m2:.4} (drift {d2:.1e}); chord {m3:.4} (drift {d3:.1e}); tail {:.4}",
        grid.worst_margin,
        grid.worst_at.unwrap_or(f64::NAN),
        tail.worst_margin
    ))
}

fn c6_product() -> Check {
    let cert = certify_product_bound(1000, 1e4, 100_000).map_err(|e| e.to_string())?;
    ensure(cert.pass, cert.report())?;
    let g = find(&cert, "auxiliary-g")?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let n = 1_000_000;
    let hi = 4.0 * PI;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let v = rng.random_range(16.0f64..1e4);
        let m = product_minimum(v).map_err(|e| e.to_string())?;
        let scan = (1..=n)
            .map(|k| product_objective(v, hi * k as f64 / n as f64))
            .fold(f64::INFINITY, f64::min);
        let e = (m.value - scan).abs() / scan;
        worst = worst.max(e);
        ensure(e <= 1e-8, format!("v = {v}: optimiser {} vs scan {scan}", m.value))?;
    }
    Ok(format!(
        "sqrt bound on 1000 points of [16, 1e4]; scan agreement {worst:.1e} at 20 volumes; g - 4pi >= {:.3e} inside",
        g.worst_margin
    ))
}

fn c7_suite() -> Check {
    let fs = random_test_functions(2024, 20);
    let analyses = analyze_suite(&fs, EPS_DEFAULT, SYMMETRIZE_TOL).map_err(|e| e.to_string())?;
    let multi = analyses.iter().filter(|a| a.layers.len() > 1).count();
    ensure(multi > 0, "no multi-layer function in the suite")?;
    let mut norm: f64 = 0.0;
    let mut add: f64 = 0.0;
    let mut coarea: f64 = 0.0;
    let mut margin = f64::INFINITY;
    for (i, a) in analyses.iter().enumerate() {
        norm = norm.max(a.norm_error);
        add = add.max(a.additivity_error);
        coarea = coarea.max(a.coarea_error);
        margin = margin.min(a.yamabe_margin);
        ensure(a.norm_error <= 1e-6, format!("function {}: norm error {:e}", i + 1, a.norm_error))?;
        ensure(a.additivity_error <= 1e-6, format!("function {}: additivity {:e}", i + 1, a.additivity_error))?;
        ensure(a.coarea_error <= 1e-5, format!("function {}: coarea {:e}", i + 1, a.coarea_error))?;
        ensure(a.yamabe_margin > 0.0, format!("function {}: Yamabe margin {:e}", i + 1, a.yamabe_margin))?;
    }
    Ok(format!(
        "20 functions ({multi} multi-layer); norm {norm:.1e}, additivity {add:.1e}, coarea {coarea:.1e}, min relative Yamabe margin {margin:.3}"
    ))
}

fn c8_sphere() -> Check {
    let want = 8.0 * 6f64.sqrt() * PI;
    let mut worst: f64 = 0.0;
    for eps in [1.0, EPS_DEFAULT, 1.2] {
        let one = RadialTestFunction::new(DomainTag::S4, vec![0.0, PI - 1e-6, PI], vec![1.0, 1.0, 0.0])
            .map_err(|e| e.to_string())?;
        let y = yamabe_functional(&one, eps).map_err(|e| e.to_string())?;
        let e = (y - want).abs() / want;
        worst = worst.max(e);
        ensure(e <= 1e-6, format!("eps = {eps}: {y}"))?;
    }
    Ok(format!("Y(1) = 8 sqrt6 pi = {want:.6} within {worst:.1e} at eps in {{1, 1.047^2, 1.2}}"))
}

fn c9_cross_oracle() -> Check {
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let eta = 0.05 + (PI - 0.1) * k as f64 / 49.0;
        let q = ball_region_integral(2, eta).map_err(|e| e.to_string())?;
        let c = ball_region_closed_n2(mean_curvature(2, eta).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let e = ((q.volume - c.volume) / c.volume).abs().max(((q.boundary_area - c.boundary_area) / c.boundary_area).abs());
        worst = worst.max(e);
        ensure(e <= 1e-9, format!("eta = {eta}: relative disagreement {e:e}"))?;
    }
    Ok(format!("50 values of eta, max relative disagreement {worst:.1e}"))
}

const ASSUMED: [&str; 4] = ["ros-product", "bayle-concavity", "bayle-ratio", "yamabe-limit"];

fn c10_end_to_end() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = Command::new(env!("CARGO_BIN_EXE_isoprofile"))
        .arg("verify")
        .arg("--out")
        .arg(dir.path())
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), format!("exit status {:?}", out.status.code()))?;
    let report = std::fs::read_to_string(dir.path().join("report.txt")).map_err(|e| e.to_string())?;
    let tree = report.split("Certificates:").nth(1).ok_or("report has no certificate tree")?;
    let mut assumed = Vec::new();
    let mut verified = 0;
    for line in tree.lines().filter(|l| l.trim_start().starts_with('[')) {
        let id = line.trim_start().split(' ').nth(1).unwrap_or("");
        if line.ends_with("| assumed theorem") {
            assumed.push(id.to_string());
        } else {
            ensure(line.ends_with("| verified"), format!("unmarked step: {line}"))?;
            ensure(line.trim_start().starts_with("[PASS]"), format!("failed step: {line}"))?;
            verified += 1;
        }
    }
    let mut got = assumed.clone();
    got.sort();
    let mut want: Vec<String> = ASSUMED.iter().map(|s| s.to_string()).collect();
    want.sort();
    ensure(got == want, format!("assumed steps {assumed:?}"))?;
    ensure(verified >= 10, format!("only {verified} verified certificates"))?;
    Ok(format!("exit 0; {verified} verified certificates; assumed: {}", assumed.join(", ")))
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 10] = [
        ("1 constants", c1_constants, Duration::from_millis(100)),
        ("2 thresholds", c2_thresholds, Duration::from_secs(1)),
        ("3 series certificates", c3_series, Duration::from_secs(1)),
        ("4 small-volume anchors", c4_anchors, Duration::from_secs(1)),
        ("5 grid dominance", c5_grids, Duration::from_secs(30)),
        ("6 product bound", c6_product, Duration::from_secs(10)),
        ("7 Yamabe property suite", c7_suite, Duration::from_secs(30)),
        ("8 sphere Yamabe constant", c8_sphere, Duration::from_secs(1)),
        ("9 cross-oracle", c9_cross_oracle, Duration::from_secs(5)),
        ("10 end-to-end verify", c10_end_to_end, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t = Instant::now();
        let result = run();
        let dt = t.elapsed();
        let (ok, msg) = match result {
            Ok(m) if dt <= budget => (true, m),
            Ok(m) => (false, format!("{m}; runtime {dt:.2?} exceeds {budget:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!("criterion {name}: {} ({dt:.2?}) {msg}", if ok { "PASS" } else { "FAIL" });
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
