//! Text renderings of certificates, constants and symmetrization runs.

use std::fmt::Write as _;

use isoprofile::certificate::{Certificate, Kind};
use isoprofile::constants::comparison_constant;
use isoprofile::yamabe::{BoundConstants, ChainAnalysis};

use crate::{Format, RunConfig};

pub fn master(eps: f64, children: Vec<Certificate>) -> Certificate {
    Certificate::composite(
        "master",
        "Y(S2 x M2) >= c^2 Y(S4) with its profile comparisons",
        format!("eps = {eps}"),
        children,
    )
}

fn leaves(c: &Certificate) -> impl Iterator<Item = &Certificate> {
    c.flatten().into_iter().filter(|c| c.children.is_empty())
}

pub fn assumed(c: &Certificate) -> Vec<&Certificate> {
    leaves(c).filter(|c| c.kind == Kind::AssumedTheorem).collect()
}

pub fn human(master: &Certificate, cfg: &RunConfig) -> String {
    let mut s = String::new();
    let c = comparison_constant(cfg.eps);
    let _ = writeln!(s, "isoprofile verification report");
    let _ = writeln!(s, "eps = {}", cfg.eps);
    let _ = writeln!(s, "c = {c:.12}, c^2 = {:.12}", c * c);
    let grid = cfg.grid.map(|g| g.to_string()).unwrap_or_else(|| "default".into());
    let _ = writeln!(s, "grid = {grid}, symmetrization tol = {:e}", cfg.tol);
    let _ = writeln!(s);
    let _ = writeln!(s, "Assumed theorems (cited, not verified here):");
    for a in assumed(master) {
        let _ = writeln!(s, "  - {}: {}", a.id, a.statement);
    }
    let verified: Vec<&Certificate> = leaves(master).filter(|c| c.kind == Kind::Verified).collect();
    let failed: Vec<&Certificate> = verified.iter().copied().filter(|c| !c.pass).collect();
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "Verified numerics: {} checks, {} passed, {} failed",
        verified.len(),
        verified.len() - failed.len(),
        failed.len()
    );
    for f in &failed {
        let _ = writeln!(s, "  failed: {} (margin {:.6e})", f.id, f.worst_margin);
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "Certificates:");
    s.push_str(&master.report());
    let _ = writeln!(s);
    let _ = writeln!(s, "result: {}", if master.pass { "PASS" } else { "FAIL" });
    s
}

pub fn kv(master: &Certificate, cfg: &RunConfig) -> String {
    let mut s = String::new();
    let c = comparison_constant(cfg.eps);
    let _ = writeln!(s, "eps={:.17e}", cfg.eps);
    let _ = writeln!(s, "c={c:.17e}");
    let _ = writeln!(s, "tol={:.17e}", cfg.tol);
    let ids: Vec<&str> = assumed(master).iter().map(|a| a.id.as_str()).collect();
    let _ = writeln!(s, "assumed={}", ids.join(","));
    let _ = writeln!(s, "result={}", if master.pass { "pass" } else { "fail" });
    s.push_str(&master.to_kv());
    s
}

pub fn constants(b: &BoundConstants, format: Format) -> String {
    let mut s = String::new();
    let rows: [(&str, f64, &str); 7] = [
        ("eps", b.eps, "tuning constant, default 1.047^2"),
        ("lambda1", b.lambda1, "metric multiplier on S3"),
        ("lambda2", b.lambda2, "2^(3/2) 3^(1/4) eps, metric multiplier on S4"),
        ("c", b.c, "2 sqrt(eps) / 12^(3/8), profile comparison constant"),
        ("c2", b.c_squared, "sqrt2 eps / 3^(3/4) = c^2"),
        ("y_s4", b.y_s4, "Y(S4) = 8 sqrt6 pi"),
        ("bound", b.bound, "c^2 Y(S4), lower bound for Y(S2 x R2) and Y(S2 x M2)"),
    ];
    let holds = b.two_thirds_margin > 0.0;
    match format {
        Format::Human => {
            for (k, v, what) in rows {
                let _ = writeln!(s, "{k:<8} = {v:<20.12} {what}");
            }
            let _ = writeln!(
                s,
                "c^2 {} 2/3: {:.6} {} {:.6}",
                if holds { ">" } else { "<=" },
                b.c_squared,
                if holds { ">" } else { "<=" },
                2.0 / 3.0
            );
            let _ = writeln!(s, "identity |c^2 - sqrt2 eps/3^(3/4)| = {:.3e}", b.identity_error);
        }
        Format::Kv => {
            for (k, v, _) in rows {
                let _ = writeln!(s, "{k}={v:.17e}");
            }
            let _ = writeln!(s, "two_thirds={:.17e}", 2.0 / 3.0);
            let _ = writeln!(s, "c2_gt_two_thirds={holds}");
            let _ = writeln!(s, "identity_error={:.17e}", b.identity_error);
        }
    }
    s
}

/// Symmetrized layers in the test-function text format, one block per
/// layer, preceded by a comment naming the function and layer.
pub fn symmetrized(analyses: &[ChainAnalysis]) -> String {
    let mut s = String::new();
    for (i, a) in analyses.iter().enumerate() {
        for l in &a.layers {
            let _ = writeln!(
                s,
                "# function {} layer {} of {}: radii [{:.17e}, {:.17e}], levels [{:.17e}, {:.17e}]",
                i + 1,
                l.index,
                a.layers.len(),
                l.rho_inner,
                l.rho_outer,
                l.t_lower,
                l.t_upper
            );
            let _ = writeln!(s, "{}", l.symmetrized);
        }
    }
    s
}

pub fn symmetrize_summary(analyses: &[ChainAnalysis], cert: &Certificate, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Human => {
            let _ = writeln!(
                s,
                "{:>3} {:>6} {:>14} {:>14} {:>10} {:>10} {:>10} {:>11}",
                "f", "layers", "Y_cyl", "Y_sphere", "norm err", "coarea err", "energy", "Y margin"
            );
            for (i, a) in analyses.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>3} {:>6} {:>14.8} {:>14.8} {:>10.2e} {:>10.2e} {:>10.4} {:>11.4e}",
                    i + 1,
                    a.layers.len(),
                    a.y_cyl,
                    a.y_sphere_side,
                    a.norm_error,
                    a.coarea_error,
                    a.energy_margin,
                    a.yamabe_margin
                );
            }
            let _ = writeln!(s);
            s.push_str(&cert.report());
            let _ = writeln!(s, "result: {}", if cert.pass { "PASS" } else { "FAIL" });
        }
        Format::Kv => {
            for (i, a) in analyses.iter().enumerate() {
                let k = format!("function-{}", i + 1);
                let _ = writeln!(s, "{k}.layers={}", a.layers.len());
                let _ = writeln!(s, "{k}.y_cyl={:.17e}", a.y_cyl);
                let _ = writeln!(s, "{k}.y_sphere={:.17e}", a.y_sphere_side);
                let _ = writeln!(s, "{k}.norm_error={:.17e}", a.norm_error);
                let _ = writeln!(s, "{k}.additivity_error={:.17e}", a.additivity_error);
                let _ = writeln!(s, "{k}.coarea_error={:.17e}", a.coarea_error);
                let _ = writeln!(s, "{k}.yamabe_margin={:.17e}", a.yamabe_margin);
            }
            let _ = writeln!(s, "result={}", if cert.pass { "pass" } else { "fail" });
            s.push_str(&cert.to_kv());
        }
    }
    s
}
