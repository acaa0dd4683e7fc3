//! Grid verification of scaled profile inequalities, the product lower
//! bound for `S² × ℝ²`, the concavity chord and the assembled comparison
//! `I_{S²×ℝ²} ≥ c·I_{S⁴}`.

use std::f64::consts::{PI, SQRT_2};
use std::sync::OnceLock;

use crate::certificate::{Certificate, Inequality, Method};
use crate::constants::comparison_constant;
use crate::cylinder::{flatten_threshold, profile_s2xr, profile_s3_3xr};
use crate::error::{Error, Result};
use crate::profile::{Profile, ProfileCurve};
use crate::roots;
use crate::small_volume::{certify_small_volume_s2xr, certify_small_volume_s3xr};
use crate::sphere::{profile_s3_3, profile_s4_scaled, s4_max_area, SphereSpec};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Number and spacing of grid nodes; both endpoints are always included.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub points: usize,
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(points: usize) -> Self {
        Self {
            points,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(points: usize) -> Self {
        Self {
            points,
            spacing: Spacing::Log,
        }
    }

    pub fn refined(self, factor: usize) -> Self {
        Self {
            points: (self.points - 1) * factor + 1,
            ..self
        }
    }

    pub fn nodes(&self, lo: f64, hi: f64) -> Vec<f64> {
        let n = self.points.max(2);
        let mut out: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.spacing {
                    Spacing::Linear => lo + (hi - lo) * t,
                    Spacing::Log => (lo.ln() + (hi.ln() - lo.ln()) * t).exp(),
                }
            })
            .collect();
        out[0] = lo;
        out[n - 1] = hi;
        out
    }
}

/// Evaluates `f` at every node and returns all values in node order.
pub fn map_nodes<F>(nodes: &[f64], f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        nodes.par_iter().map(|&v| f(v)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        nodes.iter().map(|&v| f(v)).collect()
    }
}

/// Smallest value and its node; ties resolve to the first node.
pub fn min_with_location(nodes: &[f64], values: &[f64]) -> (f64, f64) {
    let mut best = (f64::INFINITY, f64::NAN);
    for (&x, &m) in nodes.iter().zip(values) {
        if m < best.0 || m.is_nan() {
            best = (m, x);
            if m.is_nan() {
                break;
            }
        }
    }
    best
}

/// `lhs(v) ≥ scale_c·rhs(v) + required_margin` on a grid of volumes.
pub struct DominanceQuery<'a> {
    pub id: String,
    pub lhs: &'a dyn Profile,
    pub rhs: &'a dyn Profile,
    pub scale_c: f64,
    pub volume_range: (f64, f64),
    pub grid: GridSpec,
    pub required_margin: f64,
}

/// One grid row of a dominance check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceRow {
    pub volume: f64,
    pub lhs: f64,
    pub scaled_rhs: f64,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DominanceOutcome {
    pub rows: Vec<DominanceRow>,
    pub min_margin: f64,
    pub at: f64,
}

impl DominanceQuery<'_> {
    fn check(&self) -> Result<()> {
        let (lo, hi) = self.volume_range;
        if !(self.scale_c > 0.0) {
            return Err(Error::Precondition(format!("scale_c must be positive, got {}", self.scale_c)));
        }
        if !(hi > lo) || self.grid.points < 2 {
            return Err(Error::Precondition(format!("empty grid over [{lo}, {hi}]")));
        }
        if self.grid.spacing == Spacing::Log && lo <= 0.0 {
            return Err(Error::Precondition("log grid needs a positive lower end".into()));
        }
        for p in [self.lhs, self.rhs] {
            let (a, b) = p.domain();
            if lo < a || hi > b {
                return Err(Error::Precondition(format!(
                    "{} is defined on [{a}, {b}], range is [{lo}, {hi}]",
                    p.label()
                )));
            }
        }
        Ok(())
    }

    fn range_label(&self) -> String {
        let s = match self.grid.spacing {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        };
        format!(
            "[{}, {}] ({} {s} points)",
            self.volume_range.0, self.volume_range.1, self.grid.points
        )
    }
}

pub fn evaluate_dominance(q: &DominanceQuery<'_>) -> Result<DominanceOutcome> {
    q.check()?;
    let nodes = q.grid.nodes(q.volume_range.0, q.volume_range.1);
    let lhs = map_nodes(&nodes, |v| q.lhs.area(v))?;
    let rhs = map_nodes(&nodes, |v| q.rhs.area(v))?;
    let rows: Vec<DominanceRow> = nodes
        .iter()
        .zip(lhs.iter().zip(&rhs))
        .map(|(&volume, (&l, &r))| DominanceRow {
            volume,
            lhs: l,
            scaled_rhs: q.scale_c * r,
            margin: l - q.scale_c * r - q.required_margin,
        })
        .collect();
    let margins: Vec<f64> = rows.iter().map(|r| r.margin).collect();
    let (min_margin, at) = min_with_location(&nodes, &margins);
    Ok(DominanceOutcome { rows, min_margin, at })
}

pub fn verify_dominance(q: &DominanceQuery<'_>) -> Result<Certificate> {
    let out = evaluate_dominance(q)?;
    Ok(Certificate::from_margin(
        q.id.clone(),
        format!("{} >= {:.6} {}", q.lhs.label(), q.scale_c, q.rhs.label()),
        q.range_label(),
        out.min_margin,
        Some(out.at),
        Method::Grid,
        Inequality::NonStrict,
    ))
}

/// Relative change of the minimum margin between two grids.
pub fn margin_drift(coarse: f64, fine: f64) -> f64 {
    if coarse == fine {
        0.0
    } else {
        (coarse - fine).abs() / coarse.abs()
    }
}

/// Largest allowed [`margin_drift`] under grid refinement.
pub const MAX_DRIFT: f64 = 0.1;

/// Runs the query, reruns it on a grid refined by `factor`, and requires
/// both to pass with a strictly positive margin whose drift is at most
/// [`MAX_DRIFT`].
pub fn verify_dominance_stable(q: &DominanceQuery<'_>, factor: usize) -> Result<Certificate> {
    let coarse = verify_dominance(q)?;
    let fine_q = DominanceQuery {
        id: format!("{}-refined", q.id),
        grid: q.grid.refined(factor),
        ..*q
    };
    let fine = verify_dominance(&fine_q)?;
    let drift = margin_drift(coarse.worst_margin, fine.worst_margin);
    let positive = Certificate::from_margin(
        format!("{}-positive", q.id),
        "minimum margin on the coarse grid is positive",
        q.range_label(),
        coarse.worst_margin,
        coarse.worst_at,
        Method::Grid,
        Inequality::Strict,
    );
    let stability = Certificate::from_margin(
        format!("{}-stability", q.id),
        format!("margin drift under {factor}x refinement <= {MAX_DRIFT}"),
        fine_q.range_label(),
        MAX_DRIFT - drift,
        None,
        Method::Grid,
        Inequality::NonStrict,
    )
    .with_detail(format!(
        "coarse {:.9e}, refined {:.9e}, drift {drift:.3e}",
        coarse.worst_margin, fine.worst_margin
    ));
    let statement = coarse.statement.clone();
    let (worst, at) = (coarse.worst_margin, coarse.worst_at);
    let mut out = Certificate::composite(q.id.clone(), statement, q.range_label(), vec![coarse, fine, positive, stability])
        .with_method(Method::Grid);
    out.worst_margin = worst;
    out.worst_at = at;
    Ok(out)
}

/// `f_v(x) = (v/√x)·√(4π − x) + 2√π·√x·√v`, the product-region area for
/// a sphere-side volume `x`.
pub fn product_objective(v: f64, x: f64) -> f64 {
    v / x.sqrt() * (4.0 * PI - x).max(0.0).sqrt() + 2.0 * PI.sqrt() * x.sqrt() * v.sqrt()
}

/// Minimum of [`product_objective`] over `x ∈ (0, 4π]`.
pub fn product_minimum(v: f64) -> Result<roots::Minimum> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Domain {
            op: "morgan_product_bound",
            detail: format!("volume must be positive, got {v}"),
        });
    }
    let hi = 4.0 * PI;
    let m = roots::minimize(|x| product_objective(v, x), 0.0, hi, 1e-10);
    let end = product_objective(v, hi);
    Ok(if end <= m.value {
        roots::Minimum { x: hi, value: end }
    } else {
        m
    })
}

/// `(1/√2)·I_P(v)`, the lower bound for `I_{S²×ℝ²}(v)` from the product
/// `S²(1) × ℝ²` profile.
pub fn morgan_product_bound(v: f64) -> Result<f64> {
    Ok(product_minimum(v)?.value / SQRT_2)
}

/// `g(x) = 4√(4π/x − 1) + 2√π√x`
pub fn morgan_auxiliary(x: f64) -> f64 {
    4.0 * (4.0 * PI / x - 1.0).max(0.0).sqrt() + 2.0 * PI.sqrt() * x.sqrt()
}

/// [`morgan_product_bound`] as a profile on `[16, ∞)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct MorganBound;

impl Profile for MorganBound {
    fn label(&self) -> String {
        "I_P/sqrt2".into()
    }

    fn domain(&self) -> (f64, f64) {
        (f64::MIN_POSITIVE, f64::INFINITY)
    }

    fn area(&self, volume: f64) -> Result<f64> {
        morgan_product_bound(volume)
    }
}

/// `(4π/√2)·√v`
pub fn sqrt_bound(v: f64) -> f64 {
    4.0 * PI / SQRT_2 * v.sqrt()
}

/// Checks `(1/√2)I_P(v) ≥ (4π/√2)√v` on `[16, v_max]` and
/// `g(x) ≥ 4π` on `(0, 4π)`.
pub fn certify_product_bound(points: usize, v_max: f64, g_points: usize) -> Result<Certificate> {
    let nodes = GridSpec::linear(points).nodes(16.0, v_max);
    let rel = map_nodes(&nodes, |v| Ok(morgan_product_bound(v)? / sqrt_bound(v) - 1.0))?;
    let (m, at) = min_with_location(&nodes, &rel);
    let bound = Certificate::from_margin(
        "product-sqrt-bound",
        "(1/sqrt2) I_P(v) >= (4 pi/sqrt2) sqrt(v)",
        format!("[16, {v_max}] ({points} points)"),
        m,
        Some(at),
        Method::Grid,
        Inequality::NonStrict,
    )
    .with_detail("margin relative to (4 pi/sqrt2) sqrt(v); I_P from the product inequality for S2 x R2");

    let hi = 4.0 * PI;
    let g_nodes: Vec<f64> = (1..g_points).map(|k| hi * k as f64 / g_points as f64).collect();
    let g_vals: Vec<f64> = g_nodes.iter().map(|&x| morgan_auxiliary(x) - hi).collect();
    let (gm, gat) = min_with_location(&g_nodes, &g_vals);
    let g = Certificate::from_margin(
        "auxiliary-g",
        "g(x) = 4 sqrt(4 pi/x - 1) + 2 sqrt(pi) sqrt(x) > 4 pi",
        format!("(0, 4 pi) ({} interior points)", g_points - 1),
        gm,
        Some(gat),
        Method::Grid,
        Inequality::Strict,
    );
    let endpoint = Certificate::from_margin(
        "auxiliary-g-endpoint",
        "g(4 pi) = 4 pi",
        "x = 4 pi",
        -(morgan_auxiliary(hi) - hi).abs(),
        Some(hi),
        Method::Analytic,
        Inequality::NonStrict,
    );
    Ok(Certificate::composite(
        "product-bound",
        "I_S2xR2(v) >= (4 pi/sqrt2) sqrt(v) for v >= 16",
        "v >= 16",
        vec![bound, g, endpoint],
    ))
}

fn s3xr_threshold() -> Result<f64> {
    static CELL: OnceLock<std::result::Result<f64, String>> = OnceLock::new();
    CELL.get_or_init(|| flatten_threshold(3).map(|t| t.v_threshold).map_err(|e| e.to_string()))
        .clone()
        .map_err(|e| Error::Numeric {
            op: "flatten_threshold",
            detail: e,
        })
}

/// Flat value `8√2π²` of the `S³(3) × ℝ` profile.
pub fn s3xr_flat_area() -> f64 {
    8.0 * SQRT_2 * PI * PI
}

/// Straight line through `(v1, 8√2π²)` and `(v2, (4π/√2)√v2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordBound {
    pub v1: f64,
    pub v2: f64,
    pub left_value: f64,
    pub right_value: f64,
    pub slope: f64,
}

impl ChordBound {
    pub fn evaluate(&self, v: f64) -> f64 {
        self.left_value + self.slope * (v - self.v1)
    }

    /// Volume where the line reaches `level`.
    pub fn crossing(&self, level: f64) -> f64 {
        self.v1 + (level - self.left_value) / self.slope
    }
}

pub fn build_chord(v1: f64, v2: f64) -> Result<ChordBound> {
    let v0 = s3xr_threshold()?;
    if !(v1 >= v0) {
        return Err(Error::Precondition(format!(
            "v1 = {v1} is below the flattening volume {v0} of I_S3(3)xR"
        )));
    }
    if !(v2 >= 16.0) {
        return Err(Error::Precondition(format!("v2 = {v2} must be at least 16")));
    }
    if v2 <= v1 {
        return Err(Error::Precondition(format!("chord needs v2 > v1, got [{v1}, {v2}]")));
    }
    let left_value = s3xr_flat_area();
    let right_value = sqrt_bound(v2);
    Ok(ChordBound {
        v1,
        v2,
        left_value,
        right_value,
        slope: (right_value - left_value) / (v2 - v1),
    })
}

/// `l(v) ≥ c·I_{S⁴}(v)` on a grid over `[v1, min(v2, V_total)]`, closed
/// beyond the grid by `l(v2) ≥ c·max I_{S⁴}`.
pub fn verify_chord_dominates_sphere(chord: &ChordBound, eps: f64, grid: GridSpec) -> Result<Certificate> {
    let c = comparison_constant(eps);
    let s4 = profile_s4_scaled(eps)?;
    let total = s4.domain().1;
    let mut children = Vec::new();
    if chord.v1 < total {
        let hi = total.min(chord.v2);
        let nodes = grid.nodes(chord.v1, hi);
        let margins = map_nodes(&nodes, |v| Ok(chord.evaluate(v) - c * s4.area(v)?))?;
        let (m, at) = min_with_location(&nodes, &margins);
        children.push(Certificate::from_margin(
            "chord-grid",
            format!("l(v) >= {c:.6} I_S4scaled(v)"),
            format!("[{}, {hi}] ({} points)", chord.v1, grid.points),
            m,
            Some(at),
            Method::Chord,
            Inequality::NonStrict,
        ));
    }
    let peak = c * s4_max_area(eps);
    let v_star = chord.crossing(peak);
    children.push(
        Certificate::from_margin(
            "chord-tail",
            "l(v2) >= c max I_S4scaled",
            format!("v >= {}", chord.v2.min(total)),
            chord.right_value - peak,
            Some(v_star),
            Method::Analytic,
            Inequality::NonStrict,
        )
        .with_detail(format!(
            "l reaches c max I_S4scaled = {peak:.6} at v* = {v_star:.6}; beyond v2 the bound (4 pi/sqrt2) sqrt(v) exceeds l(v2)"
        )),
    );
    Ok(Certificate::composite(
        "chord",
        format!("l(v) >= {c:.6} I_S4scaled(v)"),
        format!("v >= {}", chord.v1),
        children,
    )
    .with_method(Method::Chord))
}

/// Largest relative increase of `I(v)/v^p` between consecutive nodes.
pub fn max_ratio_increase(profile: &dyn Profile, power: f64, nodes: &[f64]) -> Result<f64> {
    let ratios = map_nodes(nodes, |v| Ok(profile.area(v)? / v.powf(power)))?;
    Ok(ratios
        .windows(2)
        .map(|w| (w[1] - w[0]) / w[0])
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Largest relative second difference `(I(v−h) + I(v+h) − 2I(v)) / I(v)`
/// over interior nodes of a uniform grid; `≤ 0` up to rounding for a
/// concave profile.
pub fn max_convexity_defect(profile: &dyn Profile, nodes: &[f64]) -> Result<f64> {
    let vals = map_nodes(nodes, |v| profile.area(v))?;
    Ok(vals
        .windows(3)
        .map(|w| (w[0] + w[2] - 2.0 * w[1]) / w[1])
        .fold(f64::NEG_INFINITY, f64::max))
}

/// Tunables for [`verify_theorem_1_1_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonConfig {
    pub eps: f64,
    pub figure1_points: usize,
    pub figure2_points: usize,
    pub chord_points: usize,
    pub product_points: usize,
    pub refine: usize,
    pub chord_v1: f64,
    pub chord_v2: f64,
}

impl ComparisonConfig {
    pub fn new(eps: f64) -> Self {
        Self {
            eps,
            figure1_points: 10_000,
            figure2_points: 10_000,
            chord_points: 10_000,
            product_points: 1_000,
            refine: 10,
            chord_v1: 83.5,
            chord_v2: 450.0,
        }
    }

    /// Same density on every grid.
    pub fn with_grid(mut self, points: usize) -> Self {
        self.figure1_points = points;
        self.figure2_points = points;
        self.chord_points = points;
        self.product_points = points;
        self
    }
}

/// Cached profiles used by the comparison chain.
pub struct ComparisonProfiles {
    pub s2xr: ProfileCurve,
    pub s3_3: ProfileCurve,
    pub s3_3xr: ProfileCurve,
    pub s4: ProfileCurve,
}

impl ComparisonProfiles {
    pub fn new(eps: f64) -> Result<Self> {
        Ok(Self {
            s2xr: profile_s2xr()?,
            s3_3: profile_s3_3()?,
            s3_3xr: profile_s3_3xr()?,
            s4: profile_s4_scaled(eps)?,
        })
    }
}

/// `I_{S²×ℝ} ≥ I_{S³(3)}` for all volumes: series below 0.25, grid on the
/// ball branch, grid reproduction up to three times the threshold, and the
/// flat part closed by `8π ≥ 8π sin² r`.
pub fn certify_s2xr_over_s3(p: &ComparisonProfiles, cfg: &ComparisonConfig) -> Result<Certificate> {
    let cap = p.s2xr.flat_cap().expect("S2xR profile flattens");
    let branch = DominanceQuery {
        id: "figure1-branch".into(),
        lhs: &p.s2xr,
        rhs: &p.s3_3,
        scale_c: 1.0,
        volume_range: (0.25, cap.v_threshold),
        grid: GridSpec::log(cfg.figure1_points),
        required_margin: 0.0,
    };
    let full = DominanceQuery {
        id: "figure1-grid".into(),
        volume_range: (0.25, 3.0 * cap.v_threshold),
        ..branch
    };
    let full_cert = verify_dominance(&full)?;
    let full_positive = Certificate::from_margin(
        "figure1-grid-positive",
        "minimum margin over [0.25, 3 v_threshold] is positive",
        full_cert.range.clone(),
        full_cert.worst_margin,
        full_cert.worst_at,
        Method::Grid,
        Inequality::Strict,
    )
    .with_detail("the profiles touch at the hemisphere volume of S3(3); see figure1-cap");

    let s3 = SphereSpec::s3_3();
    let hemisphere = 0.5 * s3.total_volume();
    let cap_cert = Certificate::from_margin(
        "figure1-cap",
        "8 pi >= I_S3(3)(v) = 8 pi sin^2 r for v >= v_threshold",
        format!("[{}, {}]", cap.v_threshold, s3.total_volume()),
        cap.area - 8.0 * PI,
        Some(hemisphere),
        Method::Analytic,
        Inequality::NonStrict,
    )
    .with_detail(format!(
        "margin 8 pi cos^2 r >= 0, equality at the hemisphere volume {hemisphere:.6}"
    ));
    Ok(Certificate::composite(
        "s2xR-over-s3",
        "I_S2xR(v) >= I_S3(3)(v)",
        "v > 0",
        vec![
            certify_small_volume_s2xr(),
            verify_dominance_stable(&branch, cfg.refine)?,
            full_cert,
            full_positive,
            cap_cert,
        ],
    ))
}

/// `I_{S³(3)×ℝ} ≥ c·I_{S⁴}` for `v ≤ 100`.
pub fn certify_s3xr_over_s4(p: &ComparisonProfiles, cfg: &ComparisonConfig) -> Result<Certificate> {
    let c = comparison_constant(cfg.eps);
    let fig2 = DominanceQuery {
        id: "figure2".into(),
        lhs: &p.s3_3xr,
        rhs: &p.s4,
        scale_c: c,
        volume_range: (5.0, 100.0),
        grid: GridSpec::linear(cfg.figure2_points),
        required_margin: 0.0,
    };
    let ratio_nodes = GridSpec::log(cfg.figure2_points.min(2000)).nodes(1e-3, 100.0);
    let inc_cyl = max_ratio_increase(&p.s3_3xr, 0.75, &ratio_nodes)?;
    let inc_s4 = max_ratio_increase(&p.s4, 0.75, &ratio_nodes)?;
    let health = Certificate::from_margin(
        "ratio-health",
        "I(v)/v^(3/4) numerically decreasing for S3(3)xR and the scaled S4",
        "[1e-3, 100]",
        -inc_cyl.max(inc_s4),
        None,
        Method::Property,
        Inequality::NonStrict,
    )
    .with_detail(format!("largest relative increase: S3(3)xR {inc_cyl:.3e}, S4 {inc_s4:.3e}"));
    Ok(Certificate::composite(
        "s3xR-over-s4",
        format!("I_S3(3)xR(v) >= {c:.6} I_S4scaled(v)"),
        "v <= 100",
        vec![
            certify_small_volume_s3xr(cfg.eps)?,
            health,
            verify_dominance_stable(&fig2, cfg.refine)?,
        ],
    ))
}

/// `I_{S²×ℝ²} ≥ c·I_{S⁴}` for `v ≥ v1` via the concavity chord.
pub fn certify_large_volume(p: &ComparisonProfiles, cfg: &ComparisonConfig) -> Result<Certificate> {
    let chord = build_chord(cfg.chord_v1, cfg.chord_v2)?;
    let chord_cert = verify_chord_dominates_sphere(&chord, cfg.eps, GridSpec::linear(cfg.chord_points))?;
    let mut refined = verify_chord_dominates_sphere(&chord, cfg.eps, GridSpec::linear(cfg.chord_points).refined(cfg.refine))?;
    refined.id = "chord-refined".into();
    let drift = margin_drift(chord_cert.worst_margin, refined.worst_margin);
    let stability = Certificate::from_margin(
        "chord-stability",
        format!("margin drift under {}x refinement <= {MAX_DRIFT}", cfg.refine),
        format!("[{}, {}]", chord.v1, chord.v2),
        MAX_DRIFT - drift,
        None,
        Method::Grid,
        Inequality::NonStrict,
    );

    let nodes = GridSpec::linear(cfg.chord_points).nodes(chord.v1, chord.v2);
    let below = map_nodes(&nodes, |v| Ok(4.0 * PI * v.sqrt() - chord.evaluate(v)))?;
    let (bm, bat) = min_with_location(&nodes, &below);
    let consistency = Certificate::from_margin(
        "chord-consistency",
        "l(v) <= 4 pi sqrt(v), the area of S2 x disk regions, between the endpoints",
        format!("[{}, {}]", chord.v1, chord.v2),
        bm,
        Some(bat),
        Method::Grid,
        Inequality::NonStrict,
    )
    .with_detail("a lower bound for the profile must stay below this explicit competitor");

    let defect_nodes = GridSpec::linear(cfg.chord_points.min(2000)).nodes(1.0, 0.999 * p.s4.domain().1);
    let defect = max_convexity_defect(&p.s4, &defect_nodes)?;
    let concavity_health = Certificate::from_margin(
        "concavity-health",
        "second differences of I_S4scaled are non-positive",
        "[1, 0.999 V_total]",
        -defect,
        None,
        Method::Property,
        Inequality::NonStrict,
    );

    Ok(Certificate::composite(
        "large-volume",
        "I_S2xR2(v) >= c I_S4scaled(v) for v >= 83.5",
        format!("v >= {}", chord.v1),
        vec![
            Certificate::assumed(
                "bayle-concavity",
                "the profile of S2xR2 (non-negative Ricci curvature) is concave",
                "v > 0",
            ),
            certify_product_bound(cfg.product_points, 1e4, 100_000)?,
            Certificate::from_margin(
                "chord-left",
                "l(v1) = I_S3(3)xR(v1) = 8 sqrt2 pi^2",
                format!("v1 = {}", chord.v1),
                -(p.s3_3xr.area(chord.v1)? - chord.left_value).abs() / chord.left_value,
                Some(chord.v1),
                Method::Analytic,
                Inequality::NonStrict,
            ),
            consistency,
            concavity_health,
            chord_cert,
            refined,
            stability,
        ],
    ))
}

/// Full comparison `I_{S²×ℝ²} ≥ (2√ε/12^{3/8})·I_{S⁴}` for all volumes.
pub fn verify_theorem_1_1(eps: f64) -> Result<Certificate> {
    verify_theorem_1_1_with(&ComparisonConfig::new(eps))
}

pub fn verify_theorem_1_1_with(cfg: &ComparisonConfig) -> Result<Certificate> {
    let p = ComparisonProfiles::new(cfg.eps)?;
    let c = comparison_constant(cfg.eps);
    let small = certify_s2xr_over_s3(&p, cfg)?;
    let ros = Certificate::assumed(
        "ros-product",
        "I_S2xR >= I_S3(3) implies I_S2xR2 >= I_S3(3)xR",
        "v > 0",
    );
    let mid = certify_s3xr_over_s4(&p, cfg)?;
    let large = certify_large_volume(&p, cfg)?;
    let coverage = Certificate::from_margin(
        "coverage",
        "(0, 100] and [v1, inf) cover all volumes",
        "v > 0",
        100.0 - cfg.chord_v1,
        None,
        Method::Analytic,
        Inequality::NonStrict,
    );
    Ok(Certificate::composite(
        "profile-comparison",
        format!("I_S2xR2 >= {c:.6} I_S4scaled"),
        format!("eps = {}", cfg.eps),
        vec![small, ros, mid, large, coverage],
    ))
}
