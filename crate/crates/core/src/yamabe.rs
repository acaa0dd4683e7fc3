//! Yamabe quotients of radial test functions on `S² × ℝ²` and the scaled
//! four-sphere, spherical symmetrization, layered decomposition, and the
//! resulting lower bound `Y(S² × ℝ²) ≥ c²·Y(S⁴)`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, Inequality, Method};
use crate::constants::{comparison_constant, yamabe_ratio, YamabeConstants};
use crate::error::{domain, numeric, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::radial::{radial_integral, DomainTag, RadialTestFunction, S2_AREA};
use crate::roots::newton_bisect;
use crate::sphere::{yamabe_constant_round_sphere, SphereSpec};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Relative tolerance on `∫f^q` driving symmetrization refinement.
pub const SYMMETRIZE_TOL: f64 = 1e-7;

const MAX_NODES: usize = 1 << 16;

/// `4π²`: volume of `S² × {disk of radius ρ}` is `4π²ρ²`.
const CYL_DISK: f64 = S2_AREA * PI;

fn sphere(eps: f64) -> Result<SphereSpec> {
    SphereSpec::s4_scaled(eps)
}

/// Polar angle of the geodesic ball of the given volume.
pub fn s4_angle_for_volume(s: &SphereSpec, volume: f64) -> Result<f64> {
    let total = s.total_volume();
    if volume <= 0.0 {
        return Ok(0.0);
    }
    if volume >= total * (1.0 - 1e-14) {
        return Ok(PI);
    }
    newton_bisect(
        |r| {
            let b = s.ball(r.clamp(0.0, PI)).map(|b| b.volume).unwrap_or(f64::NAN);
            (b - volume, s.ball_volume_derivative(r))
        },
        0.0,
        PI,
        1e-15,
    )
}

/// `(∫|∇f|², ∫f, ∫f², ∫f⁴)`
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Integrals {
    pub energy: f64,
    pub l1: f64,
    pub l2: f64,
    pub l4: f64,
}

impl Integrals {
    pub fn power(&self, q: u32) -> f64 {
        match q {
            1 => self.l1,
            2 => self.l2,
            4 => self.l4,
            _ => panic!("q must be 1, 2 or 4"),
        }
    }

    fn add(self, o: Integrals) -> Integrals {
        Integrals {
            energy: self.energy + o.energy,
            l1: self.l1 + o.l1,
            l2: self.l2 + o.l2,
            l4: self.l4 + o.l4,
        }
    }

    /// `6·E + s·∫f²`
    pub fn numerator(&self, s: f64) -> f64 {
        6.0 * self.energy + s * self.l2
    }
}

pub fn integrals(f: &RadialTestFunction, eps: f64) -> Result<Integrals> {
    integrals_between(f, 0.0, f64::INFINITY, eps)
}

fn integrals_between(f: &RadialTestFunction, a: f64, b: f64, eps: f64) -> Result<Integrals> {
    let metric = match f.domain() {
        DomainTag::S2xR2 => 1.0,
        DomainTag::S4 => sphere(eps)?.scale(),
    };
    Ok(Integrals {
        energy: radial_integral(f, a, b, eps, |_, d| d * d / metric)?,
        l1: radial_integral(f, a, b, eps, |v, _| v)?,
        l2: radial_integral(f, a, b, eps, |v, _| v * v)?,
        l4: radial_integral(f, a, b, eps, |v, _| v.powi(4))?,
    })
}

/// Scalar curvature of the side a function lives on.
pub fn scalar_curvature(tag: DomainTag, eps: f64) -> f64 {
    let k = YamabeConstants::new(eps);
    match tag {
        DomainTag::S2xR2 => k.s_cyl,
        DomainTag::S4 => k.s_sphere,
    }
}

/// `(6∫|∇f|² + s∫f²) / (∫f⁴)^{1/2}` with `s` the scalar curvature of the
/// function's domain.
pub fn yamabe_functional(f: &RadialTestFunction, eps: f64) -> Result<f64> {
    if f.is_zero() {
        return Err(domain("yamabe_functional", "zero function"));
    }
    let i = integrals(f, eps)?;
    Ok(i.numerator(scalar_curvature(f.domain(), eps)) / i.l4.sqrt())
}

/// `ρ` with `4π²(ρ² − ρ_a²)` equal to the ball volume at angle `r`.
fn matched_radius(s: &SphereSpec, rho_a: f64, rho_b: f64, r: f64) -> Result<f64> {
    let v = s.ball(r)?.volume;
    Ok((rho_a * rho_a + v / CYL_DISK).sqrt().min(rho_b))
}

/// `∫_{r0}^{r1} (linear from v0 to v1)^q dvol` on the sphere.
fn s4_piece(s: &SphereSpec, gl: &GaussLegendre, r0: f64, r1: f64, v0: f64, v1: f64, q: i32) -> f64 {
    let slope = (v1 - v0) / (r1 - r0);
    let mid = 0.5 * (r0 + r1);
    let f = |r: f64| (v0 + slope * (r - r0)).powi(q) * s.ball_volume_derivative(r);
    gl.integrate(f, r0, mid) + gl.integrate(f, mid, r1)
}

/// Radial nonincreasing function on the scaled `S⁴` whose superlevel sets
/// have the volumes of the superlevel sets of `f` restricted to the annulus
/// `ρ_a ≤ |x| ≤ ρ_b`. Sampled at the angles matching the breakpoints and
/// refined until `∫f^q` (q = 1, 2, 4) agree within `tol`.
pub fn symmetrize_annulus(
    f: &RadialTestFunction,
    rho_a: f64,
    rho_b: f64,
    eps: f64,
    tol: f64,
) -> Result<RadialTestFunction> {
    if f.domain() != DomainTag::S2xR2 {
        return Err(domain("symmetrize", "expects a function on s2xR2"));
    }
    let s = sphere(eps)?;
    let layer_volume = CYL_DISK * (rho_b * rho_b - rho_a * rho_a);
    if layer_volume > s.total_volume() * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "support volume {layer_volume} exceeds the sphere volume {}; use layered_decomposition",
            s.total_volume()
        )));
    }
    if f.is_zero() || !(rho_b > rho_a) {
        return Ok(RadialTestFunction::zero(DomainTag::S4));
    }
    let r_b = s4_angle_for_volume(&s, layer_volume)?;
    let mut nodes = vec![0.0];
    for &rho in f.breakpoints() {
        if rho > rho_a && rho < rho_b {
            let r = s4_angle_for_volume(&s, CYL_DISK * (rho * rho - rho_a * rho_a))?;
            if r > *nodes.last().unwrap() && r < r_b {
                nodes.push(r);
            }
        }
    }
    nodes.push(r_b);

    let gl = GaussLegendre::new(10);
    let exact_total = [1, 2, 4].map(|q| {
        radial_integral(f, rho_a, rho_b, eps, |v, _| v.powi(q)).unwrap_or(f64::NAN)
    });
    loop {
        let radii: Vec<f64> = nodes
            .iter()
            .map(|&r| matched_radius(&s, rho_a, rho_b, r))
            .collect::<Result<_>>()?;
        let vals: Vec<f64> = radii.iter().map(|&rho| f.value(rho)).collect();
        let mut errs = Vec::with_capacity(nodes.len() - 1);
        for j in 0..nodes.len() - 1 {
            let mut e: f64 = 0.0;
            for (qi, q) in [1, 2, 4].into_iter().enumerate() {
                let interp = s4_piece(&s, &gl, nodes[j], nodes[j + 1], vals[j], vals[j + 1], q);
                let exact = radial_integral(f, radii[j], radii[j + 1], eps, |v, _| v.powi(q))?;
                e = e.max((interp - exact).abs() / exact_total[qi]);
            }
            errs.push(e);
        }
        let total: f64 = errs.iter().sum();
        if total <= tol {
            let mut values = vals;
            let mut bps = nodes;
            if r_b < PI {
                *values.last_mut().unwrap() = 0.0;
            } else {
                *bps.last_mut().unwrap() = PI;
            }
            return RadialTestFunction::new(DomainTag::S4, bps, values);
        }
        if nodes.len() > MAX_NODES {
            return Err(numeric(
                "symmetrize",
                format!("no convergence with {} nodes (error {total:e})", nodes.len()),
            ));
        }
        let cut = tol / (2.0 * errs.len() as f64);
        let mut next = Vec::with_capacity(2 * nodes.len());
        for j in 0..errs.len() {
            next.push(nodes[j]);
            if errs[j] > cut {
                next.push(0.5 * (nodes[j] + nodes[j + 1]));
            }
        }
        next.push(*nodes.last().unwrap());
        nodes = next;
    }
}

/// Volume of the support `{f > 0}` on `S² × ℝ²`.
pub fn support_volume(f: &RadialTestFunction) -> f64 {
    let r = f.support_radius();
    CYL_DISK * r * r
}

/// Spherical symmetrization of `f` on `S² × ℝ²` into the scaled `S⁴`.
pub fn symmetrize(f: &RadialTestFunction, eps: f64) -> Result<RadialTestFunction> {
    symmetrize_annulus(f, 0.0, f.support_radius(), eps, SYMMETRIZE_TOL)
}

/// One slab `{t_lower ≤ f ≤ t_upper}`, cut at radii `ρ_inner < ρ_outer`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub index: usize,
    pub rho_inner: f64,
    pub rho_outer: f64,
    pub t_upper: f64,
    pub t_lower: f64,
    pub volume: f64,
    pub symmetrized: RadialTestFunction,
}

/// Cuts `f` into annuli of volume equal to the sphere's total volume (the
/// last one smaller) and symmetrizes each.
pub fn layered_decomposition(f: &RadialTestFunction, eps: f64) -> Result<Vec<Layer>> {
    layered_decomposition_with(f, eps, SYMMETRIZE_TOL)
}

/// [`layered_decomposition`] with an explicit refinement tolerance.
pub fn layered_decomposition_with(f: &RadialTestFunction, eps: f64, tol: f64) -> Result<Vec<Layer>> {
    if f.domain() != DomainTag::S2xR2 {
        return Err(domain("layered_decomposition", "expects a function on s2xR2"));
    }
    let cap = sphere(eps)?.total_volume();
    let rho_s = f.support_radius();
    let mut cuts = vec![0.0];
    loop {
        let a: f64 = *cuts.last().unwrap();
        if CYL_DISK * (rho_s * rho_s - a * a) <= cap * (1.0 + 1e-12) {
            cuts.push(rho_s);
            break;
        }
        cuts.push((a * a + cap / CYL_DISK).sqrt());
    }
    cuts.windows(2)
        .enumerate()
        .map(|(i, w)| {
            Ok(Layer {
                index: i + 1,
                rho_inner: w[0],
                rho_outer: w[1],
                t_upper: f.value(w[0]),
                t_lower: f.value(w[1]),
                volume: CYL_DISK * (w[1] * w[1] - w[0] * w[0]),
                symmetrized: symmetrize_annulus(f, w[0], w[1], eps, tol)?,
            })
        })
        .collect()
}

/// `∫ (∫_{f⁻¹(t)} |∇f| dσ) dt` on the level grid given by the breakpoint
/// values; plateau levels carry no measure and are skipped.
pub fn coarea_energy(f: &RadialTestFunction, eps: f64) -> Result<f64> {
    let gl = GaussLegendre::new(10);
    let (metric, level_area): (f64, Box<dyn Fn(f64) -> f64>) = match f.domain() {
        DomainTag::S2xR2 => (1.0, Box::new(|rho: f64| S2_AREA * 2.0 * PI * rho)),
        DomainTag::S4 => {
            let s = sphere(eps)?;
            (s.scale(), Box::new(move |r: f64| s.ball(r.clamp(0.0, PI)).map(|b| b.boundary_area).unwrap_or(0.0)))
        }
    };
    let b = f.breakpoints();
    let v = f.values();
    let mut total = 0.0;
    for k in 0..f.segments() {
        let (hi, lo) = (v[k], v[k + 1]);
        if hi == lo {
            continue;
        }
        let grad = f.slope(k).abs() / metric.sqrt();
        let radius = |t: f64| b[k] + (hi - t) / (hi - lo) * (b[k + 1] - b[k]);
        let pieces = 4;
        let h = (hi - lo) / pieces as f64;
        for j in 0..pieces {
            let t0 = lo + j as f64 * h;
            total += gl.integrate(|t| level_area(radius(t)) * grad, t0, t0 + h);
        }
    }
    Ok(total)
}

/// Everything computed for one test function.
#[derive(Debug, Clone)]
pub struct ChainAnalysis {
    pub eps: f64,
    pub layers: Vec<Layer>,
    pub cyl: Integrals,
    pub cyl_layers: Vec<Integrals>,
    pub sph_layers: Vec<Integrals>,
    pub y_cyl: f64,
    /// `Σ(6E_i + s∫f_i²) / (Σ∫f_i⁴)^{1/2}` on the sphere side; equals
    /// `Y(f_*)` for a single layer.
    pub y_sphere_side: f64,
    pub norm_error: f64,
    pub additivity_error: f64,
    pub coarea_error: f64,
    pub level_area_margin: f64,
    pub energy_margin: f64,
    pub yamabe_margin: f64,
    pub sobolev_margin: f64,
    pub bound_margin: f64,
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

/// Smallest `8π²ρ(t) − c·|∂B|` over levels in each layer, where `B` is the
/// geodesic ball with the volume of the layer's superlevel set.
fn level_area_margin(f: &RadialTestFunction, layers: &[Layer], eps: f64, levels: usize) -> Result<f64> {
    let s = sphere(eps)?;
    let c = comparison_constant(eps);
    let mut worst = f64::INFINITY;
    for l in layers {
        if l.t_upper == l.t_lower {
            continue;
        }
        for k in 1..levels {
            let t = l.t_lower + (l.t_upper - l.t_lower) * k as f64 / levels as f64;
            let rho = f.level_radius(t);
            if rho <= l.rho_inner {
                continue;
            }
            let vol = CYL_DISK * (rho * rho - l.rho_inner * l.rho_inner);
            let r = s4_angle_for_volume(&s, vol)?;
            let m = S2_AREA * 2.0 * PI * rho - c * s.ball(r)?.boundary_area;
            worst = worst.min(m);
        }
    }
    Ok(worst)
}

pub fn analyze_chain(f: &RadialTestFunction, eps: f64) -> Result<ChainAnalysis> {
    analyze_chain_with(f, eps, SYMMETRIZE_TOL)
}

/// [`analyze_chain`] with an explicit symmetrization tolerance.
pub fn analyze_chain_with(f: &RadialTestFunction, eps: f64, tol: f64) -> Result<ChainAnalysis> {
    if f.domain() != DomainTag::S2xR2 || f.is_zero() {
        return Err(domain("verify_chain", "needs a nonzero function on s2xR2"));
    }
    let k = YamabeConstants::new(eps);
    let c2 = yamabe_ratio(eps);
    let y_s4 = yamabe_constant_round_sphere(4)?;
    let layers = layered_decomposition_with(f, eps, tol)?;
    let cyl = integrals(f, eps)?;
    let cyl_layers: Vec<Integrals> = layers
        .iter()
        .map(|l| integrals_between(f, l.rho_inner, l.rho_outer, eps))
        .collect::<Result<_>>()?;
    let sph_layers: Vec<Integrals> = layers
        .iter()
        .map(|l| integrals(&l.symmetrized, eps))
        .collect::<Result<_>>()?;
    let cyl_sum = cyl_layers.iter().fold(Integrals::default(), |a, &b| a.add(b));
    let sph_sum = sph_layers.iter().fold(Integrals::default(), |a, &b| a.add(b));

    let norm_error = [1u32, 2, 4]
        .iter()
        .map(|&q| rel(cyl.power(q).powf(1.0 / q as f64), sph_sum.power(q).powf(1.0 / q as f64)))
        .fold(0.0, f64::max);
    let additivity_error = [2u32, 4]
        .iter()
        .map(|&q| rel(cyl.power(q), cyl_sum.power(q)))
        .fold(0.0, f64::max);

    let mut coarea_error = rel(coarea_energy(f, eps)?, cyl.energy);
    for (l, i) in layers.iter().zip(&sph_layers) {
        if i.energy > 0.0 {
            coarea_error = coarea_error.max(rel(coarea_energy(&l.symmetrized, eps)?, i.energy));
        }
    }

    let y_cyl = cyl.numerator(k.s_cyl) / cyl.l4.sqrt();
    let y_sphere_side = sph_sum.numerator(k.s_sphere) / sph_sum.l4.sqrt();
    let energy_margin = if cyl.energy > 0.0 {
        (cyl.energy - c2 * sph_sum.energy) / cyl.energy
    } else {
        -c2 * sph_sum.energy
    };
    let sobolev_margin = sph_layers
        .iter()
        .filter(|i| i.l4 > 0.0)
        .map(|i| (i.numerator(k.s_sphere) / i.l4.sqrt() - y_s4) / y_s4)
        .fold(f64::INFINITY, f64::min);

    Ok(ChainAnalysis {
        eps,
        level_area_margin: level_area_margin(f, &layers, eps, 64)?,
        layers,
        cyl,
        cyl_layers,
        sph_layers,
        y_cyl,
        y_sphere_side,
        norm_error,
        additivity_error,
        coarea_error,
        energy_margin,
        yamabe_margin: (y_cyl - c2 * y_sphere_side) / y_cyl,
        sobolev_margin,
        bound_margin: (y_cyl - c2 * y_s4) / y_cyl,
    })
}

/// Tolerance on norm preservation and layer additivity.
pub const NORM_TOL: f64 = 1e-6;
/// Tolerance on the coarea cross-check.
pub const COAREA_TOL: f64 = 1e-5;

impl ChainAnalysis {
    pub fn certificate(&self, id: &str) -> Certificate {
        let n = self.layers.len();
        let mut children = vec![
            Certificate::from_margin(
                "norm-preservation",
                "||f||_q = ||f_*||_q for q = 1, 2, 4",
                format!("{n} layer(s)"),
                NORM_TOL - self.norm_error,
                None,
                Method::Property,
                Inequality::NonStrict,
            )
            .with_detail(format!("max relative error {:.3e}", self.norm_error)),
            Certificate::from_margin(
                "layer-additivity",
                "||f||_q^q = sum_i ||f_i||_q^q for q = 2, 4",
                format!("{n} layer(s)"),
                NORM_TOL - self.additivity_error,
                None,
                Method::Property,
                Inequality::NonStrict,
            ),
            Certificate::from_margin(
                "coarea",
                "int |grad f|^2 = int_t int_{f=t} |grad f| on both sides",
                "breakpoint level grid",
                COAREA_TOL - self.coarea_error,
                None,
                Method::Property,
                Inequality::NonStrict,
            ),
            Certificate::from_margin(
                "level-set-areas",
                "|f^-1(t)| >= c |f_*^-1(t)|",
                "64 levels per layer",
                self.level_area_margin,
                None,
                Method::Grid,
                Inequality::NonStrict,
            ),
            Certificate::from_margin(
                "gradient-energy",
                "int |grad f|^2 >= c^2 sum_i int |grad f_i*|^2",
                "relative",
                self.energy_margin,
                None,
                Method::Property,
                Inequality::NonStrict,
            ),
            Certificate::from_margin(
                "yamabe-comparison",
                "Y_cyl(f) > c^2 Y_sphere(f_*)",
                "relative",
                self.yamabe_margin,
                None,
                Method::Property,
                Inequality::Strict,
            )
            .with_detail(format!(
                "Y_cyl = {:.9}, Y_sphere = {:.9}",
                self.y_cyl, self.y_sphere_side
            )),
            Certificate::from_margin(
                "sobolev-per-layer",
                "each layer's quotient on the sphere >= Y(S4)",
                format!("{n} layer(s)"),
                self.sobolev_margin,
                None,
                Method::Property,
                Inequality::NonStrict,
            ),
            Certificate::from_margin(
                "yamabe-bound",
                "Y_cyl(f) > c^2 Y(S4)",
                "relative",
                self.bound_margin,
                None,
                Method::Property,
                Inequality::Strict,
            ),
        ];
        if n > 1 {
            children[6] = children[6]
                .clone()
                .with_detail("multi-layer chain: the per-layer constant is read as Y(S4)");
        }
        Certificate::composite(id, "Y_cyl(f) >= c^2 Y_sphere(f_*)", format!("{n} layer(s), eps = {}", self.eps), children)
            .with_method(Method::Property)
    }
}

pub fn verify_theorem_1_2_chain(f: &RadialTestFunction, eps: f64) -> Result<Certificate> {
    Ok(analyze_chain(f, eps)?.certificate("yamabe-chain"))
}

/// Seeded random nonincreasing piecewise-linear functions on `S² × ℝ²`.
/// Every fourth function has support several times the sphere volume;
/// every fifth has a plateau.
pub fn random_test_functions(seed: u64, count: usize) -> Vec<RadialTestFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let m = rng.random_range(2..=10usize);
            let support = if i % 4 == 3 {
                rng.random_range(4.0..8.0)
            } else {
                rng.random_range(0.3..3.2)
            };
            let mut cuts: Vec<f64> = (0..m - 1).map(|_| rng.random_range(0.0..1.0)).collect();
            cuts.sort_by(f64::total_cmp);
            let mut bps = vec![0.0];
            bps.extend(cuts.iter().map(|u| u * support));
            bps.push(support);
            bps.dedup();
            let height = rng.random_range(0.5..3.0);
            let mut drops: Vec<f64> = (1..bps.len()).map(|_| rng.random_range(0.05..1.0)).collect();
            if i % 5 == 4 && drops.len() > 2 {
                drops[1] = 0.0;
            }
            let sum: f64 = drops.iter().sum();
            let mut vals = vec![height];
            let mut acc = height;
            for (j, d) in drops.iter().enumerate() {
                acc -= height * d / sum;
                vals.push(if j + 2 == bps.len() { 0.0 } else { acc.max(0.0) });
            }
            // strictly increasing breakpoints survive dedup only if distinct
            let mut clean_b = vec![bps[0]];
            let mut clean_v = vec![vals[0]];
            for j in 1..bps.len() {
                if bps[j] - clean_b.last().unwrap() > 1e-6 {
                    clean_b.push(bps[j]);
                    clean_v.push(vals[j]);
                } else {
                    *clean_v.last_mut().unwrap() = vals[j];
                }
            }
            RadialTestFunction::new(DomainTag::S2xR2, clean_b, clean_v).expect("generator yields valid functions")
        })
        .collect()
}

/// Runs the chain on every function.
pub fn verify_theorem_1_2_suite(functions: &[RadialTestFunction], eps: f64) -> Result<Certificate> {
    verify_theorem_1_2_suite_with(functions, eps, SYMMETRIZE_TOL)
}

pub fn verify_theorem_1_2_suite_with(functions: &[RadialTestFunction], eps: f64, tol: f64) -> Result<Certificate> {
    Ok(suite_certificate(&analyze_suite(functions, eps, tol)?))
}

/// [`analyze_chain_with`] on every function, in input order.
pub fn analyze_suite(functions: &[RadialTestFunction], eps: f64, tol: f64) -> Result<Vec<ChainAnalysis>> {
    if !(tol > 0.0) {
        return Err(domain("analyze_suite", format!("tolerance must be positive, got {tol}")));
    }
    #[cfg(feature = "parallel")]
    let iter = functions.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = functions.iter();
    iter.map(|f| analyze_chain_with(f, eps, tol)).collect()
}

pub fn suite_certificate(analyses: &[ChainAnalysis]) -> Certificate {
    let children = analyses
        .iter()
        .enumerate()
        .map(|(i, a)| a.certificate(&format!("function-{}", i + 1)))
        .collect();
    Certificate::composite(
        "yamabe-suite",
        "Y_cyl(f) >= c^2 Y_sphere(f_*) for every test function",
        format!("{} functions", analyses.len()),
        children,
    )
    .with_method(Method::Property)
}

/// The constants of the final Yamabe bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundConstants {
    pub eps: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub c: f64,
    pub c_squared: f64,
    /// `|c² − √2ε/3^{3/4}|`
    pub identity_error: f64,
    pub y_s4: f64,
    pub bound: f64,
    pub two_thirds_margin: f64,
}

pub fn bound_constants(eps: f64) -> Result<BoundConstants> {
    if !(eps > 0.0) {
        return Err(domain("bound_constants", format!("eps must be positive, got {eps}")));
    }
    let c = comparison_constant(eps);
    let c2 = c * c;
    let y = yamabe_constant_round_sphere(4)?;
    Ok(BoundConstants {
        eps,
        lambda1: crate::constants::LAMBDA_S3,
        lambda2: crate::constants::lambda_s4(eps),
        c,
        c_squared: c2,
        identity_error: (c2 - yamabe_ratio(eps)).abs(),
        y_s4: y,
        bound: c2 * y,
        two_thirds_margin: c2 - 2.0 / 3.0,
    })
}

impl BoundConstants {
    pub fn certificate(&self) -> Certificate {
        Certificate::composite(
            "yamabe-constants",
            format!("Y(S2 x R2) >= {:.6} Y(S4) = {:.6}", self.c_squared, self.bound),
            format!("eps = {}", self.eps),
            vec![
                Certificate::from_margin(
                    "constant-identity",
                    "(2 sqrt(eps)/12^(3/8))^2 = sqrt2 eps/3^(3/4)",
                    "-",
                    1e-14 - self.identity_error,
                    None,
                    Method::Analytic,
                    Inequality::NonStrict,
                ),
                Certificate::from_margin(
                    "two-thirds",
                    "c^2 > 2/3",
                    "-",
                    self.two_thirds_margin,
                    None,
                    Method::Analytic,
                    Inequality::Strict,
                ),
                Certificate::assumed(
                    "yamabe-limit",
                    "Y(S2 x M2) >= Y(S2 x R2) for closed surfaces M2 (limit of rescaled products)",
                    "-",
                ),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EPS_DEFAULT;
    use crate::radial::{gradient_energy, power_integral};
    use approx::assert_relative_eq;

    fn tent(radius: f64) -> RadialTestFunction {
        RadialTestFunction::new(DomainTag::S2xR2, vec![0.0, radius], vec![1.0, 0.0]).unwrap()
    }

    #[test]
    fn constant_on_sphere_gives_round_yamabe_constant() {
        let one = RadialTestFunction::new(DomainTag::S4, vec![0.0, PI], vec![1.0, 1.0]).unwrap();
        for eps in [1.0, EPS_DEFAULT, 1.2] {
            assert_relative_eq!(yamabe_functional(&one, eps).unwrap(), 8.0 * 6f64.sqrt() * PI, max_relative = 1e-12);
        }
    }

    #[test]
    fn symmetrized_tent_preserves_norms() {
        let f = tent(2.0);
        let g = symmetrize(&f, EPS_DEFAULT).unwrap();
        for q in [1.0, 2.0, 4.0] {
            let a = power_integral(&f, q, EPS_DEFAULT).unwrap();
            let b = power_integral(&g, q, EPS_DEFAULT).unwrap();
            assert_relative_eq!(a, b, max_relative = 1e-6);
        }
    }

    #[test]
    fn zero_function_symmetrizes_to_zero() {
        let z = RadialTestFunction::zero(DomainTag::S2xR2);
        assert!(symmetrize(&z, EPS_DEFAULT).unwrap().is_zero());
        assert!(yamabe_functional(&z, EPS_DEFAULT).is_err());
    }

    #[test]
    fn wide_support_needs_layers() {
        let f = tent(6.0);
        assert!(symmetrize(&f, EPS_DEFAULT).is_err());
        let layers = layered_decomposition(&f, EPS_DEFAULT).unwrap();
        let cap = sphere(EPS_DEFAULT).unwrap().total_volume();
        let n_expected = (support_volume(&f) / cap).ceil() as usize;
        assert_eq!(layers.len(), n_expected);
        for l in &layers[..layers.len() - 1] {
            assert_relative_eq!(l.volume, cap, max_relative = 1e-12);
        }
    }

    #[test]
    fn coarea_matches_energy_for_tent() {
        let f = tent(1.5);
        assert_relative_eq!(coarea_energy(&f, 1.0).unwrap(), gradient_energy(&f, 1.0).unwrap(), max_relative = 1e-12);
    }

    #[test]
    fn bound_constants_default() {
        let b = bound_constants(EPS_DEFAULT).unwrap();
        assert!((b.c - 0.8247).abs() < 1e-4);
        assert!(b.two_thirds_margin > 0.0);
        assert!((b.bound - 41.87).abs() < 0.01);
        assert!(bound_constants(1.0).unwrap().two_thirds_margin < 0.0);
    }

    #[test]
    fn random_functions_are_reproducible() {
        assert_eq!(random_test_functions(7, 5), random_test_functions(7, 5));
        assert_ne!(random_test_functions(7, 5), random_test_functions(8, 5));
    }
}
