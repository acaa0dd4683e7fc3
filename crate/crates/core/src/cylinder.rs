//! Ball-type constant mean curvature regions in `Sⁿ × ℝ` (n = 2, 3) and the
//! isoperimetric profiles of `S² × ℝ` and `S³(3) × ℝ` assembled from them.
//!
//! A region `Ω` is determined by the largest radius `η` of its spherical
//! sections. Its boundary area and volume are one-dimensional integrals over
//! the section radius `y ∈ (0, η)` whose integrands blow up like
//! `(η − y)^{-1/2}` at the upper end. We integrate in `τ` with
//! `y = η·sin(πτ/2)`, which makes the integrand smooth, and evaluate
//! `1 − u` from a cancellation-free expression so that nodes near `τ = 1`
//! keep full relative accuracy.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{domain, numeric, Result};
use crate::profile::{FlatCap, ParametricFamily, ProfileCurve};
use crate::quadrature::{integrate, QuadConfig};
use crate::roots;
use crate::special::x_minus_sin;
use crate::sphere::unit_sphere_volume;

/// Relative accuracy requested from the region quadratures.
pub const REGION_REL_TOL: f64 = 1e-12;

/// Volume multiplier taking `(S³ × ℝ, g₀ + dt²)` to `S³(3) × ℝ`.
pub const S3XR_VOLUME_SCALE: f64 = 4.0;

/// Area multiplier taking `(S³ × ℝ, g₀ + dt²)` to `S³(3) × ℝ` (`2^{3/2}`).
pub const S3XR_AREA_SCALE: f64 = 2.828_427_124_746_190_1;

const PROFILE_TABLE_N2: usize = 1024;
const PROFILE_TABLE_N3: usize = 384;

/// Sphere factor of the cylinder `Sⁿ × ℝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    S2,
    S3,
}

impl Factor {
    pub fn from_dimension(n: u32) -> Result<Self> {
        match n {
            2 => Ok(Factor::S2),
            3 => Ok(Factor::S3),
            _ => Err(domain("cylinder factor", format!("n must be 2 or 3, got {n}"))),
        }
    }

    pub fn dimension(self) -> u32 {
        match self {
            Factor::S2 => 2,
            Factor::S3 => 3,
        }
    }

    /// `sin^{n−1}(y)`
    fn section(self, y: f64) -> f64 {
        match self {
            Factor::S2 => y.sin(),
            Factor::S3 => y.sin().powi(2),
        }
    }

    /// `∫₀^y sin^{n−1}(s) ds`
    fn section_integral(self, y: f64) -> f64 {
        match self {
            Factor::S2 => 2.0 * (0.5 * y).sin().powi(2),
            Factor::S3 => 0.25 * x_minus_sin(2.0 * y),
        }
    }

    /// k-th derivative of `sin²` (k ≥ 1).
    fn s3_section_derivative(k: u32, y: f64) -> f64 {
        -(2f64.powi(k as i32 - 1)) * (2.0 * y + k as f64 * PI / 2.0).cos()
    }

    /// `N(y) = s(y)·I(η) − s(η)·I(y)` for `0 < y ≤ η`, where `s` is the
    /// section function and `I` its integral. `N ≥ 0` and vanishes at `y = η`.
    /// `d = y − η` is passed separately so callers can supply it without
    /// cancellation.
    fn crossed_difference(self, eta: f64, y: f64, d: f64) -> f64 {
        match self {
            Factor::S2 => -4.0 * (0.5 * d).sin() * (0.5 * y).sin() * (0.5 * eta).sin(),
            Factor::S3 => {
                let s_eta = self.section(eta);
                let i_eta = self.section_integral(eta);
                if d.abs() >= 0.25 {
                    return self.section(y) * i_eta - s_eta * self.section_integral(y);
                }
                // Taylor series about η; N^{(k)}(η) = s^{(k)}(η)I(η) − s(η)s^{(k−1)}(η).
                let mut sum = 0.0;
                let mut dk = 1.0;
                let mut prev = s_eta;
                for k in 1..=40u32 {
                    dk *= d / k as f64;
                    let sk = Self::s3_section_derivative(k, eta);
                    let term = (sk * i_eta - s_eta * prev) * dk;
                    sum += term;
                    prev = sk;
                    if term.abs() < 1e-18 * sum.abs() && k > 4 {
                        break;
                    }
                }
                sum
            }
        }
    }
}

fn check_eta(op: &'static str, eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta < PI) {
        return Err(domain(op, format!("η = {eta} outside (0, π)")));
    }
    Ok(())
}

/// Mean curvature `h_{n−1}(η) = sin^{n−1}η / ∫₀^η sin^{n−1}`.
pub fn mean_curvature(n: u32, eta: f64) -> Result<f64> {
    let f = Factor::from_dimension(n)?;
    check_eta("mean_curvature", eta)?;
    Ok(match f {
        Factor::S2 => eta.sin() / (1.0 - eta.cos()),
        Factor::S3 => f.section(eta) / f.section_integral(eta),
    })
}

/// `u_{n−1}(η, y) = h_{n−1}(η) / h_{n−1}(y)`, extended by `0` at `y = 0`.
pub fn u_ratio(n: u32, eta: f64, y: f64) -> Result<f64> {
    let f = Factor::from_dimension(n)?;
    check_eta("u_ratio", eta)?;
    if y > eta {
        return Err(domain("u_ratio", format!("y = {y} exceeds η = {eta}")));
    }
    if !(y >= 0.0) {
        return Err(domain("u_ratio", format!("y = {y} must be non-negative")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if y == eta {
        return Ok(1.0);
    }
    Ok(mean_curvature(n, eta)? * f.section_integral(y) / f.section(y))
}

/// A ball-type region `Ωⁿ_h` in `Sⁿ × ℝ` with the product metric `g₀ + dt²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallRegion {
    pub n: u32,
    pub eta: f64,
    pub h: f64,
    pub volume: f64,
    pub boundary_area: f64,
}

/// Boundary area and volume of `Ωⁿ_h` from the radial integral formulas.
pub fn ball_region_integral(n: u32, eta: f64) -> Result<BallRegion> {
    let f = Factor::from_dimension(n)?;
    check_eta("ball_region_integral", eta)?;
    let h = mean_curvature(n, eta)?;
    let i_eta = f.section_integral(eta);
    let cross = 2.0 * unit_sphere_volume(n - 1);

    // (s(y), I(y), u, sqrt(1 - u²), dy/dτ) at τ ∈ (0, 1)
    let nodes = |tau: f64| {
        let half_gap = PI * (1.0 - tau) / 4.0;
        // y = η·sin(πτ/2), with η − y = 2η·sin²(π(1−τ)/4) kept exact near τ = 1
        let gap = 2.0 * eta * half_gap.sin().powi(2);
        let y = eta - gap;
        let dy = eta * PI / 2.0 * (2.0 * half_gap).sin();
        let s = f.section(y);
        let i = f.section_integral(y);
        if s <= 0.0 {
            return (0.0, 0.0, 0.0, 1.0, dy);
        }
        let u = h * i / s;
        let one_minus_u = if (eta - y) < 0.5 * eta {
            f.crossed_difference(eta, y, -gap).max(0.0) / (i_eta * s)
        } else {
            1.0 - u
        };
        let root = (one_minus_u * (2.0 - one_minus_u)).sqrt();
        (s, i, u, root, dy)
    };

    let cfg = QuadConfig::relative(REGION_REL_TOL);
    let area = integrate(
        |tau| {
            let (s, _, _, root, dy) = nodes(tau);
            if s == 0.0 {
                0.0
            } else {
                s / root * dy
            }
        },
        0.0,
        1.0,
        cfg,
    )
    .map_err(|e| numeric("ball_region_integral", format!("area, n = {n}, η = {eta}: {e}")))?;
    let volume = integrate(
        |tau| {
            let (s, i, u, root, dy) = nodes(tau);
            if s == 0.0 {
                0.0
            } else {
                i * u / root * dy
            }
        },
        0.0,
        1.0,
        cfg,
    )
    .map_err(|e| numeric("ball_region_integral", format!("volume, n = {n}, η = {eta}: {e}")))?;

    Ok(BallRegion {
        n,
        eta,
        h,
        volume: cross * volume.value,
        boundary_area: cross * area.value,
    })
}

/// Boundary area and volume of `Ω²_h` from the closed forms in `h`.
pub fn ball_region_closed_n2(h: f64) -> Result<BallRegion> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(domain("ball_region_closed_n2", format!("h must be positive, got {h}")));
    }
    let q = 1.0 + h * h;
    let root = q.sqrt();
    // log((√q + 1)/(√q − 1)) = 2·log((√q + 1)/h)
    let log_term = 2.0 * ((root + 1.0) / h).ln();
    let area = 4.0 * PI * (2.0 / q + h * h / (q * root) * log_term);
    let volume = 4.0 * PI * h * ((2.0 + h * h) / (q * root) * log_term - 2.0 / q);
    Ok(BallRegion {
        n: 2,
        eta: 2.0 * (1.0 / h).atan(),
        h,
        volume,
        boundary_area: area,
    })
}

/// Where the ball-type branch reaches the area of two cross-sections and
/// the profile becomes flat.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlattenThreshold {
    pub n: u32,
    /// Branch parameter at the junction (`η₀` for n = 2, `x₀` for n = 3).
    pub eta0: f64,
    pub h0: f64,
    /// Volume at the junction, in the units of the assembled profile.
    pub v_threshold: f64,
    /// Constant area of the profile beyond `v_threshold`.
    pub flat_area: f64,
}

/// Junction of the ball branch with the cylinder branch. For `n = 3` the
/// values refer to `S³(3) × ℝ` (volume × 4, area × 2^{3/2}).
pub fn flatten_threshold(n: u32) -> Result<FlattenThreshold> {
    let f = Factor::from_dimension(n)?;
    let (lo, hi) = (1.0, 2.6);
    match f {
        Factor::S2 => {
            let target = 2.0 * unit_sphere_volume(2);
            let area = |eta: f64| -> f64 {
                let h = eta.sin() / (1.0 - eta.cos());
                ball_region_closed_n2(h).map(|r| r.boundary_area).unwrap_or(f64::NAN) - target
            };
            let eta0 = roots::brent(area, lo, hi, 1e-14)?;
            let h0 = mean_curvature(2, eta0)?;
            let region = ball_region_closed_n2(h0)?;
            Ok(FlattenThreshold {
                n,
                eta0,
                h0,
                v_threshold: region.volume,
                flat_area: target,
            })
        }
        Factor::S3 => {
            let target = S3XR_AREA_SCALE * 2.0 * unit_sphere_volume(3);
            let area = |eta: f64| -> f64 {
                ball_region_integral(3, eta)
                    .map(|r| S3XR_AREA_SCALE * r.boundary_area)
                    .unwrap_or(f64::NAN)
                    - target
            };
            let eta0 = roots::brent(area, lo, hi, 1e-13)?;
            let region = ball_region_integral(3, eta0)?;
            Ok(FlattenThreshold {
                n,
                eta0,
                h0: region.h,
                v_threshold: S3XR_VOLUME_SCALE * region.volume,
                flat_area: target,
            })
        }
    }
}

/// Ball-type family parametrised by `η`, evaluated through the closed
/// forms (n = 2) or the radial integrals (n = 3).
#[derive(Debug, Clone, Copy)]
pub struct PedrosaFamily {
    pub factor: Factor,
}

impl PedrosaFamily {
    fn region(&self, eta: f64) -> Result<BallRegion> {
        match self.factor {
            Factor::S2 => ball_region_closed_n2(mean_curvature(2, eta)?),
            Factor::S3 => ball_region_integral(3, eta),
        }
    }
}

impl ParametricFamily for PedrosaFamily {
    fn branch(&self) -> (f64, f64) {
        (0.0, PI)
    }

    fn volume(&self, p: f64) -> Result<f64> {
        Ok(self.region(p)?.volume)
    }

    fn area(&self, p: f64) -> Result<f64> {
        Ok(self.region(p)?.boundary_area)
    }
}

/// Isoperimetric profile of `(S² × ℝ, g₀ + dt²)`: ball-type regions up to
/// `η₀`, then `8π`.
pub fn profile_s2xr() -> Result<ProfileCurve> {
    let t = flatten_threshold(2)?;
    let family = PedrosaFamily { factor: Factor::S2 };
    let cap = FlatCap {
        v_threshold: family.volume(t.eta0)?,
        area: t.flat_area,
        parameter: t.eta0,
    };
    ProfileCurve::new(
        "I_S2xR",
        Arc::new(family),
        (1.0, 1.0),
        (0.0, t.eta0),
        Some(cap),
        PROFILE_TABLE_N2,
    )
}

/// Isoperimetric profile of `S³(3) × ℝ = (S³ × ℝ, 2(g₀ + dt²))`:
/// `I(4V(x)) = 2^{3/2}A(x)` up to `x₀`, then `8√2π²`.
pub fn profile_s3_3xr() -> Result<ProfileCurve> {
    let t = flatten_threshold(3)?;
    let family = PedrosaFamily { factor: Factor::S3 };
    let cap = FlatCap {
        v_threshold: S3XR_VOLUME_SCALE * family.volume(t.eta0)?,
        area: t.flat_area,
        parameter: t.eta0,
    };
    ProfileCurve::new(
        "I_S3(3)xR",
        Arc::new(family),
        (S3XR_VOLUME_SCALE, S3XR_AREA_SCALE),
        (0.0, t.eta0),
        Some(cap),
        PROFILE_TABLE_N3,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn area_scale_constant() {
        assert_relative_eq!(S3XR_AREA_SCALE, 2f64.powf(1.5), max_relative = 1e-16);
    }

    #[test]
    fn mean_curvature_trivial_values() {
        assert_relative_eq!(mean_curvature(2, PI / 2.0).unwrap(), 1.0, max_relative = 1e-15);
        assert_relative_eq!(mean_curvature(3, PI / 2.0).unwrap(), 4.0 / PI, max_relative = 1e-15);
    }

    #[test]
    fn mean_curvature_rejects_bad_input() {
        assert!(mean_curvature(2, 0.0).is_err());
        assert!(mean_curvature(2, PI).is_err());
        assert!(mean_curvature(4, 1.0).is_err());
    }

    #[test]
    fn mean_curvature_decreases() {
        for n in [2, 3] {
            let mut prev = f64::INFINITY;
            for i in 1..200 {
                let h = mean_curvature(n, PI * i as f64 / 200.0).unwrap();
                assert!(h < prev);
                assert!(h > 0.0);
                prev = h;
            }
        }
    }

    #[test]
    fn u_ratio_edges() {
        assert_eq!(u_ratio(2, 1.0, 1.0).unwrap(), 1.0);
        assert_eq!(u_ratio(3, 1.0, 0.0).unwrap(), 0.0);
        assert!(u_ratio(2, 1.0, 1e-8).unwrap() < 1e-7);
        assert!(u_ratio(2, 1.0, 1.1).is_err());
        let u = u_ratio(3, 1.5, 1.0).unwrap();
        assert!(u > 0.0 && u < 1.0);
    }

    #[test]
    fn crossed_difference_matches_direct_form() {
        for f in [Factor::S2, Factor::S3] {
            for (eta, y) in [(1.0, 0.5), (1.9, 1.8), (0.7, 0.69), (2.5, 0.1), (1.2, 1.0)] {
                let direct = f.section(y) * f.section_integral(eta) - f.section(eta) * f.section_integral(y);
                let n = f.crossed_difference(eta, y, y - eta);
                assert_relative_eq!(n, direct, max_relative = 1e-9);
            }
        }
    }

    #[test]
    fn crossed_difference_vanishes_linearly() {
        for f in [Factor::S2, Factor::S3] {
            let eta = 1.3;
            let slope = f.section(eta).powi(2)
                - match f {
                    Factor::S2 => eta.cos() * f.section_integral(eta),
                    Factor::S3 => 2.0 * eta.sin() * eta.cos() * f.section_integral(eta),
                };
            let d = 1e-9;
            assert_relative_eq!(f.crossed_difference(eta, eta - d, -d) / d, slope, max_relative = 1e-6);
        }
    }

    #[test]
    fn closed_form_rejects_nonpositive_h() {
        assert!(ball_region_closed_n2(0.0).is_err());
        assert!(ball_region_closed_n2(-1.0).is_err());
    }

    #[test]
    fn integral_matches_closed_form_at_eta_one() {
        let q = ball_region_integral(2, 1.0).unwrap();
        let c = ball_region_closed_n2(q.h).unwrap();
        assert_relative_eq!(q.boundary_area, c.boundary_area, max_relative = 1e-10);
        assert_relative_eq!(q.volume, c.volume, max_relative = 1e-10);
        assert_relative_eq!(c.eta, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn tiny_regions_shrink() {
        let r = ball_region_integral(3, 1e-4).unwrap();
        assert!(r.boundary_area < 1e-6 && r.volume < 1e-10);
        let r = ball_region_closed_n2(1e6).unwrap();
        assert!(r.boundary_area < 1e-9 && r.volume.abs() < 1e-15);
    }
}
