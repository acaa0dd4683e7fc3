//! Geodesic balls on the round spheres that serve as comparison models:
//! `S³(3) = (S³, 2g₀)` and the scaled four-sphere `(S⁴, 2^{3/2}·3^{1/4}·ε·g₀)`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::constants::lambda_s4;
use crate::error::{domain, Result};
use crate::profile::{ParametricFamily, ProfileCurve};
use crate::special::sin_power_integral;

/// Table size used to bracket sphere profile inversions.
const SPHERE_TABLE: usize = 256;

/// Volume of the unit round sphere `Sⁿ`.
pub fn unit_sphere_volume(n: u32) -> f64 {
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (n as f64 - 1.0) * unit_sphere_volume(n - 2),
    }
}

/// A round sphere `(Sⁿ, λ·g₀)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSpec {
    dimension: u32,
    scale: f64,
}

impl SphereSpec {
    pub fn new(dimension: u32, scale: f64) -> Result<Self> {
        if dimension < 2 {
            return Err(domain("SphereSpec", format!("dimension {dimension} < 2")));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(domain("SphereSpec", format!("scale must be positive, got {scale}")));
        }
        Ok(Self { dimension, scale })
    }

    /// The sphere `Sⁿ(k)` of constant scalar curvature `k`, i.e. scale `n(n−1)/k`.
    pub fn from_scalar_curvature(dimension: u32, k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(domain("SphereSpec", format!("scalar curvature must be positive, got {k}")));
        }
        let n = dimension as f64;
        Self::new(dimension, n * (n - 1.0) / k)
    }

    /// `S³(3)`, i.e. `(S³, 2g₀)`.
    pub fn s3_3() -> Self {
        Self {
            dimension: 3,
            scale: 2.0,
        }
    }

    /// `(S⁴, 2^{3/2}·3^{1/4}·ε·g₀) = S⁴(12^{3/4}/(2ε))`.
    pub fn s4_scaled(eps: f64) -> Result<Self> {
        if !(eps > 0.0) {
            return Err(domain("s4_scaled", format!("eps must be positive, got {eps}")));
        }
        Self::new(4, lambda_s4(eps))
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn scalar_curvature(&self) -> f64 {
        let n = self.dimension as f64;
        n * (n - 1.0) / self.scale
    }

    pub fn total_volume(&self) -> f64 {
        self.scale.powf(self.dimension as f64 / 2.0) * unit_sphere_volume(self.dimension)
    }

    /// Geodesic ball of angular radius `r` (measured on the unit sphere).
    pub fn ball(&self, r: f64) -> Result<GeodesicBall> {
        check_angle("SphereSpec::ball", r)?;
        if self.dimension > 4 {
            return Err(domain(
                "SphereSpec::ball",
                format!("ball formulas implemented for n <= 4, got {}", self.dimension),
            ));
        }
        let n = self.dimension;
        let cross = unit_sphere_volume(n - 1);
        let volume = self.scale.powf(n as f64 / 2.0) * cross * sin_power_integral(n - 1, r);
        let boundary_area = self.scale.powf((n as f64 - 1.0) / 2.0) * cross * r.sin().powi(n as i32 - 1);
        Ok(GeodesicBall {
            sphere: *self,
            radius_angle: r,
            volume,
            boundary_area: boundary_area.max(0.0),
        })
    }

    /// `d(volume)/dr` for geodesic balls; equals `√λ · boundary_area`.
    pub fn ball_volume_derivative(&self, r: f64) -> f64 {
        let n = self.dimension;
        self.scale.powf(n as f64 / 2.0) * unit_sphere_volume(n - 1) * r.sin().powi(n as i32 - 1)
    }

    /// The isoperimetric profile of this sphere (geodesic balls).
    pub fn profile(&self) -> Result<ProfileCurve> {
        self.profile_labeled(&format!("S{}(scale {})", self.dimension, self.scale))
    }

    pub fn profile_labeled(&self, label: &str) -> Result<ProfileCurve> {
        ProfileCurve::new(
            label,
            Arc::new(BallFamily { sphere: *self }),
            (1.0, 1.0),
            (0.0, PI),
            None,
            SPHERE_TABLE,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicBall {
    pub sphere: SphereSpec,
    pub radius_angle: f64,
    pub volume: f64,
    pub boundary_area: f64,
}

fn check_angle(op: &'static str, r: f64) -> Result<()> {
    if !(0.0..=PI).contains(&r) {
        return Err(domain(op, format!("angle {r} outside [0, π]")));
    }
    Ok(())
}

/// Geodesic ball in `S³(3)`: volume `2^{5/2}π(r − sin r cos r)`, area `8π sin²r`.
pub fn ball_s3_3(r: f64) -> Result<GeodesicBall> {
    check_angle("ball_s3_3", r)?;
    // r − sin r cos r = (2r − sin 2r)/2
    let volume = 2f64.powf(2.5) * PI * 0.5 * crate::special::x_minus_sin(2.0 * r);
    let boundary_area = 8.0 * PI * r.sin().powi(2);
    Ok(GeodesicBall {
        sphere: SphereSpec::s3_3(),
        radius_angle: r,
        volume,
        boundary_area,
    })
}

/// Geodesic ball in the scaled four-sphere:
/// volume `ε²(64π²/√3)(2 + cos r)sin⁴(r/2)`, area `8·2^{1/4}3^{3/8}π²ε^{3/2}sin³r`.
pub fn ball_s4_scaled(r: f64, eps: f64) -> Result<GeodesicBall> {
    check_angle("ball_s4_scaled", r)?;
    let sphere = SphereSpec::s4_scaled(eps)?;
    let volume = eps * eps * 64.0 * PI * PI / 3f64.sqrt() * (2.0 + r.cos()) * (0.5 * r).sin().powi(4);
    let boundary_area = s4_max_area(eps) * r.sin().powi(3).max(0.0);
    Ok(GeodesicBall {
        sphere,
        radius_angle: r,
        volume,
        boundary_area,
    })
}

/// Largest boundary area of a geodesic ball (the equator) in the scaled
/// four-sphere.
pub fn s4_max_area(eps: f64) -> f64 {
    8.0 * 2f64.powf(0.25) * 3f64.powf(0.375) * PI * PI * eps.powf(1.5)
}

/// Total volume of the scaled four-sphere, `ε²·64π²/√3`.
pub fn s4_total_volume(eps: f64) -> f64 {
    eps * eps * 64.0 * PI * PI / 3f64.sqrt()
}

/// Yamabe constant of the round sphere, `n(n−1)·V_n^{2/n}`.
pub fn yamabe_constant_round_sphere(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(domain("yamabe_constant_round_sphere", format!("n = {n} < 3")));
    }
    let nf = n as f64;
    Ok(nf * (nf - 1.0) * unit_sphere_volume(n).powf(2.0 / nf))
}

struct BallFamily {
    sphere: SphereSpec,
}

impl ParametricFamily for BallFamily {
    fn branch(&self) -> (f64, f64) {
        (0.0, PI)
    }

    fn volume(&self, p: f64) -> Result<f64> {
        Ok(self.sphere.ball(p)?.volume)
    }

    fn area(&self, p: f64) -> Result<f64> {
        Ok(self.sphere.ball(p)?.boundary_area)
    }

    fn volume_with_derivative(&self, p: f64) -> Option<(f64, f64)> {
        let v = self.sphere.ball(p.clamp(0.0, PI)).ok()?.volume;
        Some((v, self.sphere.ball_volume_derivative(p)))
    }
}

/// Profile of `S³(3)`.
pub fn profile_s3_3() -> Result<ProfileCurve> {
    SphereSpec::s3_3().profile_labeled("I_S3(3)")
}

/// Profile of the scaled four-sphere for the given `ε`.
pub fn profile_s4_scaled(eps: f64) -> Result<ProfileCurve> {
    SphereSpec::s4_scaled(eps)?.profile_labeled("I_S4scaled")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EPS_DEFAULT;
    use approx::assert_relative_eq;

    #[test]
    fn unit_volumes() {
        assert_relative_eq!(unit_sphere_volume(2), 4.0 * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_volume(3), 2.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(unit_sphere_volume(4), 8.0 * PI * PI / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn scalar_curvature_times_scale() {
        for (n, l) in [(2, 1.0), (3, 2.0), (4, lambda_s4(EPS_DEFAULT))] {
            let s = SphereSpec::new(n, l).unwrap();
            let nf = n as f64;
            assert_relative_eq!(s.scalar_curvature() * l, nf * (nf - 1.0), max_relative = 1e-15);
            let back = SphereSpec::from_scalar_curvature(n, s.scalar_curvature()).unwrap();
            assert_relative_eq!(back.scale(), l, max_relative = 1e-15);
        }
    }

    #[test]
    fn s4_notation_matches_scalar_curvature_form() {
        let eps = EPS_DEFAULT;
        let s = SphereSpec::s4_scaled(eps).unwrap();
        assert_relative_eq!(
            s.scalar_curvature(),
            12f64.powf(0.75) / (2.0 * eps),
            max_relative = 1e-14
        );
    }

    #[test]
    fn s3_3_ball_trivial_values() {
        let b = ball_s3_3(0.0).unwrap();
        assert_eq!((b.volume, b.boundary_area), (0.0, 0.0));
        let h = ball_s3_3(PI / 2.0).unwrap();
        assert_relative_eq!(h.volume, 2f64.powf(1.5) * PI * PI, max_relative = 1e-14);
        assert_relative_eq!(h.boundary_area, 8.0 * PI, max_relative = 1e-15);
        let full = ball_s3_3(PI).unwrap();
        assert_relative_eq!(full.volume, SphereSpec::s3_3().total_volume(), max_relative = 1e-14);
    }

    #[test]
    fn explicit_formulas_agree_with_generic_balls() {
        let eps = EPS_DEFAULT;
        let s3 = SphereSpec::s3_3();
        let s4 = SphereSpec::s4_scaled(eps).unwrap();
        for i in 1..50 {
            let r = PI * i as f64 / 50.0;
            let a = ball_s3_3(r).unwrap();
            let b = s3.ball(r).unwrap();
            assert_relative_eq!(a.volume, b.volume, max_relative = 1e-13);
            assert_relative_eq!(a.boundary_area, b.boundary_area, max_relative = 1e-13, epsilon = 1e-13);
            let a = ball_s4_scaled(r, eps).unwrap();
            let b = s4.ball(r).unwrap();
            assert_relative_eq!(a.volume, b.volume, max_relative = 1e-13);
            assert_relative_eq!(a.boundary_area, b.boundary_area, max_relative = 1e-13, epsilon = 1e-12);
        }
    }

    #[test]
    fn s4_endpoints() {
        let eps = EPS_DEFAULT;
        let full = ball_s4_scaled(PI, eps).unwrap();
        assert_relative_eq!(full.volume, 438.2337, max_relative = 1e-6);
        assert!(full.boundary_area.abs() < 1e-10);
        let l2 = lambda_s4(eps);
        assert_relative_eq!(full.volume, l2 * l2 * 8.0 * PI * PI / 3.0, max_relative = 1e-14);
        let eq = ball_s4_scaled(PI / 2.0, eps).unwrap();
        assert_relative_eq!(eq.boundary_area, 162.7076, max_relative = 1e-6);
        let z = ball_s4_scaled(0.0, eps).unwrap();
        assert_eq!((z.volume, z.boundary_area), (0.0, 0.0));
    }

    #[test]
    fn out_of_range_angles_rejected() {
        assert!(ball_s3_3(-0.1).is_err());
        assert!(ball_s3_3(3.5).is_err());
        assert!(ball_s4_scaled(4.0, 1.0).is_err());
        assert!(ball_s4_scaled(1.0, 0.0).is_err());
    }

    #[test]
    fn yamabe_constants() {
        assert_relative_eq!(
            yamabe_constant_round_sphere(4).unwrap(),
            8.0 * 6f64.sqrt() * PI,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            yamabe_constant_round_sphere(3).unwrap(),
            6.0 * (2.0 * PI * PI).powf(2.0 / 3.0),
            max_relative = 1e-14
        );
        // 16π ≈ 0.816·Y(S⁴)
        assert_relative_eq!(16.0 * PI / yamabe_constant_round_sphere(4).unwrap(), 2.0 / 6f64.sqrt(), max_relative = 1e-14);
        assert!(yamabe_constant_round_sphere(2).is_err());
    }

    #[test]
    fn inversion_of_hemisphere() {
        let c = profile_s3_3().unwrap();
        assert_relative_eq!(c.evaluate(2f64.powf(1.5) * PI * PI).unwrap(), 8.0 * PI, max_relative = 1e-12);
        let s4 = profile_s4_scaled(EPS_DEFAULT).unwrap();
        let half = 0.5 * s4_total_volume(EPS_DEFAULT);
        assert_relative_eq!(s4.evaluate(half).unwrap(), s4_max_area(EPS_DEFAULT), max_relative = 1e-12);
    }
}
