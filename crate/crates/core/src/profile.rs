//! Isoperimetric profile curves built from one-parameter families of
//! candidate regions, with numerical inversion of the volume map.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::roots;

/// Relative tolerance on the family parameter when inverting volumes.
pub const INVERSION_TOL: f64 = 1e-12;

/// A one-parameter family of regions whose enclosed volume is strictly
/// increasing in the parameter on [`ParametricFamily::branch`].
pub trait ParametricFamily: Send + Sync {
    /// Parameter interval of the monotone branch. The lower end must give
    /// volume and area zero.
    fn branch(&self) -> (f64, f64);

    fn volume(&self, p: f64) -> Result<f64>;

    fn area(&self, p: f64) -> Result<f64>;

    /// Volume together with `dV/dp`, when a closed form is available.
    fn volume_with_derivative(&self, _p: f64) -> Option<(f64, f64)> {
        None
    }
}

/// Anything mapping an enclosed volume to a lower bound or exact value of
/// the least boundary area.
pub trait Profile: Send + Sync {
    fn label(&self) -> String;

    /// Closed volume interval on which [`Profile::area`] is defined.
    fn domain(&self) -> (f64, f64);

    fn area(&self, volume: f64) -> Result<f64>;
}

/// Constant part of a profile beyond a threshold volume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatCap {
    pub v_threshold: f64,
    pub area: f64,
    /// Family parameter at which the branch reaches the cap.
    pub parameter: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchKind {
    Ball,
    Flat,
}

impl BranchKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BranchKind::Ball => "ball",
            BranchKind::Flat => "flat",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSample {
    pub volume: f64,
    pub area: f64,
    pub parameter: f64,
    pub branch: BranchKind,
}

#[derive(Debug, Clone, Copy)]
struct TableEntry {
    parameter: f64,
    volume: f64,
}

/// A computable isoperimetric profile: a parametric branch `(s_v·V(p), s_a·A(p))`
/// inverted numerically, optionally followed by a flat cap.
#[derive(Clone)]
pub struct ProfileCurve {
    label: String,
    family: Arc<dyn ParametricFamily>,
    volume_scale: f64,
    area_scale: f64,
    param_range: (f64, f64),
    flat_cap: Option<FlatCap>,
    table: Vec<TableEntry>,
}

impl std::fmt::Debug for ProfileCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProfileCurve")
            .field("label", &self.label)
            .field("volume_scale", &self.volume_scale)
            .field("area_scale", &self.area_scale)
            .field("param_range", &self.param_range)
            .field("flat_cap", &self.flat_cap)
            .field("table_len", &self.table.len())
            .finish()
    }
}

impl ProfileCurve {
    /// Builds a curve over `param_range` (a sub-interval of the family's
    /// branch starting at its lower end) and tabulates `table_size + 1`
    /// volumes for bracketing.
    pub fn new(
        label: impl Into<String>,
        family: Arc<dyn ParametricFamily>,
        scaling: (f64, f64),
        param_range: (f64, f64),
        flat_cap: Option<FlatCap>,
        table_size: usize,
    ) -> Result<Self> {
        let (p0, p1) = param_range;
        if !(p1 > p0) {
            return Err(Error::Precondition(format!(
                "empty parameter range [{p0}, {p1}]"
            )));
        }
        let n = table_size.max(2);
        let mut table = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let p = p0 + (p1 - p0) * i as f64 / n as f64;
            let volume = if i == 0 {
                0.0
            } else {
                scaling.0 * family.volume(p)?
            };
            table.push(TableEntry {
                parameter: p,
                volume,
            });
        }
        if let Some(w) = table.windows(2).find(|w| w[1].volume <= w[0].volume) {
            return Err(Error::Precondition(format!(
                "volume not increasing between parameters {} and {}",
                w[0].parameter, w[1].parameter
            )));
        }
        Ok(Self {
            label: label.into(),
            family,
            volume_scale: scaling.0,
            area_scale: scaling.1,
            param_range,
            flat_cap,
            table,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn flat_cap(&self) -> Option<FlatCap> {
        self.flat_cap
    }

    pub fn scaling(&self) -> (f64, f64) {
        (self.volume_scale, self.area_scale)
    }

    pub fn param_range(&self) -> (f64, f64) {
        self.param_range
    }

    /// Largest volume reached on the parametric branch.
    pub fn branch_volume(&self) -> f64 {
        self.table.last().map(|e| e.volume).unwrap_or(0.0)
    }

    /// Closed volume interval where the curve is defined (`(0, ∞)` with a cap).
    pub fn volume_domain(&self) -> (f64, f64) {
        match self.flat_cap {
            Some(_) => (0.0, f64::INFINITY),
            None => (0.0, self.branch_volume()),
        }
    }

    pub fn volume_at(&self, p: f64) -> Result<f64> {
        if p == self.param_range.0 {
            return Ok(0.0);
        }
        Ok(self.volume_scale * self.family.volume(p)?)
    }

    pub fn area_at(&self, p: f64) -> Result<f64> {
        if p == self.param_range.0 {
            return Ok(0.0);
        }
        Ok(self.area_scale * self.family.area(p)?)
    }

    fn range_error(&self, v: f64) -> Error {
        let (lo, hi) = self.volume_domain();
        Error::Range {
            curve: self.label.clone(),
            value: v,
            lo,
            hi,
        }
    }

    /// Parameter of the branch region enclosing `volume`.
    pub fn parameter_at(&self, volume: f64) -> Result<f64> {
        let vmax = self.branch_volume();
        if !(volume > 0.0 && volume <= vmax) {
            return Err(self.range_error(volume));
        }
        let idx = self.table.partition_point(|e| e.volume < volume);
        let hi = &self.table[idx];
        if hi.volume == volume {
            return Ok(hi.parameter);
        }
        let lo = &self.table[idx - 1];
        let (a, b) = (lo.parameter, hi.parameter);
        let scale = self.volume_scale;
        let family = &self.family;

        if family.volume_with_derivative(0.5 * (a + b)).is_some() {
            roots::newton_bisect(
                |p| {
                    let (v, dv) = family
                        .volume_with_derivative(p)
                        .expect("derivative available on whole branch");
                    (scale * v - volume, scale * dv)
                },
                a,
                b,
                INVERSION_TOL,
            )
        } else {
            let start = lo.parameter;
            roots::brent(
                |p| {
                    if p == start && lo.volume == 0.0 {
                        return -volume;
                    }
                    match family.volume(p) {
                        Ok(v) => scale * v - volume,
                        Err(_) => f64::NAN,
                    }
                },
                a,
                b,
                INVERSION_TOL,
            )
        }
    }

    /// Profile value at `volume` together with the branch it came from.
    pub fn evaluate_detailed(&self, volume: f64) -> Result<ProfileSample> {
        if !(volume > 0.0) {
            return Err(Error::Domain {
                op: "profile evaluate",
                detail: format!("{}: volume must be positive, got {volume}", self.label),
            });
        }
        if let Some(cap) = self.flat_cap {
            if volume >= cap.v_threshold {
                return Ok(ProfileSample {
                    volume,
                    area: cap.area,
                    parameter: cap.parameter,
                    branch: BranchKind::Flat,
                });
            }
        }
        let p = self.parameter_at(volume)?;
        Ok(ProfileSample {
            volume,
            area: self.area_at(p)?,
            parameter: p,
            branch: BranchKind::Ball,
        })
    }

    pub fn evaluate(&self, volume: f64) -> Result<f64> {
        self.evaluate_detailed(volume).map(|s| s.area)
    }

    /// Dense samples: `n` parameter-uniform points on the branch, then
    /// `flat_points` volumes on the cap up to `flat_extent` times its
    /// threshold.
    pub fn samples(&self, n: usize, flat_points: usize, flat_extent: f64) -> Result<Vec<ProfileSample>> {
        let (p0, p1) = self.param_range;
        let mut out = Vec::with_capacity(n + flat_points);
        for i in 1..=n {
            let p = p0 + (p1 - p0) * i as f64 / n as f64;
            out.push(ProfileSample {
                volume: self.volume_at(p)?,
                area: self.area_at(p)?,
                parameter: p,
                branch: BranchKind::Ball,
            });
        }
        if let Some(cap) = self.flat_cap {
            for i in 1..=flat_points {
                let v = cap.v_threshold * (1.0 + (flat_extent - 1.0) * i as f64 / flat_points as f64);
                out.push(ProfileSample {
                    volume: v,
                    area: cap.area,
                    parameter: cap.parameter,
                    branch: BranchKind::Flat,
                });
            }
        }
        Ok(out)
    }
}

impl Profile for ProfileCurve {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn domain(&self) -> (f64, f64) {
        self.volume_domain()
    }

    fn area(&self, volume: f64) -> Result<f64> {
        self.evaluate(volume)
    }
}

/// Area of the region of the given volume on `curve` (numerical inverse of
/// the volume map followed by the area map).
pub fn invert_profile(curve: &ProfileCurve, target_volume: f64) -> Result<f64> {
    curve.evaluate(target_volume)
}

/// Writes samples as CSV with columns `volume,area,parameter,branch`.
pub fn samples_to_csv(samples: &[ProfileSample]) -> String {
    let mut s = String::from("volume,area,parameter,branch\n");
    for p in samples {
        let _ = writeln!(
            s,
            "{:.17e},{:.17e},{:.17e},{}",
            p.volume,
            p.area,
            p.parameter,
            p.branch.as_str()
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Unit disk family in the plane: V = πr², A = 2πr.
    struct Disks;

    impl ParametricFamily for Disks {
        fn branch(&self) -> (f64, f64) {
            (0.0, 10.0)
        }
        fn volume(&self, p: f64) -> Result<f64> {
            Ok(std::f64::consts::PI * p * p)
        }
        fn area(&self, p: f64) -> Result<f64> {
            Ok(2.0 * std::f64::consts::PI * p)
        }
    }

    fn disks(cap: Option<FlatCap>) -> ProfileCurve {
        ProfileCurve::new("disks", Arc::new(Disks), (1.0, 1.0), (0.0, 2.0), cap, 64).unwrap()
    }

    #[test]
    fn brent_inversion_recovers_radius() {
        let c = disks(None);
        let v = std::f64::consts::PI * 1.7f64.powi(2);
        let p = c.parameter_at(v).unwrap();
        assert!((p - 1.7).abs() < 1e-11);
    }

    #[test]
    fn outside_range_is_a_range_error() {
        let c = disks(None);
        assert!(matches!(c.evaluate(100.0), Err(Error::Range { .. })));
        assert!(matches!(c.evaluate(-1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn cap_applies_beyond_threshold() {
        let cap = FlatCap {
            v_threshold: 2.0,
            area: 99.0,
            parameter: 0.8,
        };
        let c = disks(Some(cap));
        assert_eq!(c.evaluate(2.5).unwrap(), 99.0);
        assert_eq!(c.evaluate_detailed(1e6).unwrap().branch, BranchKind::Flat);
        assert!(c.evaluate(1.0).unwrap() < 99.0);
    }

    #[test]
    fn csv_has_header_and_rows() {
        let c = disks(None);
        let csv = samples_to_csv(&c.samples(4, 0, 1.0).unwrap());
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "volume,area,parameter,branch");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].ends_with(",ball"));
    }
}
