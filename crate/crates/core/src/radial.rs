//! Piecewise-linear radial test functions on `S² × ℝ²` (radial in the
//! `ℝ²` factor) and on the scaled four-sphere (radial about a pole).

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::sphere::SphereSpec;

/// Where a radial test function lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainTag {
    /// `f(q, x) = φ(|x|)` on `S² × ℝ²`; breakpoints are radii in `ℝ²`.
    S2xR2,
    /// `f = φ(r)` on the scaled `S⁴`; breakpoints are polar angles.
    S4,
}

impl DomainTag {
    pub fn as_str(self) -> &'static str {
        match self {
            DomainTag::S2xR2 => "s2xR2",
            DomainTag::S4 => "s4",
        }
    }
}

impl FromStr for DomainTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "s2xR2" => Ok(DomainTag::S2xR2),
            "s4" => Ok(DomainTag::S4),
            other => Err(format!("unknown domain tag {other:?}")),
        }
    }
}

/// Area of the `S²` factor.
pub const S2_AREA: f64 = 4.0 * PI;

/// `φ` given by values at increasing breakpoints, linear in between.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTestFunction {
    domain: DomainTag,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl RadialTestFunction {
    /// Validates: first breakpoint 0, strictly increasing breakpoints,
    /// nonnegative nonincreasing values, last value 0. On `S⁴` angles lie
    /// in `[0, π]` and the last value may be positive when the last
    /// breakpoint is `π`.
    pub fn new(domain_tag: DomainTag, breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let op = "RadialTestFunction::new";
        if breakpoints.len() != values.len() {
            return Err(domain(op, "breakpoints and values differ in length"));
        }
        if breakpoints.len() < 2 {
            return Err(domain(op, "need at least two breakpoints"));
        }
        if breakpoints[0] != 0.0 {
            return Err(domain(op, format!("first breakpoint must be 0, got {}", breakpoints[0])));
        }
        if breakpoints.iter().any(|b| !b.is_finite()) || values.iter().any(|v| !v.is_finite()) {
            return Err(domain(op, "non-finite entry"));
        }
        if let Some(w) = breakpoints.windows(2).find(|w| w[1] <= w[0]) {
            return Err(domain(op, format!("breakpoints not increasing at {}", w[1])));
        }
        if values.iter().any(|&v| v < 0.0) {
            return Err(domain(op, "values must be nonnegative"));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] > w[0]) {
            return Err(domain(op, format!("values not nonincreasing at {}", w[1])));
        }
        let last_b = *breakpoints.last().unwrap();
        let last_v = *values.last().unwrap();
        match domain_tag {
            DomainTag::S2xR2 => {
                if last_v != 0.0 {
                    return Err(domain(op, "last value must be 0 (compact support)"));
                }
            }
            DomainTag::S4 => {
                if last_b > PI {
                    return Err(domain(op, format!("angle {last_b} exceeds π")));
                }
                if last_v != 0.0 && last_b != PI {
                    return Err(domain(op, "last value must be 0 unless the last angle is π"));
                }
            }
        }
        Ok(Self {
            domain: domain_tag,
            breakpoints,
            values,
        })
    }

    pub fn zero(domain_tag: DomainTag) -> Self {
        Self {
            domain: domain_tag,
            breakpoints: vec![0.0, 1.0],
            values: vec![0.0, 0.0],
        }
    }

    pub fn domain(&self) -> DomainTag {
        self.domain
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values[0]
    }

    pub fn is_zero(&self) -> bool {
        self.values[0] == 0.0
    }

    pub fn segments(&self) -> usize {
        self.breakpoints.len() - 1
    }

    /// `k·φ`
    pub fn scaled(&self, k: f64) -> Result<Self> {
        if !(k >= 0.0) {
            return Err(domain("RadialTestFunction::scaled", "factor must be nonnegative"));
        }
        Ok(Self {
            values: self.values.iter().map(|v| v * k).collect(),
            ..self.clone()
        })
    }

    /// `φ(s)`, zero beyond the last breakpoint.
    pub fn value(&self, s: f64) -> f64 {
        let b = &self.breakpoints;
        if s >= *b.last().unwrap() {
            return if s == *b.last().unwrap() { *self.values.last().unwrap() } else { 0.0 };
        }
        let k = b.partition_point(|&x| x <= s).saturating_sub(1);
        let t = (s - b[k]) / (b[k + 1] - b[k]);
        self.values[k] + t * (self.values[k + 1] - self.values[k])
    }

    /// `φ'` on segment `k`.
    pub fn slope(&self, k: usize) -> f64 {
        (self.values[k + 1] - self.values[k]) / (self.breakpoints[k + 1] - self.breakpoints[k])
    }

    /// `sup{s : φ(s) > t}`, or 0 when `t ≥ max φ`.
    pub fn level_radius(&self, t: f64) -> f64 {
        if t >= self.values[0] {
            return 0.0;
        }
        let v = &self.values;
        let b = &self.breakpoints;
        let last = v.len() - 1;
        if v[last] > t {
            return b[last];
        }
        let k = (0..last).rev().find(|&k| v[k] > t).expect("values[0] > t");
        b[k] + (v[k] - t) / (v[k] - v[k + 1]) * (b[k + 1] - b[k])
    }

    /// Radius of the support `{φ > 0}`.
    pub fn support_radius(&self) -> f64 {
        self.level_radius(0.0)
    }
}

/// Volume of `{f > t}` for `t ≥ 0`.
pub fn superlevel_volume(f: &RadialTestFunction, t: f64, eps: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(domain("superlevel_volume", format!("level must be nonnegative, got {t}")));
    }
    let s = f.level_radius(t);
    match f.domain {
        DomainTag::S2xR2 => Ok(S2_AREA * PI * s * s),
        DomainTag::S4 => Ok(SphereSpec::s4_scaled(eps)?.ball(s)?.volume),
    }
}

/// `(∫f, ∫f², ∫f⁴)`-style integrals: `∫ F(φ, φ') dvol` over the part of
/// the domain with radial coordinate in `[a, b]`, exact for polynomial
/// `F` of degree ≤ 8 on `S² × ℝ²` and to rounding on `S⁴` for the
/// breakpoint spacings used here.
pub fn radial_integral<F>(f: &RadialTestFunction, a: f64, b: f64, eps: f64, integrand: F) -> Result<f64>
where
    F: Fn(f64, f64) -> f64,
{
    let gl = GaussLegendre::new(8);
    let weight: Box<dyn Fn(f64) -> f64> = match f.domain {
        DomainTag::S2xR2 => Box::new(|rho: f64| S2_AREA * 2.0 * PI * rho),
        DomainTag::S4 => {
            let sphere = SphereSpec::s4_scaled(eps)?;
            Box::new(move |r: f64| sphere.ball_volume_derivative(r))
        }
    };
    let pieces = match f.domain {
        DomainTag::S2xR2 => 1,
        DomainTag::S4 => 4,
    };
    let mut total = 0.0;
    for k in 0..f.segments() {
        let lo = f.breakpoints[k].max(a);
        let hi = f.breakpoints[k + 1].min(b);
        if hi <= lo {
            continue;
        }
        let slope = f.slope(k);
        let h = (hi - lo) / pieces as f64;
        for j in 0..pieces {
            let (x0, x1) = (lo + j as f64 * h, lo + (j + 1) as f64 * h);
            let (b0, v0) = (f.breakpoints[k], f.values[k]);
            total += gl.integrate(|s| integrand(v0 + slope * (s - b0), slope) * weight(s), x0, x1);
        }
    }
    Ok(total)
}

/// `∫ f^q dvol`
pub fn power_integral(f: &RadialTestFunction, q: f64, eps: f64) -> Result<f64> {
    radial_integral(f, 0.0, f64::INFINITY, eps, |v, _| v.powf(q))
}

/// `(∫ f^q dvol)^{1/q}`
pub fn lq_norm(f: &RadialTestFunction, q: f64, eps: f64) -> Result<f64> {
    Ok(power_integral(f, q, eps)?.powf(1.0 / q))
}

/// `∫ |∇f|² dvol`. On the scaled sphere `|∇f| = |φ'(r)|/√λ`.
pub fn gradient_energy(f: &RadialTestFunction, eps: f64) -> Result<f64> {
    let metric = match f.domain {
        DomainTag::S2xR2 => 1.0,
        DomainTag::S4 => SphereSpec::s4_scaled(eps)?.scale(),
    };
    radial_integral(f, 0.0, f64::INFINITY, eps, |_, d| d * d / metric)
}

/// Plain-text form: an optional `domain <tag>` line, then one `s value`
/// pair per line.
impl fmt::Display for RadialTestFunction {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "domain {}", self.domain.as_str())?;
        for (b, v) in self.breakpoints.iter().zip(&self.values) {
            writeln!(out, "{b:.17e} {v:.17e}")?;
        }
        Ok(())
    }
}

/// Parses blocks separated by blank lines; `#` starts a comment.
pub fn parse_functions(text: &str) -> Result<Vec<RadialTestFunction>> {
    let mut out = Vec::new();
    let mut tag = DomainTag::S2xR2;
    let mut bps = Vec::new();
    let mut vals = Vec::new();
    let mut start = 0;

    let mut flush = |tag: &mut DomainTag, bps: &mut Vec<f64>, vals: &mut Vec<f64>, line: usize| -> Result<()> {
        if !bps.is_empty() {
            let f = RadialTestFunction::new(*tag, std::mem::take(bps), std::mem::take(vals)).map_err(|e| {
                Error::Parse {
                    line,
                    detail: e.to_string(),
                }
            })?;
            out.push(f);
        }
        *tag = DomainTag::S2xR2;
        Ok(())
    };

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            if raw.trim().is_empty() {
                flush(&mut tag, &mut bps, &mut vals, start)?;
            }
            continue;
        }
        if bps.is_empty() {
            start = line_no;
        }
        if let Some(rest) = line.strip_prefix("domain") {
            if !bps.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    detail: "domain line must precede the pairs of its block".into(),
                });
            }
            tag = rest.trim().parse().map_err(|detail| Error::Parse { line: line_no, detail })?;
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse {
                line: line_no,
                detail: format!("expected two numbers, got {line:?}"),
            });
        };
        let parse = |s: &str| {
            s.parse::<f64>().map_err(|e| Error::Parse {
                line: line_no,
                detail: format!("{s:?}: {e}"),
            })
        };
        bps.push(parse(a)?);
        vals.push(parse(b)?);
    }
    flush(&mut tag, &mut bps, &mut vals, start)?;
    Ok(out)
}

/// Inverse of [`parse_functions`].
pub fn write_functions(fs: &[RadialTestFunction]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EPS_DEFAULT;
    use approx::assert_relative_eq;

    fn tent() -> RadialTestFunction {
        RadialTestFunction::new(DomainTag::S2xR2, vec![0.0, 1.0], vec![1.0, 0.0]).unwrap()
    }

    #[test]
    fn validation() {
        use DomainTag::*;
        assert!(RadialTestFunction::new(S2xR2, vec![0.0, 1.0], vec![1.0, 0.5]).is_err());
        assert!(RadialTestFunction::new(S2xR2, vec![0.0, 1.0], vec![0.5, 1.0]).is_err());
        assert!(RadialTestFunction::new(S2xR2, vec![0.1, 1.0], vec![1.0, 0.0]).is_err());
        assert!(RadialTestFunction::new(S4, vec![0.0, PI], vec![1.0, 1.0]).is_ok());
        assert!(RadialTestFunction::new(S4, vec![0.0, 3.0], vec![1.0, 1.0]).is_err());
    }

    #[test]
    fn superlevel_of_tent() {
        let f = tent();
        assert_eq!(superlevel_volume(&f, 1.0, EPS_DEFAULT).unwrap(), 0.0);
        assert_eq!(superlevel_volume(&f, 2.0, EPS_DEFAULT).unwrap(), 0.0);
        assert_relative_eq!(superlevel_volume(&f, 0.0, EPS_DEFAULT).unwrap(), 4.0 * PI * PI, max_relative = 1e-15);
        assert_relative_eq!(superlevel_volume(&f, 0.5, EPS_DEFAULT).unwrap(), PI * PI, max_relative = 1e-15);
        assert!(superlevel_volume(&f, -0.1, EPS_DEFAULT).is_err());
    }

    #[test]
    fn tent_integrals() {
        // ∫ (1−ρ)^q 8π²ρ dρ = 8π² / ((q+1)(q+2))
        let f = tent();
        for q in [1.0, 2.0, 4.0] {
            let exact = 8.0 * PI * PI / ((q + 1.0) * (q + 2.0));
            assert_relative_eq!(power_integral(&f, q, 1.0).unwrap(), exact, max_relative = 1e-14);
        }
        assert_relative_eq!(gradient_energy(&f, 1.0).unwrap(), 4.0 * PI * PI, max_relative = 1e-14);
    }

    #[test]
    fn level_radius_with_plateau() {
        let f = RadialTestFunction::new(DomainTag::S2xR2, vec![0.0, 1.0, 2.0, 3.0], vec![2.0, 1.0, 1.0, 0.0]).unwrap();
        assert_eq!(f.level_radius(1.0), 1.0);
        assert_relative_eq!(f.level_radius(0.999), 2.001, max_relative = 1e-12);
        assert_relative_eq!(f.level_radius(1.5), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn text_round_trip() {
        let f = RadialTestFunction::new(DomainTag::S2xR2, vec![0.0, 0.3, 1.7], vec![2.5, 0.1, 0.0]).unwrap();
        let g = RadialTestFunction::new(DomainTag::S4, vec![0.0, PI], vec![1.0, 1.0]).unwrap();
        let text = write_functions(&[f.clone(), g.clone()]);
        assert_eq!(parse_functions(&text).unwrap(), vec![f, g]);
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_functions("0 1\n1 oops\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e:?}");
        let e = parse_functions("# c\n0 1\n1 0.5\n").unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }
}
