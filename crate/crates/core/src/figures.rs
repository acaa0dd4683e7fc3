//! Sampled curves for profile dumps and the comparison figures.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::comparison::{build_chord, map_nodes, morgan_product_bound, s3xr_flat_area, sqrt_bound, ComparisonConfig, GridSpec};
use crate::constants::comparison_constant;
use crate::cylinder::{flatten_threshold, profile_s2xr, profile_s3_3xr};
use crate::error::{Error, Result};
use crate::profile::Profile;
use crate::small_volume::volume_s2xr_x;
use crate::sphere::{profile_s3_3, profile_s4_scaled};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Curve {
    S2xR,
    S3_3xR,
    S3_3,
    S4,
    Morgan,
    Figure1a,
    Figure1b,
    Figure1c,
    Figure2,
    Figure3a,
    Figure3b,
}

impl Curve {
    pub const ALL: [Curve; 11] = [
        Curve::S2xR,
        Curve::S3_3xR,
        Curve::S3_3,
        Curve::S4,
        Curve::Morgan,
        Curve::Figure1a,
        Curve::Figure1b,
        Curve::Figure1c,
        Curve::Figure2,
        Curve::Figure3a,
        Curve::Figure3b,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Curve::S2xR => "s2xR",
            Curve::S3_3xR => "s3_3xR",
            Curve::S3_3 => "s3_3",
            Curve::S4 => "s4",
            Curve::Morgan => "morgan",
            Curve::Figure1a => "figure1a",
            Curve::Figure1b => "figure1b",
            Curve::Figure1c => "figure1c",
            Curve::Figure2 => "figure2",
            Curve::Figure3a => "figure3a",
            Curve::Figure3b => "figure3b",
        }
    }
}

impl FromStr for Curve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Curve::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Curve::ALL.iter().map(|c| c.as_str()).collect();
                Error::Precondition(format!("unknown curve '{s}' (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub label: String,
    pub values: Vec<f64>,
    pub dashed: bool,
}

/// Curves sampled on a shared volume grid. Comparison figures carry the
/// pointwise margin `lines[0] − lines[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub name: String,
    pub title: String,
    pub volumes: Vec<f64>,
    pub lines: Vec<Line>,
    pub margin: Option<Vec<f64>>,
}

impl Figure {
    /// Header row, then one row per volume with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("volume");
        for l in &self.lines {
            s.push(',');
            s.push_str(&l.label);
        }
        if self.margin.is_some() {
            s.push_str(",margin");
        }
        s.push('\n');
        for (i, v) in self.volumes.iter().enumerate() {
            let _ = write!(s, "{v:.16e}");
            for l in &self.lines {
                let _ = write!(s, ",{:.16e}", l.values[i]);
            }
            if let Some(m) = &self.margin {
                let _ = write!(s, ",{:.16e}", m[i]);
            }
            s.push('\n');
        }
        s
    }

    pub fn min_margin(&self) -> Option<(f64, f64)> {
        let m = self.margin.as_ref()?;
        m.iter()
            .zip(&self.volumes)
            .map(|(&m, &v)| (m, v))
            .fold(None, |acc: Option<(f64, f64)>, x| match acc {
                Some(a) if a.0 <= x.0 => Some(a),
                _ => Some(x),
            })
    }
}

fn sample(p: &dyn Profile, nodes: &[f64], scale: f64) -> Result<Vec<f64>> {
    map_nodes(nodes, |v| Ok(scale * p.area(v)?))
}

fn line(label: impl Into<String>, values: Vec<f64>, dashed: bool) -> Line {
    Line {
        label: label.into(),
        values,
        dashed,
    }
}

fn comparison(name: &str, title: String, nodes: Vec<f64>, lhs: Line, rhs: Line) -> Figure {
    let margin = lhs.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect();
    Figure {
        name: name.into(),
        title,
        volumes: nodes,
        lines: vec![lhs, rhs],
        margin: Some(margin),
    }
}

/// Uniform grid on `(0, hi]` skipping the degenerate zero volume.
fn open_grid(hi: f64, points: usize) -> Vec<f64> {
    (1..=points).map(|k| hi * k as f64 / points as f64).collect()
}

/// Volume ranges of the figure1a, figure1b and figure1c panels, from the windows
/// `x > 0.5`, `0.3 < x < 0.5`, `0.2 < x < 0.3` in the parameter `x = 1/h`.
pub fn figure1_ranges() -> Result<[(f64, f64); 3]> {
    let v_th = flatten_threshold(2)?.v_threshold;
    let v = volume_s2xr_x;
    Ok([(v(0.5), 3.0 * v_th), (v(0.3), v(0.5)), (v(0.2), v(0.3))])
}

pub fn figure(curve: Curve, eps: f64, points: usize) -> Result<Figure> {
    if points < 2 {
        return Err(Error::Precondition(format!("need at least 2 points, got {points}")));
    }
    let c = comparison_constant(eps);
    let cfg = ComparisonConfig::new(eps);
    let single = |name: &str, title: &str, p: &dyn Profile, hi: f64| -> Result<Figure> {
        let nodes = open_grid(hi, points);
        let values = sample(p, &nodes, 1.0)?;
        Ok(Figure {
            name: name.into(),
            title: title.into(),
            volumes: nodes,
            lines: vec![line(p.label(), values, false)],
            margin: None,
        })
    };
    match curve {
        Curve::S2xR => {
            let p = profile_s2xr()?;
            let hi = 3.0 * flatten_threshold(2)?.v_threshold;
            single("s2xR", "Isoperimetric profile of S2 x R", &p, hi)
        }
        Curve::S3_3xR => {
            let p = profile_s3_3xr()?;
            let hi = 2.0 * flatten_threshold(3)?.v_threshold;
            single("s3_3xR", "Isoperimetric profile of S3(3) x R", &p, hi)
        }
        Curve::S3_3 => {
            let p = profile_s3_3()?;
            let hi = p.domain().1;
            single("s3_3", "Isoperimetric profile of S3(3)", &p, hi)
        }
        Curve::S4 => {
            let p = profile_s4_scaled(eps)?;
            let hi = p.domain().1;
            single("s4", &format!("Isoperimetric profile of the scaled S4 (eps = {eps:.6})"), &p, hi)
        }
        Curve::Morgan => {
            let nodes = open_grid(cfg.chord_v2, points);
            let lower = map_nodes(&nodes, morgan_product_bound)?;
            let sq: Vec<f64> = nodes.iter().map(|&v| sqrt_bound(v)).collect();
            Ok(Figure {
                name: "morgan".into(),
                title: "Product bound I_P/sqrt2 and (4 pi/sqrt2) sqrt(v)".into(),
                volumes: nodes,
                lines: vec![line("I_P/sqrt2", lower, false), line("(4pi/sqrt2)sqrt(v)", sq, true)],
                margin: None,
            })
        }
        Curve::Figure1a | Curve::Figure1b | Curve::Figure1c => {
            let ranges = figure1_ranges()?;
            let (idx, window) = match curve {
                Curve::Figure1a => (0, "x > 0.5"),
                Curve::Figure1b => (1, "0.3 < x < 0.5"),
                _ => (2, "0.2 < x < 0.3"),
            };
            let (lo, hi) = ranges[idx];
            let nodes = GridSpec::linear(points).nodes(lo, hi);
            let lhs = profile_s2xr()?;
            let rhs = profile_s3_3()?;
            let l = sample(&lhs, &nodes, 1.0)?;
            let r = sample(&rhs, &nodes, 1.0)?;
            Ok(comparison(
                curve.as_str(),
                format!("I_S2xR (continuous) and I_S3(3) (dashed), {window}"),
                nodes,
                line("I_S2xR", l, false),
                line("I_S3(3)", r, true),
            ))
        }
        Curve::Figure2 => {
            let nodes = GridSpec::linear(points).nodes(5.0, 100.0);
            let l = sample(&profile_s3_3xr()?, &nodes, 1.0)?;
            let r = sample(&profile_s4_scaled(eps)?, &nodes, c)?;
            Ok(comparison(
                "figure2",
                format!("I_S3(3)xR (continuous) and {c:.4} I_S4scaled (dashed)"),
                nodes,
                line("I_S3(3)xR", l, false),
                line("c*I_S4scaled", r, true),
            ))
        }
        Curve::Figure3a => {
            let chord = build_chord(cfg.chord_v1, cfg.chord_v2)?;
            let nodes = GridSpec::linear(points).nodes(chord.v1, chord.v2);
            let flat = s3xr_flat_area();
            Ok(Figure {
                name: "figure3a".into(),
                title: "Line l(v) (dashed) over 8 sqrt2 pi^2 and (4 pi/sqrt2) sqrt(v)".into(),
                lines: vec![
                    line("l", nodes.iter().map(|&v| chord.evaluate(v)).collect(), true),
                    line("8sqrt2pi^2", vec![flat; nodes.len()], false),
                    line("(4pi/sqrt2)sqrt(v)", nodes.iter().map(|&v| sqrt_bound(v)).collect(), false),
                ],
                volumes: nodes,
                margin: None,
            })
        }
        Curve::Figure3b => {
            let chord = build_chord(cfg.chord_v1, cfg.chord_v2)?;
            let s4 = profile_s4_scaled(eps)?;
            let nodes = GridSpec::linear(points).nodes(chord.v1, s4.domain().1);
            let r = sample(&s4, &nodes, c)?;
            Ok(comparison(
                "figure3b",
                format!("Line l(v) (continuous) and {c:.4} I_S4scaled (dashed)"),
                nodes.clone(),
                line("l", nodes.iter().map(|&v| chord.evaluate(v)).collect(), false),
                line("c*I_S4scaled", r, true),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::EPS_DEFAULT;

    #[test]
    fn names_round_trip() {
        for c in Curve::ALL {
            assert_eq!(c.as_str().parse::<Curve>().unwrap(), c);
        }
        assert!("figure4".parse::<Curve>().is_err());
    }

    #[test]
    fn figure1_windows_tile() {
        let r = figure1_ranges().unwrap();
        assert!((r[2].0 - 0.25).abs() < 0.01);
        assert_eq!(r[2].1, r[1].0);
        assert_eq!(r[1].1, r[0].0);
        assert!(r[0].1 > 49.0);
    }

    #[test]
    fn comparison_margins_nonnegative() {
        for c in [Curve::Figure1a, Curve::Figure1b, Curve::Figure1c, Curve::Figure2, Curve::Figure3b] {
            let f = figure(c, EPS_DEFAULT, 200).unwrap();
            let (m, _) = f.min_margin().unwrap();
            assert!(m >= -1e-9, "{}: {m}", c.as_str());
        }
    }

    #[test]
    fn csv_shape() {
        let f = figure(Curve::Figure2, EPS_DEFAULT, 100).unwrap();
        let csv = f.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "volume,I_S3(3)xR,c*I_S4scaled,margin");
        assert_eq!(lines.count(), 100);
        let s = figure(Curve::S2xR, EPS_DEFAULT, 50).unwrap();
        assert!(s.margin.is_none());
        let last = s.lines[0].values.last().unwrap();
        assert!((last - 8.0 * std::f64::consts::PI).abs() < 1e-12);
    }
}
