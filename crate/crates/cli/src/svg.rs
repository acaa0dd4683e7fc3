//! Self-contained SVG line plots on a fixed 800×600 canvas.

use std::fmt::Write as _;

use isoprofile::figures::Figure;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 30.0;
const TOP: f64 = 70.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 4] = ["#1f4e9c", "#c0392b", "#2e7d32", "#6a1b9a"];

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !(hi > lo) {
        let pad = if lo.is_finite() { lo.abs().max(1.0) * 0.05 } else { 1.0 };
        let mid = if lo.is_finite() { lo } else { 0.0 };
        return (mid - pad, mid + pad);
    }
    let pad = 0.04 * (hi - lo);
    (lo - pad, hi + pad)
}

/// Round tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e4 || v.abs() < 1e-2 {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(fig: &Figure) -> String {
    let (x0, x1) = bounds(fig.volumes.iter().copied());
    let (y0, y1) = bounds(fig.lines.iter().flat_map(|l| l.values.iter().copied()));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600" width="800" height="600" font-family="sans-serif" font-size="13">"#
    );
    let _ = writeln!(s, r#"<rect width="800" height="600" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="400" y="28" text-anchor="middle" font-size="15">{}</text>"#,
        escape(&fig.title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for t in ticks(x0, x1) {
        let x = sx(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{b:.2}" x2="{x:.2}" y2="{TOP}" stroke="#e0e0e0"/><text x="{x:.2}" y="{ty:.2}" text-anchor="middle">{l}</text>"##,
            b = TOP + ph,
            ty = TOP + ph + 20.0,
            l = label(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = sy(t);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{r:.2}" y2="{y:.2}" stroke="#e0e0e0"/><text x="{tx:.2}" y="{ly:.2}" text-anchor="end">{l}</text>"##,
            r = LEFT + pw,
            tx = LEFT - 8.0,
            ly = y + 4.0,
            l = label(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="590" text-anchor="middle">volume</text>"#,
        LEFT + pw / 2.0
    );
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">area</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for (i, line) in fig.lines.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let dash = if line.dashed { r#" stroke-dasharray="8 5""# } else { "" };
        let mut pts = String::new();
        for (x, y) in fig.volumes.iter().zip(&line.values) {
            if y.is_finite() {
                let _ = write!(pts, "{:.2},{:.2} ", sx(*x), sy(*y));
            }
        }
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2"{dash} points="{}"/>"#,
            pts.trim_end()
        );
        let ly = 50.0;
        let lx = LEFT + 10.0 + 220.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 30.0,
            lx + 38.0,
            ly + 4.0,
            escape(&line.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use isoprofile::figures::Line;

    fn fig() -> Figure {
        Figure {
            name: "t".into(),
            title: "a < b".into(),
            volumes: vec![0.0, 1.0, 2.0],
            lines: vec![
                Line { label: "f".into(), values: vec![0.0, 1.0, 4.0], dashed: false },
                Line { label: "g".into(), values: vec![0.0, 0.5, 1.0], dashed: true },
            ],
            margin: None,
        }
    }

    #[test]
    fn fixed_canvas_and_dash() {
        let s = render(&fig());
        assert!(s.starts_with(r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 800 600""#));
        assert_eq!(s.matches("<polyline").count(), 2);
        assert_eq!(s.matches("stroke-dasharray").count(), 2);
        assert!(s.contains("a &lt; b"));
        assert_eq!(s, render(&fig()));
    }

    #[test]
    fn tick_steps() {
        assert_eq!(ticks(0.0, 10.0), vec![0.0, 2.0, 4.0, 6.0, 8.0, 10.0]);
        assert!(ticks(83.5, 450.0).len() >= 4);
        assert_eq!(label(1500.0), "1500");
        assert_eq!(label(0.25), "0.25");
    }

    #[test]
    fn flat_data_gets_a_range() {
        let (lo, hi) = bounds([3.0, 3.0].into_iter());
        assert!(lo < 3.0 && hi > 3.0);
    }
}
