//! Verification certificates and their text reports.

use std::fmt::Write as _;

/// Floating-point slack applied to every margin comparison.
pub const MARGIN_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Grid,
    Chord,
    Ratio,
    Analytic,
    Property,
    Assumed,
    Composite,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Grid => "grid",
            Method::Chord => "chord",
            Method::Ratio => "ratio",
            Method::Analytic => "analytic",
            Method::Property => "property",
            Method::Assumed => "assumed",
            Method::Composite => "composite",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Verified,
    AssumedTheorem,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Verified => "verified",
            Kind::AssumedTheorem => "assumed theorem",
        }
    }
}

/// How a margin is compared against the slack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inequality {
    /// `margin ≥ −slack`
    NonStrict,
    /// `margin > slack`
    Strict,
}

impl Inequality {
    pub fn holds(self, margin: f64) -> bool {
        match self {
            Inequality::NonStrict => margin >= -MARGIN_SLACK,
            Inequality::Strict => margin > MARGIN_SLACK,
        }
    }
}

/// Outcome of one checked statement.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub id: String,
    pub statement: String,
    /// Interval or grid description.
    pub range: String,
    /// Smallest margin found; `NaN` for assumed theorems.
    pub worst_margin: f64,
    /// Location of the smallest margin, when meaningful.
    pub worst_at: Option<f64>,
    pub method: Method,
    pub kind: Kind,
    pub pass: bool,
    pub details: Vec<String>,
    pub children: Vec<Certificate>,
}

impl Certificate {
    #[allow(clippy::too_many_arguments)]
    pub fn from_margin(
        id: impl Into<String>,
        statement: impl Into<String>,
        range: impl Into<String>,
        worst_margin: f64,
        worst_at: Option<f64>,
        method: Method,
        inequality: Inequality,
    ) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            range: range.into(),
            worst_margin,
            worst_at,
            method,
            kind: Kind::Verified,
            pass: inequality.holds(worst_margin),
            details: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn assumed(id: impl Into<String>, statement: impl Into<String>, range: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            statement: statement.into(),
            range: range.into(),
            worst_margin: f64::NAN,
            worst_at: None,
            method: Method::Assumed,
            kind: Kind::AssumedTheorem,
            pass: true,
            details: Vec::new(),
            children: Vec::new(),
        }
    }

    /// Combines children; passes iff every verified child passes. The worst
    /// margin is the smallest finite child margin.
    pub fn composite(
        id: impl Into<String>,
        statement: impl Into<String>,
        range: impl Into<String>,
        children: Vec<Certificate>,
    ) -> Self {
        let mut worst = f64::INFINITY;
        let mut at = None;
        for c in &children {
            if c.worst_margin.is_finite() && c.worst_margin < worst {
                worst = c.worst_margin;
                at = c.worst_at;
            }
        }
        if worst == f64::INFINITY {
            worst = f64::NAN;
        }
        let pass = children.iter().all(|c| c.pass);
        Self {
            id: id.into(),
            statement: statement.into(),
            range: range.into(),
            worst_margin: worst,
            worst_at: at,
            method: Method::Composite,
            kind: Kind::Verified,
            pass,
            details: Vec::new(),
            children,
        }
    }

    pub fn with_detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    /// Depth-first list of this certificate and all descendants.
    pub fn flatten(&self) -> Vec<&Certificate> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.flatten());
        }
        out
    }

    /// First failing leaf, if any.
    pub fn first_failure(&self) -> Option<&Certificate> {
        if self.pass {
            return None;
        }
        for c in &self.children {
            if let Some(f) = c.first_failure() {
                return Some(f);
            }
        }
        Some(self)
    }

    pub fn count(&self) -> usize {
        self.flatten().len()
    }

    /// One line per statement with nesting shown by indentation.
    pub fn report(&self) -> String {
        let mut out = String::new();
        self.report_into(&mut out, 0);
        out
    }

    fn report_into(&self, out: &mut String, depth: usize) {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let indent = "  ".repeat(depth);
        let margin = if self.worst_margin.is_nan() {
            "-".to_string()
        } else {
            format!("{:.6e}", self.worst_margin)
        };
        let at = self.worst_at.map(|x| format!(" at {x:.6}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{indent}[{status}] {} | {} | range {} | margin {margin}{at} | {} | {}",
            self.id,
            self.statement,
            self.range,
            self.method.as_str(),
            self.kind.as_str()
        );
        for d in &self.details {
            let _ = writeln!(out, "{indent}    - {d}");
        }
        for c in &self.children {
            c.report_into(out, depth + 1);
        }
    }

    /// `key=value` lines, keys prefixed by the dotted certificate path.
    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        self.kv_into(&mut out, "");
        out
    }

    fn kv_into(&self, out: &mut String, prefix: &str) {
        let key = if prefix.is_empty() {
            self.id.clone()
        } else {
            format!("{prefix}.{}", self.id)
        };
        let _ = writeln!(out, "{key}.pass={}", self.pass);
        let _ = writeln!(out, "{key}.kind={}", self.kind.as_str());
        let _ = writeln!(out, "{key}.method={}", self.method.as_str());
        let _ = writeln!(out, "{key}.range={}", self.range);
        let _ = writeln!(out, "{key}.margin={:.17e}", self.worst_margin);
        if let Some(x) = self.worst_at {
            let _ = writeln!(out, "{key}.at={x:.17e}");
        }
        for c in &self.children {
            c.kv_into(out, &key);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slack_rules() {
        assert!(Inequality::NonStrict.holds(0.0));
        assert!(Inequality::NonStrict.holds(-5e-10));
        assert!(!Inequality::NonStrict.holds(-1e-8));
        assert!(!Inequality::Strict.holds(0.0));
        assert!(Inequality::Strict.holds(1e-6));
    }

    #[test]
    fn composite_propagates_failure() {
        let ok = Certificate::from_margin("a", "x", "[0,1]", 0.5, Some(0.2), Method::Grid, Inequality::Strict);
        let bad = Certificate::from_margin("b", "y", "[0,1]", -0.1, Some(0.7), Method::Grid, Inequality::Strict);
        let c = Certificate::composite("top", "z", "[0,1]", vec![ok, bad, Certificate::assumed("t", "w", "-")]);
        assert!(!c.pass);
        assert_eq!(c.worst_margin, -0.1);
        assert_eq!(c.first_failure().unwrap().id, "b");
        assert_eq!(c.count(), 4);
    }

    #[test]
    fn kv_lines_are_prefixed() {
        let leaf = Certificate::from_margin("leaf", "s", "r", 1.0, None, Method::Series, Inequality::Strict);
        let top = Certificate::composite("top", "s", "r", vec![leaf]);
        let kv = top.to_kv();
        assert!(kv.contains("top.leaf.pass=true"));
        assert!(kv.contains("top.kind=verified"));
    }

    #[test]
    fn report_marks_assumed() {
        let r = Certificate::assumed("ros", "product", "all v").report();
        assert!(r.contains("assumed theorem"));
        assert!(r.starts_with("[PASS] ros"));
    }
}
