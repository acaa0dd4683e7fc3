//! Browser bindings: comparison figures, the Yamabe bound constants and a
//! symmetrization demo.

use isoprofile::figures::{figure, Curve, Figure};
use isoprofile::radial::{DomainTag, RadialTestFunction};
use isoprofile::yamabe::{analyze_chain, bound_constants, BoundConstants, ChainAnalysis};
use wasm_bindgen::prelude::*;

#[wasm_bindgen]
pub struct FigureData {
    inner: Figure,
}

#[wasm_bindgen]
impl FigureData {
    pub fn title(&self) -> String {
        self.inner.title.clone()
    }

    pub fn volumes(&self) -> Vec<f64> {
        self.inner.volumes.clone()
    }

    pub fn line_count(&self) -> usize {
        self.inner.lines.len()
    }

    pub fn line(&self, i: usize) -> Vec<f64> {
        self.inner.lines.get(i).map(|l| l.values.clone()).unwrap_or_default()
    }

    pub fn label(&self, i: usize) -> String {
        self.inner.lines.get(i).map(|l| l.label.clone()).unwrap_or_default()
    }

    pub fn dashed(&self, i: usize) -> bool {
        self.inner.lines.get(i).is_some_and(|l| l.dashed)
    }

    /// Smallest `lines[0] − lines[1]`, or NaN for plain profiles.
    pub fn min_margin(&self) -> f64 {
        self.inner.min_margin().map_or(f64::NAN, |m| m.0)
    }

    pub fn min_margin_at(&self) -> f64 {
        self.inner.min_margin().map_or(f64::NAN, |m| m.1)
    }
}

fn figure_impl(name: &str, eps: f64, points: usize) -> Result<Figure, String> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(format!("eps must be positive, got {eps}"));
    }
    let curve: Curve = name.parse().map_err(|e: isoprofile::Error| e.to_string())?;
    figure(curve, eps, points.clamp(2, 5000)).map_err(|e| e.to_string())
}

/// Samples a profile or comparison figure by name (`figure2`, `s4`, ...).
#[wasm_bindgen]
pub fn comparison_figure(name: &str, eps: f64, points: usize) -> Result<FigureData, JsError> {
    figure_impl(name, eps, points)
        .map(|inner| FigureData { inner })
        .map_err(|e| JsError::new(&e))
}

/// Names accepted by [`comparison_figure`], separated by commas.
#[wasm_bindgen]
pub fn figure_names() -> String {
    Curve::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",")
}

fn constants_impl(eps: f64) -> Result<BoundConstants, String> {
    bound_constants(eps).map_err(|e| e.to_string())
}

/// `[eps, lambda1, lambda2, c, c², Y(S⁴), c²·Y(S⁴), c² − 2/3]`
#[wasm_bindgen]
pub fn constants(eps: f64) -> Result<Vec<f64>, JsError> {
    let b = constants_impl(eps).map_err(|e| JsError::new(&e))?;
    Ok(vec![b.eps, b.lambda1, b.lambda2, b.c, b.c_squared, b.y_s4, b.bound, b.two_thirds_margin])
}

#[wasm_bindgen]
pub struct SymmetrizeResult {
    inner: ChainAnalysis,
    pass: bool,
}

#[wasm_bindgen]
impl SymmetrizeResult {
    pub fn y_cyl(&self) -> f64 {
        self.inner.y_cyl
    }

    pub fn y_sphere(&self) -> f64 {
        self.inner.y_sphere_side
    }

    /// Relative margin of `Y_cyl ≥ c²·Y_sphere`.
    pub fn yamabe_margin(&self) -> f64 {
        self.inner.yamabe_margin
    }

    pub fn norm_error(&self) -> f64 {
        self.inner.norm_error
    }

    pub fn pass(&self) -> bool {
        self.pass
    }

    pub fn layer_count(&self) -> usize {
        self.inner.layers.len()
    }

    /// Angles of the symmetrized layer on the sphere.
    pub fn layer_angles(&self, i: usize) -> Vec<f64> {
        self.inner.layers.get(i).map(|l| l.symmetrized.breakpoints().to_vec()).unwrap_or_default()
    }

    pub fn layer_values(&self, i: usize) -> Vec<f64> {
        self.inner.layers.get(i).map(|l| l.symmetrized.values().to_vec()).unwrap_or_default()
    }
}

fn symmetrize_impl(radii: Vec<f64>, values: Vec<f64>, eps: f64) -> Result<SymmetrizeResult, String> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(format!("eps must be positive, got {eps}"));
    }
    let f = RadialTestFunction::new(DomainTag::S2xR2, radii, values).map_err(|e| e.to_string())?;
    let inner = analyze_chain(&f, eps).map_err(|e| e.to_string())?;
    let pass = inner.certificate("demo").pass;
    Ok(SymmetrizeResult { inner, pass })
}

/// Symmetrizes the piecewise-linear radial function through
/// `(radii[i], values[i])` on `S² × ℝ²` and evaluates the Yamabe chain.
#[wasm_bindgen]
pub fn symmetrize(radii: Vec<f64>, values: Vec<f64>, eps: f64) -> Result<SymmetrizeResult, JsError> {
    symmetrize_impl(radii, values, eps).map_err(|e| JsError::new(&e))
}
