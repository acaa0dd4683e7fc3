//! Model constants shared by the comparison and Yamabe modules.

/// Default tuning constant `ε = 1.047²`.
pub const EPS_DEFAULT: f64 = 1.047 * 1.047;

/// Metric multiplier on `S³` making its profile maximum equal `8π`.
pub const LAMBDA_S3: f64 = 2.0;

/// Metric multiplier `2^{3/2}·3^{1/4}·ε` on the comparison four-sphere.
pub fn lambda_s4(eps: f64) -> f64 {
    2f64.powf(1.5) * 3f64.powf(0.25) * eps
}

/// Profile comparison constant `c = 2√ε / 12^{3/8}`.
pub fn comparison_constant(eps: f64) -> f64 {
    2.0 * eps.sqrt() / 12f64.powf(0.375)
}

/// Yamabe bound constant `√2·ε / 3^{3/4}`; algebraically equal to `c²`.
pub fn yamabe_ratio(eps: f64) -> f64 {
    2f64.sqrt() * eps / 3f64.powf(0.75)
}

/// Constants entering the four-dimensional Yamabe functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YamabeConstants {
    /// `a₄ = 4(n−1)/(n−2)` at `n = 4`.
    pub a4: f64,
    /// `p₄ = 2n/(n−2)` at `n = 4`.
    pub p4: f64,
    /// Scalar curvature of `S² × ℝ²` with the product metric.
    pub s_cyl: f64,
    /// Scalar curvature `12^{3/4}/(2ε)` of the comparison four-sphere.
    pub s_sphere: f64,
    pub eps: f64,
}

impl YamabeConstants {
    pub fn new(eps: f64) -> Self {
        let n = 4.0;
        Self {
            a4: 4.0 * (n - 1.0) / (n - 2.0),
            p4: 2.0 * n / (n - 2.0),
            s_cyl: 2.0,
            s_sphere: 12f64.powf(0.75) / (2.0 * eps),
            eps,
        }
    }
}

impl Default for YamabeConstants {
    fn default() -> Self {
        Self::new(EPS_DEFAULT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn a4_and_p4() {
        let k = YamabeConstants::default();
        assert_eq!(k.a4, 6.0);
        assert_eq!(k.p4, 4.0);
    }

    #[test]
    fn sphere_curvature_times_lambda_is_twelve() {
        for eps in [0.5, 1.0, EPS_DEFAULT, 1.7] {
            let k = YamabeConstants::new(eps);
            assert_relative_eq!(k.s_sphere * lambda_s4(eps), 12.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn comparison_constant_squared_is_yamabe_ratio() {
        for eps in [0.3, 1.0, EPS_DEFAULT, 2.0] {
            assert_relative_eq!(comparison_constant(eps).powi(2), yamabe_ratio(eps), max_relative = 1e-14);
        }
    }
}
