//! Small-volume certificates: Taylor enclosures comparing `S² × ℝ` with
//! `S³(3)` near zero volume, and the power-ratio argument comparing
//! `S³(3) × ℝ` with the scaled four-sphere below volume 15.

use std::f64::consts::{PI, SQRT_2};

use num::rational::BigRational;
use num::{BigInt, ToPrimitive};

use crate::certificate::{Certificate, Inequality, Method};
use crate::constants::comparison_constant;
use crate::cylinder::{ball_region_integral, S3XR_AREA_SCALE, S3XR_VOLUME_SCALE};
use crate::profile::Profile;
use crate::series::{ratio, QSqrt2, Series};
use crate::special::x_minus_sin;
use crate::sphere::profile_s4_scaled;
use crate::Result;

/// Truncation degree of the series arithmetic.
pub const SERIES_DEGREE: usize = 10;

/// Right end of the interval `(0, X_MAX]` on which the enclosures hold.
pub const X_MAX: f64 = 0.2;

/// Points in the guard scan over `(0, X_MAX]`.
pub const GUARD_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `f ≥ poly` on the interval.
    Lower,
    /// `f ≤ poly` on the interval.
    Upper,
    /// `|f − poly| ≤ C·x^k`.
    TwoSided,
}

/// Bound `C·x^power` on the Taylor remainder, derived from a bound on a
/// derivative of order `power`.
#[derive(Debug, Clone, PartialEq)]
pub struct Remainder {
    pub power: u32,
    pub constant: BigRational,
    pub derivative_bound: BigRational,
}

impl Remainder {
    /// Remainder `C·x^k` from `|f^{(k)}| < D`, checking `D/k! ≤ C` exactly.
    pub fn from_derivative_bound(power: u32, derivative_bound: i64, constant: i64) -> Option<Self> {
        let d = BigRational::from_integer(derivative_bound.into());
        let c = BigRational::from_integer(constant.into());
        let fact: BigInt = (1..=power as i64).map(BigInt::from).product();
        if d.clone() / BigRational::from_integer(fact) <= c {
            Some(Self {
                power,
                constant: c,
                derivative_bound: d,
            })
        } else {
            None
        }
    }

    pub fn constant_f64(&self) -> f64 {
        self.constant.to_f64().unwrap_or(f64::NAN)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.constant_f64() * x.powi(self.power as i32)
    }
}

/// Polynomial `π·Σ cₚ xᵖ` with exact `ℚ(√2)` coefficients and a certified
/// relation to a target function on `(0, x_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedPolynomial {
    pub name: String,
    /// `(power, coefficient / π)`
    pub terms: Vec<(u32, QSqrt2)>,
    pub remainder: Option<Remainder>,
    pub direction: Direction,
    pub x_max: f64,
}

impl BoundedPolynomial {
    pub fn from_series(name: &str, s: &Series, max_power: u32, remainder: Option<Remainder>, direction: Direction) -> Self {
        let terms = (0..=max_power as usize)
            .filter(|&p| !s.coeff(p).is_zero())
            .map(|p| (p as u32, s.coeff(p).clone()))
            .collect();
        Self {
            name: name.to_string(),
            terms,
            remainder,
            direction,
            x_max: X_MAX,
        }
    }

    pub fn coefficient(&self, power: u32) -> QSqrt2 {
        self.terms
            .iter()
            .find(|(p, _)| *p == power)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(QSqrt2::zero)
    }

    /// Value of the polynomial part.
    pub fn center(&self, x: f64) -> f64 {
        PI * self.terms.iter().map(|(p, c)| c.to_f64() * x.powi(*p as i32)).sum::<f64>()
    }

    /// Certified enclosure `[lo, hi]` of the target function at `x`.
    pub fn enclosure(&self, x: f64) -> (f64, f64) {
        let c = self.center(x);
        let r = self.remainder.as_ref().map(|r| r.eval(x)).unwrap_or(0.0);
        match self.direction {
            Direction::Lower => (c, f64::INFINITY),
            Direction::Upper => (f64::NEG_INFINITY, c),
            Direction::TwoSided => (c - r, c + r),
        }
    }
}

/// Area `A(x)` of the ball-type region in `S² × ℝ` with `x = 1/h`.
pub fn area_s2xr_x(x: f64) -> f64 {
    let q = 1.0 + x * x;
    4.0 * PI * (2.0 * x * x / q + 2.0 * x * x.asinh() / (q * q.sqrt()))
}

/// Volume `V(x)` of the ball-type region in `S² × ℝ` with `x = 1/h`.
pub fn volume_s2xr_x(x: f64) -> f64 {
    let q = 1.0 + x * x;
    4.0 * PI * ((2.0 * x * x + 1.0) * 2.0 * x.asinh() / (q * q.sqrt()) - 2.0 * x / q)
}

/// The substitution `r(x) = √2x − (2/5)√2x³ + (11/10)x⁵`.
pub fn substitution_r(x: f64) -> f64 {
    SQRT_2 * x - 0.4 * SQRT_2 * x.powi(3) + 1.1 * x.powi(5)
}

/// Volume of the geodesic ball of radius `r` in `S³(3)`.
pub fn volume_s3_3_r(r: f64) -> f64 {
    2f64.powf(2.5) * PI * 0.5 * x_minus_sin(2.0 * r)
}

/// Area of the geodesic sphere of radius `r` in `S³(3)`.
pub fn area_s3_3_r(r: f64) -> f64 {
    8.0 * PI * r.sin().powi(2)
}

fn x_series() -> Series {
    Series::identity(SERIES_DEGREE)
}

fn series_area_s2xr() -> Series {
    let d = SERIES_DEGREE;
    let x = x_series();
    let inv_q = Series::one_plus_x2_pow(d, &ratio(-1, 1));
    let inv_q32 = Series::one_plus_x2_pow(d, &ratio(-3, 2));
    let x2 = x.mul(&x);
    let first = x2.mul(&inv_q).scale(&QSqrt2::rational(2, 1));
    let second = x.mul(&Series::asinh(d)).mul(&inv_q32).scale(&QSqrt2::rational(2, 1));
    first.add(&second).scale(&QSqrt2::rational(4, 1))
}

fn series_volume_s2xr() -> Series {
    let d = SERIES_DEGREE;
    let x = x_series();
    let inv_q = Series::one_plus_x2_pow(d, &ratio(-1, 1));
    let inv_q32 = Series::one_plus_x2_pow(d, &ratio(-3, 2));
    let lead = x
        .mul(&x)
        .scale(&QSqrt2::rational(2, 1))
        .add(&Series::constant(d, QSqrt2::one()));
    let first = lead
        .mul(&Series::asinh(d))
        .mul(&inv_q32)
        .scale(&QSqrt2::rational(2, 1));
    let second = x.mul(&inv_q).scale(&QSqrt2::rational(2, 1));
    first.sub(&second).scale(&QSqrt2::rational(4, 1))
}

/// `v(r)/π = 2^{5/2}(r − sin r cos r) = 4√2 (r − sin(2r)/2)`
pub fn series_volume_s3_3_r() -> Series {
    let d = SERIES_DEGREE;
    let two_r = x_series().scale(&QSqrt2::rational(2, 1));
    let sin2r = Series::compose(&Series::sin(d), &two_r);
    x_series()
        .sub(&sin2r.scale(&QSqrt2::rational(1, 2)))
        .scale(&QSqrt2::sqrt2_multiple(4, 1))
}

/// `a(r)/π = 8 sin² r`
pub fn series_area_s3_3_r() -> Series {
    let s = Series::sin(SERIES_DEGREE);
    s.mul(&s).scale(&QSqrt2::rational(8, 1))
}

/// Truncated series of the substitution `r(x)`.
pub fn series_substitution() -> Series {
    Series::from_terms(
        SERIES_DEGREE,
        &[
            (1, QSqrt2::sqrt2_multiple(1, 1)),
            (3, QSqrt2::sqrt2_multiple(-2, 5)),
            (5, QSqrt2::rational(11, 10)),
        ],
    )
}

/// Exact truncated series (coefficients divided by `π`) of the four
/// closed-form functions and the two composites.
#[derive(Debug, Clone)]
pub struct SmallVolumeSeries {
    pub area_cyl: Series,
    pub volume_cyl: Series,
    pub area_sphere_r: Series,
    pub volume_sphere_r: Series,
    pub area_sphere_x: Series,
    pub volume_sphere_x: Series,
}

impl SmallVolumeSeries {
    pub fn compute() -> Self {
        let r = series_substitution();
        let a_r = series_area_s3_3_r();
        let v_r = series_volume_s3_3_r();
        Self {
            area_cyl: series_area_s2xr(),
            volume_cyl: series_volume_s2xr(),
            area_sphere_x: Series::compose(&a_r, &r),
            volume_sphere_x: Series::compose(&v_r, &r),
            area_sphere_r: a_r,
            volume_sphere_r: v_r,
        }
    }
}

fn remainder(power: u32, derivative_bound: i64, constant: i64) -> Remainder {
    Remainder::from_derivative_bound(power, derivative_bound, constant)
        .expect("derivative bound must imply the stated remainder constant")
}

/// `A(x)` as a lower polynomial (`A⁽⁹⁾ > 0`) and `V(x)` as a two-sided
/// enclosure with remainder `83x¹⁰` (`V⁽¹⁰⁾ < 3·10⁸`), for `x ∈ (0, 0.2]`.
pub fn series_a_v_n2() -> (BoundedPolynomial, BoundedPolynomial) {
    let s = SmallVolumeSeries::compute();
    let a = BoundedPolynomial::from_series("A", &s.area_cyl, 8, None, Direction::Lower);
    let v = BoundedPolynomial::from_series(
        "V",
        &s.volume_cyl,
        9,
        Some(remainder(10, 300_000_000, 83)),
        Direction::TwoSided,
    );
    (a, v)
}

/// `a(x)` as a two-sided enclosure with remainder `193x⁹`
/// (`a⁽⁹⁾ < 7·10⁷`) and `v(x)` as a lower polynomial (`v⁽¹⁰⁾ > 0`).
pub fn series_sphere_side() -> (BoundedPolynomial, BoundedPolynomial) {
    let s = SmallVolumeSeries::compute();
    let a = BoundedPolynomial::from_series(
        "a",
        &s.area_sphere_x,
        8,
        Some(remainder(9, 70_000_000, 193)),
        Direction::TwoSided,
    );
    let v = BoundedPolynomial::from_series("v", &s.volume_sphere_x, 9, None, Direction::Lower);
    (a, v)
}

/// Lower bound `π·Σ cₚxᵖ − C·x^k` for a difference of two functions.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceBound {
    pub terms: Vec<(u32, QSqrt2)>,
    pub remainder_power: u32,
    pub remainder_constant: f64,
}

impl DifferenceBound {
    /// `lower(x) / x^k`
    pub fn eval_normalized(&self, x: f64, k: u32) -> f64 {
        let poly: f64 = self
            .terms
            .iter()
            .map(|(p, c)| c.to_f64() * x.powi(*p as i32 - k as i32))
            .sum();
        PI * poly - self.remainder_constant * x.powi(self.remainder_power as i32 - k as i32)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_normalized(x, 0)
    }
}

fn subtract_terms(a: &BoundedPolynomial, b: &BoundedPolynomial) -> Vec<(u32, QSqrt2)> {
    let max = a.terms.iter().chain(&b.terms).map(|(p, _)| *p).max().unwrap_or(0);
    (0..=max)
        .map(|p| (p, &a.coefficient(p) - &b.coefficient(p)))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Lower bound for `A(x) − a(x)`: `A_poly − (a_poly + 193x⁹)`.
pub fn area_difference_bound() -> DifferenceBound {
    let (a_cyl, _) = series_a_v_n2();
    let (a_sph, _) = series_sphere_side();
    let r = a_sph.remainder.as_ref().expect("two-sided");
    DifferenceBound {
        terms: subtract_terms(&a_cyl, &a_sph),
        remainder_power: r.power,
        remainder_constant: r.constant_f64(),
    }
}

/// Lower bound for `v(x) − V(x)`: `v_poly − (V_poly + 83x¹⁰)`.
pub fn volume_difference_bound() -> DifferenceBound {
    let (_, v_cyl) = series_a_v_n2();
    let (_, v_sph) = series_sphere_side();
    let r = v_cyl.remainder.as_ref().expect("two-sided");
    DifferenceBound {
        terms: subtract_terms(&v_sph, &v_cyl),
        remainder_power: r.power,
        remainder_constant: r.constant_f64(),
    }
}

fn guard_scan(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let mut worst = (f64::INFINITY, 0.0);
    for k in 1..=GUARD_POINTS {
        let x = X_MAX * k as f64 / GUARD_POINTS as f64;
        let m = f(x);
        if m < worst.0 {
            worst = (m, x);
        }
    }
    worst
}

/// `I_{S²×ℝ}(t) > I_{S³(3)}(t)` for `t < 0.25` from `A − a > 3x⁴`,
/// `v − V > 51x⁷` on `(0, 0.2]` and `V(0.2) > 0.25`.
pub fn certify_small_volume_s2xr() -> Certificate {
    let da = area_difference_bound();
    let dv = volume_difference_bound();
    let (_, v_cyl) = series_a_v_n2();

    let (ma, xa) = guard_scan(|x| da.eval_normalized(x, 4) - 3.0);
    let area = Certificate::from_margin(
        "area-gap",
        "A(x) - a(x) > 3x^4",
        "x in (0, 0.2]",
        ma,
        Some(xa),
        Method::Series,
        Inequality::Strict,
    )
    .with_detail(format!(
        "margin normalised by x^4; raw margin at 0.2: {:.6e}",
        da.eval(X_MAX) - 3.0 * X_MAX.powi(4)
    ));

    let (mv, xv) = guard_scan(|x| dv.eval_normalized(x, 7) - 51.0);
    let volume = Certificate::from_margin(
        "volume-gap",
        "v(x) - V(x) > 51x^7",
        "x in (0, 0.2]",
        mv,
        Some(xv),
        Method::Series,
        Inequality::Strict,
    )
    .with_detail(format!(
        "margin normalised by x^7; raw margin at 0.2: {:.6e}",
        dv.eval(X_MAX) - 51.0 * X_MAX.powi(7)
    ));

    let (v_lo, _) = v_cyl.enclosure(X_MAX);
    let reach = Certificate::from_margin(
        "volume-reach",
        "V(0.2) > 0.25",
        "x = 0.2",
        v_lo - 0.25,
        Some(X_MAX),
        Method::Series,
        Inequality::Strict,
    );

    Certificate::composite(
        "small-volume-s2xR",
        "I_S2xR(t) > I_S3(3)(t) for t < 0.25",
        "t in (0, 0.25)",
        vec![area, volume, reach],
    )
    .with_method(Method::Series)
}

/// Anchor values `4V(1)` and `2^{3/2}A(1)` of the ball-type region in
/// `S³ × ℝ` at `η = 1`, in the units of `S³(3) × ℝ`.
pub fn s3xr_anchor_values() -> Result<(f64, f64)> {
    let r = ball_region_integral(3, 1.0)?;
    Ok((S3XR_VOLUME_SCALE * r.volume, S3XR_AREA_SCALE * r.boundary_area))
}

/// Euclidean isoperimetric ratio `I(v)/v^{3/4}` in dimension four.
pub fn euclidean_ratio_4d() -> f64 {
    2f64.powf(1.75) * PI.sqrt()
}

/// `c·I_{S⁴}(v) < I_{S³(3)×ℝ}(v)` for `v ≤ 15` from the anchors and the
/// decreasing power ratio.
pub fn certify_small_volume_s3xr(eps: f64) -> Result<Certificate> {
    let (v1, a1) = s3xr_anchor_values()?;
    let c = comparison_constant(eps);
    let mut children = vec![
        Certificate::from_margin(
            "anchor-volume",
            "4V(1) < 15",
            "x = 1",
            15.0 - v1,
            Some(1.0),
            Method::Analytic,
            Inequality::Strict,
        )
        .with_detail(format!("4V(1) = {v1:.12}")),
        Certificate::from_margin(
            "anchor-area",
            "2^(3/2) A(1) > 39",
            "x = 1",
            a1 - 39.0,
            Some(1.0),
            Method::Analytic,
            Inequality::Strict,
        )
        .with_detail(format!("2^(3/2) A(1) = {a1:.12}")),
        Certificate::from_margin(
            "anchor-ratio",
            "39 / 15^(3/4) > 5",
            "v = 15",
            39.0 / 15f64.powf(0.75) - 5.0,
            Some(15.0),
            Method::Ratio,
            Inequality::Strict,
        ),
    ];

    let limit = euclidean_ratio_4d();
    let s4 = profile_s4_scaled(eps)?;
    let tiny = 1e-8;
    let observed = s4.area(tiny)? / tiny.powf(0.75);
    children.push(
        Certificate::from_margin(
            "euclidean-limit",
            "lim I_S4scaled(v)/v^(3/4) = 2^(7/4) sqrt(pi) < 6",
            "v -> 0",
            6.0 - limit,
            None,
            Method::Analytic,
            Inequality::Strict,
        )
        .with_detail(format!("2^(7/4) sqrt(pi) = {limit:.12}; ratio at v = 1e-8: {observed:.12}")),
    );
    children.push(Certificate::from_margin(
        "constant-bound",
        "c < 5/6",
        "-",
        5.0 / 6.0 - c,
        None,
        Method::Analytic,
        Inequality::Strict,
    ));
    children.push(Certificate::assumed(
        "bayle-ratio",
        "I(v)/v^(3/4) is decreasing for S3(3)xR and the scaled S4",
        "v > 0",
    ));
    Ok(Certificate::composite(
        "small-volume-s3xR",
        "I_S3(3)xR(v) > c I_S4scaled(v) for v <= 15",
        "v in (0, 15]",
        children,
    )
    .with_method(Method::Ratio))
}

/// Central finite-difference estimate of the `k`-th derivative.
pub fn finite_difference_derivative(f: impl Fn(f64) -> f64, x: f64, k: u32, h: f64) -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * f(x + (k as f64 / 2.0 - j as f64) * h);
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    sum / h.powi(k as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::ball_region_closed_n2;
    use approx::assert_relative_eq;

    #[test]
    fn closed_forms_in_x_match_closed_forms_in_h() {
        for x in [0.05, 0.2, 0.7, 1.5] {
            let r = ball_region_closed_n2(1.0 / x).unwrap();
            assert_relative_eq!(area_s2xr_x(x), r.boundary_area, max_relative = 1e-13);
            assert_relative_eq!(volume_s2xr_x(x), r.volume, max_relative = 1e-11);
        }
    }

    #[test]
    fn remainder_constants() {
        assert!(Remainder::from_derivative_bound(10, 300_000_000, 83).is_some());
        assert!(Remainder::from_derivative_bound(10, 300_000_000, 82).is_none());
        assert!(Remainder::from_derivative_bound(9, 70_000_000, 193).is_some());
        assert!(Remainder::from_derivative_bound(9, 70_000_000, 192).is_none());
    }

    #[test]
    fn lower_polynomial_is_below_area_at_point_one() {
        let (a, _) = series_a_v_n2();
        let gap = area_s2xr_x(0.1) - a.center(0.1);
        assert!(gap > 0.0 && gap < 1e-6, "gap {gap}");
    }

    #[test]
    fn finite_difference_of_polynomial() {
        let d = finite_difference_derivative(|x| x.powi(3), 0.4, 3, 0.05);
        assert_relative_eq!(d, 6.0, max_relative = 1e-9);
    }

    #[test]
    fn s2xr_certificate_passes() {
        let c = certify_small_volume_s2xr();
        assert!(c.pass, "{}", c.report());
        assert_eq!(c.children.len(), 3);
    }
}
