//! Cancellation-free forms of a few elementary expressions.

/// `x - sin(x)`, accurate for small `|x|` where the direct difference loses
/// all significant digits.
pub fn x_minus_sin(x: f64) -> f64 {
    if x.abs() >= 0.5 {
        return x - x.sin();
    }
    // x^3/3! - x^5/5! + ...
    let x2 = x * x;
    let mut term = x * x2 / 6.0;
    let mut sum: f64 = 0.0;
    let mut k = 3.0;
    while term.abs() > 1e-18 * sum.abs() || sum == 0.0 {
        sum += term;
        term *= -x2 / ((k + 1.0) * (k + 2.0));
        k += 2.0;
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// `∫₀^r sin^k(s) ds` for `k ∈ {0, 1, 2, 3}` in forms free of cancellation
/// near `r = 0`.
pub fn sin_power_integral(k: u32, r: f64) -> f64 {
    match k {
        0 => r,
        1 => 2.0 * (0.5 * r).sin().powi(2),
        2 => 0.25 * x_minus_sin(2.0 * r),
        3 => 4.0 / 3.0 * (0.5 * r).sin().powi(4) * (2.0 + r.cos()),
        _ => panic!("sin_power_integral supports k <= 3, got {k}"),
    }
}
