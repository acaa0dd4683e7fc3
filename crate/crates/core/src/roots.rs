//! Bracketed root finding and one-dimensional minimisation.

use crate::error::{numeric, Result};

const MAX_ITER: usize = 200;

/// Safeguarded Newton iteration on a sign-changing bracket.
///
/// `fdf` returns the function value and its derivative. Steps that leave the
/// bracket, or that fail to halve it, fall back to bisection. Converges when
/// the step is below `tol * max(1, |x|)`.
pub fn newton_bisect<F>(fdf: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (flo, _) = fdf(lo);
    let (fhi, _) = fdf(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(numeric(
            "newton_bisect",
            format!("no sign change on [{lo}, {hi}]: f = {flo:e}, {fhi:e}"),
        ));
    }
    // orient so that f(a) < 0 < f(b)
    let (mut a, mut b) = if flo < 0.0 { (lo, hi) } else { (hi, lo) };
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = (hi - lo).abs();
    let mut dx = dx_old;
    let (mut f, mut df) = fdf(x);

    for _ in 0..MAX_ITER {
        let newton_out = ((x - b) * df - f) * ((x - a) * df - f) > 0.0;
        let slow = (2.0 * f).abs() > (dx_old * df).abs();
        dx_old = dx;
        if newton_out || slow || df == 0.0 {
            dx = 0.5 * (b - a);
            x = a + dx;
        } else {
            dx = f / df;
            x -= dx;
        }
        if dx.abs() <= tol * x.abs().max(1.0) {
            return Ok(x);
        }
        (f, df) = fdf(x);
        if f == 0.0 {
            return Ok(x);
        }
        if f < 0.0 {
            a = x;
        } else {
            b = x;
        }
    }
    Err(numeric(
        "newton_bisect",
        format!("no convergence within {MAX_ITER} iterations near {x}"),
    ))
}

/// Brent's method (inverse quadratic interpolation with bisection fallback).
pub fn brent<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(numeric(
            "brent",
            format!("no sign change on [{lo}, {hi}]: f = {fa:e}, {fb:e}"),
        ));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol * b.abs().max(1.0);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 {
            d
        } else {
            tol1.copysign(xm)
        };
        fb = f(b);
    }
    Err(numeric(
        "brent",
        format!("no convergence within {MAX_ITER} iterations near {b}"),
    ))
}

/// Result of [`minimize`].
#[derive(Debug, Clone, Copy)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// Brent's derivative-free minimiser on `[a, b]` (golden section with
/// parabolic steps). Finds a local minimum; callers needing the global one
/// must supply a bracket on which `f` is unimodal.
pub fn minimize<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Minimum {
    const GOLDEN: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = (a.min(b), a.max(b));
    let mut x = a + GOLDEN * (b - a);
    let (mut w, mut v) = (x, x);
    let mut fx = f(x);
    let (mut fw, mut fv) = (fx, fx);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;

    for _ in 0..MAX_ITER {
        let xm = 0.5 * (a + b);
        let tol1 = tol * x.abs() + 1e-14;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            break;
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            if p.abs() < (0.5 * q * e).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= xm { a - x } else { b - x };
            d = GOLDEN * e;
        }
        let u = if d.abs() >= tol1 {
            x + d
        } else {
            x + tol1.copysign(d)
        };
        let fu = f(u);
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Minimum { x, value: fx }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn newton_bisect_finds_cube_root() {
        let r = newton_bisect(|x| (x * x * x - 2.0, 3.0 * x * x), 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r, 2f64.cbrt(), max_relative = 1e-13);
    }

    #[test]
    fn newton_bisect_handles_decreasing_functions() {
        let r = newton_bisect(|x: f64| (x.cos() - x, -x.sin() - 1.0), 0.0, 1.0, 1e-14).unwrap();
        assert!((r.cos() - r).abs() < 1e-14);
    }

    #[test]
    fn brent_finds_root() {
        let r = brent(|x: f64| x.exp() - 3.0, 0.0, 5.0, 1e-14).unwrap();
        assert_relative_eq!(r, 3f64.ln(), max_relative = 1e-13);
    }

    #[test]
    fn missing_sign_change_is_an_error() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
        assert!(newton_bisect(|x| (x * x + 1.0, 2.0 * x), -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn minimize_parabola() {
        let m = minimize(|x| (x - 1.3).powi(2) + 0.5, -4.0, 7.0, 1e-10);
        assert!((m.x - 1.3).abs() < 1e-8);
        assert_relative_eq!(m.value, 0.5, max_relative = 1e-14);
    }
}
