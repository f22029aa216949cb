//! Scalar root finding and golden-section search.

use crate::error::{Result, WaveError};

/// Bisection to adjacent-float resolution or `xtol`, whichever comes first.
///
/// Requires a sign change on `[lo, hi]`.
pub fn bisect(mut lo: f64, mut hi: f64, xtol: f64, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(WaveError::NoRoot(format!("no sign change on [{lo}, {hi}]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= xtol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration kept inside a bracket, falling back to bisection.
pub fn safe_newton(
    mut lo: f64,
    mut hi: f64,
    xtol: f64,
    mut f: impl FnMut(f64) -> (f64, f64),
) -> Result<f64> {
    let (flo, _) = f(lo);
    let (fhi, _) = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(WaveError::NoRoot(format!("no sign change on [{lo}, {hi}]")));
    }
    let s_lo = flo.signum();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == s_lo {
            lo = x;
        } else {
            hi = x;
        }
        let mut next = x - fx / dfx;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= xtol.max(4.0 * f64::EPSILON * x.abs()) || hi - lo <= xtol {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Brent's method.
pub fn brent(a: f64, b: f64, xtol: f64, mut f: impl FnMut(f64) -> f64) -> Result<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(WaveError::NoRoot(format!("no sign change on [{a}, {b}]")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..300 {
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
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(WaveError::NonConvergence("brent iteration limit".into()))
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
pub fn golden_max(mut a: f64, mut b: f64, xtol: f64, mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_methods_find_sqrt2() {
        let r = std::f64::consts::SQRT_2;
        assert!((bisect(0.0, 3.0, 0.0, |x| x * x - 2.0).unwrap() - r).abs() < 1e-15);
        assert!((brent(0.0, 3.0, 1e-15, |x| x * x - 2.0).unwrap() - r).abs() < 1e-14);
        assert!((safe_newton(0.0, 3.0, 1e-15, |x| (x * x - 2.0, 2.0 * x)).unwrap() - r).abs() < 1e-14);
    }

    #[test]
    fn missing_bracket_is_an_error() {
        assert!(matches!(bisect(2.0, 3.0, 0.0, |x| x * x - 2.0), Err(WaveError::NoRoot(_))));
    }

    #[test]
    fn golden_finds_parabola_top() {
        let x = golden_max(-1.0, 4.0, 1e-10, |x| Ok(-(x - 1.3) * (x - 1.3))).unwrap();
        assert!((x - 1.3).abs() < 1e-8);
    }
}
