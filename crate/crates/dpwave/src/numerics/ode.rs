//! Gragg-Bulirsch-Stoer extrapolation for autonomous-or-not first order systems.
//!
//! Each step runs the modified midpoint rule with 2, 4, 6, 8 substeps and
//! extrapolates in h^2, giving an 8th-order result with an embedded 6th-order
//! error estimate. Steps are clamped so that requested output points are hit
//! exactly; there is no interpolation between steps.

use crate::error::{Result, WaveError};

const SEQ: [usize; 4] = [2, 4, 6, 8];
const MAX_STEPS: usize = 2_000_000;

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
}

impl Tolerance {
    pub const fn new(rtol: f64, atol: f64) -> Self {
        Self { rtol, atol }
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self::new(1e-12, 1e-12)
    }
}

fn midpoint<const N: usize>(
    f: &impl Fn(f64, &[f64; N]) -> [f64; N],
    x: f64,
    y: &[f64; N],
    h: f64,
    n: usize,
) -> [f64; N] {
    let hs = h / n as f64;
    let mut z0 = *y;
    let f0 = f(x, y);
    let mut z1 = [0.0; N];
    for i in 0..N {
        z1[i] = y[i] + hs * f0[i];
    }
    for m in 1..n {
        let fm = f(x + m as f64 * hs, &z1);
        let mut z2 = [0.0; N];
        for i in 0..N {
            z2[i] = z0[i] + 2.0 * hs * fm[i];
        }
        z0 = z1;
        z1 = z2;
    }
    let fe = f(x + h, &z1);
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = 0.5 * (z1[i] + z0[i] + hs * fe[i]);
    }
    out
}

/// One extrapolated step: returns (8th-order value, scaled error norm).
fn gbs_step<const N: usize>(
    f: &impl Fn(f64, &[f64; N]) -> [f64; N],
    x: f64,
    y: &[f64; N],
    h: f64,
    tol: Tolerance,
) -> ([f64; N], f64) {
    let mut t: [[[f64; N]; 4]; 4] = [[[0.0; N]; 4]; 4];
    for j in 0..4 {
        t[j][0] = midpoint(f, x, y, h, SEQ[j]);
        for k in 1..=j {
            let r = (SEQ[j] as f64 / SEQ[j - k] as f64).powi(2) - 1.0;
            for i in 0..N {
                t[j][k][i] = t[j][k - 1][i] + (t[j][k - 1][i] - t[j - 1][k - 1][i]) / r;
            }
        }
    }
    let best = t[3][3];
    let mut err: f64 = 0.0;
    for i in 0..N {
        let sc = tol.atol + tol.rtol * y[i].abs().max(best[i].abs());
        err = err.max((best[i] - t[3][2][i]).abs() / sc);
    }
    (best, err)
}

fn next_h(h: f64, err: f64) -> f64 {
    let fac = if err == 0.0 { 4.0 } else { (0.9 * err.powf(-1.0 / 7.0)).clamp(0.2, 4.0) };
    h * fac
}

/// Adaptive integrator state.
#[derive(Debug, Clone)]
pub struct Integrator<const N: usize> {
    pub x: f64,
    pub y: [f64; N],
    h: f64,
    tol: Tolerance,
    steps: usize,
}

impl<const N: usize> Integrator<N> {
    pub fn new(x0: f64, y0: [f64; N], h0: f64, tol: Tolerance) -> Self {
        Self { x: x0, y: y0, h: h0, tol, steps: 0 }
    }

    /// Advance exactly to `target` (forward only).
    pub fn advance_to(&mut self, f: &impl Fn(f64, &[f64; N]) -> [f64; N], target: f64) -> Result<()> {
        while self.x < target {
            let remaining = target - self.x;
            let last = self.h >= remaining;
            let h = if last { remaining } else { self.h };
            let (y1, err) = gbs_step(f, self.x, &self.y, h, self.tol);
            self.steps += 1;
            if self.steps > MAX_STEPS {
                return Err(WaveError::NonConvergence("ODE step limit".into()));
            }
            if !err.is_finite() {
                self.h = 0.25 * h;
                if self.h < 1e-14 * (1.0 + self.x.abs()) {
                    return Err(WaveError::NonConvergence("ODE solution became non-finite".into()));
                }
                continue;
            }
            if err <= 1.0 {
                self.x = if last { target } else { self.x + h };
                self.y = y1;
                let hn = next_h(h, err);
                // do not let a short final step shrink the running step size
                self.h = if last { self.h.max(hn) } else { hn };
            } else {
                self.h = next_h(h, err);
                if self.h < 1e-14 * (1.0 + self.x.abs()) {
                    return Err(WaveError::NonConvergence("ODE step size underflow".into()));
                }
            }
        }
        Ok(())
    }

    /// Advance until `g(y)` changes sign from `dir` to `-dir`, locate the
    /// crossing by bisection on the step length and stop there.
    pub fn advance_to_event(
        &mut self,
        f: &impl Fn(f64, &[f64; N]) -> [f64; N],
        g: impl Fn(&[f64; N]) -> f64,
        dir: f64,
        x_max: f64,
    ) -> Result<f64> {
        loop {
            let x0 = self.x;
            let y0 = self.y;
            let g0 = g(&y0);
            let step_target = (x0 + self.h).min(x_max);
            self.advance_to(f, step_target)?;
            let g1 = g(&self.y);
            if g0 * dir > 0.0 && g1 * dir <= 0.0 {
                let (mut lo, mut hi) = (0.0, self.x - x0);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    let mut sub = Integrator::new(x0, y0, mid, self.tol);
                    sub.advance_to(f, x0 + mid)?;
                    if g(&sub.y) * dir > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let xe = x0 + 0.5 * (lo + hi);
                let mut sub = Integrator::new(x0, y0, xe - x0, self.tol);
                sub.advance_to(f, xe)?;
                self.x = xe;
                self.y = sub.y;
                return Ok(xe);
            }
            if self.x >= x_max {
                return Err(WaveError::NoRoot("event not reached".into()));
            }
        }
    }
}

/// Solve on a list of increasing output points; `xs[0]` is the start.
pub fn solve_on_grid<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    y0: [f64; N],
    xs: &[f64],
    tol: Tolerance,
) -> Result<Vec<[f64; N]>> {
    let Some(&x0) = xs.first() else {
        return Ok(Vec::new());
    };
    let h0 = if xs.len() > 1 { xs[1] - xs[0] } else { 1e-2 };
    let mut it = Integrator::new(x0, y0, h0, tol);
    let mut out = Vec::with_capacity(xs.len());
    out.push(y0);
    for &x in &xs[1..] {
        it.advance_to(&f, x)?;
        out.push(it.y);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_period() {
        let f = |_x: f64, y: &[f64; 2]| [y[1], -y[0]];
        let xs: Vec<f64> = (0..=100).map(|k| k as f64 * 0.2 * std::f64::consts::PI).collect();
        let sol = solve_on_grid(f, [1.0, 0.0], &xs, Tolerance::default()).unwrap();
        for (x, y) in xs.iter().zip(&sol) {
            assert!((y[0] - x.cos()).abs() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn event_finds_quarter_period() {
        let f = |_x: f64, y: &[f64; 2]| [y[1], -y[0]];
        let mut it = Integrator::new(0.0, [1.0, 0.0], 0.1, Tolerance::default());
        let xe = it.advance_to_event(&f, |y| y[0], 1.0, 10.0).unwrap();
        assert!((xe - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
    }

    #[test]
    fn stiffish_decay() {
        let f = |_x: f64, y: &[f64; 1]| [-50.0 * y[0]];
        let sol = solve_on_grid(f, [1.0], &[0.0, 0.5], Tolerance::new(1e-12, 1e-14)).unwrap();
        assert!((sol[1][0] - (-25f64).exp()).abs() < 1e-13);
    }
}
