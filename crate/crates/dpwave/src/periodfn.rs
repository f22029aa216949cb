//! The period function and its normal forms.
//!
//! Periods and the conserved integrals are computed on the orbit with the
//! turning points divided out of `Q`, so the integrand
//! `(c - phi) / sqrt(q(phi))` in the variable `phi = m + r sin s` is smooth.

use std::f64::consts::PI;

use exactalg::ZPoly;
use serde::Serialize;

use crate::error::{Result, WaveError};
use crate::numerics::quad::{integrate_doubling, Converged, GaussLegendre};
use crate::numerics::roots::{bisect, brent, golden_max, safe_newton};
use crate::wavecore::{contains, region_boundaries, WaveParams};

/// Relative change allowed between successive node doublings.
pub const QUAD_RTOL: f64 = 1e-13;

/// Period `L`, mass `M = \oint phi` and `F = (1/6) \oint phi^3` of one orbit.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrbitIntegrals {
    pub period: f64,
    pub mass: f64,
    pub f_integral: f64,
    pub nodes: usize,
}

pub fn orbit_integrals(params: &WaveParams) -> Result<OrbitIntegrals> {
    let o = params.orbit()?;
    let r: Converged<3> = integrate_doubling(-0.5 * PI, 0.5 * PI, QUAD_RTOL, |s| {
        let phi = o.phi_at(s);
        let w = 2.0 * o.dx_ds(s);
        [w, w * phi, w * phi.powi(3) / 6.0]
    })?;
    Ok(OrbitIntegrals { period: r.values[0], mass: r.values[1], f_integral: r.values[2], nodes: r.nodes })
}

/// Period `L(a, b) = 2 \int (c - phi) dphi / sqrt(Q)` between the turning points.
pub fn period(params: &WaveParams) -> Result<f64> {
    let o = params.orbit()?;
    let r: Converged<1> = integrate_doubling(-0.5 * PI, 0.5 * PI, QUAD_RTOL, |s| [2.0 * o.dx_ds(s)])?;
    Ok(r.values[0])
}

/// Period with a fixed number of Gauss-Legendre nodes (`16 * 2^k`).
pub fn period_fixed_nodes(params: &WaveParams, nodes: usize) -> Result<f64> {
    let o = params.orbit()?;
    Ok(GaussLegendre::cached(nodes).integrate(-0.5 * PI, 0.5 * PI, |s| 2.0 * o.dx_ds(s)))
}

/// Partial derivatives of the period with Richardson error estimates.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeriodDerivatives {
    pub d_da: f64,
    pub d_db: f64,
    pub err_da: f64,
    pub err_db: f64,
    pub step_a: f64,
    pub step_b: f64,
}

/// Default steps: a tenth of the distance to the nearest boundary, capped.
pub fn default_steps(p: &WaveParams) -> Result<(f64, f64)> {
    let c = p.c;
    let rb = region_boundaries(c, p.b)?;
    let da = (p.a - rb.a_low).min(rb.a_high - p.a);
    let (p1, p2) = p.critical_points()?;
    let bm = c * p2 - 2.0 * p2 * p2;
    let bp = c * p1 - 2.0 * p1 * p1;
    let db = (p.b - bm).min(bp - p.b);
    Ok(((0.1 * da).min(2e-3 * c.powi(4)), (0.1 * db).min(2e-3 * c * c)))
}

fn richardson(h: f64, f: impl Fn(f64) -> Result<f64>) -> Result<(f64, f64)> {
    let d = |h: f64| -> Result<f64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    let d1 = d(h)?;
    let d2 = d(0.5 * h)?;
    let r = (4.0 * d2 - d1) / 3.0;
    Ok((r, (r - d2).abs()))
}

/// Central differences in `a` and `b` with one Richardson step.
///
/// `steps` overrides [`default_steps`]; every stencil point must lie in the region.
pub fn period_derivatives(p: &WaveParams, steps: Option<(f64, f64)>) -> Result<PeriodDerivatives> {
    let (ha, hb) = match steps {
        Some(s) => s,
        None => default_steps(p)?,
    };
    for (da, db) in [(ha, 0.0), (-ha, 0.0), (0.0, hb), (0.0, -hb)] {
        if !contains(p.c, p.a + da, p.b + db) {
            return Err(WaveError::StencilOutsideRegion);
        }
    }
    let at = |a: f64, b: f64| period(&WaveParams::new(p.c, a, b)?);
    let (d_da, err_da) = richardson(ha, |h| at(p.a + h, p.b))?;
    let (d_db, err_db) = richardson(hb, |h| at(p.a, p.b + h))?;
    Ok(PeriodDerivatives { d_da, d_db, err_da, err_db, step_a: ha, step_b: hb })
}

/// `dL/da` alone.
pub fn period_d_da(p: &WaveParams) -> Result<(f64, f64)> {
    let (ha, _) = default_steps(p)?;
    if !contains(p.c, p.a + ha, p.b) || !contains(p.c, p.a - ha, p.b) {
        return Err(WaveError::StencilOutsideRegion);
    }
    richardson(ha, |h| period(&WaveParams::new(p.c, p.a + h, p.b)?))
}

/// `dL/da` with an explicit central-difference step (one Richardson step).
pub fn period_d_da_step(p: &WaveParams, h: f64) -> Result<(f64, f64)> {
    if !contains(p.c, p.a + h, p.b) || !contains(p.c, p.a - h, p.b) {
        return Err(WaveError::StencilOutsideRegion);
    }
    richardson(h, |d| period(&WaveParams::new(p.c, p.a + d, p.b)?))
}

/// Interior grid of `n` values of `a` at fixed `b`, avoiding both ends by `guard`
/// (relative to the width).
pub fn a_grid(c: f64, b: f64, n: usize, guard: f64) -> Result<Vec<f64>> {
    let rb = region_boundaries(c, b)?;
    let w = rb.a_high - rb.a_low;
    let lo = rb.a_low + guard * w;
    let hi = rb.a_high - guard * w;
    Ok((0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect())
}

/// The unique critical point of `a -> L(a, b)`, present only for
/// `-2c^2/9 < b < 0`.
///
/// Inside that window `None` means the maximum lies below `1e-9` of the
/// `a`-range from `a = 0`, where `dL/da` cannot be resolved (`b` close to 0).
pub fn find_a0(c: f64, b: f64) -> Result<Option<f64>> {
    let rb = region_boundaries(c, b)?;
    let beta = b / (c * c);
    let inside = beta > -2.0 / 9.0 && beta < 0.0;
    if !inside {
        let grid = a_grid(c, b, 32, 1e-3)?;
        let signs: Vec<f64> = grid
            .iter()
            .map(|&a| Ok(period_d_da(&WaveParams::new(c, a, b)?)?.0.signum()))
            .collect::<Result<_>>()?;
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        if changes != 0 {
            return Err(WaveError::SignPatternUnexpected(changes));
        }
        return Ok(None);
    }
    let w = rb.a_high - rb.a_low;
    let lo = rb.a_low + 1e-9 * w;
    let hi = rb.a_high - 1e-6 * w;
    let lp = |a: f64| period(&WaveParams::new(c, a, b)?);
    let dda = |a: f64| period_d_da(&WaveParams::new(c, a, b)?).map(|d| d.0);
    // near b = 0 the maximum sits exponentially close to a = 0, below any resolvable distance
    if dda(lo)? <= 0.0 {
        return Ok(None);
    }
    let a_star = golden_max(lo, hi, 1e-6 * w, lp)?;
    // widen a bracket around the golden-section estimate until dL/da changes sign
    let mut d = 1e-5 * w;
    loop {
        let l = (a_star - d).max(lo);
        let r = (a_star + d).min(hi);
        let (fl, fr) = (dda(l)?, dda(r)?);
        if fl > 0.0 && fr < 0.0 {
            // polish with a short stencil: the default one biases the root by its truncation error
            let fine = |a: f64| {
                let p = WaveParams::new(c, a, b)?;
                let h = 0.01 * default_steps(&p)?.0;
                period_d_da_step(&p, h).map(|d| d.0)
            };
            let root = brent(l, r, 1e-13 * c.powi(4), |a| fine(a).unwrap_or(f64::NAN))?;
            return Ok(Some(root));
        }
        if l <= lo && r >= hi {
            return Err(WaveError::NoRoot("dL/da has no sign change around the maximum".into()));
        }
        d *= 4.0;
    }
}

/// `theta = (3c / sqrt(c^2 - 8b) - 1) / 4`.
pub fn theta_of(c: f64, b: f64) -> f64 {
    (3.0 * c / (c * c - 8.0 * b).sqrt() - 1.0) / 4.0
}

/// Taylor data of the normalized period about the center.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeriodConstants {
    pub theta: f64,
    pub ell0: f64,
    pub delta1: f64,
    pub delta2: f64,
}

pub fn period_constants(theta: f64) -> Result<PeriodConstants> {
    if !(theta > 0.0) {
        return Err(WaveError::OutOfRange(format!("theta = {theta} must be positive")));
    }
    let t = theta;
    let delta1 = PI * (4.0 * t + 1.0) * (5.0 * t - 1.0) / (6.0 * t);
    let poly = -48.0 * t.powi(6) - 144.0 * t.powi(5) - 1808.0 * t.powi(4) + 1152.0 * t.powf(2.5)
        + 1096.0 * t.powi(3)
        + 741.0 * t * t
        + 322.0 * t
        + 13.0;
    let delta2 = -PI / (288.0 * t * t) * poly;
    Ok(PeriodConstants { theta, ell0: 2.0 * PI * t.sqrt(), delta1, delta2 })
}

/// Power-law fit `ell(h) - 2 pi sqrt(theta) ~ k h^p`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SmallEnergyFit {
    pub theta: f64,
    pub coefficient: f64,
    pub exponent: f64,
    pub h_lo: f64,
    pub h_hi: f64,
}

/// Least-squares fit in log-log coordinates on `n` geometric energies in
/// `[h_lo, h_hi]`; `h_hi` is clipped to `0.9 h*` when the level set would
/// leave the period annulus.
pub fn fit_small_energy(theta: f64, h_lo: f64, h_hi: f64, n: usize) -> Result<SmallEnergyFit> {
    let s = ThetaSystem::new(theta)?;
    let hi = h_hi.min(0.9 * s.h_star());
    if !(h_lo > 0.0 && h_lo < hi) || n < 2 {
        return Err(WaveError::InvalidArgument(format!("empty fit range [{h_lo}, {hi}]")));
    }
    let ell0 = 2.0 * PI * theta.sqrt();
    let mut pts = Vec::with_capacity(n);
    let mut sign = 0.0;
    for i in 0..n {
        let h = h_lo * (hi / h_lo).powf(i as f64 / (n - 1) as f64);
        let d = s.ell(h)? - ell0;
        sign += d.signum();
        pts.push((h.ln(), d.abs().ln()));
    }
    let m = n as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let p = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let lnk = (sy - p * sx) / m;
    Ok(SmallEnergyFit { theta, coefficient: sign.signum() * lnk.exp(), exponent: p, h_lo, h_hi: hi })
}

/// Normalized system `H = A(x) + C(x) y^2` with parameter `theta`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThetaSystem {
    pub theta: f64,
}

impl ThetaSystem {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(WaveError::OutOfRange(format!("theta = {theta} must be positive")));
        }
        Ok(Self { theta })
    }

    pub fn from_params(p: &WaveParams) -> Result<Self> {
        Self::new(theta_of(p.c, p.b))
    }

    pub fn a_fn(&self, x: f64) -> f64 {
        let t = self.theta;
        -x * x * (3.0 * x * x + 2.0 * x * (1.0 - 2.0 * t) - 3.0 * t) / 6.0
    }

    pub fn c_fn(&self, x: f64) -> f64 {
        0.5 * (x - self.theta).powi(2)
    }

    /// Energy of the outermost periodic orbit.
    pub fn h_star(&self) -> f64 {
        if self.theta >= 0.5 {
            self.a_fn(-0.5)
        } else {
            self.a_fn(self.theta)
        }
    }

    /// `A(theta)`, the energy where the orbit reaches the singular line.
    pub fn h_m(&self) -> f64 {
        self.a_fn(self.theta)
    }

    /// Energy `h = A(x_+)` of the wave `(c, a, b)` under
    /// `x = (phi - c)/sqrt(c^2 - 8b) + theta`, `y = phi'/sqrt(c^2 - 8b)`.
    pub fn energy_of(p: &WaveParams) -> Result<f64> {
        let (_, hi) = p.turning_points()?;
        let sd = (p.c * p.c - 8.0 * p.b).sqrt();
        let s = Self::new(theta_of(p.c, p.b))?;
        Ok(s.a_fn((hi - p.c) / sd + s.theta))
    }

    /// The same energy from the first integral: `h = h_m - a / (2 (c^2 - 8b)^2)`.
    pub fn energy_closed_form(p: &WaveParams) -> Result<f64> {
        let dd = p.c * p.c - 8.0 * p.b;
        Ok(Self::new(theta_of(p.c, p.b))?.h_m() - p.a / (2.0 * dd * dd))
    }

    /// Inverse of [`Self::energy_closed_form`] at fixed `(c, b)`.
    pub fn a_of_energy(c: f64, b: f64, h: f64) -> f64 {
        let dd = c * c - 8.0 * b;
        let t = theta_of(c, b);
        2.0 * dd * dd * (t.powi(3) * (t + 1.0) / 6.0 - h)
    }

    /// `a = -k^2 (2 h (c^2 - 8b) / theta + k (k + c))` with `k = (sqrt(c^2 - 8b) - 3c)/4`,
    /// kept for comparison; it agrees with [`Self::a_of_energy`] only at `h = 0`.
    pub fn a_of_energy_printed(c: f64, b: f64, h: f64) -> f64 {
        let dd = c * c - 8.0 * b;
        let k = (dd.sqrt() - 3.0 * c) / 4.0;
        let t = theta_of(c, b);
        -k * k * (2.0 * h * dd / t + k * (k + c))
    }

    // roots of h - A(x) on (-1/2, 0) and (0, min(theta, ...))
    fn turning(&self, h: f64) -> Result<(f64, f64)> {
        let t = self.theta;
        let g = |x: f64| (h - self.a_fn(x), x * (2.0 * x + 1.0) * (x - t));
        let lo = safe_newton(-0.5, 0.0, 0.0, g)?;
        let hi_end = if t < 0.5 { t } else { t.min(10.0) };
        let hi = safe_newton(0.0, hi_end, 0.0, g)?;
        Ok((lo, hi))
    }

    /// Period `ell(h)` of the orbit at energy `h` in `(0, h*)`.
    pub fn ell(&self, h: f64) -> Result<f64> {
        let hs = self.h_star();
        if !(h > 0.0 && h < hs) {
            return Err(WaveError::OutOfEnergyRange { h, h_star: hs });
        }
        let t = self.theta;
        let (xl, xr) = self.turning(h)?;
        // h - A = (x - xl)(xr - x) qd(x),  qd = -(x^2/2 + al x + be)
        let s = xl + xr;
        let pr = xl * xr;
        let al = (1.0 - 2.0 * t) / 3.0 + 0.5 * s;
        let be = -0.5 * t + s * al - 0.5 * pr;
        let m = 0.5 * (xl + xr);
        let r = 0.5 * (xr - xl);
        let out: Converged<1> = integrate_doubling(-0.5 * PI, 0.5 * PI, QUAD_RTOL, |u| {
            let x = m + r * u.sin();
            let qd = -(0.5 * x * x + al * x + be);
            [2.0 * (t - x) / (2.0 * qd).sqrt()]
        })?;
        Ok(out.values[0])
    }

    /// `ell(h_m)` for `theta < 1/2`, from the orbit through the singular point.
    ///
    /// There `h_m - A = (x - theta)^2 (x^2/2 + (1 + theta) x / 3 + theta (1 + theta) / 6)`
    /// and the integral is elementary.
    pub fn ell_at_hm(&self) -> Result<f64> {
        let t = self.theta;
        if t >= 0.5 {
            return Err(WaveError::OutOfRange("h_m is only an orbit energy for theta < 1/2".into()));
        }
        let disc = ((1.0 + t) * (1.0 - 2.0 * t)).sqrt();
        let xl = (-(1.0 + t) + disc) / 3.0;
        let xll = (-(1.0 + t) - disc) / 3.0;
        Ok(4.0 * (((t - xl).sqrt() + (t - xll).sqrt()) / (xl - xll).sqrt()).ln())
    }

    /// `ell(h)` along `h = h_m (1 - 10^-k)`, for the numeric limit.
    pub fn ell_approaching_hm(&self, ks: &[i32]) -> Result<Vec<(f64, f64)>> {
        let hm = self.h_m();
        ks.iter()
            .map(|&k| {
                let h = hm * (1.0 - 10f64.powi(-k));
                Ok((h, self.ell(h)?))
            })
            .collect()
    }

    /// The closed form `1/2 ln((theta+1)(1-2 theta) / (4 theta + 1 + 3 sqrt(theta (1 + 2 theta))))`,
    /// kept for comparison with the computed limit.
    pub fn ell_hm_printed(&self) -> f64 {
        let t = self.theta;
        0.5 * ((t + 1.0) * (1.0 - 2.0 * t) / (4.0 * t + 1.0 + 3.0 * (t * (1.0 + 2.0 * t)).sqrt())).ln()
    }
}

/// Comparison of the numeric limit `ell(h -> h_m)` with the printed closed form.
#[derive(Debug, Clone, Serialize)]
pub struct HmLimitReport {
    pub theta: f64,
    pub h_m: f64,
    pub numeric_limit: f64,
    pub approach: Vec<(f64, f64)>,
    pub printed: f64,
}

pub fn ell_hm_report(theta: f64) -> Result<HmLimitReport> {
    let s = ThetaSystem::new(theta)?;
    let approach = s.ell_approaching_hm(&[2, 4, 6, 8, 10])?;
    Ok(HmLimitReport { theta, h_m: s.h_m(), numeric_limit: s.ell_at_hm()?, approach, printed: s.ell_hm_printed() })
}

/// Normalized system `H = y^2/2 + V(x)` about the center, `eta = (c - phi2)/phi2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EtaSystem {
    pub eta: f64,
}

impl EtaSystem {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta < 3.0) {
            return Err(WaveError::OutOfRange(format!("eta = {eta} outside (0, 3)")));
        }
        Ok(Self { eta })
    }

    pub fn from_params(p: &WaveParams) -> Result<Self> {
        let (_, p2) = p.critical_points()?;
        Self::new((p.c - p2) / p2)
    }

    pub fn v(&self, x: f64) -> f64 {
        let e = self.eta;
        -0.5 * x * x - x - 0.5 * e + e.powi(3) / (2.0 * (e - x).powi(2))
    }

    pub fn v_prime(&self, x: f64) -> f64 {
        let e = self.eta;
        -x - 1.0 + e.powi(3) / (e - x).powi(3)
    }

    /// `W = V / V'^2`.
    pub fn w(&self, x: f64) -> f64 {
        self.v(x) / self.v_prime(x).powi(2)
    }

    /// The cubic `D` with `(eta - x)^3 V'(x) = x D(x)`.
    pub fn d_poly(&self, x: f64) -> f64 {
        exactalg::certs::d_eta().eval_f64(&[x, self.eta])
    }

    /// `W''(x) = -3 (eta - x)^2 R(x) / D(x)^4`, regular at the center.
    pub fn w_second(&self, x: f64) -> f64 {
        w_second_with(&exactalg::certs::r_eta(), &exactalg::certs::d_eta(), self.eta, x)
    }

    /// Saddle side extremum `x1 < 0` (root of `D`) and the opposite turning point `x2`.
    pub fn well(&self) -> Result<(f64, f64)> {
        let d = exactalg::certs::d_eta();
        let e = self.eta;
        let x1 = bisect(-1.0, 0.0, 0.0, |x| d.eval_f64(&[x, e]))?;
        let v1 = self.v(x1);
        let x2 = bisect(0.0, e * (1.0 - 1e-15), 0.0, |x| self.v(x) - v1)?;
        Ok((x1, x2))
    }

    /// Energy level of the separatrix, `h* = V(x1)`.
    pub fn h_star(&self) -> Result<f64> {
        Ok(self.v(self.well()?.0))
    }

    /// Normalized energy of `(c, a, b)`: `b = 2 phi2^2 h + phi2 (c - 2 phi2)`.
    pub fn energy_of(p: &WaveParams) -> Result<f64> {
        let (_, p2) = p.critical_points()?;
        Ok((p.b - p2 * (p.c - 2.0 * p2)) / (2.0 * p2 * p2))
    }
}

fn w_second_with(r: &ZPoly, d: &ZPoly, eta: f64, x: f64) -> f64 {
    -3.0 * (eta - x).powi(2) * r.eval_f64(&[x, eta]) / d.eval_f64(&[x, eta]).powi(4)
}

/// Sign survey of `W''` on a grid inside the well.
#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub eta: f64,
    pub x1: f64,
    pub x2: f64,
    pub min_w2: f64,
    pub argmin: f64,
    pub convex: bool,
}

/// Evaluate `W''` on `grid` points of `(x1, x2)` with `1e-6` bands cut at both ends.
pub fn chicone_w_convexity(eta: f64, grid: usize) -> Result<ConvexityReport> {
    let s = EtaSystem::new(eta)?;
    if grid < 2 {
        return Err(WaveError::InvalidArgument("grid needs at least two points".into()));
    }
    let (x1, x2) = s.well()?;
    let r = exactalg::certs::r_eta();
    let d = exactalg::certs::d_eta();
    let lo = x1 + 1e-6;
    let hi = x2 - 1e-6;
    let mut min_w2 = f64::INFINITY;
    let mut argmin = lo;
    for i in 0..grid {
        let x = lo + (hi - lo) * i as f64 / (grid - 1) as f64;
        let v = w_second_with(&r, &d, eta, x);
        if v < min_w2 {
            min_w2 = v;
            argmin = x;
        }
    }
    Ok(ConvexityReport { eta, x1, x2, min_w2, argmin, convex: min_w2 > 0.0 })
}
