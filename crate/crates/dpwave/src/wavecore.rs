//! Wave parameters, the existence region and wave profiles.
//!
//! A traveling wave `u(x - ct) = phi(x - ct)` satisfies the first-order
//! equation `(c - phi)^2 (phi'^2 - phi^2 - b) + a = 0`, i.e. it moves in the
//! potential `U(phi) = -phi^2 + a / (c - phi)^2` at level `b`.

use serde::Serialize;

use crate::error::{Result, WaveError};
use crate::numerics::ode::{solve_on_grid, Integrator, Tolerance};
use crate::numerics::roots::safe_newton;
use crate::periodfn;

/// Relative margin kept from the region boundary, in units of `c^4` for `a`.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// Integration tolerance used for profiles and Floquet solutions.
pub const ODE_TOL: Tolerance = Tolerance::new(1e-12, 1e-13);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveParams {
    pub c: f64,
    pub a: f64,
    pub b: f64,
}

impl WaveParams {
    /// Validated parameters strictly inside the existence region.
    pub fn new(c: f64, a: f64, b: f64) -> Result<Self> {
        check_speed(c)?;
        if !(a.is_finite() && b.is_finite()) {
            return Err(WaveError::InvalidArgument("a and b must be finite".into()));
        }
        if !contains(c, a, b) {
            return Err(WaveError::OutOfRange(format!("(c, a, b) = ({c}, {a}, {b}) is outside the region")));
        }
        let p = Self { c, a, b };
        let bm = b_minus(c, a)?;
        if b - bm < BOUNDARY_MARGIN * c * c {
            return Err(WaveError::Degenerate(format!("b - b_-(a) = {:e}", b - bm)));
        }
        Ok(p)
    }

    /// The same wave family at speed `k c`: `(k c, k^4 a, k^2 b)`.
    pub fn scaled(&self, k: f64) -> Self {
        Self { c: k * self.c, a: k.powi(4) * self.a, b: k * k * self.b }
    }

    /// Roots of `phi (c - phi)^3 = a`: `(phi1, phi2)` with `phi1 < c/4 < phi2`.
    pub fn critical_points(&self) -> Result<(f64, f64)> {
        critical_points(self.c, self.a)
    }

    pub fn potential(&self, phi: f64) -> f64 {
        potential(self.c, self.a, phi)
    }

    /// `Q(phi) = (c - phi)^2 (b + phi^2) - a`.
    pub fn quartic(&self, phi: f64) -> f64 {
        let g = self.c - phi;
        g * g * (self.b + phi * phi) - self.a
    }

    fn quartic_d(&self, phi: f64) -> f64 {
        let g = self.c - phi;
        -2.0 * g * (self.b + phi * phi) + 2.0 * phi * g * g
    }

    /// Turning points `(phi_minus, phi_plus)` of the orbit.
    pub fn turning_points(&self) -> Result<(f64, f64)> {
        let (p1, p2) = self.critical_points()?;
        let tol = 0.0;
        let f = |x: f64| (self.quartic(x), self.quartic_d(x));
        let lo = safe_newton(p1, p2, tol, f)?;
        let hi = safe_newton(p2, self.c, tol, f)?;
        if !(hi > lo) {
            return Err(WaveError::Degenerate("turning points coincide".into()));
        }
        Ok((lo, hi))
    }

    /// Turning points plus the deflated quadratic of `Q`.
    pub fn orbit(&self) -> Result<Orbit> {
        let (lo, hi) = self.turning_points()?;
        let c = self.c;
        let s = lo + hi;
        let p = lo * hi;
        // Q = (phi^2 - s phi + p)(phi^2 + al phi + be)
        let al = s - 2.0 * c;
        let be = c * c + self.b + s * al - p;
        let o = Orbit { params: *self, phi_minus: lo, phi_plus: hi, q1: al, q0: be };
        let mid = 0.5 * (lo + hi);
        if !(o.q(lo) > 0.0 && o.q(mid) > 0.0 && o.q(hi) > 0.0) {
            return Err(WaveError::Degenerate("cofactor of Q not positive on the orbit".into()));
        }
        Ok(o)
    }
}

/// Turning points of one orbit with the positive cofactor
/// `q(phi) = Q(phi) / ((phi - phi_minus)(phi_plus - phi))`.
#[derive(Debug, Clone, Copy)]
pub struct Orbit {
    pub params: WaveParams,
    pub phi_minus: f64,
    pub phi_plus: f64,
    q1: f64,
    q0: f64,
}

impl Orbit {
    pub fn q(&self, phi: f64) -> f64 {
        -(phi * phi + self.q1 * phi + self.q0)
    }

    /// Map `s` in `[-pi/2, pi/2]` to the orbit, `phi = m + r sin s`.
    #[inline]
    pub fn phi_at(&self, s: f64) -> f64 {
        let m = 0.5 * (self.phi_plus + self.phi_minus);
        let r = 0.5 * (self.phi_plus - self.phi_minus);
        m + r * s.sin()
    }

    /// `dx/ds` along the orbit: `(c - phi) / sqrt(q(phi))`.
    #[inline]
    pub fn dx_ds(&self, s: f64) -> f64 {
        let phi = self.phi_at(s);
        (self.params.c - phi) / self.q(phi).sqrt()
    }
}

fn check_speed(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(WaveError::OutOfRange(format!("speed c = {c} must be positive")));
    }
    Ok(())
}

pub fn potential(c: f64, a: f64, phi: f64) -> f64 {
    -phi * phi + a / ((c - phi) * (c - phi))
}

/// `27 c^4 / 256`, where the two critical points merge at `c / 4`.
pub fn a_critical(c: f64) -> f64 {
    27.0 * c.powi(4) / 256.0
}

/// Roots of `phi (c - phi)^3 = a` on `(0, c/4)` and `(c/4, c)`.
pub fn critical_points(c: f64, a: f64) -> Result<(f64, f64)> {
    check_speed(c)?;
    if !(a > 0.0 && a < a_critical(c)) {
        return Err(WaveError::OutOfRange(format!("a = {a} outside (0, 27c^4/256)")));
    }
    let f = |x: f64| {
        let g = c - x;
        (x * g * g * g - a, g * g * (c - 4.0 * x))
    };
    let p1 = safe_newton(0.0, 0.25 * c, 0.0, f)?;
    let p2 = safe_newton(0.25 * c, c, 0.0, f)?;
    Ok((p1, p2))
}

/// Center level `b_-(a) = U(phi2)`.
pub fn b_minus(c: f64, a: f64) -> Result<f64> {
    let (_, p2) = critical_points(c, a)?;
    Ok(c * p2 - 2.0 * p2 * p2)
}

/// Saddle level `b_+(a) = U(phi1)`.
pub fn b_plus(c: f64, a: f64) -> Result<f64> {
    let (p1, _) = critical_points(c, a)?;
    Ok(c * p1 - 2.0 * p1 * p1)
}

/// Range of `a` at fixed `(c, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegionBounds {
    pub a_low: f64,
    pub a_high: f64,
}

/// `a` bounds of the existence region for `-c^2 < b < c^2/8`.
///
/// Solves `b = c phi - 2 phi^2` for the critical point and maps it through
/// `a = phi (c - phi)^3`.
pub fn region_boundaries(c: f64, b: f64) -> Result<RegionBounds> {
    check_speed(c)?;
    if !(b > -c * c && b < c * c / 8.0) {
        return Err(WaveError::OutOfRange(format!("b = {b} outside (-c^2, c^2/8)")));
    }
    let s = (c * c - 8.0 * b).sqrt();
    let p2 = 0.25 * (c + s);
    let a_high = p2 * (c - p2).powi(3);
    let a_low = if b > 0.0 {
        let p1 = 0.25 * (c - s);
        p1 * (c - p1).powi(3)
    } else {
        0.0
    };
    Ok(RegionBounds { a_low, a_high })
}

/// Membership with a `1e-12 c^4` margin on both `a` boundaries.
pub fn contains(c: f64, a: f64, b: f64) -> bool {
    let Ok(r) = region_boundaries(c, b) else {
        return false;
    };
    let m = BOUNDARY_MARGIN * c.powi(4);
    a > r.a_low + m && a < r.a_high - m
}

/// Level `b` of the peaked limit at period `L`: `-c^2 sech^2(L/2)`.
pub fn peaked_limit(c: f64, period: f64) -> f64 {
    let s = 1.0 / (0.5 * period).cosh();
    -c * c * s * s
}

/// Squared frequency of small oscillations about `phi2`.
pub fn linear_frequency_sq(c: f64, phi2: f64) -> f64 {
    3.0 * phi2 / (c - phi2) - 1.0
}

/// Sampled wave on a uniform periodic grid, crest at `x = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct WaveProfile {
    pub params: WaveParams,
    pub period: f64,
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub dphi: Vec<f64>,
    /// `nu = (4 - d^2)^-1 phi = phi/3 - phi^2/(6c) - b/(12c)`.
    pub nu: Vec<f64>,
    /// Max of `|(c - phi)^2 (phi'^2 - phi^2 - b) + a| / c^4` over the grid.
    pub residual: f64,
}

impl WaveProfile {
    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.period / self.len() as f64
    }

    pub fn max_phi(&self) -> f64 {
        self.phi.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_phi(&self) -> f64 {
        self.phi.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Constant solution `phi = phi2` viewed on the period of the linear mode.
    pub fn constant(c: f64, phi2: f64, n: usize) -> Result<Self> {
        check_speed(c)?;
        if !(phi2 > 0.25 * c && phi2 < c) {
            return Err(WaveError::OutOfRange(format!("phi2 = {phi2} outside (c/4, c)")));
        }
        let a = phi2 * (c - phi2).powi(3);
        let b = c * phi2 - 2.0 * phi2 * phi2;
        let period = 2.0 * std::f64::consts::PI / linear_frequency_sq(c, phi2).sqrt();
        let x = (0..n).map(|k| k as f64 * period / n as f64).collect();
        let params = WaveParams { c, a, b };
        Ok(Self { params, period, x, phi: vec![phi2; n], dphi: vec![0.0; n], nu: vec![nu_of(&params, phi2); n], residual: 0.0 })
    }

    /// True for the constant wave built by [`Self::constant`].
    pub fn is_constant(&self) -> bool {
        self.dphi.iter().all(|&d| d == 0.0)
    }

    /// The same wave on `n` grid points.
    pub fn resampled(&self, n: usize) -> Result<Self> {
        if self.is_constant() {
            Self::constant(self.params.c, self.phi[0], n)
        } else {
            profile(&self.params, n)
        }
    }
}

/// `nu` from `phi` through `4 nu - nu'' = phi` with `d = b/4`.
pub fn nu_of(p: &WaveParams, phi: f64) -> f64 {
    phi / 3.0 - phi * phi / (6.0 * p.c) - p.b / (12.0 * p.c)
}

/// Right-hand side of `phi'' = phi - a (c - phi)^-3`.
pub fn rhs(p: &WaveParams) -> impl Fn(f64, &[f64; 2]) -> [f64; 2] + '_ {
    move |_x, y| [y[1], y[0] - p.a / (p.c - y[0]).powi(3)]
}

/// Integrate from the crest over half a period on `n` grid points and mirror.
pub fn profile(params: &WaveParams, n: usize) -> Result<WaveProfile> {
    if n < 64 || !n.is_multiple_of(2) {
        return Err(WaveError::InvalidArgument(format!("grid size {n} must be even and at least 64")));
    }
    let orbit = params.orbit()?;
    let period = periodfn::period(params)?;
    let h = period / n as f64;
    let half: Vec<f64> = (0..=n / 2).map(|k| k as f64 * h).collect();
    let sol = solve_on_grid(rhs(params), [orbit.phi_plus, 0.0], &half, ODE_TOL)?;
    let mut phi = vec![0.0; n];
    let mut dphi = vec![0.0; n];
    for k in 0..=n / 2 {
        phi[k] = sol[k][0];
        dphi[k] = sol[k][1];
    }
    for k in n / 2 + 1..n {
        phi[k] = phi[n - k];
        dphi[k] = -dphi[n - k];
    }
    // the mirrored point must be the trough
    dphi[0] = 0.0;
    let end = sol[n / 2];
    let c = params.c;
    if (end[0] - orbit.phi_minus).abs() > 1e-7 * c || end[1].abs() > 1e-7 * c {
        return Err(WaveError::NonConvergence(format!(
            "half-period integration ends at ({}, {}) instead of ({}, 0)",
            end[0], end[1], orbit.phi_minus
        )));
    }
    let residual = phi
        .iter()
        .zip(&dphi)
        .map(|(&u, &du)| ((c - u).powi(2) * (du * du - u * u - params.b) + params.a).abs())
        .fold(0.0, f64::max)
        / c.powi(4);
    if residual > 1e-9 {
        return Err(WaveError::NonConvergence(format!("first-integral residual {residual:e}")));
    }
    let x = (0..n).map(|k| k as f64 * h).collect();
    let nu = phi.iter().map(|&u| nu_of(params, u)).collect();
    Ok(WaveProfile { params: *params, period, x, phi, dphi, nu, residual })
}

/// Period measured as the time the ODE takes to return to the crest.
pub fn time_of_flight(params: &WaveParams) -> Result<f64> {
    let orbit = params.orbit()?;
    let f = rhs(params);
    let mut it = Integrator::new(0.0, [orbit.phi_plus, 0.0], 1e-3, ODE_TOL);
    // leave the crest, then wait for phi' to turn from positive to non-positive
    let guess = periodfn::period(params)?;
    it.advance_to(&f, 0.5 * guess)?;
    it.advance_to_event(&f, |y| y[1], 1.0, 4.0 * guess)
}
