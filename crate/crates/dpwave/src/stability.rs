//! Fixed-period curves and the constrained stability count.
//!
//! At fixed `c` and `L` the waves form a curve `b = B_L(a)`, `0 < a < a_L`.
//! Along it the mass `M = \oint phi` and `F = (1/6) \oint phi^3` decide the
//! sign pattern of the 2x2 projection matrix `S`, and with the unconstrained
//! counts `n(L)`, `z(L)` this gives the count on the constrained space.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WaveError};
use crate::periodfn::{orbit_integrals, period};
use crate::spectral::{count_negative, direct_operator, spectral_profile};
use crate::wavecore::{b_minus, b_plus, critical_points, WaveParams, WaveProfile, BOUNDARY_MARGIN};

/// Relative distance of the first and last curve samples from the ends of `(0, a_L)`.
pub const CURVE_EDGE: f64 = 1e-3;

/// Right end `a_L` of the fixed-period curve, where the wave is the constant `phi2`
/// with linear period `L`.
pub fn a_max_for_period(c: f64, period: f64) -> Result<f64> {
    if !(c > 0.0 && period > 0.0 && period.is_finite()) {
        return Err(WaveError::InvalidArgument(format!("need c > 0 and L > 0, got c = {c}, L = {period}")));
    }
    Ok(constant_wave_for_period(c, period).1)
}

/// `(phi2, a_L)` for the constant wave whose small oscillations have period `L`.
pub fn constant_wave_for_period(c: f64, period: f64) -> (f64, f64) {
    let w2 = (2.0 * PI / period).powi(2);
    let phi2 = c * (1.0 + w2) / (4.0 + w2);
    (phi2, phi2 * (c - phi2).powi(3))
}

/// The unique `b` with `L(a, b) = L`, by bisection to full precision.
pub fn solve_b(c: f64, period_target: f64, a: f64) -> Result<f64> {
    let a_l = a_max_for_period(c, period_target)?;
    if !(a > 0.0 && a < a_l) {
        return Err(WaveError::NoRoot(format!("a = {a} outside (0, a_L = {a_l})")));
    }
    // the region test keeps a margin in `a`; near b_- it maps to b through da/db = (c - phi2)^2
    let phi2 = critical_points(c, a)?.1;
    let guard = 4.0 * BOUNDARY_MARGIN * (c * c).max(c.powi(4) / (c - phi2).powi(2));
    let mut lo = b_minus(c, a)? + guard;
    let mut hi = b_plus(c, a)? - guard;
    let at = |b: f64| -> Result<f64> { Ok(period(&WaveParams::new(c, a, b)?)? - period_target) };
    if at(lo)? > 0.0 {
        return Err(WaveError::NoRoot(format!("period at b_-(a) already exceeds L = {period_target}")));
    }
    if at(hi)? < 0.0 {
        return Err(WaveError::NoRoot(format!("period at b_+(a) still below L = {period_target}")));
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if at(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Mass, `F` and the optional energy of a profile.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Functionals {
    pub mass: f64,
    pub f_integral: f64,
    /// The same integrals as trapezoid sums on the profile grid.
    pub mass_grid: f64,
    pub f_grid: f64,
    /// `E = (1/2) sum |phi_k|^2 (1 + k^2 w^2)/(4 + k^2 w^2)`, diagnostic only.
    pub energy: f64,
}

impl Functionals {
    pub fn ratio(&self) -> f64 {
        self.f_integral / self.mass.powi(3)
    }

    /// Largest relative gap between quadrature and grid sums.
    pub fn grid_discrepancy(&self) -> f64 {
        ((self.mass - self.mass_grid) / self.mass).abs().max(((self.f_integral - self.f_grid) / self.f_integral).abs())
    }
}

pub fn functionals(profile: &WaveProfile) -> Result<Functionals> {
    let h = profile.spacing();
    let mass_grid = h * profile.phi.iter().sum::<f64>();
    let f_grid = h * profile.phi.iter().map(|u| u.powi(3)).sum::<f64>() / 6.0;
    let (mass, f_integral) = if profile.is_constant() {
        (mass_grid, f_grid)
    } else {
        let oi = orbit_integrals(&profile.params)?;
        (oi.mass, oi.f_integral)
    };
    Ok(Functionals { mass, f_integral, mass_grid, f_grid, energy: energy(profile) })
}

fn energy(profile: &WaveProfile) -> f64 {
    let n = profile.len();
    let l = profile.period;
    let w = 2.0 * PI / l;
    let mut e = 0.0;
    for k in 0..=n / 2 {
        let (mut re, mut im) = (0.0, 0.0);
        for (j, u) in profile.phi.iter().enumerate() {
            let t = 2.0 * PI * ((k * j) % n) as f64 / n as f64;
            re += u * t.cos();
            im -= u * t.sin();
        }
        // coefficient against the unit-norm mode e^{ikwx}/sqrt(L)
        let scale = l.sqrt() / n as f64;
        let m2 = (re * re + im * im) * scale * scale;
        let kw2 = (k as f64 * w).powi(2);
        let mult = if k == 0 || 2 * k == n { 1.0 } else { 2.0 };
        e += mult * m2 * (1.0 + kw2) / (4.0 + kw2);
    }
    0.5 * e
}

/// One point of the curve with its integrals from the orbit quadrature.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurvePoint {
    pub a: f64,
    pub b: f64,
    pub mass: f64,
    pub f_integral: f64,
}

pub fn curve_point(c: f64, period_target: f64, a: f64) -> Result<CurvePoint> {
    let b = solve_b(c, period_target, a)?;
    let oi = orbit_integrals(&WaveParams::new(c, a, b)?)?;
    Ok(CurvePoint { a, b, mass: oi.mass, f_integral: oi.f_integral })
}

/// Derivatives along the curve by central differences with one Richardson step.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CurveSlopes {
    pub db_da: f64,
    pub dm_da: f64,
    pub df_da: f64,
    pub err_db: f64,
    pub err_dm: f64,
    pub err_df: f64,
    pub step: f64,
}

pub fn curve_slopes(c: f64, period_target: f64, a: f64) -> Result<CurveSlopes> {
    let a_l = a_max_for_period(c, period_target)?;
    let step = (0.1 * a.min(a_l - a)).min(1e-2 * a_l);
    let pts: Vec<CurvePoint> = [-step, step, -0.5 * step, 0.5 * step]
        .par_iter()
        .map(|d| curve_point(c, period_target, a + d))
        .collect::<Result<_>>()?;
    let d = |f: fn(&CurvePoint) -> f64| {
        let d1 = (f(&pts[1]) - f(&pts[0])) / (2.0 * step);
        let d2 = (f(&pts[3]) - f(&pts[2])) / step;
        let r = (4.0 * d2 - d1) / 3.0;
        (r, (r - d2).abs())
    };
    let (db_da, eb) = d(|p| p.b);
    let (dm_da, em) = d(|p| p.mass);
    let (df_da, ef) = d(|p| p.f_integral);
    // rounding in b, M, F (a few ulps of the quadrature) divided by the step
    let floor = |v: f64| 1e-13 * v.abs().max(c * c) / step;
    Ok(CurveSlopes {
        db_da,
        dm_da,
        df_da,
        err_db: eb + floor(pts[1].b),
        err_dm: em + floor(pts[1].mass),
        err_df: ef + floor(pts[1].f_integral),
        step,
    })
}

/// The matrix `S` of inner products of `L^-1 {1, phi^2}` with `{1, phi^2}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ProjectionMatrix {
    /// Row-major: `[[<L^-1 1, 1>, <L^-1 phi^2, 1>], [<L^-1 1, phi^2>, <L^-1 phi^2, phi^2>]]`.
    pub s: [[f64; 2]; 2],
    pub det: f64,
    pub trace: f64,
    pub det_noise: f64,
    pub n0: usize,
    pub z0: usize,
}

impl ProjectionMatrix {
    fn from_entries(s: [[f64; 2]; 2], det_noise: f64) -> Self {
        let det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
        let trace = s[0][0] + s[1][1];
        let (n0, z0) = if det.abs() <= det_noise {
            (usize::from(trace < 0.0), 1)
        } else if det < 0.0 {
            (1, 0)
        } else if trace < 0.0 {
            (2, 0)
        } else {
            (0, 0)
        };
        Self { s, det, trace, det_noise, n0, z0 }
    }

    /// Relative mismatch of the two off-diagonal entries.
    pub fn asymmetry(&self) -> f64 {
        let (x, y) = (self.s[0][1], self.s[1][0]);
        (x - y).abs() / x.abs().max(y.abs())
    }
}

/// `S` at a point of the curve through `(a, b)`, from `b`-derivatives along the
/// curve and the scaling in `c`.
///
/// Fails with [`WaveError::NearCriticalB`] when `dB_L/da` is within three times
/// its noise of zero.
pub fn projection_matrix(c: f64, a: f64, b: f64) -> Result<(ProjectionMatrix, CurveSlopes)> {
    let params = WaveParams::new(c, a, b)?;
    let oi = orbit_integrals(&params)?;
    let sl = curve_slopes(c, oi.period, a)?;
    if sl.db_da.abs() <= 3.0 * sl.err_db {
        return Err(WaveError::NearCriticalB { slope: sl.db_da, noise: sl.err_db });
    }
    Ok((projection_from_slopes(c, b, oi.mass, oi.f_integral, &sl), sl))
}

fn projection_from_slopes(c: f64, b: f64, m: f64, f: f64, sl: &CurveSlopes) -> ProjectionMatrix {
    let m_b = sl.dm_da / sl.db_da;
    let f_b = sl.df_da / sl.db_da;
    let rel_b = sl.err_db / sl.db_da.abs();
    let e_mb = sl.err_dm / sl.db_da.abs() + m_b.abs() * rel_b;
    let e_fb = sl.err_df / sl.db_da.abs() + f_b.abs() * rel_b;
    let m_c = m / c - 2.0 * b * m_b / c;
    let f_c = 3.0 * f / c - 2.0 * b * f_b / c;
    let s = [[4.0 * m_b, -2.0 * c * m_c - 2.0 * b * m_b], [8.0 * f_b, -4.0 * c * f_c - 4.0 * b * f_b]];
    let noise = 16.0 * (m.abs() * e_fb + 3.0 * f.abs() * e_mb);
    ProjectionMatrix::from_entries(s, noise)
}

/// `S` from `L^-1` applied in the even trigonometric block of the direct discretization.
///
/// `L` is invertible there: its kernel `phi'` is odd.
pub fn projection_matrix_direct(profile: &WaveProfile, modes: usize) -> Result<ProjectionMatrix> {
    let op = direct_operator(profile, modes)?;
    let one = op.even_coords(&vec![1.0; profile.len()]);
    let sq: Vec<f64> = profile.phi.iter().map(|u| u * u).collect();
    let sq = op.even_coords(&sq);
    let u1 = op.solve_even(&one)?;
    let u2 = op.solve_even(&sq)?;
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
    let s = [[dot(&u1, &one), dot(&u2, &one)], [dot(&u1, &sq), dot(&u2, &sq)]];
    let scale = s.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(ProjectionMatrix::from_entries(s, 1e-9 * scale * scale))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    /// The counting formula leaves a negative direction or a wrong kernel size.
    CriterionFailed,
    /// `dB_L/da` too close to zero or the spectral counts could not be settled.
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Stable => "stable",
            Self::CriterionFailed => "criterion-failed",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// `n(L) - n0 - z0 = 0` and `z(L) + z0 = 1`.
pub fn verdict(n_l: usize, z_l: usize, pm: &ProjectionMatrix) -> Verdict {
    if n_l == pm.n0 + pm.z0 && z_l + pm.z0 == 1 {
        Verdict::Stable
    } else {
        Verdict::CriterionFailed
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveSample {
    pub a: f64,
    pub b: f64,
    pub mass: f64,
    pub f_integral: f64,
    pub ratio: f64,
    pub db_da: f64,
    pub db_da_noise: f64,
    /// `d(F/M^3)/da` along the curve.
    pub dratio_da: f64,
    pub dm_da: f64,
    pub period_error: f64,
    pub projection: Option<ProjectionMatrix>,
    /// `(n(L), z(L))` when the spectral counts were computed and agreed.
    pub spectral: Option<(usize, usize)>,
    pub verdict: Verdict,
}

impl CurveSample {
    /// `det S`, or NaN when `S` was not formed.
    pub fn det_s(&self) -> f64 {
        self.projection.map_or(f64::NAN, |p| p.det)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedPeriodCurve {
    pub c: f64,
    pub period: f64,
    pub a_l: f64,
    pub samples: Vec<CurveSample>,
    /// Sample nearest a sign change of `dB_L/da`.
    pub slope_sign_change: Option<usize>,
}

impl FixedPeriodCurve {
    pub fn ratio_strictly_decreasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].ratio < w[0].ratio)
    }

    pub fn mass_strictly_increasing(&self) -> bool {
        self.samples.windows(2).all(|w| w[1].mass > w[0].mass)
    }

    pub fn conclusive(&self) -> impl Iterator<Item = &CurveSample> {
        self.samples.iter().filter(|s| s.verdict != Verdict::Inconclusive)
    }
}

/// Chebyshev-clustered `a` values in `(eps a_L, (1 - eps) a_L)`.
pub fn curve_grid(a_l: f64, n: usize) -> Vec<f64> {
    let e = CURVE_EDGE;
    (0..n)
        .map(|i| {
            let t = 0.5 * (1.0 - (PI * (i as f64 + 0.5) / n as f64).cos());
            a_l * (e + (1.0 - 2.0 * e) * t)
        })
        .collect()
}

#[derive(Debug, Clone, Copy)]
pub struct CurveOptions {
    /// Compute `n(L)`, `z(L)` per sample and form verdicts.
    pub spectral: bool,
}

impl Default for CurveOptions {
    fn default() -> Self {
        Self { spectral: true }
    }
}

pub fn trace_curve(c: f64, period_target: f64, n_samples: usize) -> Result<FixedPeriodCurve> {
    trace_curve_with(c, period_target, n_samples, CurveOptions::default())
}

pub fn trace_curve_with(c: f64, period_target: f64, n_samples: usize, opts: CurveOptions) -> Result<FixedPeriodCurve> {
    if n_samples < 16 {
        return Err(WaveError::InvalidArgument(format!("need at least 16 samples, got {n_samples}")));
    }
    let a_l = a_max_for_period(c, period_target)?;
    let grid = curve_grid(a_l, n_samples);
    let samples: Vec<CurveSample> =
        grid.par_iter().map(|&a| curve_sample(c, period_target, a, opts)).collect::<Result<_>>()?;
    let slope_sign_change = samples
        .windows(2)
        .position(|w| w[0].db_da.signum() != w[1].db_da.signum())
        .map(|i| if samples[i].db_da.abs() <= samples[i + 1].db_da.abs() { i } else { i + 1 });
    Ok(FixedPeriodCurve { c, period: period_target, a_l, samples, slope_sign_change })
}

fn curve_sample(c: f64, period_target: f64, a: f64, opts: CurveOptions) -> Result<CurveSample> {
    let pt = curve_point(c, period_target, a)?;
    let params = WaveParams::new(c, a, pt.b)?;
    let period_error = (period(&params)? - period_target).abs() / period_target;
    let sl = curve_slopes(c, period_target, a)?;
    let ratio = pt.f_integral / pt.mass.powi(3);
    let dratio_da = (sl.df_da * pt.mass - 3.0 * pt.f_integral * sl.dm_da) / pt.mass.powi(4);
    let near_critical = sl.db_da.abs() <= 3.0 * sl.err_db;
    let projection = (!near_critical).then(|| projection_from_slopes(c, pt.b, pt.mass, pt.f_integral, &sl));
    let spectral = if opts.spectral {
        spectral_profile(&params).and_then(|p| count_negative(&p)).ok().map(|r| (r.n, r.z))
    } else {
        None
    };
    let verdict = match (projection, spectral) {
        (Some(pm), Some((n, z))) => verdict(n, z, &pm),
        _ => Verdict::Inconclusive,
    };
    Ok(CurveSample {
        a,
        b: pt.b,
        mass: pt.mass,
        f_integral: pt.f_integral,
        ratio,
        db_da: sl.db_da,
        db_da_noise: sl.err_db,
        dratio_da,
        dm_da: sl.dm_da,
        period_error,
        projection,
        spectral,
        verdict,
    })
}

/// `phi2` of the constant wave at `a`, for callers comparing to the linear limit.
pub fn phi2_at(c: f64, a: f64) -> Result<f64> {
    Ok(critical_points(c, a)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_l_closed_form() {
        let a = a_max_for_period(1.0, PI * 2f64.sqrt()).unwrap();
        assert!((a - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn a_l_limits() {
        assert!((a_max_for_period(1.0, 1e6).unwrap() - 27.0 / 256.0).abs() < 1e-9);
        assert!(a_max_for_period(1.0, 1e-3).unwrap() < 1e-9);
    }

    #[test]
    fn solve_b_hits_period() {
        let l = PI;
        let a_l = a_max_for_period(1.0, l).unwrap();
        let a = 0.5 * a_l;
        let b = solve_b(1.0, l, a).unwrap();
        let p = period(&WaveParams::new(1.0, a, b).unwrap()).unwrap();
        assert!((p - l).abs() < 1e-12 * l);
    }

    #[test]
    fn verdict_table() {
        let pm = ProjectionMatrix::from_entries([[1.0, 0.0], [0.0, -1.0]], 1e-12);
        assert_eq!((pm.n0, pm.z0), (1, 0));
        assert_eq!(verdict(1, 1, &pm), Verdict::Stable);
        assert_eq!(verdict(2, 1, &pm), Verdict::CriterionFailed);
        let pm = ProjectionMatrix::from_entries([[-1.0, 0.0], [0.0, -2.0]], 1e-12);
        assert_eq!((pm.n0, pm.z0), (2, 0));
        assert_eq!(verdict(2, 1, &pm), Verdict::Stable);
        let pm = ProjectionMatrix::from_entries([[1.0, 0.0], [0.0, 2.0]], 1e-12);
        assert_eq!(verdict(1, 1, &pm), Verdict::CriterionFailed);
    }
}
