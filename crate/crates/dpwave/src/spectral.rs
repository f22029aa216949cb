//! Negative and zero eigenvalues of the Hessian `L = c - phi - 3c (4 - d^2)^-1`.
//!
//! Three independent routes:
//! * Birman-Schwinger: `L v = lambda v` has a solution iff the Schrodinger
//!   operator `K(lambda) = -d^2 + (c - 4 phi - 4 lambda)/(c - phi - lambda)` has a
//!   zero eigenvalue, and the number of negative eigenvalues of `L` equals the
//!   number of negative eigenvalues of `K(0)`.
//! * A direct discretization of `L` in the real trigonometric basis.
//! * Floquet shooting for `K(0) v = 0`: the sign of `y1'(L)` classifies `(n, z)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WaveError};
use crate::numerics::linalg::{solve, symmetric_eigenvalues, CyclicTridiagonal, Matrix};
use crate::numerics::ode::{Integrator, Tolerance};
use crate::wavecore::{WaveParams, WaveProfile, ODE_TOL};

/// Potential of `K(lambda)`.
#[inline]
pub fn potential(c: f64, phi: f64, lambda: f64) -> f64 {
    (c - 4.0 * phi - 4.0 * lambda) / (c - phi - lambda)
}

/// Upper end `c - max phi` of the admissible spectral parameter.
pub fn lambda0(profile: &WaveProfile) -> f64 {
    profile.params.c - profile.max_phi()
}

/// Grid size for spectral work: a power of two, at least 512, with spacing
/// below a quarter of the relative crest gap `1 - phi_+/c` so near-peaked crests
/// are resolved. The rule is invariant under the speed scaling.
pub fn recommended_points(params: &WaveParams) -> Result<usize> {
    let (_, phi_plus) = params.turning_points()?;
    let period = crate::periodfn::period(params)?;
    let h = 0.25 * (params.c - phi_plus) / params.c;
    let need = (period / h).ceil() as usize;
    Ok(need.next_power_of_two().clamp(512, 1 << 15))
}

/// Profile on [`recommended_points`].
pub fn spectral_profile(params: &WaveParams) -> Result<WaveProfile> {
    crate::wavecore::profile(params, recommended_points(params)?)
}

/// Second-order periodic finite differences for `K(lambda)` on the profile grid.
pub fn assemble_k(profile: &WaveProfile, lambda: f64) -> Result<CyclicTridiagonal> {
    let c = profile.params.c;
    let l0 = lambda0(profile);
    if !(lambda < l0 - 1e-10) {
        return Err(WaveError::LambdaTooLarge { lambda, lambda0: l0 });
    }
    let h = profile.spacing();
    let inv = 1.0 / (h * h);
    let diag = profile.phi.iter().map(|&u| 2.0 * inv + potential(c, u, lambda)).collect();
    let off = vec![-inv; profile.len()];
    Ok(CyclicTridiagonal { diag, off })
}

/// The `m` lowest eigenvalues of the discretized `K(lambda)`.
pub fn k_lowest(profile: &WaveProfile, lambda: f64, m: usize) -> Result<Vec<f64>> {
    Ok(assemble_k(profile, lambda)?.lowest(m))
}

/// Lowest eigenvalues of `K(lambda)` on `n` and `2n` points with the
/// Richardson-extrapolated values and the refinement differences.
#[derive(Debug, Clone, Serialize)]
pub struct RefinedEigenvalues {
    pub coarse: Vec<f64>,
    pub fine: Vec<f64>,
    pub extrapolated: Vec<f64>,
    pub refinement: Vec<f64>,
}

pub fn k_lowest_refined(profile: &WaveProfile, lambda: f64, m: usize) -> Result<RefinedEigenvalues> {
    let fine_p = profile.resampled(2 * profile.len())?;
    let coarse = k_lowest(profile, lambda, m)?;
    let fine = k_lowest(&fine_p, lambda, m)?;
    let extrapolated = coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect();
    let refinement = coarse.iter().zip(&fine).map(|(c, f)| (f - c).abs()).collect();
    Ok(RefinedEigenvalues { coarse, fine, extrapolated, refinement })
}

/// Eigenvalue branches of `K(lambda)` over a grid of `lambda`.
#[derive(Debug, Clone, Serialize)]
pub struct EigenSweep {
    pub lambda_grid: Vec<f64>,
    /// `branches[i][j]`: `j`-th lowest eigenvalue at `lambda_grid[i]`.
    pub branches: Vec<Vec<f64>>,
    /// Zero crossing of each branch on the profile grid, if inside the sweep.
    pub crossings: Vec<Option<f64>>,
    /// Crossings extrapolated from the profile grid and its refinement.
    pub crossings_extrapolated: Vec<Option<f64>>,
    pub lambda0: f64,
    /// Every branch decreases between consecutive grid points.
    pub monotone: bool,
}

impl EigenSweep {
    /// Number of branches crossing zero at negative `lambda`.
    pub fn negative_crossings(&self, band: f64) -> usize {
        self.crossings_extrapolated.iter().flatten().filter(|&&l| l < -band).count()
    }
}

/// Default grid: `points` values on `[-c, lambda0 - 1e-6 c]`.
pub fn default_lambda_grid(profile: &WaveProfile, points: usize) -> Vec<f64> {
    let c = profile.params.c;
    let hi = lambda0(profile) - 1e-6 * c;
    let lo = -c;
    (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect()
}

fn locate_crossing(profile: &WaveProfile, j: usize, lo: f64, hi: f64, xtol: f64) -> Result<f64> {
    let f = |l: f64| k_lowest(profile, l, j + 1).map(|v| v[j]);
    let (mut a, mut b) = (lo, hi);
    while b - a > xtol {
        let mid = 0.5 * (a + b);
        if f(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

fn crossings_on(profile: &WaveProfile, grid: &[f64], branches: &[Vec<f64>], m: usize, xtol: f64) -> Result<Vec<Option<f64>>> {
    (0..m)
        .map(|j| {
            for i in 1..grid.len() {
                if branches[i - 1][j] > 0.0 && branches[i][j] <= 0.0 {
                    return locate_crossing(profile, j, grid[i - 1], grid[i], xtol).map(Some);
                }
            }
            Ok(None)
        })
        .collect()
}

/// Default bisection tolerance for zero crossings in `lambda`.
pub const CROSSING_TOL: f64 = 1e-9;

/// The `m` lowest branches over `grid` (default 200 points) with their zero crossings.
pub fn eig_sweep(profile: &WaveProfile, m: usize, grid: Option<Vec<f64>>) -> Result<EigenSweep> {
    eig_sweep_with(profile, m, grid, CROSSING_TOL)
}

/// [`eig_sweep`] with crossings located to `xtol`.
pub fn eig_sweep_with(profile: &WaveProfile, m: usize, grid: Option<Vec<f64>>, xtol: f64) -> Result<EigenSweep> {
    if !(xtol > 0.0) {
        return Err(WaveError::InvalidArgument(format!("crossing tolerance {xtol} must be positive")));
    }
    let grid = grid.unwrap_or_else(|| default_lambda_grid(profile, 200));
    let branches: Vec<Vec<f64>> = grid.par_iter().map(|&l| k_lowest(profile, l, m)).collect::<Result<_>>()?;
    if branches.first().is_some_and(|b| b.iter().any(|&v| v <= 0.0)) && grid[0] <= -profile.params.c {
        return Err(WaveError::NonConvergence("branches of K(-c) are not all positive".into()));
    }
    let monotone = (1..grid.len()).all(|i| (0..m).all(|j| branches[i][j] < branches[i - 1][j]));
    let crossings = crossings_on(profile, &grid, &branches, m, xtol)?;
    let fine = profile.resampled(2 * profile.len())?;
    let crossings_extrapolated = crossings
        .iter()
        .enumerate()
        .map(|(j, cr)| match cr {
            None => Ok(None),
            Some(l) => {
                // bracket the fine-grid crossing near the coarse one
                let step = (grid[1] - grid[0]).abs().max(1e-6);
                let mut lo = l - step;
                let mut hi = (l + step).min(lambda0(&fine) - 1e-6 * profile.params.c);
                let f = |x: f64| k_lowest(&fine, x, j + 1).map(|v| v[j]);
                let mut tries = 0;
                while !(f(lo)? > 0.0 && f(hi)? <= 0.0) {
                    lo -= step;
                    hi = (hi + step).min(lambda0(&fine) - 1e-6 * profile.params.c);
                    tries += 1;
                    if tries > 50 {
                        return Ok(None);
                    }
                }
                let lf = locate_crossing(&fine, j, lo, hi, xtol)?;
                Ok(Some((4.0 * lf - l) / 3.0))
            }
        })
        .collect::<Result<_>>()?;
    Ok(EigenSweep { lambda_grid: grid, branches, crossings, crossings_extrapolated, lambda0: lambda0(profile), monotone })
}

/// `L` in the orthonormal trigonometric basis, split into its even and odd blocks.
#[derive(Debug, Clone)]
pub struct DirectOperator {
    pub modes: usize,
    pub period: f64,
    /// Basis `1/sqrt(L)`, `sqrt(2/L) cos(k w x)`, `k = 1..modes`.
    pub cos_block: Matrix,
    /// Basis `sqrt(2/L) sin(k w x)`, `k = 1..modes`.
    pub sin_block: Matrix,
}

/// Cosine coefficients `g_k = (1/n) sum f_j cos(2 pi k j / n)`, `k = 0..=kmax`.
fn cos_coeffs(f: &[f64], kmax: usize) -> Vec<f64> {
    let n = f.len();
    (0..=kmax)
        .map(|k| {
            let s: f64 = f
                .iter()
                .enumerate()
                .map(|(j, v)| v * (2.0 * std::f64::consts::PI * ((k * j) % n) as f64 / n as f64).cos())
                .sum();
            s / n as f64
        })
        .collect()
}

fn sin_coeffs(f: &[f64], kmax: usize) -> Vec<f64> {
    let n = f.len();
    (1..=kmax)
        .map(|k| {
            let s: f64 = f
                .iter()
                .enumerate()
                .map(|(j, v)| v * (2.0 * std::f64::consts::PI * ((k * j) % n) as f64 / n as f64).sin())
                .sum();
            2.0 * s / n as f64
        })
        .collect()
}

pub fn direct_operator(profile: &WaveProfile, modes: usize) -> Result<DirectOperator> {
    if modes < 32 {
        return Err(WaveError::InvalidArgument(format!("modes = {modes} must be at least 32")));
    }
    if profile.len() < 4 * modes + 2 {
        return Err(WaveError::InvalidArgument(format!(
            "{} grid points cannot resolve {modes} modes (need {})",
            profile.len(),
            4 * modes + 2
        )));
    }
    let c = profile.params.c;
    let g: Vec<f64> = profile.phi.iter().map(|&u| c - u).collect();
    let gk = cos_coeffs(&g, 2 * modes);
    let w = 2.0 * std::f64::consts::PI / profile.period;
    let smooth = |k: usize| 3.0 * c / (4.0 + (k as f64 * w).powi(2));
    let r2 = std::f64::consts::SQRT_2;
    let cos_block = Matrix::from_fn(modes + 1, |i, j| {
        let v = match (i, j) {
            (0, 0) => gk[0],
            (0, k) | (k, 0) => r2 * gk[k],
            (i, j) => gk[i.abs_diff(j)] + gk[i + j],
        };
        if i == j {
            v - smooth(i)
        } else {
            v
        }
    });
    let sin_block = Matrix::from_fn(modes, |i, j| {
        let (i, j) = (i + 1, j + 1);
        let v = gk[i.abs_diff(j)] - gk[i + j];
        if i == j {
            v - smooth(i)
        } else {
            v
        }
    });
    Ok(DirectOperator { modes, period: profile.period, cos_block, sin_block })
}

impl DirectOperator {
    /// All eigenvalues, even block first.
    pub fn eigenvalues(&self) -> Result<(Vec<f64>, Vec<f64>)> {
        let (e, o) = rayon::join(|| symmetric_eigenvalues(&self.cos_block), || symmetric_eigenvalues(&self.sin_block));
        Ok((e?, o?))
    }

    /// Orthonormal-basis coordinates of an even function sampled on the grid.
    pub fn even_coords(&self, f: &[f64]) -> Vec<f64> {
        let gk = cos_coeffs(f, self.modes);
        let l = self.period;
        let mut v = vec![l.sqrt() * gk[0]];
        v.extend(gk[1..].iter().map(|g| (2.0 * l).sqrt() * g));
        v
    }

    /// Odd-function coordinates.
    pub fn odd_coords(&self, f: &[f64]) -> Vec<f64> {
        let l = self.period;
        sin_coeffs(f, self.modes).iter().map(|s| (0.5 * l).sqrt() * s).collect()
    }

    /// Solve `L u = f` for even `f` given in coordinates.
    pub fn solve_even(&self, f: &[f64]) -> Result<Vec<f64>> {
        solve(&self.cos_block, f)
    }

    /// `||L phi'|| / ||phi'||` computed in the odd block.
    pub fn kernel_residual(&self, dphi: &[f64]) -> f64 {
        let s = self.odd_coords(dphi);
        let r = self.sin_block.mul_vec(&s);
        norm(&r) / norm(&s)
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Count of negative eigenvalues of `L` from the direct discretization.
pub fn direct_l_count(profile: &WaveProfile, modes: usize) -> Result<usize> {
    let op = direct_operator(profile, modes)?;
    let (e, o) = op.eigenvalues()?;
    let band = 1e-8 * profile.params.c;
    Ok(e.iter().chain(&o).filter(|&&v| v < -band).count())
}

/// Sign class of the Floquet slope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FloquetClass {
    /// `theta_F < 0`: `n = 2`, `z = 1`.
    TwoNegative,
    /// `theta_F = 0` within tolerance: `n = 1`, `z = 2`.
    DoubleZero,
    /// `theta_F > 0`: `n = 1`, `z = 1`.
    OneNegative,
}

impl FloquetClass {
    pub fn counts(self) -> (usize, usize) {
        match self {
            Self::TwoNegative => (2, 1),
            Self::DoubleZero => (1, 2),
            Self::OneNegative => (1, 1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FloquetData {
    /// `y1'(L)`.
    pub theta_f: f64,
    /// Integration error band for `theta_f`.
    pub band: f64,
    pub y1_end: f64,
    pub y2_end: f64,
    pub dy2_end: f64,
    pub class: FloquetClass,
}

impl FloquetData {
    /// The class, refusing to decide when `|theta_F|` is inside the band.
    pub fn strict_class(&self) -> Result<FloquetClass> {
        if self.theta_f.abs() <= self.band {
            return Err(WaveError::ToleranceAmbiguous { theta: self.theta_f, band: self.band });
        }
        Ok(self.class)
    }
}

fn shoot(profile: &WaveProfile, tol: Tolerance) -> Result<[f64; 6]> {
    let p = profile.params;
    let f = move |_x: f64, y: &[f64; 6]| {
        let g = p.c - y[0];
        let pot = (p.c - 4.0 * y[0]) / g;
        [y[1], y[0] - p.a / (g * g * g), y[3], pot * y[2], y[5], pot * y[4]]
    };
    let y0 = [profile.phi[0], 0.0, 1.0, 0.0, 0.0, 1.0];
    let mut it = Integrator::new(0.0, y0, 1e-3 * profile.period, tol);
    it.advance_to(&f, profile.period)?;
    Ok(it.y)
}

/// Integrate the fundamental set of `K(0) v = 0` over one period.
pub fn floquet_theta(profile: &WaveProfile) -> Result<FloquetData> {
    if profile.is_constant() {
        // v'' = -w^2 v exactly: y1 = cos, y1'(L) = -w sin(w L) = 0
        return Ok(FloquetData { theta_f: 0.0, band: 0.0, y1_end: 1.0, y2_end: 0.0, dy2_end: 1.0, class: FloquetClass::DoubleZero });
    }
    let tight = shoot(profile, ODE_TOL)?;
    let loose = shoot(profile, Tolerance::new(1e-10, 1e-11))?;
    let theta_f = tight[3];
    let band = (loose[3] - theta_f).abs().max(1e-12 * (1.0 + theta_f.abs()));
    let class = if theta_f.abs() <= band {
        FloquetClass::DoubleZero
    } else if theta_f < 0.0 {
        FloquetClass::TwoNegative
    } else {
        FloquetClass::OneNegative
    };
    Ok(FloquetData { theta_f, band, y1_end: tight[2], y2_end: tight[4], dy2_end: tight[5], class })
}

/// Birman-Schwinger counts from `K(0)` with a refinement band.
#[derive(Debug, Clone, Serialize)]
pub struct KZeroCounts {
    pub n: usize,
    pub z: usize,
    pub eigenvalues: RefinedEigenvalues,
    pub bands: Vec<f64>,
}

/// Eigenvalues of `K(0)` within `5 x` their grid-refinement change of zero
/// count toward `z`; those below count toward `n`.
pub fn k_zero_counts(profile: &WaveProfile) -> Result<KZeroCounts> {
    let ev = k_lowest_refined(profile, 0.0, 4)?;
    let c = profile.params.c;
    let bands: Vec<f64> = ev.refinement.iter().map(|r| (5.0 * r).max(1e-10 * c)).collect();
    let n = ev.extrapolated.iter().zip(&bands).filter(|(v, b)| **v < -**b).count();
    let z = ev.extrapolated.iter().zip(&bands).filter(|(v, b)| v.abs() <= **b).count();
    Ok(KZeroCounts { n, z, eigenvalues: ev, bands })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct MethodAgreement {
    pub bs_vs_direct: bool,
    pub bs_vs_floquet: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub z: usize,
    pub direct_n: usize,
    pub kernel_residual: f64,
    pub floquet: FloquetData,
    pub method_agreement: MethodAgreement,
}

/// Modes used by [`count_negative`] for the direct cross-check.
pub fn default_modes(profile: &WaveProfile) -> usize {
    ((profile.len() - 2) / 4).min(256)
}

/// Birman-Schwinger count cross-checked against the direct and Floquet routes.
pub fn count_negative(profile: &WaveProfile) -> Result<SpectralReport> {
    let kz = k_zero_counts(profile)?;
    let op = direct_operator(profile, default_modes(profile))?;
    let (e, o) = op.eigenvalues()?;
    let band = 1e-8 * profile.params.c;
    let direct_n = e.iter().chain(&o).filter(|&&v| v < -band).count();
    let kernel_residual = if profile.is_constant() { 0.0 } else { op.kernel_residual(&profile.dphi) };
    let floquet = floquet_theta(profile)?;
    let agreement = MethodAgreement {
        bs_vs_direct: kz.n == direct_n,
        bs_vs_floquet: floquet.class.counts() == (kz.n, kz.z),
    };
    if !agreement.bs_vs_direct || !agreement.bs_vs_floquet {
        return Err(WaveError::MethodDisagreement(format!(
            "Birman-Schwinger (n, z) = ({}, {}), direct n = {direct_n}, Floquet {:?} (theta = {:e})",
            kz.n, kz.z, floquet.class, floquet.theta_f
        )));
    }
    Ok(SpectralReport { n: kz.n, z: kz.z, direct_n, kernel_residual, floquet, method_agreement: agreement })
}

/// Closed-form eigenvalues of `L` at the constant wave `phi = phi2` for wavenumber `k`.
pub fn constant_wave_mode(c: f64, phi2: f64, k: f64) -> f64 {
    let g = c - phi2;
    g - 3.0 * c * g / (4.0 * g + k * k * (4.0 * phi2 - c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavecore::{profile, WaveParams};

    #[test]
    fn k_matrix_symmetric_and_positive_far_left() {
        let p = profile(&WaveParams::new(1.0, 0.04, 0.0).unwrap(), 128).unwrap();
        let k = assemble_k(&p, -50.0).unwrap();
        assert_eq!(k.to_dense().max_asymmetry(), 0.0);
        assert!(k.eigenvalue(0) > 0.0);
    }

    #[test]
    fn lambda_above_edge_rejected() {
        let p = profile(&WaveParams::new(1.0, 0.04, 0.0).unwrap(), 128).unwrap();
        let l0 = lambda0(&p);
        assert!(matches!(assemble_k(&p, l0), Err(WaveError::LambdaTooLarge { .. })));
    }

    #[test]
    fn constant_wave_direct_modes() {
        let (c, p2) = (1.0, 0.6);
        let w = constant_profile_modes(c, p2);
        for (k, v) in w {
            assert!((v - constant_wave_mode(c, p2, k as f64)).abs() < 1e-12, "k={k}");
        }
        assert!(constant_wave_mode(c, p2, 1.0).abs() < 1e-15);
    }

    fn constant_profile_modes(c: f64, p2: f64) -> Vec<(usize, f64)> {
        let prof = WaveProfile::constant(c, p2, 256).unwrap();
        let op = direct_operator(&prof, 32).unwrap();
        (0..=32).map(|k| (k, op.cos_block.get(k, k))).collect()
    }
}
