//! Small-amplitude expansion near the constant wave.
//!
//! Writing `phi = phi2 (1 + A cos(w x) + O(A^2))` and `a = a_L (1 + alpha)` at
//! fixed period `L = 2 pi / w`, the solvability condition at third order gives
//! `alpha = -5 A^2 / (2 eta^2)` with `eta = (c - phi2) / phi2`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, WaveError};
use crate::periodfn::orbit_integrals;
use crate::stability::{a_max_for_period, constant_wave_for_period, solve_b};
use crate::wavecore::{linear_frequency_sq, WaveParams};

#[derive(Debug, Clone, Copy, Serialize)]
pub struct StokesPrediction {
    pub phi2: f64,
    pub c: f64,
    pub eta: f64,
    pub omega: f64,
    pub period: f64,
    pub alpha2: f64,
    pub amplitude: f64,
    pub mass: f64,
    pub f_integral: f64,
    pub ratio: f64,
    pub alpha: f64,
}

pub fn predict(phi2: f64, c: f64, amplitude: f64) -> Result<StokesPrediction> {
    if !(phi2 > 0.25 * c && phi2 < c) {
        return Err(WaveError::OutOfRange(format!("phi2 = {phi2} outside (c/4, c)")));
    }
    if !(0.0..=0.2).contains(&amplitude) {
        return Err(WaveError::OutOfRange(format!("amplitude {amplitude} outside [0, 0.2]")));
    }
    let eta = (c - phi2) / phi2;
    let w2 = linear_frequency_sq(c, phi2);
    let omega = w2.sqrt();
    let period = 2.0 * PI / omega;
    let a2 = amplitude * amplitude;
    let alpha2 = -2.5 / (eta * eta);
    let k = 1.0 / (eta * eta * w2);
    Ok(StokesPrediction {
        phi2,
        c,
        eta,
        omega,
        period,
        alpha2,
        amplitude,
        mass: phi2 * period * (1.0 - 0.5 * k * a2),
        f_integral: phi2.powi(3) * period / 6.0 * (1.0 + 1.5 * (1.0 - k) * a2),
        ratio: (1.0 + 1.5 * a2) / (6.0 * period * period),
        alpha: alpha2 * a2,
    })
}

/// Measured and predicted values at `a = a_L (1 - epsilon)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct StokesSample {
    pub epsilon: f64,
    pub a: f64,
    pub b: f64,
    /// Half the crest-to-trough height over `phi2`.
    pub amplitude: f64,
    pub alpha: f64,
    pub mass: f64,
    pub ratio: f64,
    pub predicted: StokesPrediction,
    pub dev_mass: f64,
    pub dev_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StokesReport {
    pub c: f64,
    pub period: f64,
    pub phi2: f64,
    pub eta: f64,
    pub a_l: f64,
    pub samples: Vec<StokesSample>,
    /// Least-squares slope of `F/M^3` against `A^2` and its predicted value `1/(4 L^2)`.
    pub ratio_slope: f64,
    pub ratio_slope_expected: f64,
    /// Slope of `alpha` against `A^2` and `-5/(2 eta^2)`.
    pub alpha_slope: f64,
    pub alpha_slope_expected: f64,
    pub mass_slope: f64,
    pub mass_slope_expected: f64,
    /// `dev[k] / dev[k + 1]` for consecutive samples.
    pub mass_decay: Vec<f64>,
    pub ratio_decay: Vec<f64>,
}

impl StokesReport {
    pub fn ratio_slope_error(&self) -> f64 {
        (self.ratio_slope / self.ratio_slope_expected - 1.0).abs()
    }

    pub fn alpha_slope_error(&self) -> f64 {
        (self.alpha_slope / self.alpha_slope_expected - 1.0).abs()
    }

    /// `M` decreases and `a` decreases as `A^2` grows.
    pub fn signs_ok(&self) -> bool {
        self.mass_slope < 0.0 && self.alpha_slope < 0.0
    }
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

/// Default distances `1 - a / a_L`.
pub const DEFAULT_EPSILONS: [f64; 4] = [1e-2, 1e-3, 1e-4, 1e-5];

/// Compare the expansion with waves on the fixed-period curve.
///
/// `phi2` is held at its boundary value `phi2(a_L)`, which fixes `L`, and the
/// amplitude is read off as `(phi_+ - phi_-) / (2 phi2)`: the second harmonic
/// is equal at crest and trough, so this matches `A` up to `O(A^3)`.
pub fn validate(c: f64, period: f64, epsilons: &[f64]) -> Result<StokesReport> {
    if epsilons.len() < 2 || epsilons.windows(2).any(|w| !(w[1] < w[0])) || epsilons.iter().any(|&e| !(e > 0.0 && e < 1.0)) {
        return Err(WaveError::InvalidArgument("epsilons must be a decreasing sequence in (0, 1)".into()));
    }
    let a_l = a_max_for_period(c, period)?;
    let (phi2, _) = constant_wave_for_period(c, period);
    let samples: Vec<StokesSample> = epsilons
        .par_iter()
        .map(|&eps| {
            let a = a_l * (1.0 - eps);
            let b = solve_b(c, period, a)?;
            let params = WaveParams::new(c, a, b)?;
            let (lo, hi) = params.turning_points()?;
            let amplitude = 0.5 * (hi - lo) / phi2;
            let oi = orbit_integrals(&params)?;
            let predicted = predict(phi2, c, amplitude)?;
            let ratio = oi.f_integral / oi.mass.powi(3);
            Ok(StokesSample {
                epsilon: eps,
                a,
                b,
                amplitude,
                alpha: a / a_l - 1.0,
                mass: oi.mass,
                ratio,
                predicted,
                dev_mass: (oi.mass / predicted.mass - 1.0).abs(),
                dev_ratio: (ratio / predicted.ratio - 1.0).abs(),
            })
        })
        .collect::<Result<_>>()?;
    let a2: Vec<f64> = samples.iter().map(|s| s.amplitude.powi(2)).collect();
    let col = |f: fn(&StokesSample) -> f64| samples.iter().map(f).collect::<Vec<_>>();
    let eta = (c - phi2) / phi2;
    let w2 = linear_frequency_sq(c, phi2);
    let decay = |f: fn(&StokesSample) -> f64| samples.windows(2).map(|w| f(&w[0]) / f(&w[1])).collect();
    Ok(StokesReport {
        c,
        period,
        phi2,
        eta,
        a_l,
        ratio_slope: slope(&a2, &col(|s| s.ratio)),
        ratio_slope_expected: 1.0 / (4.0 * period * period),
        alpha_slope: slope(&a2, &col(|s| s.alpha)),
        alpha_slope_expected: -2.5 / (eta * eta),
        mass_slope: slope(&a2, &col(|s| s.mass)),
        mass_slope_expected: -phi2 * period / (2.0 * eta * eta * w2),
        mass_decay: decay(|s| s.dev_mass),
        ratio_decay: decay(|s| s.dev_ratio),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_amplitude_is_constant_wave() {
        let p = predict(0.6, 1.0, 0.0).unwrap();
        assert!((p.mass - 0.6 * p.period).abs() < 1e-15);
        assert!((p.f_integral - 0.6f64.powi(3) * p.period / 6.0).abs() < 1e-15);
        assert_eq!(p.alpha, 0.0);
    }

    #[test]
    fn alpha2_at_eta_one() {
        // eta = 1 at phi2 = c/2
        let p = predict(0.5, 1.0, 0.1).unwrap();
        assert!((p.alpha2 + 2.5).abs() < 1e-15);
    }

    #[test]
    fn ratio_consistent_with_mass_and_f() {
        // F/M^3 from the expansions of F and M agrees to O(A^4)
        let p = predict(0.7, 1.0, 1e-3).unwrap();
        let r = p.f_integral / p.mass.powi(3);
        assert!((r / p.ratio - 1.0).abs() < 1e-10);
    }
}
