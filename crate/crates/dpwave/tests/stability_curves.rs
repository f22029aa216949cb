use std::f64::consts::PI;

use dpwave::periodfn::period;
use dpwave::spectral::spectral_profile;
use dpwave::stability::{
    a_max_for_period, functionals, projection_matrix, projection_matrix_direct, solve_b, trace_curve_with, verdict,
    CurveOptions, ProjectionMatrix, Verdict,
};
use dpwave::wavecore::linear_frequency_sq;
use dpwave::{WaveParams, WaveProfile};
use proptest::prelude::*;

#[test]
fn curve_end_is_linear_constant_wave() {
    for l in [PI / 2.0, PI, 3.0 * PI] {
        let a_l = a_max_for_period(1.0, l).unwrap();
        // phi2 from a_L through phi (1 - phi)^3 = a_L on the upper branch, then its linear period
        let (_, phi2) = dpwave::wavecore::critical_points(1.0, a_l).unwrap();
        let lin = 2.0 * PI / linear_frequency_sq(1.0, phi2).sqrt();
        assert!((lin / l - 1.0).abs() <= 1e-12, "{lin} vs {l}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn solve_b_hits_the_period(t in 0.01f64..0.99, l in 1.2f64..8.0) {
        let a_l = a_max_for_period(1.0, l).unwrap();
        let a = t * a_l;
        let b = solve_b(1.0, l, a).unwrap();
        let got = period(&WaveParams::new(1.0, a, b).unwrap()).unwrap();
        prop_assert!((got - l).abs() <= 1e-9 * l);
    }
}

#[test]
fn functionals_quadrature_matches_grid_sums() {
    for (a, b) in [(0.04, 0.0), (0.001, -0.3), (0.02, -0.1)] {
        let f = functionals(&spectral_profile(&WaveParams::new(1.0, a, b).unwrap()).unwrap()).unwrap();
        assert!(f.grid_discrepancy() <= 1e-7, "({a}, {b}): {}", f.grid_discrepancy());
    }
    let c = WaveProfile::constant(1.0, 0.6, 128).unwrap();
    let f = functionals(&c).unwrap();
    assert!((f.mass - 0.6 * c.period).abs() <= 1e-12);
    assert!((f.ratio() - 1.0 / (6.0 * c.period * c.period)).abs() <= 1e-12);
}

#[test]
fn projection_routes_agree() {
    let l = PI;
    let a_l = a_max_for_period(1.0, l).unwrap();
    for t in [0.1, 0.5, 0.8] {
        let a = t * a_l;
        let b = solve_b(1.0, l, a).unwrap();
        let (pm, _) = projection_matrix(1.0, a, b).unwrap();
        let prof = spectral_profile(&WaveParams::new(1.0, a, b).unwrap()).unwrap();
        let modes = ((prof.len() - 2) / 4).min(256);
        let direct = projection_matrix_direct(&prof, modes).unwrap();
        assert!(direct.asymmetry() <= 1e-6, "asymmetry {}", direct.asymmetry());
        if pm.det.abs() > pm.det_noise {
            assert!((pm.det / direct.det - 1.0).abs() <= 0.05, "a = {a}: {} vs {}", pm.det, direct.det);
        }
        assert_eq!((pm.n0, pm.z0), (direct.n0, direct.z0));
        assert!(pm.n0 + pm.z0 <= 2);
    }
}

#[test]
fn verdict_reports_failed_criterion() {
    let pm = ProjectionMatrix { s: [[1.0, 0.0], [0.0, 1.0]], det: 1.0, trace: 2.0, det_noise: 1e-12, n0: 0, z0: 0 };
    // two negative directions but S removes none
    assert_eq!(verdict(2, 1, &pm), Verdict::CriterionFailed);
    assert_eq!(verdict(0, 1, &pm), Verdict::Stable);
    let neg = ProjectionMatrix { s: [[-1.0, 0.0], [0.0, 1.0]], det: -1.0, trace: 0.0, det_noise: 1e-12, n0: 1, z0: 0 };
    assert_eq!(verdict(1, 1, &neg), Verdict::Stable);
    assert_eq!(verdict(1, 2, &neg), Verdict::CriterionFailed);
}

#[test]
fn traced_curve_is_continuous() {
    let curve = trace_curve_with(1.0, PI, 24, CurveOptions { spectral: false }).unwrap();
    let s = &curve.samples;
    assert!(s.windows(2).all(|w| w[1].a > w[0].a));
    assert!(s.iter().all(|x| x.period_error <= 1e-9));
    for w in s.windows(2) {
        let secant = 0.5 * (w[0].db_da.abs() + w[1].db_da.abs()) * (w[1].a - w[0].a);
        assert!((w[1].b - w[0].b).abs() <= 10.0 * secant + 1e-12, "gap {} vs {secant}", (w[1].b - w[0].b).abs());
    }
    assert!(s.iter().all(|x| x.verdict == Verdict::Inconclusive));
    // det S changes sign only where dB/da does
    let det_changes: Vec<usize> = s
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].projection.is_some() && w[1].projection.is_some() && w[0].det_s().signum() != w[1].det_s().signum())
        .map(|(i, _)| i)
        .collect();
    for i in det_changes {
        assert!(s[i].db_da.signum() != s[i + 1].db_da.signum() || s[i].projection.unwrap().z0 == 1);
    }
}
