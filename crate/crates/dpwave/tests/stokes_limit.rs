use std::f64::consts::PI;

use dpwave::stokes::{predict, validate, DEFAULT_EPSILONS};
use proptest::prelude::*;

#[test]
fn expansion_matches_curve_at_several_periods() {
    for l in [PI / 2.0, PI, 2.0 * PI] {
        let r = validate(1.0, l, &DEFAULT_EPSILONS).unwrap();
        assert!(r.signs_ok());
        assert!(r.ratio_slope_error() < 0.05, "L = {l}: {}", r.ratio_slope_error());
        assert!(r.alpha_slope_error() < 0.05, "L = {l}: {}", r.alpha_slope_error());
        assert!(r.mass_decay.iter().chain(&r.ratio_decay).all(|&d| d >= 5.0), "L = {l}");
    }
}

#[test]
fn amplitude_shrinks_like_sqrt_epsilon() {
    let r = validate(1.0, PI, &DEFAULT_EPSILONS).unwrap();
    // alpha = alpha2 A^2 with alpha = -epsilon
    for s in &r.samples {
        let a2 = s.epsilon / -r.alpha_slope_expected;
        assert!((s.amplitude.powi(2) / a2 - 1.0).abs() < 0.05);
    }
}

#[test]
fn rejects_bad_epsilons() {
    assert!(validate(1.0, PI, &[1e-3]).is_err());
    assert!(validate(1.0, PI, &[1e-3, 1e-2]).is_err());
    assert!(validate(1.0, PI, &[1.5, 1e-2]).is_err());
}

proptest! {
    #[test]
    fn prediction_invariants(phi2 in 0.26f64..0.99, amp in 0.0f64..0.2) {
        let p = predict(phi2, 1.0, amp).unwrap();
        prop_assert!(p.alpha2 < 0.0);
        prop_assert!(p.alpha <= 0.0);
        let p0 = predict(phi2, 1.0, 0.0).unwrap();
        prop_assert!((p0.mass - phi2 * p0.period).abs() <= 1e-14 * p0.mass);
        prop_assert!((p0.ratio - 1.0 / (6.0 * p0.period * p0.period)).abs() <= 1e-14);
    }
}
