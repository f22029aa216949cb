use dpwave::wavecore::{critical_points, profile, region_boundaries, time_of_flight};
use dpwave::WaveParams;
use proptest::prelude::*;

// plain bisection, independent of the library root finders
fn bisect(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn interior_point(c: f64, beta: f64, t: f64) -> (f64, f64) {
    let b = beta * c * c;
    let r = region_boundaries(c, b).unwrap();
    (r.a_low + t * (r.a_high - r.a_low), b)
}

prop_compose! {
    fn params()(c in 0.5f64..3.0, beta in -0.95f64..0.12, t in 0.02f64..0.98) -> WaveParams {
        let (a, b) = interior_point(c, beta, t);
        WaveParams::new(c, a, b).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn critical_points_match_bisection(p in params()) {
        let (p1, p2) = critical_points(p.c, p.a).unwrap();
        let g = |x: f64| x * (p.c - x).powi(3) - p.a;
        let o1 = bisect(0.0, 0.25 * p.c, g);
        let o2 = bisect(0.25 * p.c, p.c, g);
        prop_assert!((p1 - o1).abs() <= 1e-11 * p.c);
        prop_assert!((p2 - o2).abs() <= 1e-11 * p.c);
        prop_assert!(0.0 < p1 && p1 < 0.25 * p.c && p2 < p.c);
    }

    #[test]
    fn turning_points_bracket_the_center(p in params()) {
        let (lo, hi) = p.turning_points().unwrap();
        let (p1, p2) = p.critical_points().unwrap();
        prop_assert!(p1 < lo && lo < p2 && p2 < hi && hi < p.c);
        let q = |x: f64| (p.c - x).powi(2) * (p.b + x * x) - p.a;
        prop_assert!((lo - bisect(p1, p2, q)).abs() <= 1e-11 * p.c);
        prop_assert!((hi - bisect(p2, p.c, q)).abs() <= 1e-11 * p.c);
        prop_assert!(q(lo).abs() <= 1e-12 * p.c.powi(4));
        prop_assert!(q(hi).abs() <= 1e-12 * p.c.powi(4));
    }

    #[test]
    fn quartic_positive_inside(p in params()) {
        let (lo, hi) = p.turning_points().unwrap();
        for k in 1..1000 {
            let x = lo + (hi - lo) * k as f64 / 1000.0;
            prop_assert!(p.quartic(x) > 0.0, "Q({x}) = {}", p.quartic(x));
        }
    }

    #[test]
    fn scaling_maps_turning_points(p in params(), k in 0.25f64..4.0) {
        let q = p.scaled(k);
        let (lo, hi) = p.turning_points().unwrap();
        let (lo2, hi2) = q.turning_points().unwrap();
        prop_assert!((lo2 - k * lo).abs() <= 1e-11 * q.c);
        prop_assert!((hi2 - k * hi).abs() <= 1e-11 * q.c);
    }
}

#[test]
fn profile_satisfies_first_integral() {
    for (a, b) in [(0.04, 0.0), (0.001, -0.3), (0.02, -0.1), (0.06, 0.05)] {
        let p = WaveParams::new(1.0, a, b).unwrap();
        let prof = profile(&p, 512).unwrap();
        assert!(prof.residual <= 1e-9, "({a}, {b}): {}", prof.residual);
        // crest at x = 0, even about it
        assert_eq!(prof.max_phi(), prof.phi[0]);
        for k in 1..prof.len() {
            assert_eq!(prof.phi[k], prof.phi[prof.len() - k]);
        }
    }
}

#[test]
fn profile_scaling_pointwise() {
    let base = WaveParams::new(1.0, 0.02, -0.1).unwrap();
    for k in [0.5, 2.0, 3.0] {
        let p1 = profile(&base, 256).unwrap();
        let pk = profile(&base.scaled(k), 256).unwrap();
        assert!((pk.period - p1.period).abs() <= 1e-12 * p1.period);
        for (u, v) in p1.phi.iter().zip(&pk.phi) {
            assert!((v - k * u).abs() <= 1e-9 * k, "{v} vs {}", k * u);
        }
    }
}

#[test]
fn time_of_flight_matches_quadrature() {
    for (a, b) in [(0.04, 0.0), (0.001, -0.3), (0.02, -0.1), (0.091, 0.1)] {
        let p = WaveParams::new(1.0, a, b).unwrap();
        let l = dpwave::periodfn::period(&p).unwrap();
        let t = time_of_flight(&p).unwrap();
        assert!((l - t).abs() <= 1e-8 * l, "({a}, {b}): {l} vs {t}");
    }
}

#[test]
fn degenerate_and_outside_rejected() {
    assert!(WaveParams::new(1.0, 0.2, 0.0).is_err());
    assert!(WaveParams::new(1.0, -0.01, -0.1).is_err());
    assert!(WaveParams::new(-1.0, 0.01, -0.1).is_err());
    assert!(WaveParams::new(1.0, f64::NAN, -0.1).is_err());
}
