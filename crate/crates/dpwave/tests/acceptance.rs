//! Acceptance run: one line per criterion, then a summary.
//!
//! Exits 0 after printing so the workspace test run stays usable while a
//! criterion is red; set `DPWAVE_ACCEPTANCE_STRICT=1` to exit 1 on any failure.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use dpwave::certify::{certify_all, ClaimId, Status};
use dpwave::cli::{cmd_a0, cmd_curve, cmd_period, cmd_region, cmd_spectrum, cmd_stokes, Dataset};
use dpwave::numerics::roots::brent;
use dpwave::periodfn::{a_grid, default_steps, find_a0, period, period_d_da, period_d_da_step, period_derivatives};
use dpwave::spectral::{
    constant_wave_mode, count_negative, direct_l_count, direct_operator, eig_sweep, eig_sweep_with, floquet_theta,
    spectral_profile,
};
use dpwave::stability::{trace_curve, Verdict};
use dpwave::stokes::{validate, DEFAULT_EPSILONS};
use dpwave::wavecore::{a_critical, region_boundaries};
use dpwave::{WaveParams, WaveProfile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

/// Two datasets and the columns with their power of the speed factor.
type ScalingPair<'a> = (Dataset, Dataset, Vec<(&'a str, i32)>);
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn region_geometry() -> Outcome {
    let a_minus0 = region_boundaries(1.0, 0.0).map_err(e2s)?.a_high;
    let ac = a_critical(1.0);
    let (d1, d2) = ((a_minus0 - 1.0 / 16.0).abs(), (ac - 27.0 / 256.0).abs());
    ensure(d1 <= 1e-12 && d2 <= 1e-12, format!("|a_-(0) - 1/16| = {d1:.1e}, |a_c - 27/256| = {d2:.1e}"))
}

fn interior(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect()
}

fn period_in_b() -> Outcome {
    let points: Vec<(f64, f64)> = interior(-1.0, 0.125, 20)
        .into_iter()
        .flat_map(|b| a_grid(1.0, b, 20, 1e-3).unwrap().into_iter().map(move |a| (a, b)))
        .collect();
    let derivs = points
        .par_iter()
        .map(|&(a, b)| period_derivatives(&WaveParams::new(1.0, a, b).map_err(e2s)?, None).map_err(e2s))
        .collect::<Result<Vec<_>, String>>()?;
    let bad = derivs.iter().filter(|d| !(d.d_db > 0.0 && d.d_db > d.err_db)).count();
    let min = derivs.iter().map(|d| d.d_db).fold(f64::INFINITY, f64::min);
    let max_rel_err = derivs.iter().map(|d| d.err_db / d.d_db.abs()).fold(0.0, f64::max);
    ensure(bad == 0, format!("{} points, {bad} violations, min dL/db = {min:.3e}, max err/|dL/db| = {max_rel_err:.1e}", points.len()))
}

fn period_in_a() -> Outcome {
    let shape = |b: f64| -> Result<Vec<f64>, String> {
        a_grid(1.0, b, 64, 1e-3)
            .map_err(e2s)?
            .into_iter()
            .map(|a| period(&WaveParams::new(1.0, a, b).map_err(e2s)?).map_err(e2s))
            .collect()
    };
    let dec = shape(0.0)?.windows(2).all(|w| w[1] < w[0]);
    let inc = shape(-0.4)?.windows(2).all(|w| w[1] > w[0]);
    let mid = shape(-0.2)?;
    let signs: Vec<bool> = mid.windows(2).map(|w| w[1] > w[0]).collect();
    let changes = signs.windows(2).filter(|s| s[0] != s[1]).count();
    let single_max = changes == 1 && signs[0] && !signs[signs.len() - 1];
    let mut presence = Vec::new();
    let mut present_ok = true;
    for (b, expect) in [(-0.05, true), (-0.1, true), (-0.15, true), (-0.2, true), (-0.25, false), (-0.3, false), (-0.4, false)] {
        let got = find_a0(1.0, b).map_err(e2s)?;
        present_ok &= got.is_some() == expect;
        presence.push(format!("{b}:{}", if got.is_some() { "present" } else { "absent" }));
    }
    ensure(
        dec && inc && single_max && present_ok,
        format!("b=0 decreasing {dec}, b=-0.4 increasing {inc}, b=-0.2 single maximum {single_max}; a0 {}", presence.join(" ")),
    )
}

fn random_interior(rng: &mut ChaCha8Rng, b_lo: f64, b_hi: f64, guard: f64) -> (f64, f64) {
    let b = rng.gen_range(b_lo..b_hi);
    let r = region_boundaries(1.0, b).unwrap();
    let w = r.a_high - r.a_low;
    (rng.gen_range(r.a_low + guard * w..r.a_high - guard * w), b)
}

fn spectral_counts() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (a, b, n_expect) in [(0.04, 0.0, 1), (0.001, -0.3, 2)] {
        let prof = spectral_profile(&WaveParams::new(1.0, a, b).map_err(e2s)?).map_err(e2s)?;
        let rep = count_negative(&prof).map_err(e2s)?;
        let sweep = eig_sweep(&prof, 5, None).map_err(e2s)?;
        let zero = sweep.crossings_extrapolated.iter().flatten().map(|l| l.abs()).fold(f64::INFINITY, f64::min);
        ok &= rep.n == n_expect && zero <= 2e-3 && rep.kernel_residual <= 1e-6;
        notes.push(format!("({a}, {b}): n = {}, zero crossing {zero:.1e}, kernel residual {:.1e}", rep.n, rep.kernel_residual));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pts: Vec<(f64, f64)> = (0..10).map(|_| random_interior(&mut rng, -0.9, 0.12, 0.05)).collect();
    let agree = pts
        .par_iter()
        .map(|&(a, b)| {
            let prof = spectral_profile(&WaveParams::new(1.0, a, b).map_err(e2s)?).map_err(e2s)?;
            let bs = dpwave::spectral::k_zero_counts(&prof).map_err(e2s)?.n;
            let modes = ((prof.len() - 2) / 4).min(256);
            let direct = direct_l_count(&prof, modes).map_err(e2s)?;
            Ok(bs == direct)
        })
        .collect::<Result<Vec<bool>, String>>()?;
    let n_agree = agree.iter().filter(|&&x| x).count();
    ok &= n_agree == 10;
    notes.push(format!("BS = direct at {n_agree}/10 random points"));
    ensure(ok, notes.join("; "))
}

fn constant_wave() -> Outcome {
    let (c, phi2) = (1.0, 0.6);
    let prof = WaveProfile::constant(c, phi2, 1024).map_err(e2s)?;
    let sweep = eig_sweep_with(&prof, 5, None, 1e-13).map_err(e2s)?;
    let mut exact: Vec<f64> = [0.0, 1.0, -1.0, 2.0, -2.0].iter().map(|&k| constant_wave_mode(c, phi2, k)).collect();
    exact.sort_by(f64::total_cmp);
    let mut got: Vec<f64> = sweep.crossings_extrapolated.iter().map(|x| x.unwrap_or(f64::NAN)).collect();
    got.sort_by(f64::total_cmp);
    let bs_err = got.iter().zip(&exact).map(|(g, e)| (g - e).abs()).fold(0.0, |m: f64, d| if d.is_nan() { f64::INFINITY } else { m.max(d) });
    let double_zero = got.iter().filter(|g| g.abs() <= 1e-8).count();
    let op = direct_operator(&prof, 64).map_err(e2s)?;
    let (e, o) = op.eigenvalues().map_err(e2s)?;
    let mut direct: Vec<f64> = e.into_iter().chain(o).collect();
    direct.sort_by(f64::total_cmp);
    let direct_err = direct.iter().zip(&exact).map(|(g, e)| (g - e).abs()).fold(0.0, f64::max);
    ensure(
        bs_err <= 1e-8 && direct_err <= 1e-8 && double_zero == 2,
        format!("five lowest: extrapolated max error {bs_err:.1e}, Fourier max error {direct_err:.1e}, zeros {double_zero}"),
    )
}

fn floquet_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut used = 0;
    let mut agree = 0;
    let mut tried = 0;
    while used < 10 && tried < 60 {
        tried += 1;
        let (a, b) = random_interior(&mut rng, -0.9, 0.12, 0.05);
        let p = WaveParams::new(1.0, a, b).map_err(e2s)?;
        let (d, err) = period_d_da(&p).map_err(e2s)?;
        if d.abs() <= err {
            continue;
        }
        let f = floquet_theta(&spectral_profile(&p).map_err(e2s)?).map_err(e2s)?;
        used += 1;
        if f.theta_f.abs() > f.band && f.theta_f.signum() == -d.signum() {
            agree += 1;
        }
    }
    // a0 at b = -0.2; its uncertainty is the shift of the dL/da root when the stencil doubles
    let (c, b) = (1.0, -0.2);
    let a0 = find_a0(c, b).map_err(e2s)?.ok_or("no a0 at b = -0.2")?;
    let root_with = |scale: f64| -> Result<f64, String> {
        let g = |a: f64| {
            let p = WaveParams::new(c, a, b).ok()?;
            let h = scale * 0.01 * default_steps(&p).ok()?.0;
            period_d_da_step(&p, h).ok().map(|d| d.0)
        };
        let w = region_boundaries(c, b).map_err(e2s)?.a_high;
        let mut d = 1e-7 * w;
        loop {
            let (l, r) = (a0 - d, a0 + d);
            if let (Some(fl), Some(fr)) = (g(l), g(r)) {
                if fl > 0.0 && fr < 0.0 {
                    return brent(l, r, 1e-15, |a| g(a).unwrap_or(f64::NAN)).map_err(e2s);
                }
            }
            d *= 4.0;
            if d > 0.1 * w {
                return Err("no bracket for the dL/da root".into());
            }
        }
    };
    let da0 = (root_with(2.0)? - root_with(1.0)?).abs();
    let f0 = floquet_theta(&spectral_profile(&WaveParams::new(c, a0, b).map_err(e2s)?).map_err(e2s)?).map_err(e2s)?;
    let step = 1e-6 * a0;
    let f1 = floquet_theta(&spectral_profile(&WaveParams::new(c, a0 + step, b).map_err(e2s)?).map_err(e2s)?).map_err(e2s)?;
    let slope = (f1.theta_f - f0.theta_f) / step;
    let tol = f0.band + slope.abs() * da0;
    ensure(
        used == 10 && agree == 10 && f0.theta_f.abs() <= tol,
        format!(
            "sign(theta_F) = -sign(dL/da) at {agree}/{used} points; at a0 = {a0:.12}: |theta_F| = {:.1e}, tolerance {tol:.1e} (band {:.1e}, a0 uncertainty {da0:.1e})",
            f0.theta_f.abs(),
            f0.band
        ),
    )
}

fn stability_curves() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for period in [PI / 2.0, 0.75 * PI, PI, 1.5 * PI] {
        let curve = trace_curve(1.0, period, 64).map_err(e2s)?;
        let conc: Vec<_> = curve.conclusive().collect();
        let dec = conc.windows(2).all(|w| w[1].ratio < w[0].ratio);
        let inc = conc.windows(2).all(|w| w[1].mass > w[0].mass);
        let stable = conc.iter().all(|s| s.verdict == Verdict::Stable);
        ok &= dec && inc && stable;
        notes.push(format!(
            "L={period:.4}: {}/64 conclusive, F/M^3 decreasing {dec}, M increasing {inc}, stable {stable}",
            conc.len()
        ));
    }
    ensure(ok, notes.join("; "))
}

fn stokes() -> Outcome {
    let r = validate(1.0, PI, &DEFAULT_EPSILONS).map_err(e2s)?;
    let min_decay = r.mass_decay.iter().chain(&r.ratio_decay).copied().fold(f64::INFINITY, f64::min);
    ensure(
        r.ratio_slope_error() <= 0.05 && r.alpha_slope_error() <= 0.05 && min_decay >= 5.0,
        format!(
            "F/M^3 slope error {:.1e}, alpha2 error {:.1e}, slowest decay per decade {min_decay:.1}x",
            r.ratio_slope_error(),
            r.alpha_slope_error()
        ),
    )
}

fn certificates() -> Outcome {
    let first = certify_all(false).map_err(e2s)?;
    let second = certify_all(false).map_err(e2s)?;
    let identical = first.iter().zip(&second).all(|(x, y)| x.to_json() == y.to_json());
    let mut bad = Vec::new();
    for c in &first {
        let want = if c.claim_id == ClaimId::C9 { Status::OutOfScope } else { Status::Verified };
        if c.status != want {
            bad.push(format!("{} {:?} at {}", c.claim_id, c.status, c.failed_check.as_deref().unwrap_or("-")));
        }
    }
    ensure(
        identical && bad.is_empty(),
        format!("bit-identical reruns {identical}; {}", if bad.is_empty() { "all statuses as required".into() } else { bad.join("; ") }),
    )
}

/// Largest relative mismatch between `x2 / k^p` and `x1` over the listed columns.
fn scaling_gap(d1: &Dataset, d2: &Dataset, k: f64, cols: &[(&str, i32)]) -> Result<f64, String> {
    if d1.rows.len() != d2.rows.len() {
        return Err(format!("{}: {} vs {} rows", d1.command, d1.rows.len(), d2.rows.len()));
    }
    let mut worst: f64 = 0.0;
    for &(name, p) in cols {
        let x1 = d1.numbers(name).ok_or(format!("no column {name}"))?;
        let x2 = d2.numbers(name).ok_or(format!("no column {name}"))?;
        for (u, v) in x1.iter().zip(&x2) {
            let s = v / k.powi(p);
            let gap = if *u == s { 0.0 } else { (s - u).abs() / u.abs().max(f64::MIN_POSITIVE) };
            worst = worst.max(gap);
        }
    }
    Ok(worst)
}

fn cli_bytes(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dpwave")).args(args).output().map_err(e2s)?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn determinism_and_scaling() -> Outcome {
    let k = 2.0;
    let pairs: Vec<ScalingPair> = vec![
        (cmd_region(1.0, 50).map_err(e2s)?, cmd_region(k, 50).map_err(e2s)?, vec![("b", 2), ("a", 4)]),
        (cmd_period(1.0, -0.2, 16).map_err(e2s)?, cmd_period(k, -0.2 * k * k, 16).map_err(e2s)?, vec![("a", 4), ("L", 0), ("dL_da", -4)]),
        (cmd_a0(1.0, 8).map_err(e2s)?, cmd_a0(k, 8).map_err(e2s)?, vec![("b", 2), ("a0", 4), ("L", 0)]),
        (
            cmd_spectrum(1.0, 0.04, 0.0, 40, 1e-9).map_err(e2s)?,
            cmd_spectrum(k, 0.04 * k.powi(4), 0.0, 40, 1e-9 * k).map_err(e2s)?,
            vec![("lambda", 1), ("mu1", 0), ("mu2", 0), ("mu3", 0), ("mu4", 0), ("mu5", 0)],
        ),
        (
            cmd_curve(1.0, PI, 16).map_err(e2s)?,
            cmd_curve(k, PI, 16).map_err(e2s)?,
            vec![("a", 4), ("b", 2), ("M", 1), ("F", 3), ("F_over_M3", 0), ("dB_da", -2)],
        ),
        (
            cmd_stokes(1.0, PI).map_err(e2s)?,
            cmd_stokes(k, PI).map_err(e2s)?,
            vec![("a", 4), ("b", 2), ("A", 0), ("alpha", 0), ("M", 1), ("F_over_M3", 0)],
        ),
    ];
    let mut worst: f64 = 0.0;
    for (d1, d2, cols) in &pairs {
        worst = worst.max(scaling_gap(d1, d2, k, cols)?);
    }
    let cmds: [&[&str]; 7] = [
        &["region", "--n", "50"],
        &["period", "--b", "-0.2", "--n", "16", "--format", "json"],
        &["a0", "--n", "8"],
        &["spectrum", "--a", "0.04", "--b", "0", "--n", "40", "--format", "json"],
        &["curve", "--n", "16"],
        &["stokes", "--format", "json"],
        &["certify", "--format", "json"],
    ];
    let mut differing = Vec::new();
    for args in cmds {
        if cli_bytes(args)? != cli_bytes(args)? {
            differing.push(args[0]);
        }
    }
    ensure(
        worst <= 1e-8 && differing.is_empty(),
        format!("max relative scaling gap {worst:.1e}; CLI commands with differing reruns: {differing:?}"),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("region geometry", Duration::from_secs(1), region_geometry),
        ("period increasing in b", Duration::from_secs(120), period_in_b),
        ("period shape in a", Duration::from_secs(120), period_in_a),
        ("spectral counts", Duration::from_secs(300), spectral_counts),
        ("constant-wave spectrum", Duration::from_secs(30), constant_wave),
        ("Floquet consistency", Duration::from_secs(120), floquet_consistency),
        ("stability curves", Duration::from_secs(600), stability_curves),
        ("Stokes asymptotics", Duration::from_secs(120), stokes),
        ("exact certificates", Duration::from_secs(900), certificates),
        ("determinism and scaling", Duration::from_secs(600), determinism_and_scaling),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let in_time = dt <= *budget;
        let (pass, msg) = match out {
            Ok(m) => (in_time, m),
            Err(m) => (false, m),
        };
        let timing = format!("{:.2} s of {} s", dt.as_secs_f64(), budget.as_secs());
        println!("{} {:>2} {name}: {msg} [{timing}{}]", if pass { "PASS" } else { "FAIL" }, i + 1, if in_time { "" } else { ", over budget" });
        if !pass {
            failed.push(i + 1);
        }
    }
    println!("acceptance: {}/10 passed{}", 10 - failed.len(), if failed.is_empty() { String::new() } else { format!(", failed {failed:?}") });
    if !failed.is_empty() && std::env::var("DPWAVE_ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
