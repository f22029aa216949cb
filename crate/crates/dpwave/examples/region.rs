//! Existence region at c = 1: boundary values, membership and critical points.

use dpwave::wavecore::{a_critical, contains, critical_points, region_boundaries};

fn main() -> dpwave::Result<()> {
    let c = 1.0;
    println!("a_c = {} (27/256 = {})", a_critical(c), 27.0 / 256.0);
    for b in [-0.9, -0.4, -0.2, 0.0, 0.05, 0.12] {
        let r = region_boundaries(c, b)?;
        println!("b = {b:>5}: {:.6e} < a < {:.6e}", r.a_low, r.a_high);
    }
    for (a, b) in [(0.04, 0.0), (0.2, 0.0), (0.001, -0.3)] {
        println!("({a}, {b}) inside: {}", contains(c, a, b));
    }
    let (p1, p2) = critical_points(c, 1.0 / 16.0)?;
    println!("a = 1/16: phi1 = {p1:.15}, phi2 = {p2:.15}");
    let p = dpwave::WaveParams::new(c, 0.04, 0.0)?;
    let (lo, hi) = p.turning_points()?;
    println!("(0.04, 0): phi_- = {lo:.15}, phi_+ = {hi:.15}");
    Ok(())
}
