//! Small-amplitude expansion against the computed fixed-period curve.

use dpwave::stokes::{validate, DEFAULT_EPSILONS};

fn main() -> dpwave::Result<()> {
    let r = validate(1.0, std::f64::consts::PI, &DEFAULT_EPSILONS)?;
    println!("phi2 = {:.12}, eta = {:.12}", r.phi2, r.eta);
    for s in &r.samples {
        println!("eps = {:.0e}: A = {:.4e}, dev M = {:.2e}, dev F/M^3 = {:.2e}", s.epsilon, s.amplitude, s.dev_mass, s.dev_ratio);
    }
    println!("F/M^3 slope {:.8} vs {:.8}", r.ratio_slope, r.ratio_slope_expected);
    println!("alpha slope {:.6} vs {:.6}", r.alpha_slope, r.alpha_slope_expected);
    println!("deviation decay per decade: M {:?}, F/M^3 {:?}", r.mass_decay, r.ratio_decay);
    Ok(())
}
