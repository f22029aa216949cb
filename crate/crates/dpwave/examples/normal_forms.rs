//! The two normalized center systems: period constants, the energy map,
//! the limit at the singular line and the convexity of Chicone's W.

use dpwave::periodfn::{chicone_w_convexity, ell_hm_report, period, period_constants, ThetaSystem};
use dpwave::WaveParams;

fn main() -> dpwave::Result<()> {
    let p = WaveParams::new(1.0, 0.02, -0.1)?;
    let s = ThetaSystem::from_params(&p)?;
    let h = ThetaSystem::energy_of(&p)?;
    println!("theta = {:.12}, h = {:.6e}, h* = {:.6e}", s.theta, h, s.h_star());
    println!("L = {:.12}, ell(h) = {:.12}", period(&p)?, s.ell(h)?);
    let k = period_constants(s.theta)?;
    println!("ell(0) = {:.12}, Delta1 = {:.6}, Delta2 = {:.6}", k.ell0, k.delta1, k.delta2);
    let r = ell_hm_report(0.3)?;
    println!("theta = 0.3: ell(h_m) = {:.10}, approach {:?}", r.numeric_limit, r.approach.last());
    for eta in [0.5, 1.0, 2.0] {
        let w = chicone_w_convexity(eta, 400)?;
        println!("eta = {eta}: min W'' = {:.4e} on ({:.4}, {:.4}), convex = {}", w.min_w2, w.x1, w.x2, w.convex);
    }
    Ok(())
}
