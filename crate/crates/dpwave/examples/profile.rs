//! Reconstruct one period of the wave at (c, a, b) = (1, 0.04, 0).

use dpwave::periodfn::period;
use dpwave::wavecore::{profile, time_of_flight};
use dpwave::WaveParams;

fn main() -> dpwave::Result<()> {
    let p = WaveParams::new(1.0, 0.04, 0.0)?;
    let w = profile(&p, 256)?;
    println!("L = {:.15} (time of flight {:.15})", period(&p)?, time_of_flight(&p)?);
    println!("max phi = {:.12}, min phi = {:.12}, residual = {:.2e}", w.max_phi(), w.min_phi(), w.residual);
    for k in (0..w.len()).step_by(32) {
        println!("{:>10.6} {:>14.10} {:>14.10} {:>14.10}", w.x[k], w.phi[k], w.dphi[k], w.nu[k]);
    }
    Ok(())
}
