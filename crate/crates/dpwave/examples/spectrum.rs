//! Eigenvalue branches of the Schrodinger family and the negative counts
//! for the two waves on either side of the critical curve.

use dpwave::spectral::{count_negative, eig_sweep, spectral_profile};
use dpwave::WaveParams;

fn main() -> dpwave::Result<()> {
    for (a, b) in [(0.04, 0.0), (0.001, -0.3)] {
        let prof = spectral_profile(&WaveParams::new(1.0, a, b)?)?;
        let sweep = eig_sweep(&prof, 5, None)?;
        let rep = count_negative(&prof)?;
        println!("(a, b) = ({a}, {b}), {} grid points", prof.len());
        println!("  crossings (extrapolated): {:?}", sweep.crossings_extrapolated);
        println!("  n = {}, z = {}, direct n = {}, Floquet slope = {:.6e}", rep.n, rep.z, rep.direct_n, rep.floquet.theta_f);
        println!("  kernel residual = {:.2e}, branches decreasing: {}", rep.kernel_residual, sweep.monotone);
    }
    Ok(())
}
