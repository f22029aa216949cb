//! Floquet slope against dL/da along b = -0.2, through the critical point a0.

use dpwave::periodfn::{a_grid, find_a0, period_d_da};
use dpwave::spectral::{floquet_theta, spectral_profile};
use dpwave::WaveParams;

fn main() -> dpwave::Result<()> {
    let (c, b) = (1.0, -0.2);
    for a in a_grid(c, b, 6, 0.02)? {
        let p = WaveParams::new(c, a, b)?;
        let f = floquet_theta(&spectral_profile(&p)?)?;
        let (d, e) = period_d_da(&p)?;
        println!("a = {a:.6}: theta_F = {:>13.6e}  dL/da = {:>13.6e} +- {:.1e}  {:?}", f.theta_f, d, e, f.class);
    }
    let a0 = find_a0(c, b)?.expect("a0 exists for b = -0.2");
    let f = floquet_theta(&spectral_profile(&WaveParams::new(c, a0, b)?)?)?;
    println!("a0 = {a0:.12}: theta_F = {:.3e} (band {:.1e}) {:?}", f.theta_f, f.band, f.class);
    Ok(())
}
