//! Shape of a -> L(a, b) for three levels and the critical curve a0(b).

use dpwave::periodfn::{a_grid, find_a0, period, period_derivatives};
use dpwave::WaveParams;

fn main() -> dpwave::Result<()> {
    let c = 1.0;
    for b in [0.0, -0.2, -0.4] {
        let grid = a_grid(c, b, 8, 1e-3)?;
        print!("b = {b:>4}:");
        for a in grid {
            print!(" {:.6}", period(&WaveParams::new(c, a, b)?)?);
        }
        println!();
    }
    for b in [-0.05, -0.1, -0.2, -0.25] {
        println!("a0({b}) = {:?}", find_a0(c, b)?);
    }
    let d = period_derivatives(&WaveParams::new(c, 0.02, -0.1)?, None)?;
    println!("at (0.02, -0.1): dL/da = {:.6e} +- {:.1e}, dL/db = {:.6e} +- {:.1e}", d.d_da, d.err_da, d.d_db, d.err_db);
    Ok(())
}
