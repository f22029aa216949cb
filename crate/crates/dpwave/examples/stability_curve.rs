//! Fixed-period curve L = pi: F/M^3, det S and the stability verdict per sample.

use dpwave::stability::trace_curve;

fn main() -> dpwave::Result<()> {
    let curve = trace_curve(1.0, std::f64::consts::PI, 24)?;
    println!("a_L = {:.10}", curve.a_l);
    println!("{:>12} {:>12} {:>12} {:>14} {:>12} {:>8}", "a", "b", "M", "F/M^3", "det S", "verdict");
    for s in &curve.samples {
        println!("{:>12.6e} {:>12.8} {:>12.8} {:>14.10} {:>12.4e} {:>8}", s.a, s.b, s.mass, s.ratio, s.det_s(), s.verdict.as_str());
    }
    println!("F/M^3 decreasing: {}, M increasing: {}", curve.ratio_strictly_decreasing(), curve.mass_strictly_increasing());
    println!("dB/da changes sign near sample {:?}", curve.slope_sign_change);
    Ok(())
}
