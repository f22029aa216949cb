//! Build CLI datasets in-process and print them as CSV and JSON.

use dpwave::cli::{cmd_period, cmd_region, Format};

fn main() -> dpwave::Result<()> {
    let ds = cmd_period(1.0, -0.2, 8)?;
    print!("{}", ds.render(Format::Csv));
    let region = cmd_region(1.0, 50)?;
    let json = region.render(Format::Json);
    println!("region: {} rows, {} bytes of JSON", region.rows.len(), json.len());
    Ok(())
}
