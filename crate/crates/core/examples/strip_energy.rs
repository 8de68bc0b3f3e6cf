//! Energy of strips and disks under the Fubini-Study form with line area pi.
//! The common value for index-1 strips is the monotonicity constant c.
//!
//! ```text
//! cargo run --release --example strip_energy
//! ```

use std::f64::consts::PI;

use floer::disks::{self, BlaschkeDisk, Region};
use floer::PointCode;

fn main() -> floer::Result<()> {
    println!("{:>3} {:>14} {:>14} {:>14}", "k", "c (strip)", "pi/(2(k+1))", "degree-2 disk");
    for k in 1..=7u32 {
        let p = PointCode::from_mask(k, 0)?;
        let strip = &disks::isolated_strips(p)[0];
        let c = disks::energy(strip, Region::UpperHalf, 32)?;
        let two = disks::energy(&BlaschkeDisk::power(k, 2)?, Region::FullDisk, 32)?;
        println!(
            "{:>3} {:>14.10} {:>14.10} {:>14.10}",
            k,
            c,
            PI / (2.0 * (k as f64 + 1.0)),
            two
        );
    }
    Ok(())
}
