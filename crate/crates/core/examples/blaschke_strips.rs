//! The isolated strips out of a generator, evaluated at their ends and along
//! the boundary circle.
//!
//! ```text
//! cargo run --example blaschke_strips -- 3 5
//! ```

use num_complex::Complex64;

use floer::disks;
use floer::PointCode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);
    let mask: u64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0);
    let p = PointCode::from_mask(k, mask)?;

    println!("strips from [1:{p}]");
    for (i, d) in disks::isolated_strips(p).iter().enumerate() {
        let (start, end) = disks::strip_endpoints(d)?;
        let mid = d.evaluate(Complex64::new(0.0, 1.0))?;
        let mid: Vec<String> = mid.iter().map(|c| format!("{:+.3}{:+.3}i", c.re, c.im)).collect();
        println!("  w{i}: {start} -> {end}, Maslov {}; at z = i: [{}]", d.maslov(), mid.join(", "));
    }
    println!(
        "Maslov-2 disks through the point: {}",
        disks::maslov_two_disks_through(p)?
    );
    Ok(())
}
