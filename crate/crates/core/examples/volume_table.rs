//! Volume ratio of the Clifford torus to RP^{2n-1} against the lower bound
//! 2^n/2n from intersection counts.
//!
//! ```text
//! cargo run --example volume_table -- 10
//! ```

use floer::{complex, volume};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(10);
    println!("{:>3} {:>14} {:>14} {:>8} {:>7}", "n", "vol T/vol RP", "bound", "exact", "active");
    for row in volume::comparison_table(n_max)? {
        println!(
            "{:>3} {:>14.6} {:>14.6} {:>8} {:>7}",
            row.n, row.ratio, row.bound, row.bound_exact, row.active
        );
    }
    for n in 1..=4 {
        println!(
            "n = {n}: vol RP = {:.6}, vol T = {:.6}, dim HF = {}",
            volume::vol_rp(n)?,
            volume::vol_torus(n)?,
            complex::hf_dimension(2 * n - 1)?
        );
    }
    Ok(())
}
