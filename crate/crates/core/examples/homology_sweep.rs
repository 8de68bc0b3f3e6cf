//! dim HF over Z2 for odd k, with timing. The dense elimination at k = 13
//! works on an 8192 x 8192 bit matrix.
//!
//! ```text
//! cargo run --release --example homology_sweep -- 13
//! ```

use std::time::Instant;

use floer::complex;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k_max: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(11);
    println!("{:>3} {:>6} {:>6} {:>7} {:>9}", "k", "2^k", "rank", "dim HF", "time");
    for k in (1..=k_max).step_by(2) {
        let start = Instant::now();
        let h = complex::homology(k)?;
        println!(
            "{:>3} {:>6} {:>6} {:>7} {:>8.3}s",
            k,
            1usize << k,
            h.rank,
            h.hf_dim,
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}
