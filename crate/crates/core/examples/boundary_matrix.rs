//! Prints the GF(2) boundary matrix for a small k and writes its hex dump.
//!
//! ```text
//! cargo run --example boundary_matrix -- 3
//! ```

use floer::{complex, PointCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k: u32 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let m = complex::boundary_matrix(k)?;
    let labels: Vec<String> = PointCode::all(k)?.map(|p| p.to_string()).collect();

    println!("column p holds d(p); k = {k}");
    for (r, label) in labels.iter().enumerate() {
        let row: String = (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '.' }).collect();
        println!("{label:>w$}  {row}", w = k as usize);
    }

    let square = m.mul(&m)?;
    println!("\nd^2 is {}", if square.is_zero() { "zero" } else { "the identity" });
    println!("\n{}", m.to_dump_string());
    Ok(())
}
