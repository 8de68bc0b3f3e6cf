//! Disk bubbling: Maslov-2 disk counts through a generator and the resulting
//! square of the differential.
//!
//! ```text
//! cargo run --example obstruction
//! ```

use floer::complex;

fn main() -> floer::Result<()> {
    println!("{:>3} {:>7} {:>6} {:>6} {:>8} {:>8}", "k", "phi_RP", "phi_T", "total", "d^2 = 0", "checked");
    for k in 1..=10 {
        let r = complex::obstruction(k)?;
        println!(
            "{:>3} {:>7} {:>6} {:>6} {:>8} {:>8}",
            k,
            r.phi_rp,
            r.phi_t,
            r.phi_total(),
            r.square_is_zero,
            r.square_matches
        );
    }
    match complex::homology(4) {
        Ok(_) => println!("unexpected: homology defined for k = 4"),
        Err(e) => println!("\nk = 4: {e}"),
    }
    Ok(())
}
