//! Intersection points of RP^3 and T^3 and their coordinate flips.
//!
//! ```text
//! cargo run --example point_codes
//! ```

use floer::PointCode;

fn main() -> floer::Result<()> {
    let k = 3;
    println!("{:>4}  {:<6} {:<16} {:>6}  flips", "mask", "tail", "signs", "parity");
    for p in PointCode::all(k)? {
        let flips: Vec<String> = (0..=k).map(|i| p.flip(i).map(|q| q.to_string())).collect::<Result<_, _>>()?;
        println!(
            "{:>4}  {:<6} {:<16} {:>6}  {}",
            p.mask(),
            p.to_string(),
            format!("{:?}", p.signs()),
            format!("{:?}", p.plus_one_count_parity()?),
            flips.join(" ")
        );
    }

    let q = PointCode::canonicalize(3, &[-1, 1, -1, 1])?;
    println!("\n[-1:1:-1:1] canonicalizes to [1:{}] (mask {:#05b})", q, q.mask());
    Ok(())
}
