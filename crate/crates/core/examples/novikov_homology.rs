//! Novikov-field arithmetic, graded generators, and homology over Z2((e)).
//!
//! ```text
//! cargo run --release --example novikov_homology
//! ```

use floer::novikov::{self, NovikovScalar, PivotOrder};
use floer::PointCode;

fn main() -> floer::Result<()> {
    let a = NovikovScalar::parse("e^0+e^1", 6)?;
    let inv = a.inv()?;
    println!("1/({a}) = {inv}");
    println!("product = {}", a.mul(&inv));
    println!("universal image of e^1: {}", NovikovScalar::monomial(1, 6)?.format_universal());

    println!("\ngenerators of CF(RP^3, T^3):");
    for q in PointCode::all(3)? {
        let g = novikov::grade_and_action(q)?;
        println!("  {}  j = {}  grading {:>2}  action {:>2}c", q, g.j_offset, g.grading, g.action);
    }

    let m = novikov::novikov_boundary_matrix(3, 4)?;
    println!("\nnonzero entries of the deformed differential, k = 3:");
    for e in m.entries().iter().take(8) {
        println!("  ({}, {}) {}", e.row, e.col, e.scalar);
    }
    println!("  ...");

    println!("\n{:>3} {:>6} {:>6} {:>7}", "k", "rank", "Z2", "dim HF");
    for k in [1, 3, 5, 7, 9] {
        let h = novikov::hf_dimension_novikov(k, 4)?;
        let last = novikov::novikov_boundary_matrix(k, 4)?.rank(PivotOrder::Last)?;
        assert_eq!(last, h.rank);
        println!("{:>3} {:>6} {:>6} {:>7}", k, h.rank, h.gf2_rank, h.hf_dim);
    }
    Ok(())
}
