//! The dimension count relating CF(2n-1) and CF(2n+1), and one explicit
//! normal-form decomposition.
//!
//! ```text
//! cargo run --release --example induction_ledger
//! ```

use floer::gf2::Chain;
use floer::induction;
use floer::{complex, PointCode};

fn main() -> floer::Result<()> {
    println!(
        "{:>2} {:>2} {:>8} {:>8} {:>7} {:>10} {:>12} {:>8}",
        "n", "N", "dim CF_N", "HF(n)", "rank a", "dim Ker a", "CF_N/2+HF_n", "HF(N)"
    );
    for n in 1..=4 {
        let r = induction::recursion_check(n)?;
        println!(
            "{:>2} {:>2} {:>8} {:>8} {:>7} {:>10} {:>12} {:>8}",
            r.n, r.big_n, r.dim_cf_big, r.hf_n, r.rank_alpha, r.dim_ker_alpha, r.predicted_ker_alpha, r.hf_big
        );
    }

    // A cycle of CF(3) and its normal form over CF(1).
    let x = complex::boundary(&Chain::generator(PointCode::from_mask(3, 0)?));
    let q = induction::decompose(&x)?;
    let show = |c: &Chain| if c.is_zero() { "0".to_string() } else { c.points().map(|p| p.to_string()).collect::<Vec<_>>().join(" + ") };
    println!("\nx = {}", show(&x));
    println!("u = {}, v = {}, w = {}, t = {}", show(&q.u), show(&q.v), show(&q.w), show(&q.t));
    println!("relations hold: {}", induction::check_cycle_relations(&q));

    let check = induction::exhaustive_alpha_kernel(1)?;
    println!(
        "\nn = 1: {} quadruples, {} in Ker alpha, {} disagreements with the cycle relations",
        check.domain_size, check.kernel_size, check.mismatches
    );
    Ok(())
}
