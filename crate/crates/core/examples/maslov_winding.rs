//! Maslov indices of random Blaschke disks from boundary winding.
//!
//! ```text
//! cargo run --example maslov_winding
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use floer::disks::{self, BlaschkeDisk};

fn main() -> floer::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    println!("{:<16} {:>9} {:>8}", "degrees", "2*sum mu", "winding");
    for _ in 0..12 {
        let k = rng.gen_range(1..=4);
        let degrees: Vec<usize> = (0..=k).map(|_| rng.gen_range(0..=2)).collect();
        let d = BlaschkeDisk::random(&degrees, 0.9, &mut rng)?;
        let w = disks::winding_maslov(&d, 256)?;
        println!("{:<16} {:>9} {:>8}", format!("{degrees:?}"), d.maslov(), w);
    }
    Ok(())
}
