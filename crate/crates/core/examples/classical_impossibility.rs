//! No classical 1-bit code stores 2 bits with worst-case success above 1/2:
//! the exact game value and the missing-quadrant picture behind it.

use qrac_lab::crac::{best_two_into_one, quarter_miss, DecoderPointPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> qrac_lab::Result<()> {
    let g = best_two_into_one();
    println!("private randomness value {} (deterministic strategies reach {})", g.value, g.best_pure);
    println!("with shared randomness the value rises to {}", g.shared_value);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut fewest = 4;
    for _ in 0..10_000 {
        let mut pt = || (rng.random::<f64>(), rng.random::<f64>());
        let pp = DecoderPointPair::new(pt(), pt())?;
        fewest = fewest.min(quarter_miss(&pp).len());
    }
    println!("every one of 10000 random decoder segments misses at least {fewest} quadrant(s)");
    Ok(())
}
