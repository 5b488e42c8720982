//! Lifting a 2-party scheme to n parties with collusion resistance: one
//! XOR piece per unordered pair, and every small-group partition leaves
//! some pair split across groups.
//!
//! ```text
//! cargo run --example collusion_combinator
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use uss_lab::schemes::collusion::every_partition_splits_a_pair;
use uss_lab::schemes::{Bb84Scheme, CollusionScheme, UssScheme};

fn main() -> uss_lab::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (n, t) in [(2usize, 1usize), (3, 2), (4, 3)] {
        let scheme = CollusionScheme::new(Bb84Scheme::new(1)?, n, t)?;
        let pack = scheme.share(&vec![true], &mut rng)?;
        let dist = scheme.reconstruct_dist(&pack)?;
        println!(
            "n = {n}, t = {t}: {} pairwise instances, round trip -> {} (p = {:.4}); \
             every partition into groups of <= {t} splits a pair: {}",
            scheme.num_instances(),
            uss_lab::bits::to_string(&dist[0].0),
            dist[0].1,
            every_partition_splits_a_pair(n, t),
        );
    }
    Ok(())
}
