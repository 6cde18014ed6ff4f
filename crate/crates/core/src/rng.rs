//! Seeded, stream-addressable randomness.
//!
//! Every randomized procedure takes a `(seed, stream)` pair. Work that is
//! split into shards derives one stream per shard, so results never depend on
//! how many threads run the shards.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type LabRng = ChaCha8Rng;

/// Generator for the given seed and stream.
pub fn stream_rng(seed: u64, stream: u64) -> LabRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Splits `total` trials into `shards` nearly equal chunks; the first
/// `total % shards` chunks get one extra trial.
pub fn shard_sizes(total: usize, shards: usize) -> Vec<usize> {
    let shards = shards.max(1);
    (0..shards)
        .map(|i| total / shards + usize::from(i < total % shards))
        .collect()
}

/// Fixed shard count for Monte Carlo loops. Independent of the thread pool.
pub const MC_SHARDS: usize = 16;
