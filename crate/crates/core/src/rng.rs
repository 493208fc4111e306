//! Seeded random streams.
//!
//! Everything randomized in this crate draws from a ChaCha stream keyed by a
//! user seed plus a stream index, so independent tasks (including rayon
//! iterations) get reproducible, non-overlapping randomness regardless of
//! scheduling order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A deterministic RNG for stream `index` under the given seed.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
