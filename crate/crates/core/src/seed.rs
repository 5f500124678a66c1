//! Deterministic, splittable seeding.
//!
//! Every protocol run owns a `ChaCha8Rng` built from a single `u64`. Parallel
//! workloads derive per-run seeds from a root seed with [`split_seed`], so the
//! result never depends on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The random source used throughout the simulator.
pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// Derives the seed of child `index` from `root` (splitmix64 finalizer).
pub fn split_seed(root: u64, index: u64) -> u64 {
    let mut z = root
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
