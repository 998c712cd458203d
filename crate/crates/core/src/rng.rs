//! Seed derivation for reproducible Monte Carlo.
//!
//! Every random draw in a sweep is keyed by `(master_seed, stream, index)`
//! so results do not depend on the order in which trials are evaluated.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent seed streams used by the sweep engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Input = 1,
    Mismatch = 2,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives the seed for trial `index` of `stream` under `master`.
pub fn derive_seed(master: u64, stream: Stream, index: u64) -> u64 {
    let h = splitmix64(master ^ splitmix64(stream as u64));
    splitmix64(h ^ splitmix64(index.wrapping_mul(GOLDEN)))
}

/// The generator used for all draws in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
