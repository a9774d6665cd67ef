//! Per-chunk random streams.
//!
//! Chunk `i` of a run seeded with `s` draws from ChaCha8 keyed by
//! `splitmix64(s ^ splitmix64(i))`. Streams depend only on `(s, i)`, so any
//! assignment of chunks to threads yields the same samples.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The SplitMix64 output function.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn stream_seed(seed: u64, chunk_index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(chunk_index))
}

pub fn chunk_rng(seed: u64, chunk_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(seed, chunk_index))
}
