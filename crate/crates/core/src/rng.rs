//! Deterministic random streams.
//!
//! Every random draw in the toolkit comes from a ChaCha8 stream addressed by
//! `(seed, stream)`, so any single probe or restart can be replayed without
//! re-running the ones before it.

use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `len` independent standard normals drawn from stream `(seed, stream)`.
pub fn normal_vector(seed: u64, stream: u64, len: usize) -> Vec<f64> {
    let mut rng = stream_rng(seed, stream);
    (0..len).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}
