//! Keyed random streams.
//!
//! Every stochastic component draws from a ChaCha stream whose key is derived
//! from the run seed plus string labels (model id, subject id, ...). Streams
//! therefore do not depend on iteration order or thread scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// 256-bit stream key for `seed` and `labels`.
pub fn stream_key(seed: u64, labels: &[&str]) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(seed.to_le_bytes());
    for label in labels {
        hasher.update((label.len() as u64).to_le_bytes());
        hasher.update(label.as_bytes());
    }
    hasher.finalize().into()
}

pub fn stream_rng(seed: u64, labels: &[&str]) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(stream_key(seed, labels))
}
