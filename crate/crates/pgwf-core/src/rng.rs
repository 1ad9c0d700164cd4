//! Deterministic per-node random streams.
//!
//! Every Monte-Carlo estimator draws from a ChaCha stream keyed by
//! `(seed, node_index)`, so grid renders are reproducible bit-for-bit and
//! independent of how nodes are partitioned across threads.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::math::splitmix64_mix;

/// A counter-derived random stream for one estimator node.
pub struct NodeRng {
    inner: ChaCha8Rng,
}

impl NodeRng {
    /// Stream for grid node / pixel `node` under the run seed `seed`.
    pub fn new(seed: u64, node: u64) -> Self {
        let mut key = [0u8; 32];
        let mut state = splitmix64_mix(seed ^ 0x6a09e667f3bcc908);
        state = splitmix64_mix(state ^ node.wrapping_mul(0x9e3779b97f4a7c15));
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64_mix(state.wrapping_add(0x9e3779b97f4a7c15));
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        NodeRng {
            inner: ChaCha8Rng::from_seed(key),
        }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform draw in `[0, 1)`.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
