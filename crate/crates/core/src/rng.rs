//! Reproducible random streams.
//!
//! Every stochastic component draws from an [`RngStream`], a ChaCha8 generator keyed by a
//! `(master_seed, stream_id)` pair. The 256-bit ChaCha key is expanded from `master_seed`
//! with the PCG32-based `SeedableRng::seed_from_u64` routine and `stream_id` selects the
//! 64-bit ChaCha stream (nonce), so distinct ids give independent keystreams under the same
//! key. All derived samplers below use integer arithmetic or `libm`, which keeps output
//! bit-identical across platforms, including `wasm32`.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    stream_id: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(master_seed);
        inner.set_stream(stream_id);
        Self {
            master_seed,
            stream_id,
            inner,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// A fresh stream under the same master seed.
    pub fn sibling(&self, stream_id: u64) -> Self {
        Self::new(self.master_seed, stream_id)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, bound)`; `bound` must be positive.
    ///
    /// Lemire's multiply-and-reject method, exact for every bound.
    #[inline]
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "below() requires a positive bound");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let m = (self.next_u64() as u128) * (bound as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    #[inline]
    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    /// `true` with probability `p`; `p <= 0` never fires.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal deviate by the Box-Muller transform.
    pub fn standard_normal(&mut self) -> f64 {
        // 1 - uniform() lies in (0, 1], keeping the logarithm finite.
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * std::f64::consts::PI * u2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_pair_same_sequence() {
        let mut a = RngStream::new(1, 7);
        let mut b = RngStream::new(1, 7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn streams_differ() {
        let mut a = RngStream::new(1, 7);
        let mut b = RngStream::new(1, 8);
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn frozen_first_outputs() {
        // Guards the documented seed expansion against dependency drift.
        let mut r = RngStream::new(0, 0);
        let first = r.next_u64();
        let mut again = RngStream::new(0, 0);
        assert_eq!(first, again.next_u64());
        assert_eq!(first, FROZEN_SEED0_STREAM0);
    }

    const FROZEN_SEED0_STREAM0: u64 = 13_080_132_717_333_068_652;

    #[test]
    fn below_stays_in_range() {
        let mut r = RngStream::new(3, 0);
        for bound in [1u64, 2, 3, 7, 10, 1000] {
            for _ in 0..1000 {
                assert!(r.below(bound) < bound);
            }
        }
    }

    #[test]
    fn uniform_in_unit_interval() {
        let mut r = RngStream::new(5, 1);
        for _ in 0..10_000 {
            let u = r.uniform();
            assert!((0.0..1.0).contains(&u));
        }
    }
}
