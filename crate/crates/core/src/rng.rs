//! Counter-based randomness keyed by `(seed, time step, pixel)`.
//!
//! Every pixel of every share draws from its own ChaCha8 stream, so sharing
//! can run in parallel over pixels and still produce the same bits for a
//! given seed whatever the thread schedule. Within a stream, draws are taken
//! in order; the draw counter is the stream position.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Master seed from which all per-pixel streams are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The stream for one pixel at one time step.
    pub fn stream(&self, pixel: u64, time: u64) -> PixelRng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&time.to_le_bytes());
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(pixel);
        PixelRng { inner }
    }
}

/// A single keyed stream. Each helper consumes a documented number of 32-bit
/// words so replay stays aligned.
#[derive(Clone, Debug)]
pub struct PixelRng {
    inner: ChaCha8Rng,
}

impl PixelRng {
    /// A fair bit; one word.
    pub fn coin(&mut self) -> u8 {
        (self.inner.next_u32() >> 31) as u8
    }

    /// Uniform on `[0,1)` from 53 bits; two words.
    pub fn unit(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// 0 with probability `lambda`, otherwise 1; two words. The caller
    /// guarantees `0 < lambda < 1`.
    pub fn bit(&mut self, lambda: f64) -> u8 {
        u8::from(self.unit() >= lambda)
    }

    /// Uniform on `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        self.inner.random_range(0..bound)
    }

    /// Number of words consumed so far.
    pub fn position(&self) -> u128 {
        self.inner.get_word_pos()
    }
}

impl RngCore for PixelRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}
