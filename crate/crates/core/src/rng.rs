//! SplitMix64, the only source of randomness in the suite.
//!
//! The step function and the real/integer derivations are fixed so that a
//! seed reproduces the same stream on every platform.

use crate::KernelError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prng {
    state: u64,
}

impl Prng {
    pub const fn new(seed: u64) -> Self {
        Prng { state: seed }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` from the top 53 bits.
    #[inline]
    pub fn uniform_real(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..k`, computed as `floor(uniform_real * k)`.
    #[inline]
    pub fn uniform_int(&mut self, k: usize) -> Result<usize, KernelError> {
        if k == 0 {
            return Err(KernelError::ZeroRange);
        }
        // The product is non-negative, so truncation is floor. It stays
        // below k because uniform_real < 1 and k < 2^53 in practice.
        Ok(((self.uniform_real() * k as f64) as usize).min(k - 1))
    }
}
