//! Seeded, splittable random streams.
//!
//! A [`SeededStream`] is a `(master_seed, stream_index)` pair. Its generator is
//! ChaCha8 keyed by a hash of the master seed, with the ChaCha block counter
//! selected by the stream index, so any stream can be materialised
//! independently of every other one. Child streams are derived by hashing the
//! parent index with a child label; sample `i` of a batch uses
//! `stream.substream(i)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeededStream {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    /// Child stream `label`; deterministic in `(master_seed, stream_index, label)`.
    pub fn substream(&self, label: u64) -> Self {
        let idx = mix64(self.stream_index ^ mix64(label.wrapping_add(0x9E37_79B9_7F4A_7C15)));
        Self { master_seed: self.master_seed, stream_index: idx }
    }

    pub fn generator(&self) -> StreamRng {
        let mut key = [0u8; 32];
        let mut state = self.master_seed;
        for chunk in key.chunks_exact_mut(8) {
            state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
            chunk.copy_from_slice(&mix64(state).to_le_bytes());
        }
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(self.stream_index);
        StreamRng { rng, spare: None }
    }
}

/// SplitMix64 finaliser.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform and Gaussian draws on top of a ChaCha stream.
pub struct StreamRng {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl StreamRng {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `(0, 1]`.
    fn uniform_open_closed(&mut self) -> f64 {
        1.0 - self.uniform()
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    pub fn standard_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let r = (-2.0 * self.uniform_open_closed().ln()).sqrt();
        let theta = 2.0 * PI * self.uniform();
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    /// Standard complex Gaussian with `E|z|^2 = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let r = (-self.uniform_open_closed().ln()).sqrt();
        let theta = 2.0 * PI * self.uniform();
        Complex64::from_polar(r, theta)
    }
}
