//! Seedable random streams.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::normal::norm_inv;

/// A ChaCha8 stream identified by `(seed, stream_index)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_index: u64,
    inner: ChaCha8Rng,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl RngStream {
    pub fn new(seed: u64, stream_index: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream_index);
        RngStream {
            seed,
            stream_index,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_index(&self) -> u64 {
        self.stream_index
    }

    /// Independent stream number `index` below this one. Children do not
    /// depend on how much of the parent has been consumed.
    pub fn child(&self, index: u64) -> RngStream {
        let seed = splitmix64(self.seed ^ splitmix64(self.stream_index.wrapping_add(1)));
        RngStream::new(seed, index)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform double in [0,1) with 53 random bits.
    pub fn next_uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    pub fn next_normal(&mut self) -> f64 {
        norm_inv(self.next_uniform())
    }

    pub fn uniforms(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_uniform()).collect()
    }

    pub fn normals(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_normal()).collect()
    }
}

pub fn uniform_stream(rng: &mut RngStream, n: usize) -> Vec<f64> {
    rng.uniforms(n)
}

pub fn normal_stream(rng: &mut RngStream, n: usize) -> Vec<f64> {
    rng.normals(n)
}
