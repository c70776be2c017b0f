//! Deterministic, splittable random-generator state.
//!
//! Every sampler in this crate takes `&mut RngState` explicitly; there is no
//! global generator. A state is fully determined by a `(seed, stream)` pair,
//! so any Monte Carlo result can be reproduced bit-for-bit from the seed
//! recorded in a run manifest. Parallel ensembles derive disjoint per-task
//! generators with [`RngState::substream`], which is pure and collision-free
//! for distinct ids.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

#[derive(Debug, Clone)]
pub struct RngState {
    inner: ChaCha12Rng,
    seed: u64,
    stream: u64,
}

impl RngState {
    /// Stream 0 of the given seed.
    pub fn from_seed(seed: u64) -> Self {
        Self::stream(seed, 0)
    }

    /// The generator identified by `(seed, stream)`.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha12Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngState {
            inner,
            seed,
            stream,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream
    }

    /// Child generator for task `id`. Pure: does not advance `self`, and
    /// distinct ids give disjoint streams of the same cipher keyed by the
    /// original seed.
    pub fn substream(&self, id: u64) -> Self {
        Self::stream(
            self.seed,
            splitmix(self.stream).wrapping_add(id).wrapping_add(1),
        )
    }

    /// Stateful split: draws a fresh seed from `self`.
    pub fn split(&mut self) -> Self {
        let seed = self.inner.next_u64();
        Self::from_seed(seed)
    }

    /// Uniform draw on the open interval (0, 1).
    pub fn uniform_open(&mut self) -> f64 {
        self.inner
            .random::<f64>()
            .clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON)
    }

    /// Uniform draw on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    pub fn standard_normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.inner)
    }

    pub fn exponential(&mut self) -> f64 {
        Exp1.sample(&mut self.inner)
    }

    /// Gamma(shape, 1) draw, shape > 0.
    pub fn gamma(&mut self, shape: f64) -> f64 {
        let dist = rand_distr::Gamma::new(shape, 1.0).expect("gamma shape must be positive");
        dist.sample(&mut self.inner)
    }
}

impl RngCore for RngState {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
