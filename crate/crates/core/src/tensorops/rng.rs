use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Words reserved per chunk inside one ChaCha stream.
const CHUNK_WORDS_LOG2: u32 = 40;

/// A reproducible random stream: a 64-bit seed plus a stream id.
///
/// Every `(seed, stream)` pair selects an independent ChaCha8 keystream.
/// Work split into chunks uses disjoint word offsets of that keystream, so
/// results do not depend on how chunks are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        RngStream { seed, stream }
    }

    /// The generator at the start of the stream.
    pub fn generator(&self) -> ChaCha8Rng {
        self.chunk_generator(0)
    }

    /// The generator positioned at chunk `chunk`.
    pub fn chunk_generator(&self, chunk: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng.set_word_pos(u128::from(chunk) << CHUNK_WORDS_LOG2);
        rng
    }

    /// Standard-normal source at the start of the stream.
    pub fn gaussian(&self) -> GaussianSource<ChaCha8Rng> {
        GaussianSource::new(self.generator())
    }
}

/// Standard normal variates by the Box–Muller transform.
#[derive(Debug, Clone)]
pub struct GaussianSource<R> {
    rng: R,
    spare: Option<f64>,
}

impl<R: RngCore> GaussianSource<R> {
    pub fn new(rng: R) -> Self {
        GaussianSource { rng, spare: None }
    }

    /// One `N(0, 1)` draw.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // 1 − [0, 1) keeps the logarithm finite
        let u1 = 1.0 - self.rng.random::<f64>();
        let u2 = self.rng.random::<f64>();
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        self.spare = Some(r * theta.sin());
        r * theta.cos()
    }

    /// A standard complex normal: independent real and imaginary parts of
    /// variance 1/2, so `E|z|² = 1`.
    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
}
