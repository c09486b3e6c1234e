//! Random sampling primitives and the Erlang calibration math.
//!
//! Everything stochastic in the crate draws from an [`RngStream`]: a
//! counter-based generator addressed by `(seed, stream id)`. Equal
//! addresses reproduce bit-identical draw sequences, distinct stream ids
//! are statistically independent, and no draw depends on scheduling — which
//! is what makes trials safe to run in parallel and lets the legitimate
//! parties re-derive shared secrets (dummy positions, the block unitary)
//! from a shared seed.

mod erlang;
mod haar;
mod matrix;

pub use erlang::{erlang_quantile, erlang_tail};
pub use haar::{sample_haar_unitary, HaarUnitary};
pub use matrix::ComplexMatrix;

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Seeded, stream-addressed random number generator.
///
/// A thin wrapper over ChaCha8 in counter mode: `seed` selects the key and
/// `stream` the 64-bit nonce, so `(seed, stream)` fully determines the
/// sequence regardless of what other streams were consumed when.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// One draw from the circularly-symmetric complex Gaussian CN(0, variance).
#[inline]
pub fn complex_gaussian<R: Rng + ?Sized>(variance: f64, rng: &mut R) -> Complex64 {
    let s = (variance * 0.5).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// `n` i.i.d. draws from CN(0, variance).
///
/// Real and imaginary parts are independent N(0, variance/2), so
/// `E|z|² = variance` exactly.
pub fn sample_complex_gaussian<R: Rng + ?Sized>(
    n: usize,
    variance: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    if !variance.is_finite() || variance <= 0.0 {
        return Err(Error::parameter(format!(
            "sample_complex_gaussian: variance must be finite and positive, got {variance}"
        )));
    }
    Ok((0..n).map(|_| complex_gaussian(variance, rng)).collect())
}
