//! Over-the-air computation pipeline: precoding, superposition, post-processing.
//!
//! Every participating user scales its composite signal by `η/(K_active·h_k)`
//! (channel inversion with a common gain), the multiple-access channel adds
//! the faded signals, the attacker's perturbation, and thermal noise, and the
//! server divides by η. With no attacker the post-processed vector is the
//! arithmetic mean of the users' composite vectors plus effective noise of
//! power `σ²/η²`.

use num_complex::Complex64;
use rand::Rng;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::numerics::{complex_gaussian, ComplexMatrix};

/// Precoded signals of the participating users plus the attacker's vector.
#[derive(Debug, Clone)]
pub struct TransmitBlock {
    /// `(L+D)×K_active` matrix; column order follows user index order
    /// restricted to participants.
    pub signals: ComplexMatrix,
    /// Attacker perturbation vector of length `L+D` (zero under H0).
    pub attacker_signal: Vec<Complex64>,
}

/// Raw and post-processed server observations for one block.
#[derive(Debug, Clone)]
pub struct ReceivedBlock {
    /// Channel output before post-processing.
    pub y_raw: Vec<Complex64>,
    /// Post-processed vector `y = y_raw/η`.
    pub y: Vec<Complex64>,
    /// Amplitude-scaling factor used by the block.
    pub eta: f64,
}

impl ReceivedBlock {
    /// Builds the pair (raw, post-processed) from the channel output.
    pub fn assemble(y_raw: Vec<Complex64>, eta: f64) -> Result<Self> {
        let y = postprocess(&y_raw, eta)?;
        Ok(ReceivedBlock { y_raw, y, eta })
    }
}

/// Channel-inversion precoding: `x · η/(K_active·h_k)`.
pub fn precode(
    x_k: &[Complex64],
    h_k: Complex64,
    eta: f64,
    k_active: usize,
) -> Result<Vec<Complex64>> {
    if h_k.norm_sqr() == 0.0 {
        return Err(Error::parameter("precode: zero channel coefficient"));
    }
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::parameter("precode: eta must be positive"));
    }
    if k_active == 0 {
        return Err(Error::parameter("precode: K_active must be at least 1"));
    }
    let gain = Complex64::new(eta / k_active as f64, 0.0) / h_k;
    Ok(x_k.iter().map(|x| x * gain).collect())
}

/// Noisy multiple-access superposition.
///
/// `ỹ[i] = Σ_k h_k·signals[i,k] + h_b·b[i] + z[i]` with `z ~ CN(0, σ² I)`.
/// The sum runs over participants, pairing the block's columns with the
/// participating entries of `realization.h` in user order.
pub fn superpose<R: Rng + ?Sized>(
    block: &TransmitBlock,
    realization: &ChannelRealization,
    noise_variance: f64,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    if !(noise_variance > 0.0) || !noise_variance.is_finite() {
        return Err(Error::parameter(
            "superpose: noise variance must be positive",
        ));
    }
    let n = block.attacker_signal.len();
    if block.signals.cols() > 0 && block.signals.rows() != n {
        return Err(Error::dimension(
            "superpose: signal rows must match attacker vector length",
        ));
    }
    if block.signals.cols() != realization.k_active {
        return Err(Error::dimension(
            "superpose: one signal column per participant required",
        ));
    }
    let mut y = vec![Complex64::new(0.0, 0.0); n];
    let mut col = 0;
    for (hk, &active) in realization.h.iter().zip(&realization.participation) {
        if !active {
            continue;
        }
        for (yi, si) in y.iter_mut().zip(block.signals.column(col)) {
            *yi += hk * si;
        }
        col += 1;
    }
    for (yi, bi) in y.iter_mut().zip(&block.attacker_signal) {
        *yi += realization.h_b * bi;
    }
    for yi in y.iter_mut() {
        *yi += complex_gaussian(noise_variance, rng);
    }
    Ok(y)
}

/// Server post-processing: elementwise division by η.
pub fn postprocess(y_raw: &[Complex64], eta: f64) -> Result<Vec<Complex64>> {
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::parameter("postprocess: eta must be positive"));
    }
    Ok(y_raw.iter().map(|y| y / eta).collect())
}
