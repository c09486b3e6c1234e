//! Dummy-sample designs for attack detection.
//!
//! Both designs extend each user's `L` data symbols with `D` detection
//! symbols at positions all legitimate parties derive from a shared secret:
//!
//! * **Uncorrelated**: every user inserts its own i.i.d. Gaussian dummy
//!   values. Detection coordinates then carry leftover legitimate energy
//!   `σ_d²/K_active`, and the longer block costs per-symbol energy
//!   (`P_s = P0·L/(L+D)`).
//! * **Correlated**: dummy positions carry zeros and the whole composite
//!   vector is rotated by a shared Haar-random unitary, hiding the detection
//!   subspace. No legitimate energy lands on the detection coordinates and
//!   the per-symbol budget stays `P0`.
//!
//! The server inverts the shared transform and reads the dummy coordinates;
//! an attacker ignorant of the secret cannot keep energy out of them.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{complex_gaussian, ComplexMatrix, HaarUnitary};
use crate::ota::ReceivedBlock;

/// Which dummy-sample design a block uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    /// Per-user independent Gaussian dummy values at shared positions.
    Uncorrelated,
    /// Zero dummies plus a shared Haar-unitary rotation of the whole block.
    Correlated,
}

impl SchemeKind {
    /// Per-symbol energy budget given `P0` and the block shape.
    ///
    /// The uncorrelated design spends `D` extra symbols per block, scaling
    /// the budget by `L/(L+D)`; the correlated design transmits the same
    /// total energy as a dummy-free block, so the budget stays `P0`.
    pub fn per_symbol_power(self, p0: f64, l: usize, d: usize) -> f64 {
        match self {
            SchemeKind::Uncorrelated => p0 * l as f64 / (l + d) as f64,
            SchemeKind::Correlated => p0,
        }
    }

    /// Canonical lowercase name used in CSV output and CLI flags.
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeKind::Uncorrelated => "uncorrelated",
            SchemeKind::Correlated => "correlated",
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uncorrelated" => Ok(SchemeKind::Uncorrelated),
            "correlated" => Ok(SchemeKind::Correlated),
            other => Err(Error::config(format!(
                "unknown scheme {other:?} (expected \"correlated\" or \"uncorrelated\")"
            ))),
        }
    }
}

/// One block's composite data for all users, plus the shared-secret state.
#[derive(Debug, Clone)]
pub struct CompositeBlock {
    /// `(L+D)×K` composite matrix before any rotation.
    pub x: ComplexMatrix,
    /// Sorted 0-based dummy positions (`D` of them, shared by all parties).
    pub dummy_indices: Vec<usize>,
    /// Shared rotation; present exactly for the correlated design.
    pub unitary: Option<HaarUnitary>,
    /// Dummy-sample variance (zero for the correlated design).
    pub sigma_d2: f64,
}

/// Detection-phase observation at the server.
#[derive(Debug, Clone)]
pub struct DetectionVector {
    /// The `D` detection coordinates after undoing the shared transform.
    pub y_d: Vec<Complex64>,
    /// Per-coordinate noise variance σ̃² of `y_d` under no attack.
    pub effective_noise_variance: f64,
    /// The `L` communication coordinates (the server's mean estimate).
    pub comm_estimate: Vec<Complex64>,
}

impl CompositeBlock {
    /// Block length `L+D`.
    pub fn n(&self) -> usize {
        self.x.rows()
    }

    /// Number of users (columns).
    pub fn k(&self) -> usize {
        self.x.cols()
    }

    /// Number of dummy positions.
    pub fn d(&self) -> usize {
        self.dummy_indices.len()
    }

    /// Materializes the participants' transmit vectors (rotated if correlated).
    ///
    /// Returns an `(L+D)×K_active` matrix whose columns follow user index
    /// order restricted to `participation`.
    pub fn transmit_columns(&self, participation: &[bool]) -> Result<ComplexMatrix> {
        if participation.len() != self.k() {
            return Err(Error::dimension(
                "transmit_columns: one participation flag per user required",
            ));
        }
        let k_active = participation.iter().filter(|&&p| p).count();
        let mut m = ComplexMatrix::zeros(self.n(), k_active);
        let mut col = 0;
        for (user, &active) in participation.iter().enumerate() {
            if !active {
                continue;
            }
            m.column_mut(col).copy_from_slice(self.x.column(user));
            col += 1;
        }
        if let Some(u) = &self.unitary {
            u.apply_to_columns(&mut m)?;
        }
        Ok(m)
    }
}

/// Draws `d` distinct positions uniformly from `{0, …, l+d−1}`.
///
/// All legitimate parties call this with the same shared stream, so users
/// and server agree on the positions without revealing them.
pub fn draw_dummy_indices<R: Rng + ?Sized>(l: usize, d: usize, rng: &mut R) -> Result<Vec<usize>> {
    if l == 0 || d == 0 {
        return Err(Error::parameter(
            "draw_dummy_indices: L and D must both be at least 1",
        ));
    }
    // Partial Fisher–Yates: after `d` swap steps the prefix is a uniform
    // d-subset in uniform order; sorting keeps only the subset.
    let n = l + d;
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..d {
        let j = i + rng.gen_range(0..n - i);
        pool.swap(i, j);
    }
    let mut indices = pool[..d].to_vec();
    indices.sort_unstable();
    Ok(indices)
}

/// Validates shared inputs of the two builders.
fn check_build(real_data: &ComplexMatrix) -> Result<(usize, usize)> {
    let (l, k) = (real_data.rows(), real_data.cols());
    if l == 0 || k == 0 {
        return Err(Error::parameter(
            "composite build: real data must be a nonempty L×K matrix",
        ));
    }
    Ok((l, k))
}

/// Fills one composite column: data in order at non-dummy positions.
fn scatter_data(column: &mut [Complex64], data: &[Complex64], is_dummy: &[bool]) {
    let mut src = data.iter();
    for (slot, &dummy) in column.iter_mut().zip(is_dummy) {
        if !dummy {
            *slot = *src.next().expect("L data symbols fill L data positions");
        }
    }
}

fn dummy_mask(n: usize, indices: &[usize]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for &i in indices {
        mask[i] = true;
    }
    mask
}

/// Builds an uncorrelated-design composite block.
///
/// Positions come from `shared_rng`; each user's dummy values are drawn
/// from `data_rng` (private randomness), i.i.d. `CN(0, sigma_d2)`, user by
/// user in ascending position order. `d = 0` degenerates to a passthrough
/// of the real data.
pub fn build_uncorrelated<R1, R2>(
    real_data: &ComplexMatrix,
    d: usize,
    sigma_d2: f64,
    shared_rng: &mut R1,
    data_rng: &mut R2,
) -> Result<CompositeBlock>
where
    R1: Rng + ?Sized,
    R2: Rng + ?Sized,
{
    let (l, k) = check_build(real_data)?;
    if d == 0 {
        return Ok(CompositeBlock {
            x: real_data.clone(),
            dummy_indices: Vec::new(),
            unitary: None,
            sigma_d2,
        });
    }
    if !(sigma_d2 > 0.0) || !sigma_d2.is_finite() {
        return Err(Error::parameter(
            "build_uncorrelated: dummy variance must be positive",
        ));
    }
    let dummy_indices = draw_dummy_indices(l, d, shared_rng)?;
    let is_dummy = dummy_mask(l + d, &dummy_indices);
    let mut x = ComplexMatrix::zeros(l + d, k);
    for user in 0..k {
        let column = x.column_mut(user);
        scatter_data(column, real_data.column(user), &is_dummy);
        for &i in &dummy_indices {
            column[i] = complex_gaussian(sigma_d2, data_rng);
        }
    }
    Ok(CompositeBlock {
        x,
        dummy_indices,
        unitary: None,
        sigma_d2,
    })
}

/// Builds a correlated-design composite block.
///
/// Dummy positions carry exact zeros and the block records the shared Haar
/// unitary; `shared_rng` supplies first the positions, then the unitary, so
/// any party holding the shared secret reconstructs both.
pub fn build_correlated<R: Rng + ?Sized>(
    real_data: &ComplexMatrix,
    d: usize,
    shared_rng: &mut R,
) -> Result<CompositeBlock> {
    let (l, k) = check_build(real_data)?;
    let (dummy_indices, n) = if d == 0 {
        (Vec::new(), l)
    } else {
        (draw_dummy_indices(l, d, shared_rng)?, l + d)
    };
    let unitary = HaarUnitary::sample(n, shared_rng)?;
    let is_dummy = dummy_mask(n, &dummy_indices);
    let mut x = ComplexMatrix::zeros(n, k);
    for user in 0..k {
        scatter_data(x.column_mut(user), real_data.column(user), &is_dummy);
    }
    Ok(CompositeBlock {
        x,
        dummy_indices,
        unitary: Some(unitary),
        sigma_d2: 0.0,
    })
}

/// Recovers the detection vector and the communication estimate.
///
/// Correlated blocks first undo the shared rotation (`U†y`); both designs
/// then split the result into dummy coordinates (`y_d`) and data coordinates
/// (the mean estimate). The per-coordinate effective noise under no attack
/// is `σ²/η² + σ_d²/K_active`, where the second term vanishes for the
/// correlated design because its dummies are exact zeros.
pub fn extract_detection_vector(
    received: &ReceivedBlock,
    block: &CompositeBlock,
    k_active: usize,
    noise_variance: f64,
) -> Result<DetectionVector> {
    if received.y.len() != block.n() {
        return Err(Error::dimension(
            "extract_detection_vector: received length must equal L+D",
        ));
    }
    if k_active == 0 {
        return Err(Error::NoParticipants);
    }
    if !(noise_variance > 0.0) || !noise_variance.is_finite() {
        return Err(Error::parameter(
            "extract_detection_vector: noise variance must be positive",
        ));
    }
    let mut w = received.y.clone();
    if let Some(u) = &block.unitary {
        u.apply_adjoint(&mut w)?;
    }
    let is_dummy = dummy_mask(block.n(), &block.dummy_indices);
    let mut y_d = Vec::with_capacity(block.d());
    let mut comm_estimate = Vec::with_capacity(block.n() - block.d());
    for (wi, &dummy) in w.iter().zip(&is_dummy) {
        if dummy {
            y_d.push(*wi);
        } else {
            comm_estimate.push(*wi);
        }
    }
    let eta2 = received.eta * received.eta;
    let effective_noise_variance = noise_variance / eta2 + block.sigma_d2 / k_active as f64;
    Ok(DetectionVector {
        y_d,
        effective_noise_variance,
        comm_estimate,
    })
}
