//! Attacker perturbation strategies.
//!
//! The attacker transmits a length-`L+D` perturbation vector without knowing
//! which coordinates the server will inspect. The baseline adversary spreads
//! i.i.d. Gaussian energy across the whole block; variants scale the power
//! budget down or — as an evaluation-only oracle — stay silent exactly at
//! the dummy positions to probe a design's worst case.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::complex_gaussian;

/// Attacker behavior during a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackKind {
    /// No attacker transmission (the H0 world).
    None,
    /// i.i.d. complex Gaussian energy, uniform across all positions.
    GaussianUniform,
    /// Gaussian energy on data positions, exact zeros on dummy positions.
    /// Requires oracle knowledge of the secret indices; evaluation only.
    IdleDuringDetection,
    /// Gaussian uniform at a reduced power budget.
    ScaledPower,
}

impl AttackKind {
    /// Canonical name used by CLI flags and config files.
    pub fn as_str(self) -> &'static str {
        match self {
            AttackKind::None => "none",
            AttackKind::GaussianUniform => "gaussian",
            AttackKind::IdleDuringDetection => "idle",
            AttackKind::ScaledPower => "scaled",
        }
    }
}

impl std::str::FromStr for AttackKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(AttackKind::None),
            "gaussian" => Ok(AttackKind::GaussianUniform),
            "idle" => Ok(AttackKind::IdleDuringDetection),
            "scaled" => Ok(AttackKind::ScaledPower),
            other => Err(Error::config(format!(
                "unknown attack {other:?} (expected none, gaussian, idle, or scaled)"
            ))),
        }
    }
}

/// An attack kind plus its power-scaling knob.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackStrategy {
    /// Which perturbation pattern the attacker uses.
    pub kind: AttackKind,
    /// Factor applied to the attacker's per-symbol power budget.
    pub power_scale: f64,
}

impl AttackStrategy {
    /// Strategy carrying no transmission at all.
    pub fn none() -> Self {
        AttackStrategy {
            kind: AttackKind::None,
            power_scale: 1.0,
        }
    }

    /// Full-power Gaussian-uniform attack, the evaluated baseline.
    pub fn gaussian_uniform() -> Self {
        AttackStrategy {
            kind: AttackKind::GaussianUniform,
            power_scale: 1.0,
        }
    }

    /// True when the strategy injects any energy.
    pub fn is_active(&self) -> bool {
        self.kind != AttackKind::None && self.power_scale > 0.0
    }
}

/// Generates the attacker's perturbation vector for one block.
///
/// Gaussian entries have variance `per_symbol_power · power_scale`. The
/// idle-during-detection variant draws the same full-block vector and then
/// forces exact zeros at `oracle_dummy_indices` — so with a shared stream it
/// is the Gaussian attack minus its dummy-position energy.
pub fn generate_attack<R: Rng + ?Sized>(
    strategy: &AttackStrategy,
    length: usize,
    per_symbol_power: f64,
    oracle_dummy_indices: Option<&[usize]>,
    rng: &mut R,
) -> Result<Vec<Complex64>> {
    if length == 0 {
        return Err(Error::parameter("generate_attack: length must be positive"));
    }
    if !(strategy.power_scale >= 0.0) || !strategy.power_scale.is_finite() {
        return Err(Error::parameter(
            "generate_attack: power scale must be a nonnegative finite number",
        ));
    }
    if !(per_symbol_power > 0.0) || !per_symbol_power.is_finite() {
        return Err(Error::parameter(
            "generate_attack: per-symbol power must be positive",
        ));
    }
    let zero = Complex64::new(0.0, 0.0);
    let variance = per_symbol_power * strategy.power_scale;
    if strategy.kind == AttackKind::None || variance == 0.0 {
        return Ok(vec![zero; length]);
    }
    let mut b: Vec<Complex64> = (0..length)
        .map(|_| complex_gaussian(variance, rng))
        .collect();
    if strategy.kind == AttackKind::IdleDuringDetection {
        let indices = oracle_dummy_indices.ok_or_else(|| {
            Error::config("idle_during_detection requires oracle dummy indices".to_string())
        })?;
        for &i in indices {
            if i >= length {
                return Err(Error::dimension(
                    "generate_attack: oracle index outside the block",
                ));
            }
            b[i] = zero;
        }
    }
    Ok(b)
}
