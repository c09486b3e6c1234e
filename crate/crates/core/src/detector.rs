//! Energy detection on the dummy coordinates and its closed-form analysis.
//!
//! Under no attack every detection coordinate is `CN(0, σ̃²)`, so the energy
//! statistic `‖y_d‖²` follows an Erlang(D, σ̃²) law — the threshold for any
//! target false-alarm rate is an Erlang quantile. Under a Gaussian-uniform
//! attack with average path gain β, conditioning on the attacker's fading
//! and integrating the exponential `|h_b|²` yields closed-form mean and
//! variance under both hypotheses, and a deflection coefficient that
//! predicts detectability from `σ²/β` and `D` alone.

use crate::error::{Error, Result};
use crate::numerics::{erlang_quantile, erlang_tail};
use num_complex::Complex64;

/// Which world generated an observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    /// No attacker energy present.
    H0,
    /// Attacker energy present.
    H1,
}

impl Hypothesis {
    /// Canonical name used in CSV output.
    pub fn as_str(self) -> &'static str {
        match self {
            Hypothesis::H0 => "H0",
            Hypothesis::H1 => "H1",
        }
    }
}

/// Closed-form moments of the energy statistic under both hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorStats {
    /// `E[‖y_d‖² | H0] = D σ̃²`.
    pub mean_h0: f64,
    /// `Var[‖y_d‖² | H0] = D σ̃⁴`.
    pub var_h0: f64,
    /// `E[‖y_d‖² | H1] = D (σ̃² + β/η²)`.
    pub mean_h1: f64,
    /// `Var[‖y_d‖² | H1]`, exact for exponential attacker fading power.
    pub var_h1: f64,
    /// Effective per-coordinate noise variance σ̃².
    pub sigma_tilde2: f64,
    /// Average attacker path gain β (already scaled by attack power).
    pub beta: f64,
    /// Amplitude-scaling factor η the block used.
    pub eta: f64,
    /// Number of detection coordinates.
    pub d: usize,
    /// `(mean_h1 − mean_h0) / √var_h1`.
    pub deflection: f64,
}

/// Outcome of one detector decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decision {
    /// Observed energy `‖y_d‖²`.
    pub statistic: f64,
    /// Threshold γ the statistic was compared against.
    pub threshold: f64,
    /// `H1` iff `statistic > threshold` (ties resolve to `H0`).
    pub verdict: Hypothesis,
}

/// Sum of squared moduli of the detection vector.
pub fn energy_statistic(y_d: &[Complex64]) -> Result<f64> {
    if y_d.is_empty() {
        return Err(Error::parameter(
            "energy_statistic: detection vector must be nonempty",
        ));
    }
    Ok(y_d.iter().map(|z| z.norm_sqr()).sum())
}

/// Threshold achieving `target_pf` exactly under the H0 Erlang law.
pub fn calibrate_threshold(sigma_tilde2: f64, d: usize, target_pf: f64) -> Result<f64> {
    erlang_quantile(target_pf, d, sigma_tilde2)
}

/// Model false-alarm probability of a threshold under the H0 Erlang law.
pub fn false_alarm_probability(gamma: f64, sigma_tilde2: f64, d: usize) -> Result<f64> {
    erlang_tail(gamma, d, sigma_tilde2)
}

/// Compares the statistic against γ; ties resolve to H0 for determinism.
pub fn decide(statistic: f64, gamma: f64) -> Result<Decision> {
    if !(gamma >= 0.0) {
        return Err(Error::parameter("decide: threshold must be nonnegative"));
    }
    if !statistic.is_finite() || statistic < 0.0 {
        return Err(Error::parameter(
            "decide: statistic must be a nonnegative finite energy",
        ));
    }
    let verdict = if statistic > gamma {
        Hypothesis::H1
    } else {
        Hypothesis::H0
    };
    Ok(Decision {
        statistic,
        threshold: gamma,
        verdict,
    })
}

/// Closed-form moments of `‖y_d‖²` under H0 and H1.
///
/// `sigma_d2_over_k` is the legitimate dummy contribution `σ_d²/K_active`
/// (zero for the correlated design), and `beta` is the attacker's average
/// received power per symbol — path gain times transmitted per-symbol power.
/// The H1 variance assumes exponentially distributed attacker fading power
/// (`E|h_b|⁴ = 2β²`), matching Rayleigh small-scale fading.
pub fn theoretical_moments(
    sigma2: f64,
    eta: f64,
    beta: f64,
    d: usize,
    sigma_d2_over_k: f64,
) -> Result<DetectorStats> {
    if !(sigma2 > 0.0) || !sigma2.is_finite() {
        return Err(Error::parameter(
            "theoretical_moments: noise variance must be positive",
        ));
    }
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(Error::parameter("theoretical_moments: eta must be positive"));
    }
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::parameter(
            "theoretical_moments: beta must be nonnegative",
        ));
    }
    if !(sigma_d2_over_k >= 0.0) || !sigma_d2_over_k.is_finite() {
        return Err(Error::parameter(
            "theoretical_moments: dummy contribution must be nonnegative",
        ));
    }
    if d == 0 {
        return Err(Error::parameter(
            "theoretical_moments: need at least one detection coordinate",
        ));
    }
    let df = d as f64;
    let eta2 = eta * eta;
    let st2 = sigma2 / eta2 + sigma_d2_over_k;
    let attack = beta / eta2;
    let mean_h0 = df * st2;
    let var_h0 = df * st2 * st2;
    let mean_h1 = df * (st2 + attack);
    let var_h1 =
        df * (st2 * st2 + 2.0 * st2 * attack + 2.0 * attack * attack) + df * df * attack * attack;
    // mean_h1 − mean_h0 = D·attack exactly; computing it that way avoids
    // the cancellation the literal subtraction suffers when attack ≪ σ̃².
    let deflection = if beta > 0.0 {
        df * attack / var_h1.sqrt()
    } else {
        0.0
    };
    Ok(DetectorStats {
        mean_h0,
        var_h0,
        mean_h1,
        var_h1,
        sigma_tilde2: st2,
        beta,
        eta,
        d,
        deflection,
    })
}

/// Closed-form deflection coefficient for the correlated design.
///
/// `√(1 / (1 + (1/D)(σ⁴/β² + 2σ²/β + 2)))` — algebraically identical to
/// `(mean_h1 − mean_h0)/√var_h1` from [`theoretical_moments`] with
/// `sigma_d2_over_k = 0`; the amplitude-scaling factor cancels.
pub fn deflection_coefficient(sigma2: f64, beta: f64, d: usize) -> Result<f64> {
    if !(sigma2 >= 0.0) || !sigma2.is_finite() {
        return Err(Error::parameter(
            "deflection_coefficient: noise variance must be nonnegative",
        ));
    }
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::parameter(
            "deflection_coefficient: beta must be positive",
        ));
    }
    if d == 0 {
        return Err(Error::parameter(
            "deflection_coefficient: need at least one detection coordinate",
        ));
    }
    let ratio = sigma2 / beta;
    let inner = 1.0 + (ratio * ratio + 2.0 * ratio + 2.0) / d as f64;
    Ok((1.0 / inner).sqrt())
}
