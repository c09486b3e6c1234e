//! Wireless scenario: node geometry, fading, participation, power control.
//!
//! Nodes are dropped uniformly over a disk around the server (with a 1 m
//! floor so the power-law path loss stays finite), each user's channel is
//! Rayleigh small-scale fading times distance path loss, and a user takes
//! part in a block only while its small-scale amplitude clears a threshold.
//! The amplitude-scaling factor η is the largest gain every participant can
//! afford under the per-symbol power budget given channel inversion.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::complex_gaussian;

/// Minimum node-to-server distance in meters.
///
/// A pure power-law gain diverges as the distance approaches zero, so
/// placements resample until every node is at least this far away.
pub const MIN_DISTANCE: f64 = 1.0;

/// Node placement: distances from the server in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    /// Distance of each user from the server.
    pub user_distances: Vec<f64>,
    /// Distance of the attacker from the server.
    pub attacker_distance: f64,
    /// Disk radius the nodes were drawn from.
    pub cell_radius: f64,
}

/// One block's channel state for all users and the attacker.
#[derive(Debug, Clone)]
pub struct ChannelRealization {
    /// Per-user channel coefficient `h_k = g_k · d_k^(−α/2)`.
    pub h: Vec<Complex64>,
    /// Per-user small-scale coefficient `g_k ~ CN(0,1)`.
    pub small_scale: Vec<Complex64>,
    /// Attacker channel coefficient.
    pub h_b: Complex64,
    /// Which users participate in this block.
    pub participation: Vec<bool>,
    /// Number of participating users.
    pub k_active: usize,
    /// Average attacker path gain `β = E|h_b|² = d_b^(−α)`.
    pub beta: f64,
}

/// Power accounting for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    /// Per-user maximum power budget in watts.
    pub p0: f64,
    /// Per-symbol energy in watts after any dummy overhead.
    pub per_symbol: f64,
    /// Channel noise variance in watts.
    pub noise_variance: f64,
}

impl PowerBudget {
    /// Validates and builds a power budget.
    pub fn new(p0: f64, per_symbol: f64, noise_variance: f64) -> Result<Self> {
        if !(p0 > 0.0) || !p0.is_finite() {
            return Err(Error::parameter("PowerBudget: P0 must be positive"));
        }
        if !(per_symbol > 0.0) || per_symbol > p0 {
            return Err(Error::parameter(
                "PowerBudget: per-symbol energy must lie in (0, P0]",
            ));
        }
        if !(noise_variance > 0.0) || !noise_variance.is_finite() {
            return Err(Error::parameter(
                "PowerBudget: noise variance must be positive",
            ));
        }
        Ok(PowerBudget {
            p0,
            per_symbol,
            noise_variance,
        })
    }
}

/// Draws one distance with uniform-disk density and the minimum-distance floor.
fn draw_distance<R: Rng + ?Sized>(radius: f64, rng: &mut R) -> f64 {
    loop {
        // Uniform position on a disk has distance density ∝ d, i.e.
        // d = radius·√u for u ~ U(0,1).
        let d = radius * rng.gen::<f64>().sqrt();
        if d > MIN_DISTANCE {
            return d;
        }
    }
}

/// Places `k` users and one attacker uniformly on a disk of radius `radius`.
pub fn place_nodes<R: Rng + ?Sized>(k: usize, radius: f64, rng: &mut R) -> Result<Geometry> {
    if k == 0 {
        return Err(Error::parameter("place_nodes: need at least one user"));
    }
    if !(radius > MIN_DISTANCE) || !radius.is_finite() {
        return Err(Error::parameter(
            "place_nodes: radius must exceed the 1 m minimum distance",
        ));
    }
    let user_distances = (0..k).map(|_| draw_distance(radius, rng)).collect();
    let attacker_distance = draw_distance(radius, rng);
    Ok(Geometry {
        user_distances,
        attacker_distance,
        cell_radius: radius,
    })
}

/// Marks users whose small-scale amplitude strictly exceeds `threshold`.
pub fn apply_participation(g: &[Complex64], threshold: f64) -> Vec<bool> {
    g.iter().map(|gk| gk.norm() > threshold).collect()
}

/// Draws small-scale fading and assembles the block's channel realization.
///
/// `h_k = g_k · d_k^(−pathloss_exponent/2)` with `g_k ~ CN(0,1)`, so received
/// power follows the `d^(−pathloss_exponent)` law. The attacker channel uses
/// the same construction without a participation gate. Returns
/// [`Error::NoParticipants`] when no user clears `fading_threshold`.
pub fn realize_channels<R: Rng + ?Sized>(
    geom: &Geometry,
    pathloss_exponent: f64,
    fading_threshold: f64,
    rng: &mut R,
) -> Result<ChannelRealization> {
    if !(pathloss_exponent > 0.0) || !pathloss_exponent.is_finite() {
        return Err(Error::parameter(
            "realize_channels: path-loss exponent must be positive",
        ));
    }
    if !(fading_threshold >= 0.0) {
        return Err(Error::parameter(
            "realize_channels: fading threshold must be nonnegative",
        ));
    }
    let small_scale: Vec<Complex64> = geom
        .user_distances
        .iter()
        .map(|_| complex_gaussian(1.0, rng))
        .collect();
    let h: Vec<Complex64> = small_scale
        .iter()
        .zip(&geom.user_distances)
        .map(|(g, d)| g * d.powf(-pathloss_exponent / 2.0))
        .collect();
    let g_b = complex_gaussian(1.0, rng);
    let h_b = g_b * geom.attacker_distance.powf(-pathloss_exponent / 2.0);
    let beta = geom.attacker_distance.powf(-pathloss_exponent);
    let participation = apply_participation(&small_scale, fading_threshold);
    let k_active = participation.iter().filter(|&&p| p).count();
    if k_active == 0 {
        return Err(Error::NoParticipants);
    }
    Ok(ChannelRealization {
        h,
        small_scale,
        h_b,
        participation,
        k_active,
        beta,
    })
}

/// Computes the amplitude-scaling factor η for one block.
///
/// `η = √per_symbol · min over participating k of (K_active·|h_k| / peak_k)`,
/// where `peak_k = max_i |x_k[i]|` is user k's composite-signal peak. The
/// minimum guarantees that after channel inversion every participant's
/// per-symbol transmit power stays within `per_symbol`.
pub fn amplitude_scaling_factor(
    realization: &ChannelRealization,
    peak_amplitudes: &[f64],
    per_symbol: f64,
) -> Result<f64> {
    if peak_amplitudes.len() != realization.h.len() {
        return Err(Error::dimension(
            "amplitude_scaling_factor: one peak amplitude per user required",
        ));
    }
    if !(per_symbol > 0.0) || !per_symbol.is_finite() {
        return Err(Error::parameter(
            "amplitude_scaling_factor: per-symbol energy must be positive",
        ));
    }
    let k_active = realization.k_active as f64;
    let mut min_ratio = f64::INFINITY;
    for ((hk, peak), &active) in realization
        .h
        .iter()
        .zip(peak_amplitudes)
        .zip(&realization.participation)
    {
        if !active {
            continue;
        }
        if !(*peak > 0.0) || !peak.is_finite() {
            return Err(Error::parameter(
                "amplitude_scaling_factor: participant peak amplitude must be positive",
            ));
        }
        let ratio = k_active * hk.norm() / peak;
        if ratio < min_ratio {
            min_ratio = ratio;
        }
    }
    if !min_ratio.is_finite() {
        return Err(Error::NoParticipants);
    }
    Ok(per_symbol.sqrt() * min_ratio)
}
