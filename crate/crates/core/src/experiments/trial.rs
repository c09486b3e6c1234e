//! One Monte Carlo trial: placement, channels, scheme construction, attack,
//! superposition, extraction, and the energy statistic.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::attack::generate_attack;
use crate::channel::{amplitude_scaling_factor, place_nodes, realize_channels};
use crate::detector::{energy_statistic, Hypothesis};
use crate::error::{Error, Result};
use crate::experiments::config::{SystemConfig, DATA_VARIANCE, DUMMY_VARIANCE};
use crate::numerics::{sample_complex_gaussian, ComplexMatrix, RngStream};
use crate::ota::{precode, superpose, ReceivedBlock, TransmitBlock};
use crate::schemes::{build_correlated, build_uncorrelated, extract_detection_vector, SchemeKind};

/// Outcome of one simulated block.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    /// Which block of the experiment this is; also keys the random streams.
    pub block_index: u64,
    /// World the block was simulated under.
    pub hypothesis: Hypothesis,
    /// Detection-window energy `‖y_d‖²`.
    pub statistic: f64,
    /// Amplitude scaling factor η used by the power control.
    pub eta: f64,
    /// Average received attack power per symbol applied in this block (path
    /// gain × per-symbol attack power). Zero under H0 and whenever the
    /// attack carries no energy; idle's zeroed positions are not discounted.
    pub beta: f64,
    /// Users that passed the fading gate this block.
    pub k_active: usize,
    /// Per-coordinate noise variance of the detection window under no attack.
    pub sigma_tilde2: f64,
    /// How many whole-system redraws were needed before any user
    /// participated.
    pub redraws: u32,
}

// Stream-purpose tags. Each (purpose, redraw attempt, block index) triple
// names an independent random stream, so trials are reproducible in any
// execution order. The hypothesis is deliberately NOT part of the stream
// name: an H1 block differs from its H0 twin only by the added attack.
const PURPOSE_GEOMETRY: u64 = 0;
const PURPOSE_CHANNEL: u64 = 1;
const PURPOSE_DATA: u64 = 2;
const PURPOSE_SHARED_SECRET: u64 = 3;
const PURPOSE_ATTACK: u64 = 4;
const PURPOSE_NOISE: u64 = 5;

const ATTEMPT_BITS: u32 = 8;
const BLOCK_BITS: u32 = 52;
const MAX_ATTEMPTS: u64 = (1 << ATTEMPT_BITS) - 1;

fn stream_id(purpose: u64, attempt: u64, block_index: u64) -> u64 {
    debug_assert!(purpose < 16 && attempt <= MAX_ATTEMPTS && block_index < (1 << BLOCK_BITS));
    (purpose << (ATTEMPT_BITS + BLOCK_BITS)) | (attempt << BLOCK_BITS) | block_index
}

fn stream(config: &SystemConfig, purpose: u64, attempt: u64, block_index: u64) -> RngStream {
    RngStream::new(config.seed, stream_id(purpose, attempt, block_index))
}

/// Runs one full pipeline pass and returns its record.
///
/// Deterministic given `(config.seed, block_index, hypothesis)`. Blocks in
/// which no user passes the fading gate are redrawn from scratch under the
/// next attempt substream, with the redraw count logged in the record.
pub fn run_trial(
    config: &SystemConfig,
    hypothesis: Hypothesis,
    block_index: u64,
) -> Result<TrialRecord> {
    config.validate()?;
    if block_index >= (1 << BLOCK_BITS) {
        return Err(Error::parameter(format!(
            "run_trial: block index {block_index} exceeds the stream-id capacity"
        )));
    }

    let (l, d, k) = (config.l, config.d(), config.k);
    let n = l + d;
    let noise_variance = config.noise_watts();

    for attempt in 0..=MAX_ATTEMPTS {
        let mut geometry_rng = stream(config, PURPOSE_GEOMETRY, attempt, block_index);
        let geometry = place_nodes(k, config.radius, &mut geometry_rng)?;

        let mut channel_rng = stream(config, PURPOSE_CHANNEL, attempt, block_index);
        let realization = match realize_channels(
            &geometry,
            config.pathloss_exponent,
            config.fading_threshold,
            &mut channel_rng,
        ) {
            Ok(r) => r,
            Err(Error::NoParticipants) => continue,
            Err(e) => return Err(e),
        };

        // Authentic data: unit-variance complex Gaussians, one column per
        // user, drawn for all users so the stream layout does not depend on
        // who participates.
        let mut data_rng = stream(config, PURPOSE_DATA, attempt, block_index);
        let mut data = ComplexMatrix::zeros(l, k);
        for user in 0..k {
            let column = sample_complex_gaussian(l, DATA_VARIANCE, &mut data_rng)?;
            data.column_mut(user).copy_from_slice(&column);
        }

        let mut shared_rng = stream(config, PURPOSE_SHARED_SECRET, attempt, block_index);
        let composite = match config.scheme {
            SchemeKind::Uncorrelated => {
                build_uncorrelated(&data, d, DUMMY_VARIANCE, &mut shared_rng, &mut data_rng)?
            }
            SchemeKind::Correlated => build_correlated(&data, d, &mut shared_rng)?,
        };

        let transmit = composite.transmit_columns(&realization.participation)?;

        // Peak amplitude of each user's composite block, indexed by user
        // (zero for the silent ones), feeds the power control.
        let active_peaks = transmit.column_peaks();
        let mut peaks = vec![0.0; k];
        let mut next_active = 0;
        for (user, &participates) in realization.participation.iter().enumerate() {
            if participates {
                peaks[user] = active_peaks[next_active];
                next_active += 1;
            }
        }

        let per_symbol = config
            .scheme
            .per_symbol_power(config.legit_p0(), l, d);
        let eta = amplitude_scaling_factor(&realization, &peaks, per_symbol)?;

        let attacking = hypothesis == Hypothesis::H1 && config.attack.is_active();
        let attacker_signal = if attacking {
            let mut attack_rng = stream(config, PURPOSE_ATTACK, attempt, block_index);
            generate_attack(
                &config.attack,
                n,
                config.p0,
                Some(&composite.dummy_indices),
                &mut attack_rng,
            )?
        } else {
            vec![Complex64::new(0.0, 0.0); n]
        };

        let mut columns = Vec::with_capacity(realization.k_active);
        for (user, &participates) in realization.participation.iter().enumerate() {
            if participates {
                columns.push(precode(
                    transmit.column(columns.len()),
                    realization.h[user],
                    eta,
                    realization.k_active,
                )?);
            }
        }
        let block = TransmitBlock {
            signals: ComplexMatrix::from_columns(&columns)?,
            attacker_signal,
        };

        let mut noise_rng = stream(config, PURPOSE_NOISE, attempt, block_index);
        let y_raw = superpose(&block, &realization, noise_variance, &mut noise_rng)?;
        let received = ReceivedBlock::assemble(y_raw, eta)?;

        let detection =
            extract_detection_vector(&received, &composite, realization.k_active, noise_variance)?;
        let statistic = energy_statistic(&detection.y_d)?;

        let beta = if attacking {
            realization.beta * config.p0 * config.attack.power_scale
        } else {
            0.0
        };

        return Ok(TrialRecord {
            block_index,
            hypothesis,
            statistic,
            eta,
            beta,
            k_active: realization.k_active,
            sigma_tilde2: detection.effective_noise_variance,
            redraws: attempt as u32,
        });
    }
    Err(Error::NoParticipants)
}

/// Runs the half-open block range in parallel, preserving block order.
///
/// Every trial derives its streams from `(seed, block_index)`, so the
/// schedule cannot affect any record and the result equals a serial loop.
pub fn run_trials(
    config: &SystemConfig,
    hypothesis: Hypothesis,
    blocks: std::ops::Range<u64>,
) -> Result<Vec<TrialRecord>> {
    config.validate()?;
    blocks
        .into_par_iter()
        .map(|block_index| run_trial(config, hypothesis, block_index))
        .collect()
}
