//! Experiment operations built on the trial pipeline: ROC curves,
//! detection/communication trade-off curves, energy histograms, and
//! closed-form moment validation.

use crate::detector::{calibrate_threshold, theoretical_moments, Hypothesis};
use crate::error::{Error, Result};
use crate::experiments::config::{SystemConfig, DUMMY_VARIANCE};
use crate::experiments::stats::{mean_and_stderr, overlap_coefficient, proportion_stderr};
use crate::experiments::trial::{run_trials, TrialRecord};
use crate::schemes::SchemeKind;

/// One point of an empirical receiver operating characteristic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    /// Empirical false-alarm probability at this threshold.
    pub pf: f64,
    /// Empirical detection probability at this threshold.
    pub pd: f64,
    /// Decision threshold in units of the per-block noise level σ̃², i.e.
    /// the energy threshold a block with σ̃² = 1 would use.
    pub threshold: f64,
}

/// A full ROC sweep for one scheme and dummy ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub scheme: SchemeKind,
    pub delta: f64,
    /// Staircase points sorted by `pf` nondecreasing, endpoints included.
    pub points: Vec<RocPoint>,
    /// Trapezoidal area under the staircase.
    pub auc: f64,
}

/// How the trade-off experiment picks its decision threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdCalibration {
    /// Closed-form threshold from the no-attack energy law at `target_pf`,
    /// applied per block — the deployable detector.
    Analytic,
    /// Threshold estimated from the empirical quantile of extra
    /// no-attack trials — a Monte Carlo cross-check of the analytic rule.
    EmpiricalH0,
}

/// One point of the detection-versus-overhead trade-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffPoint {
    pub scheme: SchemeKind,
    pub delta: f64,
    /// Added channel uses as a fraction of the data length, `D/L`.
    pub overhead_fraction: f64,
    pub target_pf: f64,
    /// Empirical detection probability at the calibrated threshold.
    pub pd: f64,
    /// Binomial standard error of `pd`.
    pub pd_stderr: f64,
}

/// One bin of the paired H0/H1 energy histograms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistBin {
    /// Inclusive left edge in raw energy units.
    pub left: f64,
    /// Right edge in raw energy units (exclusive except for the last bin).
    pub right: f64,
    pub h0_count: u64,
    pub h1_count: u64,
}

/// Binned detection-energy distributions under both hypotheses.
#[derive(Debug, Clone, PartialEq)]
pub struct HistogramReport {
    pub scheme: SchemeKind,
    pub delta: f64,
    /// Contiguous bins, equal widths in log-energy, spanning the pooled
    /// sample range.
    pub bins: Vec<HistBin>,
    /// Shared-area fraction of the two normalised histograms in [0, 1];
    /// smaller means the hypotheses are easier to tell apart.
    pub overlap: f64,
    /// Trials behind each histogram: (H0 count, H1 count).
    pub trials_per_hypothesis: (u64, u64),
}

/// One validated moment: a closed-form prediction against its Monte Carlo
/// estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub scheme: SchemeKind,
    /// Which moment this row checks: `mean_h0`, `var_h0`, `mean_h1`,
    /// `var_h1`.
    pub moment: &'static str,
    /// Closed-form value averaged over the per-trial parameters.
    pub theory: f64,
    /// Monte Carlo estimate of the same average.
    pub empirical: f64,
    /// Standard error of the paired difference `empirical − theory`.
    pub stderr: f64,
    /// True when the difference is within 3 standard errors of zero.
    pub pass: bool,
}

/// Full moment-validation report for one config.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentReport {
    pub scheme: SchemeKind,
    pub delta: f64,
    pub rows: Vec<MomentRow>,
    pub all_pass: bool,
}

/// Number of histogram bins.
pub const HIST_BINS: usize = 64;

fn normalized(records: &[TrialRecord]) -> Vec<f64> {
    records
        .iter()
        .map(|r| r.statistic / r.sigma_tilde2)
        .collect()
}

fn sort_unstable(values: &mut [f64]) {
    values.sort_unstable_by(|a, b| a.partial_cmp(b).expect("statistics must not be NaN"));
}

/// Fraction of (ascending-sorted) values strictly above `q`.
fn fraction_above(sorted: &[f64], q: f64) -> f64 {
    let first_above = sorted.partition_point(|&t| t <= q);
    (sorted.len() - first_above) as f64 / sorted.len() as f64
}

fn trapezoid_area(points: &[RocPoint]) -> f64 {
    points
        .windows(2)
        .map(|w| (w[1].pf - w[0].pf) * (w[1].pd + w[0].pd) * 0.5)
        .sum()
}

/// Sweeps the detector threshold over pooled Monte Carlo statistics.
///
/// Runs `trials/2` blocks without the attack and the remaining blocks with
/// it (disjoint block ranges), normalises each block's energy by its own
/// σ̃² so one threshold applies across blocks, and returns the empirical
/// (P_F, P_D) staircase with both extreme points attached.
pub fn roc_curve(config: &SystemConfig) -> Result<RocCurve> {
    config.validate()?;
    if config.trials < 1_000 {
        return Err(Error::parameter(
            "roc_curve: at least 1000 trials are required for a meaningful sweep",
        ));
    }
    let n0 = config.trials / 2;
    let h0 = run_trials(config, Hypothesis::H0, 0..n0)?;
    let h1 = run_trials(config, Hypothesis::H1, n0..config.trials)?;

    let mut t0 = normalized(&h0);
    let mut t1 = normalized(&h1);
    sort_unstable(&mut t0);
    sort_unstable(&mut t1);

    let mut pooled: Vec<f64> = t0.iter().chain(t1.iter()).copied().collect();
    sort_unstable(&mut pooled);
    pooled.dedup();

    let mut points = Vec::with_capacity(pooled.len() + 2);
    points.push(RocPoint {
        pf: 0.0,
        pd: 0.0,
        threshold: f64::INFINITY,
    });
    for &q in pooled.iter().rev() {
        points.push(RocPoint {
            pf: fraction_above(&t0, q),
            pd: fraction_above(&t1, q),
            threshold: q,
        });
    }
    points.push(RocPoint {
        pf: 1.0,
        pd: 1.0,
        threshold: 0.0,
    });

    let auc = trapezoid_area(&points);
    Ok(RocCurve {
        scheme: config.scheme,
        delta: config.delta,
        points,
        auc,
    })
}

/// Highest threshold (in σ̃² units) whose empirical false-alarm rate over
/// the given no-attack records does not exceed `target_pf`.
fn empirical_unit_threshold(h0: &[TrialRecord], target_pf: f64) -> f64 {
    let mut t0 = normalized(h0);
    sort_unstable(&mut t0);
    let allowed = (target_pf * t0.len() as f64).floor() as usize;
    if allowed >= t0.len() {
        0.0
    } else {
        // The (allowed+1)-th largest value: exactly `allowed` samples lie
        // strictly above it (ties only lower the false-alarm rate further).
        t0[t0.len() - 1 - allowed]
    }
}

/// Detection probability against communication overhead, one point per δ.
pub fn tradeoff_curve(config: &SystemConfig, delta_list: &[f64]) -> Result<Vec<TradeoffPoint>> {
    tradeoff_curve_with(config, delta_list, ThresholdCalibration::Analytic)
}

/// [`tradeoff_curve`] with an explicit threshold-calibration rule.
pub fn tradeoff_curve_with(
    config: &SystemConfig,
    delta_list: &[f64],
    calibration: ThresholdCalibration,
) -> Result<Vec<TradeoffPoint>> {
    if delta_list.is_empty() {
        return Err(Error::parameter("tradeoff_curve: empty delta list"));
    }
    let mut points = Vec::with_capacity(delta_list.len());
    for &delta in delta_list {
        let cfg = SystemConfig {
            delta,
            ..config.clone()
        };
        cfg.validate()?;
        let d = cfg.d();

        let h1 = run_trials(&cfg, Hypothesis::H1, 0..cfg.trials)?;
        let unit_threshold = match calibration {
            // The calibrated threshold is exactly linear in σ̃², so one
            // unit-scale quantile serves every block.
            ThresholdCalibration::Analytic => calibrate_threshold(1.0, d, cfg.target_pf)?,
            ThresholdCalibration::EmpiricalH0 => {
                let h0 = run_trials(&cfg, Hypothesis::H0, 0..cfg.trials)?;
                empirical_unit_threshold(&h0, cfg.target_pf)
            }
        };
        let alarms = h1
            .iter()
            .filter(|r| r.statistic > unit_threshold * r.sigma_tilde2)
            .count();
        let pd = alarms as f64 / h1.len() as f64;
        points.push(TradeoffPoint {
            scheme: cfg.scheme,
            delta,
            overhead_fraction: d as f64 / cfg.l as f64,
            target_pf: cfg.target_pf,
            pd,
            pd_stderr: proportion_stderr(pd, h1.len() as u64),
        });
    }
    Ok(points)
}

/// Bins the detection energies under both hypotheses on one log-spaced grid.
pub fn histogram_export(config: &SystemConfig) -> Result<HistogramReport> {
    config.validate()?;
    if config.trials < 10_000 {
        return Err(Error::parameter(
            "histogram_export: at least 10^4 trials are required for stable bins",
        ));
    }
    let n0 = config.trials / 2;
    let h0 = run_trials(config, Hypothesis::H0, 0..n0)?;
    let h1 = run_trials(config, Hypothesis::H1, n0..config.trials)?;

    let s0: Vec<f64> = h0.iter().map(|r| r.statistic).collect();
    let s1: Vec<f64> = h1.iter().map(|r| r.statistic).collect();
    if s0.iter().chain(&s1).any(|&s| !(s > 0.0)) {
        return Err(Error::parameter(
            "histogram_export: energies must be positive for log-spaced bins",
        ));
    }

    let log_min = s0
        .iter()
        .chain(&s1)
        .map(|s| s.log10())
        .fold(f64::INFINITY, f64::min);
    let log_max = s0
        .iter()
        .chain(&s1)
        .map(|s| s.log10())
        .fold(f64::NEG_INFINITY, f64::max);
    // Degenerate spread still gets a well-formed single-decade grid.
    let log_max = if log_max > log_min {
        log_max
    } else {
        log_min + 1.0
    };
    let width = (log_max - log_min) / HIST_BINS as f64;

    let mut counts0 = vec![0u64; HIST_BINS];
    let mut counts1 = vec![0u64; HIST_BINS];
    let bin_of = |s: f64| -> usize {
        let idx = ((s.log10() - log_min) / width).floor() as isize;
        idx.clamp(0, HIST_BINS as isize - 1) as usize
    };
    for &s in &s0 {
        counts0[bin_of(s)] += 1;
    }
    for &s in &s1 {
        counts1[bin_of(s)] += 1;
    }

    let edges: Vec<f64> = (0..=HIST_BINS)
        .map(|i| 10f64.powf(log_min + i as f64 * width))
        .collect();
    let bins = (0..HIST_BINS)
        .map(|i| HistBin {
            left: edges[i],
            right: edges[i + 1],
            h0_count: counts0[i],
            h1_count: counts1[i],
        })
        .collect();

    Ok(HistogramReport {
        scheme: config.scheme,
        delta: config.delta,
        bins,
        overlap: overlap_coefficient(&counts0, &counts1),
        trials_per_hypothesis: (s0.len() as u64, s1.len() as u64),
    })
}

/// Per-coordinate dummy-averaging noise the closed forms expect for this
/// scheme: `σ_d²/K_active` for the uncorrelated design, zero for the
/// correlated one (its dummies are exact zeros).
fn dummy_leak(scheme: SchemeKind, record: &TrialRecord) -> f64 {
    match scheme {
        SchemeKind::Uncorrelated => DUMMY_VARIANCE / record.k_active as f64,
        SchemeKind::Correlated => 0.0,
    }
}

/// Builds the four moment rows from already-run trial records.
///
/// Each trial contributes a paired difference between its statistic (or
/// squared centred statistic) and the closed-form value at that trial's own
/// (η, β, σ̃²); a row passes when the mean difference is within 3 standard
/// errors of zero.
pub(crate) fn moment_rows_from_records(
    config: &SystemConfig,
    h0: &[TrialRecord],
    h1: &[TrialRecord],
) -> Result<Vec<MomentRow>> {
    let d = config.d();
    let sigma2 = config.noise_watts();
    let stats_for = |r: &TrialRecord| {
        theoretical_moments(sigma2, r.eta, r.beta, d, dummy_leak(config.scheme, r))
    };

    let mut rows = Vec::with_capacity(4);
    let arms: [(&str, &str, &[TrialRecord]); 2] =
        [("mean_h0", "var_h0", h0), ("mean_h1", "var_h1", h1)];
    for (mean_name, var_name, records) in arms {
        let mut mean_theory = Vec::with_capacity(records.len());
        let mut var_theory = Vec::with_capacity(records.len());
        let mut mean_obs = Vec::with_capacity(records.len());
        let mut var_obs = Vec::with_capacity(records.len());
        for r in records {
            let st = stats_for(r)?;
            let (m, v) = if mean_name == "mean_h0" {
                (st.mean_h0, st.var_h0)
            } else {
                (st.mean_h1, st.var_h1)
            };
            mean_theory.push(m);
            var_theory.push(v);
            mean_obs.push(r.statistic);
            var_obs.push((r.statistic - m) * (r.statistic - m));
        }
        for (name, theory, obs) in [
            (mean_name, &mean_theory, &mean_obs),
            (var_name, &var_theory, &var_obs),
        ] {
            let diffs: Vec<f64> = obs.iter().zip(theory).map(|(o, t)| o - t).collect();
            let (dmean, dse) = mean_and_stderr(&diffs);
            rows.push(MomentRow {
                scheme: config.scheme,
                moment: name,
                theory: mean_and_stderr(theory).0,
                empirical: mean_and_stderr(obs).0,
                stderr: dse,
                pass: dmean.abs() <= 3.0 * dse,
            });
        }
    }
    Ok(rows)
}

/// Compares Monte Carlo energy moments against the closed forms.
///
/// Runs `trials/2` blocks per hypothesis and checks all four moments with
/// the per-trial paired design described on
/// [`moment_rows_from_records`].
pub fn validate_moments(config: &SystemConfig) -> Result<MomentReport> {
    config.validate()?;
    if config.trials < 4 {
        return Err(Error::parameter(
            "validate_moments: at least 4 trials are required (2 per hypothesis)",
        ));
    }
    let n0 = config.trials / 2;
    let h0 = run_trials(config, Hypothesis::H0, 0..n0)?;
    let h1 = run_trials(config, Hypothesis::H1, n0..config.trials)?;
    let rows = moment_rows_from_records(config, &h0, &h1)?;
    let all_pass = rows.iter().all(|r| r.pass);
    Ok(MomentReport {
        scheme: config.scheme,
        delta: config.delta,
        rows,
        all_pass,
    })
}
