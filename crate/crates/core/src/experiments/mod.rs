//! Monte Carlo experiment harness.
//!
//! Builds full system simulations out of the domain modules and exposes the
//! headline experiments — ROC curves, detection/overhead trade-offs, energy
//! histograms, and closed-form moment validation — together with their CSV
//! renderers and the flat config-file format. Every output is a pure
//! function of [`SystemConfig`], seed included.

mod analysis;
mod config;
mod csv;
pub mod stats;
mod trial;

pub use analysis::{
    histogram_export, roc_curve, tradeoff_curve, tradeoff_curve_with, validate_moments, HistBin,
    HistogramReport, MomentReport, MomentRow, RocCurve, RocPoint, ThresholdCalibration,
    TradeoffPoint, HIST_BINS,
};
pub use config::{parse_config_text, SystemConfig, DATA_VARIANCE, DUMMY_VARIANCE};
pub use csv::{
    render_hist_csv, render_moments_csv, render_roc_csv, render_trials_csv, render_tradeoff_csv,
};
pub use trial::{run_trial, run_trials, TrialRecord};
