//! CSV renderers for the experiment artifacts. All files carry a header
//! row, UTF-8 text, and LF line endings; floats use Rust's shortest
//! round-trip decimal form.

use crate::experiments::analysis::{HistogramReport, MomentReport, RocCurve, TradeoffPoint};
use crate::experiments::trial::TrialRecord;

/// `roc.csv`: one row per staircase point, curves concatenated.
pub fn render_roc_csv(curves: &[RocCurve]) -> String {
    let mut out = String::from("scheme,delta,threshold,pf,pd\n");
    for curve in curves {
        for p in &curve.points {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                curve.scheme.as_str(),
                curve.delta,
                p.threshold,
                p.pf,
                p.pd
            ));
        }
    }
    out
}

/// `tradeoff.csv`: one row per (scheme, δ) operating point.
pub fn render_tradeoff_csv(points: &[TradeoffPoint]) -> String {
    let mut out = String::from("scheme,delta,overhead_fraction,target_pf,pd,pd_stderr\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            p.scheme.as_str(),
            p.delta,
            p.overhead_fraction,
            p.target_pf,
            p.pd,
            p.pd_stderr
        ));
    }
    out
}

/// `hist.csv`: H0 rows then H1 rows per report, zero-count bins included.
pub fn render_hist_csv(reports: &[HistogramReport]) -> String {
    let mut out = String::from("scheme,hypothesis,bin_left,bin_right,count\n");
    for report in reports {
        for hypothesis in ["H0", "H1"] {
            for bin in &report.bins {
                let count = if hypothesis == "H0" {
                    bin.h0_count
                } else {
                    bin.h1_count
                };
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    report.scheme.as_str(),
                    hypothesis,
                    bin.left,
                    bin.right,
                    count
                ));
            }
        }
    }
    out
}

/// `moments.csv`: four rows per validated config.
pub fn render_moments_csv(reports: &[MomentReport]) -> String {
    let mut out = String::from("scheme,moment,theory,empirical,stderr,pass\n");
    for report in reports {
        for row in &report.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.scheme.as_str(),
                row.moment,
                row.theory,
                row.empirical,
                row.stderr,
                row.pass
            ));
        }
    }
    out
}

/// `trials.csv`: the raw per-block records behind an experiment.
pub fn render_trials_csv(records: &[TrialRecord]) -> String {
    let mut out = String::from("block_index,hypothesis,statistic,eta,beta,k_active\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.block_index,
            r.hypothesis.as_str(),
            r.statistic,
            r.eta,
            r.beta,
            r.k_active
        ));
    }
    out
}
