//! Command-line front end for the attack-detection experiment suite.
//!
//! Subcommands map one-to-one onto the library's experiment operations and
//! write their CSV artifacts into `--out`. Exit codes: 0 on success, 2 for
//! configuration problems, 3 when a moment-validation check fails.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ota_detect::detector::Hypothesis;
use ota_detect::experiments::{
    histogram_export, parse_config_text, render_hist_csv, render_moments_csv, render_roc_csv,
    render_tradeoff_csv, render_trials_csv, roc_curve, run_trials, tradeoff_curve,
    validate_moments, SystemConfig, TrialRecord,
};
use ota_detect::schemes::SchemeKind;

const EXIT_CONFIG_ERROR: u8 = 2;
const EXIT_VALIDATION_FAILURE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ota-detect",
    version,
    about = "Monte Carlo experiments for detecting active attacks on over-the-air computation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat `key = value` config file applied before any flags.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Total Monte Carlo trials per experiment operation.
    #[arg(long, global = true, value_name = "N")]
    trials: Option<u64>,

    /// Root seed for all random streams.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Directory the CSV artifacts are written into.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,

    /// Dummy-sample design; omit to run both designs.
    #[arg(long, global = true, value_name = "correlated|uncorrelated")]
    scheme: Option<String>,

    /// Dummy ratio δ = D/L; comma-separate to sweep several values.
    #[arg(long, global = true, value_name = "FLOAT[,FLOAT...]")]
    delta: Option<String>,

    /// Attacker behaviour.
    #[arg(long, global = true, value_name = "none|gaussian|idle|scaled")]
    attack: Option<String>,

    /// Factor on the attacker's per-symbol power budget.
    #[arg(long = "power-scale", global = true, value_name = "FLOAT")]
    power_scale: Option<f64>,

    /// Factor on the legitimate users' power budget only.
    #[arg(long = "legit-power-factor", global = true, value_name = "FLOAT")]
    legit_power_factor: Option<f64>,

    /// Also write trials.csv with the raw per-block records.
    #[arg(long = "dump-trials", global = true)]
    dump_trials: bool,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Receiver-operating-characteristic sweep → roc.csv.
    Roc,
    /// Detection probability vs. communication overhead → tradeoff.csv.
    Tradeoff,
    /// Detection-energy histograms under H0 and H1 → hist.csv.
    Hist,
    /// Monte Carlo check of the closed-form energy moments → moments.csv.
    #[command(name = "validate-moments")]
    ValidateMoments,
}

type CliResult<T> = Result<T, String>;

/// Everything a subcommand needs: the resolved base config, the designs to
/// run, and the δ values to sweep.
struct Resolved {
    config: SystemConfig,
    schemes: Vec<SchemeKind>,
    deltas: Vec<f64>,
}

fn parse_delta_list(text: &str) -> CliResult<Vec<f64>> {
    let deltas: Vec<f64> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid delta value {:?}", part.trim()))
        })
        .collect::<CliResult<_>>()?;
    if deltas.is_empty() {
        return Err("empty delta list".into());
    }
    for &d in &deltas {
        if !d.is_finite() || d <= 0.0 {
            return Err(format!("delta must be positive and finite, got {d}"));
        }
    }
    Ok(deltas)
}

/// Builds the run configuration: library defaults, then the config file,
/// then command-line flags.
fn resolve(cli: &Cli) -> CliResult<Resolved> {
    let mut config = SystemConfig::default();
    let mut scheme_chosen = false;

    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let pairs = parse_config_text(&text).map_err(|e| e.to_string())?;
        for (key, value) in &pairs {
            if key == "scheme" {
                scheme_chosen = true;
            }
            config
                .set_key(key, value)
                .map_err(|e| format!("{}: {e}", path.display()))?;
        }
    }

    if let Some(trials) = cli.trials {
        config.trials = trials;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(scheme) = &cli.scheme {
        config.scheme = scheme.parse().map_err(|e| format!("{e}"))?;
        scheme_chosen = true;
    }
    if let Some(attack) = &cli.attack {
        config.attack.kind = attack.parse().map_err(|e| format!("{e}"))?;
    }
    if let Some(scale) = cli.power_scale {
        config.attack.power_scale = scale;
    }
    if let Some(factor) = cli.legit_power_factor {
        config.legit_power_factor = factor;
    }

    let deltas = match &cli.delta {
        Some(text) => parse_delta_list(text)?,
        None => vec![config.delta],
    };

    let schemes = if scheme_chosen {
        vec![config.scheme]
    } else {
        vec![SchemeKind::Correlated, SchemeKind::Uncorrelated]
    };

    Ok(Resolved {
        config,
        schemes,
        deltas,
    })
}

fn single_delta(deltas: &[f64], command: &str) -> CliResult<f64> {
    match deltas {
        [delta] => Ok(*delta),
        _ => Err(format!(
            "{command} writes one file per run and takes exactly one delta; \
             got {} values",
            deltas.len()
        )),
    }
}

fn write_artifact(out_dir: &Path, name: &str, content: &str) -> CliResult<PathBuf> {
    let path = out_dir.join(name);
    std::fs::write(&path, content).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    Ok(path)
}

/// Re-derives the per-block records an operation consumed. Streams are
/// keyed by (seed, block), so this reproduces them bit for bit.
fn dump_records(
    config: &SystemConfig,
    schemes: &[SchemeKind],
    deltas: &[f64],
    split_arms: bool,
) -> CliResult<Vec<TrialRecord>> {
    let mut records = Vec::new();
    for &scheme in schemes {
        for &delta in deltas {
            let cfg = SystemConfig {
                scheme,
                delta,
                ..config.clone()
            };
            if split_arms {
                let n0 = cfg.trials / 2;
                records.extend(
                    run_trials(&cfg, Hypothesis::H0, 0..n0).map_err(|e| e.to_string())?,
                );
                records.extend(
                    run_trials(&cfg, Hypothesis::H1, n0..cfg.trials)
                        .map_err(|e| e.to_string())?,
                );
            } else {
                records.extend(
                    run_trials(&cfg, Hypothesis::H1, 0..cfg.trials).map_err(|e| e.to_string())?,
                );
            }
        }
    }
    Ok(records)
}

fn try_run(cli: &Cli) -> CliResult<u8> {
    let Resolved {
        config,
        schemes,
        deltas,
    } = resolve(cli)?;

    std::fs::create_dir_all(&cli.out)
        .map_err(|e| format!("cannot create output directory {}: {e}", cli.out.display()))?;

    let mut exit = 0u8;
    match cli.command {
        Command::Roc => {
            let mut curves = Vec::new();
            for &scheme in &schemes {
                for &delta in &deltas {
                    let cfg = SystemConfig {
                        scheme,
                        delta,
                        ..config.clone()
                    };
                    let curve = roc_curve(&cfg).map_err(|e| e.to_string())?;
                    println!(
                        "roc: scheme={} delta={} auc={:.4}",
                        scheme.as_str(),
                        delta,
                        curve.auc
                    );
                    curves.push(curve);
                }
            }
            let path = write_artifact(&cli.out, "roc.csv", &render_roc_csv(&curves))?;
            println!("wrote {}", path.display());
        }
        Command::Tradeoff => {
            let mut points = Vec::new();
            for &scheme in &schemes {
                let cfg = SystemConfig {
                    scheme,
                    ..config.clone()
                };
                let scheme_points =
                    tradeoff_curve(&cfg, &deltas).map_err(|e| e.to_string())?;
                for p in &scheme_points {
                    println!(
                        "tradeoff: scheme={} delta={} overhead={} pd={:.4}±{:.4}",
                        scheme.as_str(),
                        p.delta,
                        p.overhead_fraction,
                        p.pd,
                        p.pd_stderr
                    );
                }
                points.extend(scheme_points);
            }
            let path = write_artifact(&cli.out, "tradeoff.csv", &render_tradeoff_csv(&points))?;
            println!("wrote {}", path.display());
        }
        Command::Hist => {
            let delta = single_delta(&deltas, "hist")?;
            let mut reports = Vec::new();
            for &scheme in &schemes {
                let cfg = SystemConfig {
                    scheme,
                    delta,
                    ..config.clone()
                };
                let report = histogram_export(&cfg).map_err(|e| e.to_string())?;
                println!(
                    "hist: scheme={} delta={} overlap={:.4}",
                    scheme.as_str(),
                    delta,
                    report.overlap
                );
                reports.push(report);
            }
            let path = write_artifact(&cli.out, "hist.csv", &render_hist_csv(&reports))?;
            println!("wrote {}", path.display());
        }
        Command::ValidateMoments => {
            let delta = single_delta(&deltas, "validate-moments")?;
            let mut reports = Vec::new();
            for &scheme in &schemes {
                let cfg = SystemConfig {
                    scheme,
                    delta,
                    ..config.clone()
                };
                let report = validate_moments(&cfg).map_err(|e| e.to_string())?;
                for row in &report.rows {
                    println!(
                        "moments: scheme={} {}: theory={:e} empirical={:e} stderr={:e} {}",
                        scheme.as_str(),
                        row.moment,
                        row.theory,
                        row.empirical,
                        row.stderr,
                        if row.pass { "pass" } else { "FAIL" }
                    );
                }
                if !report.all_pass {
                    exit = EXIT_VALIDATION_FAILURE;
                }
                reports.push(report);
            }
            let path = write_artifact(&cli.out, "moments.csv", &render_moments_csv(&reports))?;
            println!("wrote {}", path.display());
        }
    }

    if cli.dump_trials {
        let split_arms = cli.command != Command::Tradeoff;
        let records = dump_records(&config, &schemes, &deltas, split_arms)?;
        let path = write_artifact(&cli.out, "trials.csv", &render_trials_csv(&records))?;
        println!("wrote {}", path.display());
    }

    Ok(exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match try_run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_CONFIG_ERROR)
        }
    }
}
