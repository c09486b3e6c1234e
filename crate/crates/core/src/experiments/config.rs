//! Experiment configuration: parameter set, defaults, validation, and the
//! flat `key = value` config-file format.

use std::str::FromStr;

use crate::attack::AttackStrategy;
use crate::error::{Error, Result};
use crate::schemes::SchemeKind;

/// Variance of each user's authentic data samples (unit-power source).
pub const DATA_VARIANCE: f64 = 1.0;

/// Variance of the uncorrelated design's random dummy samples. Dummies copy
/// the data statistics so an observer cannot tell the populations apart.
pub const DUMMY_VARIANCE: f64 = DATA_VARIANCE;

/// Full parameter set for one experiment run.
///
/// Every Monte Carlo output is a pure function of this struct (the seed
/// included), so a run is reproducible from its config alone.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemConfig {
    /// Number of legitimate users.
    pub k: usize,
    /// Authentic data samples per block.
    pub l: usize,
    /// Dummy-sample ratio δ = D/L; the block carries `D = round(δ·L)` dummies.
    pub delta: f64,
    /// Total power budget per user in watts.
    pub p0: f64,
    /// Channel noise level in dBm.
    pub noise_dbm: f64,
    /// Cell radius in metres; users fall inside this disk around the server.
    pub radius: f64,
    /// Minimum small-scale fading magnitude for a user to participate.
    pub fading_threshold: f64,
    /// Large-scale path-loss exponent α in d^{-α}.
    pub pathloss_exponent: f64,
    /// Which dummy-sample design the users run.
    pub scheme: SchemeKind,
    /// Attacker behaviour during the block.
    pub attack: AttackStrategy,
    /// Total Monte Carlo trials for one experiment operation.
    pub trials: u64,
    /// Root seed for all random streams.
    pub seed: u64,
    /// Target false-alarm probability for threshold calibration.
    pub target_pf: f64,
    /// Factor applied to the legitimate users' power budget only (the
    /// attacker's budget stays at `p0`).
    pub legit_power_factor: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            k: 100,
            l: 1000,
            delta: 0.01,
            p0: 1e-3,
            noise_dbm: -110.0,
            radius: 100.0,
            fading_threshold: 0.2,
            pathloss_exponent: 4.0,
            scheme: SchemeKind::Correlated,
            attack: AttackStrategy::gaussian_uniform(),
            trials: 100_000,
            seed: 0,
            target_pf: 0.01,
            legit_power_factor: 1.0,
        }
    }
}

impl SystemConfig {
    /// Number of dummy samples, `D = round(δ·L)`.
    pub fn d(&self) -> usize {
        (self.delta * self.l as f64).round() as usize
    }

    /// Block length `n = L + D`.
    pub fn block_len(&self) -> usize {
        self.l + self.d()
    }

    /// Channel noise variance in watts: `10^((dBm − 30)/10)`.
    pub fn noise_watts(&self) -> f64 {
        10f64.powf((self.noise_dbm - 30.0) / 10.0)
    }

    /// Power budget the legitimate users actually spend.
    pub fn legit_p0(&self) -> f64 {
        self.p0 * self.legit_power_factor
    }

    /// Rejects configs that cannot drive a detection experiment.
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("K must be at least 1"));
        }
        if self.l == 0 {
            return Err(Error::config("L must be at least 1"));
        }
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(Error::config("delta must be finite and nonnegative"));
        }
        if self.d() == 0 {
            return Err(Error::config(
                "delta too small: D = round(delta * L) must be at least 1",
            ));
        }
        for (name, value) in [
            ("P0", self.p0),
            ("radius", self.radius),
            ("pathloss_exponent", self.pathloss_exponent),
            ("legit_power_factor", self.legit_power_factor),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::config(format!("{name} must be positive, got {value}")));
            }
        }
        if !self.noise_dbm.is_finite() {
            return Err(Error::config("noise_dbm must be finite"));
        }
        if self.radius <= crate::channel::MIN_DISTANCE {
            return Err(Error::config(format!(
                "radius must exceed the {} m minimum node distance",
                crate::channel::MIN_DISTANCE
            )));
        }
        if !self.fading_threshold.is_finite() || self.fading_threshold < 0.0 {
            return Err(Error::config("fading_threshold must be nonnegative"));
        }
        if !(self.target_pf > 0.0 && self.target_pf < 1.0) {
            return Err(Error::config("target_pf must lie strictly inside (0, 1)"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        if !self.attack.power_scale.is_finite() || self.attack.power_scale < 0.0 {
            return Err(Error::config("power_scale must be finite and nonnegative"));
        }
        Ok(())
    }

    /// Applies one config-file or CLI key to the matching field.
    ///
    /// Keys use the canonical field names: `K`, `L`, `delta`, `P0`,
    /// `noise_dbm`, `radius`, `fading_threshold`, `pathloss_exponent`,
    /// `scheme`, `attack`, `power_scale`, `trials`, `seed`, `target_pf`,
    /// `legit_power_factor`.
    pub fn set_key(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value.parse().map_err(|_| {
                Error::config(format!("invalid value {value:?} for key {key:?}"))
            })
        }
        match key {
            "K" => self.k = num(key, value)?,
            "L" => self.l = num(key, value)?,
            "delta" => self.delta = num(key, value)?,
            "P0" => self.p0 = num(key, value)?,
            "noise_dbm" => self.noise_dbm = num(key, value)?,
            "radius" => self.radius = num(key, value)?,
            "fading_threshold" => self.fading_threshold = num(key, value)?,
            "pathloss_exponent" => self.pathloss_exponent = num(key, value)?,
            "scheme" => self.scheme = value.parse()?,
            "attack" => self.attack.kind = value.parse()?,
            "power_scale" => self.attack.power_scale = num(key, value)?,
            "trials" => self.trials = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "target_pf" => self.target_pf = num(key, value)?,
            "legit_power_factor" => self.legit_power_factor = num(key, value)?,
            other => {
                return Err(Error::config(format!("unknown config key {other:?}")));
            }
        }
        Ok(())
    }

    /// Applies a sequence of `(key, value)` pairs in order.
    pub fn apply_pairs<'a, I>(&mut self, pairs: I) -> Result<()>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        for (key, value) in pairs {
            self.set_key(key, value)?;
        }
        Ok(())
    }
}

/// Parses the flat `key = value` config-file format.
///
/// One pair per line; `#` starts a comment; blank lines are skipped. Returns
/// pairs in file order so later lines override earlier ones when applied.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!(
                "line {}: expected `key = value`, got {raw:?}",
                lineno + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() || value.is_empty() {
            return Err(Error::config(format!(
                "line {}: empty key or value in {raw:?}",
                lineno + 1
            )));
        }
        pairs.push((key.to_string(), value.to_string()));
    }
    Ok(pairs)
}
