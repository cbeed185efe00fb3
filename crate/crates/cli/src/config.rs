//! Run configuration: flat `key = value` text, one pair per line, `#` comments.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use pbg_core::{BlochInit, Family, GridSpec, ReservoirParams, TwoQubitInit};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// One qubit: excited probability and entropy against time.
    Single,
    /// Two qubits: excited probability and concurrence against time.
    Two,
    /// Concurrence traces, one column per initial `α²`.
    SweepAlpha,
    /// Bell-state concurrence against detuning, as traces or steady values.
    SweepDelta,
    /// Closed form against the march and contour-inversion oracles.
    OracleCheck,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Single => "single",
            Mode::Two => "two",
            Mode::SweepAlpha => "sweep-alpha",
            Mode::SweepDelta => "sweep-delta",
            Mode::OracleCheck => "oracle-check",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "single" => Ok(Mode::Single),
            "two" => Ok(Mode::Two),
            "sweep-alpha" => Ok(Mode::SweepAlpha),
            "sweep-delta" => Ok(Mode::SweepDelta),
            "oracle-check" => Ok(Mode::OracleCheck),
            other => Err(format!(
                "unknown mode '{other}', expected single, two, sweep-alpha, sweep-delta or oracle-check"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub delta_over_beta: f64,
    pub f: f64,
    pub theta0: f64,
    pub phi0: f64,
    pub family: Family,
    pub alpha2: f64,
    pub gamma_phase: f64,
    pub tmax: f64,
    pub steps: usize,
    pub alpha2_grid: Vec<f64>,
    pub delta_grid: Vec<f64>,
    /// sweep-delta only: steady values instead of traces.
    pub steady: bool,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: Mode::Single,
            delta_over_beta: -5.0,
            f: 1.0,
            theta0: 0.0,
            phi0: 0.0,
            family: Family::Phi,
            alpha2: 0.5,
            gamma_phase: 0.0,
            tmax: 30.0,
            steps: 3000,
            alpha2_grid: unit_grid(0.05),
            delta_grid: vec![-10.0, -5.0, -2.0, -1.0, -0.5, 0.0, 1.0, 2.0],
            steady: false,
            out: None,
        }
    }
}

/// `0, step, 2·step, …, 1`, rounded to kill accumulated drift.
pub fn unit_grid(step: f64) -> Vec<f64> {
    let n = (1.0 / step).round() as usize;
    (0..=n)
        .map(|i| ((i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError>
where
    T::Err: std::fmt::Display,
{
    value
        .parse()
        .map_err(|e| CliError::Config(format!("bad value '{value}' for {key}: {e}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>, CliError> {
    let items = value
        .split(',')
        .map(|item| parse_value::<f64>(key, item.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if items.is_empty() {
        return Err(CliError::Config(format!("{key} must not be empty")));
    }
    Ok(items)
}

fn format_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl RunConfig {
    /// Set one key from its textual value.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "mode" => self.mode = value.parse().map_err(CliError::Config)?,
            "delta-over-beta" => self.delta_over_beta = parse_value(key, value)?,
            "f" => self.f = parse_value(key, value)?,
            "theta0" => self.theta0 = parse_value(key, value)?,
            "phi0" => self.phi0 = parse_value(key, value)?,
            "family" => self.family = value.parse().map_err(CliError::Config)?,
            "alpha2" => self.alpha2 = parse_value(key, value)?,
            "gamma-phase" => self.gamma_phase = parse_value(key, value)?,
            "tmax" => self.tmax = parse_value(key, value)?,
            "steps" => self.steps = parse_value(key, value)?,
            "alpha2-grid" => self.alpha2_grid = parse_list(key, value)?,
            "delta-grid" => self.delta_grid = parse_list(key, value)?,
            "steady" => self.steady = parse_value(key, value)?,
            "out" => self.out = (!value.is_empty()).then(|| PathBuf::from(value)),
            other => return Err(CliError::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Apply every pair of a config text on top of `self`.
    pub fn merge_text(&mut self, text: &str) -> Result<(), CliError> {
        for (pair, value) in parse_pairs(text)? {
            self.apply(&pair, &value)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self, CliError> {
        let mut config = RunConfig::default();
        config.merge_text(text)?;
        Ok(config)
    }

    /// Text form that [`RunConfig::from_text`] reads back to an equal value.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let mut line = |key: &str, value: String| {
            let _ = writeln!(s, "{key} = {value}");
        };
        line("mode", self.mode.name().to_string());
        line("delta-over-beta", self.delta_over_beta.to_string());
        line("f", self.f.to_string());
        line("theta0", self.theta0.to_string());
        line("phi0", self.phi0.to_string());
        line("family", self.family.name().to_string());
        line("alpha2", self.alpha2.to_string());
        line("gamma-phase", self.gamma_phase.to_string());
        line("tmax", self.tmax.to_string());
        line("steps", self.steps.to_string());
        line("alpha2-grid", format_list(&self.alpha2_grid));
        line("delta-grid", format_list(&self.delta_grid));
        line("steady", self.steady.to_string());
        line(
            "out",
            self.out
                .as_ref()
                .map(|p| p.display().to_string())
                .unwrap_or_default(),
        );
        s
    }

    pub fn params(&self) -> Result<ReservoirParams, CliError> {
        self.params_at(self.delta_over_beta)
    }

    pub fn params_at(&self, delta_over_beta: f64) -> Result<ReservoirParams, CliError> {
        ReservoirParams::with_all(1.0, self.f, delta_over_beta).map_err(config_error)
    }

    pub fn grid(&self) -> Result<GridSpec, CliError> {
        GridSpec::new(self.tmax, self.steps).map_err(config_error)
    }

    pub fn bloch_init(&self) -> Result<BlochInit, CliError> {
        BlochInit::new(self.theta0, self.phi0).map_err(config_error)
    }

    pub fn two_qubit_init(&self, alpha2: f64) -> Result<TwoQubitInit, CliError> {
        if !(0.0..=1.0).contains(&alpha2) {
            return Err(CliError::Config(format!(
                "alpha2 must lie in [0, 1], got {alpha2}"
            )));
        }
        TwoQubitInit::new(self.family, alpha2.sqrt(), self.gamma_phase).map_err(config_error)
    }

    /// Check everything the selected mode needs before any numerics run.
    pub fn validate(&self) -> Result<(), CliError> {
        self.params()?;
        self.grid()?;
        match self.mode {
            Mode::Single => {
                self.bloch_init()?;
            }
            Mode::Two => {
                self.two_qubit_init(self.alpha2)?;
            }
            Mode::SweepAlpha => {
                for &a in &self.alpha2_grid {
                    self.two_qubit_init(a)?;
                }
            }
            Mode::SweepDelta | Mode::OracleCheck => {
                self.two_qubit_init(self.alpha2)?;
                for &d in &self.delta_grid {
                    self.params_at(d)?;
                }
            }
        }
        Ok(())
    }
}

fn config_error(e: pbg_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

/// Split config text into `(key, value)` pairs.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut pairs = Vec::new();
    for (number, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "line {}: expected key = value, got '{raw}'",
                number + 1
            ))
        })?;
        pairs.push((key.trim().to_string(), value.trim().to_string()));
    }
    Ok(pairs)
}
