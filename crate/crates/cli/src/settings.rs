//! Run settings merged from a JSON config file and command-line flags.

use std::fs;
use std::path::Path;

use lzs_core::analysis::{Axis, Grid};
use lzs_core::dynamics::{DriveParams, DEFAULT_STEPS_PER_PERIOD};
use serde::{Deserialize, Serialize};

use crate::exit::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Every key a config file may contain. Keys match the flag names.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    pub eps0: Option<f64>,
    pub amp: Option<f64>,
    pub omega: Option<f64>,
    pub phi: Option<f64>,
    pub delta: Option<f64>,
    pub cycles: Option<usize>,
    pub steps_per_period: Option<usize>,
    pub out: Option<String>,
    pub format: Option<Format>,
    pub tm: Option<bool>,
    pub axis1: Option<String>,
    pub axis2: Option<String>,
    pub kmax: Option<u32>,
    pub n: Option<i64>,
    pub omega_grid: Option<String>,
}

macro_rules! overlay_fields {
    ($base:ident, $top:ident, $($f:ident),*) => {
        Settings { $($f: $top.$f.or($base.$f)),* }
    };
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Values in `top` win over values in `self`.
    pub fn overlay(self, top: Settings) -> Settings {
        let base = self;
        overlay_fields!(
            base,
            top,
            eps0,
            amp,
            omega,
            phi,
            delta,
            cycles,
            steps_per_period,
            out,
            format,
            tm,
            axis1,
            axis2,
            kmax,
            n,
            omega_grid
        )
    }

    /// Output energy unit; all inputs are in units of `Delta`.
    pub fn delta(&self) -> Result<f64, CliError> {
        let d = self.delta.unwrap_or(1.0);
        if !(d > 0.0 && d.is_finite()) {
            return Err(CliError::Config(format!("delta must be positive, got {d}")));
        }
        Ok(d)
    }

    pub fn steps_per_period(&self) -> usize {
        self.steps_per_period.unwrap_or(DEFAULT_STEPS_PER_PERIOD)
    }

    pub fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn require(&self, name: &str, v: Option<f64>) -> Result<f64, CliError> {
        v.ok_or_else(|| CliError::Config(format!("missing --{name}")))
    }

    /// Drive parameters with `Delta = 1`. `eps0` and `phi` default to zero;
    /// keys listed in `supplied` may be absent because a grid provides them.
    pub fn drive(&self, supplied: &[Axis]) -> Result<DriveParams, CliError> {
        let pick = |axis: Axis, name: &str, v: Option<f64>| -> Result<f64, CliError> {
            match v {
                Some(x) => Ok(x),
                None if supplied.contains(&axis) => Ok(1.0),
                None => self.require(name, v),
            }
        };
        let amp = pick(Axis::Amplitude, "amp", self.amp)?;
        let omega = pick(Axis::Omega, "omega", self.omega)?;
        let p = DriveParams::new(1.0, self.eps0.unwrap_or(0.0), amp, omega)?;
        Ok(p.with_phi(self.phi.unwrap_or(0.0))?)
    }
}

fn parse_range(s: &str) -> Result<(f64, f64, usize), CliError> {
    let bad = || CliError::Config(format!("grid {s:?} is not start:stop:count"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(bad());
    };
    let start = a.trim().parse().map_err(|_| bad())?;
    let stop = b.trim().parse().map_err(|_| bad())?;
    let count = c.trim().parse().map_err(|_| bad())?;
    Ok((start, stop, count))
}

/// `name=start:stop:count`, e.g. `eps0=7.5:10.5:51`.
pub fn parse_axis(spec: &str) -> Result<Grid, CliError> {
    let (name, range) = spec
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("axis {spec:?} is not name=start:stop:count")))?;
    let axis = Axis::parse(name.trim())?;
    let (start, stop, count) = parse_range(range)?;
    Ok(Grid::linspace(axis, start, stop, count)?)
}

/// `start:stop:count` along omega.
pub fn parse_omega_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let (start, stop, count) = parse_range(spec)?;
    Ok(Grid::linspace(Axis::Omega, start, stop, count)?.values)
}
