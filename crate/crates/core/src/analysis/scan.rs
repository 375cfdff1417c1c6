use std::f64::consts::TAU;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::spectrum::{extract_frequency, FrequencyEstimate, FrequencyOptions};
use crate::dynamics::{propagate_exact, DriveParams, DEFAULT_STEPS_PER_PERIOD};
use crate::error::{Error, Result};
use crate::qubit::QubitState;
use crate::rwa::{rwa_frequency, rwa_predict};
use crate::transfer::{tm_slow_frequency, tm_slow_resonance_lhs};

/// Upper bound on the number of cells in one scan.
pub const MAX_SCAN_CELLS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "A")]
    Amplitude,
    #[serde(rename = "eps0")]
    Epsilon0,
    #[serde(rename = "omega")]
    Omega,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Amplitude => "A",
            Axis::Epsilon0 => "eps0",
            Axis::Omega => "omega",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "A" | "amp" | "amplitude" => Ok(Axis::Amplitude),
            "eps0" | "epsilon0" => Ok(Axis::Epsilon0),
            "omega" => Ok(Axis::Omega),
            other => Err(Error::Config(format!(
                "unknown scan axis '{other}' (expected A, eps0 or omega)"
            ))),
        }
    }

    fn set(self, p: &mut DriveParams, value: f64) {
        match self {
            Axis::Amplitude => p.amplitude = value,
            Axis::Epsilon0 => p.epsilon0 = value,
            Axis::Omega => p.omega = value,
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Strictly increasing grid along one parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub axis: Axis,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn new(axis: Axis, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Config(format!("{axis} grid is empty")));
        }
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(format!(
                "{axis} grid must be finite and strictly increasing"
            )));
        }
        Ok(Self { axis, values })
    }

    /// `count` evenly spaced points from `start` to `stop` inclusive.
    pub fn linspace(axis: Axis, start: f64, stop: f64, count: usize) -> Result<Self> {
        let values = match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => {
                let step = (stop - start) / (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            stop
                        } else {
                            start + step * i as f64
                        }
                    })
                    .collect()
            }
        };
        Self::new(axis, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// How long each cell is simulated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSizing {
    /// Predicted slow periods to cover.
    pub slow_periods: f64,
    pub min_drive_periods: f64,
    pub max_drive_periods: f64,
}

impl Default for RunSizing {
    fn default() -> Self {
        Self {
            slow_periods: 5.0,
            min_drive_periods: 50.0,
            max_drive_periods: 5000.0,
        }
    }
}

impl RunSizing {
    /// Run length for a predicted slow angular frequency, and whether the cap
    /// was hit.
    pub fn duration(&self, drive_period: f64, omega_pred: f64) -> (f64, bool) {
        let wanted = if omega_pred > 0.0 {
            self.slow_periods * TAU / omega_pred
        } else {
            f64::INFINITY
        };
        let floor = self.min_drive_periods * drive_period;
        let cap = self.max_drive_periods * drive_period;
        let t = wanted.max(floor);
        if t > cap {
            (cap, true)
        } else {
            (t, false)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// Supplies `Delta`, `phi` and the parameter not on either axis.
    pub base: DriveParams,
    pub axis1: Grid,
    pub axis2: Grid,
    pub steps_per_period: usize,
    pub sizing: RunSizing,
}

impl ScanConfig {
    pub fn new(base: DriveParams, axis1: Grid, axis2: Grid) -> Result<Self> {
        if axis1.axis == axis2.axis {
            return Err(Error::Config(format!("both scan axes are {}", axis1.axis)));
        }
        Ok(Self {
            base,
            axis1,
            axis2,
            steps_per_period: DEFAULT_STEPS_PER_PERIOD,
            sizing: RunSizing::default(),
        })
    }

    pub fn cell_count(&self) -> usize {
        self.axis1.len().saturating_mul(self.axis2.len())
    }

    /// Parameters of cell `(i, j)`.
    pub fn params(&self, i: usize, j: usize) -> DriveParams {
        let mut p = self.base;
        self.axis1.axis.set(&mut p, self.axis1.values[i]);
        self.axis2.axis.set(&mut p, self.axis2.values[j]);
        p
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CellFlags {
    pub suppressed: bool,
    pub ambiguous: bool,
    pub below_resolution: bool,
    pub error: Option<String>,
}

impl fmt::Display for CellFlags {
    /// `|`-separated flag names; empty when nothing is flagged.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.suppressed {
            parts.push("suppressed".into());
        }
        if self.ambiguous {
            parts.push("ambiguous".into());
        }
        if self.below_resolution {
            parts.push("below_resolution".into());
        }
        if let Some(e) = &self.error {
            parts.push(format!("error:{e}"));
        }
        f.write_str(&parts.join("|"))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub axis1: f64,
    pub axis2: f64,
    pub estimate: Option<FrequencyEstimate>,
    pub omega_rwa: f64,
    /// `omega zeta_FC / (2 pi)`; NaN when the bias never crosses zero.
    pub omega_tm: f64,
    /// Slow-crossing resonance left-hand side; NaN when not applicable.
    pub slow_lhs: f64,
    pub flags: CellFlags,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub config: ScanConfig,
    /// Axis-1-major: cell `(i, j)` sits at `i * axis2.len() + j`.
    pub cells: Vec<ScanCell>,
}

fn error_tag(e: &Error) -> String {
    let kind = match e {
        Error::Domain(_) => "domain",
        Error::Range(_) => "range",
        Error::Config(_) => "config",
        Error::Regime(_) => "regime",
        Error::Numerical(_) => "numerical",
        Error::InsufficientData(_) => "insufficient_data",
        Error::Bracket(_) => "bracket",
    };
    kind.to_string()
}

fn run_cell(cfg: &ScanConfig, i: usize, j: usize) -> ScanCell {
    let p = cfg.params(i, j);
    let mut cell = ScanCell {
        axis1: cfg.axis1.values[i],
        axis2: cfg.axis2.values[j],
        estimate: None,
        omega_rwa: f64::NAN,
        omega_tm: f64::NAN,
        slow_lhs: f64::NAN,
        flags: CellFlags::default(),
    };
    if let Err(e) = p.validate() {
        cell.flags.error = Some(error_tag(&e));
        return cell;
    }
    cell.omega_rwa = rwa_predict(&p).omega_osc;
    if p.amplitude > p.epsilon0 {
        match (tm_slow_frequency(&p), tm_slow_resonance_lhs(&p)) {
            (Ok(w), Ok(s)) => {
                cell.omega_tm = w;
                cell.slow_lhs = s.lhs;
            }
            (Err(e), _) | (_, Err(e)) => cell.flags.error = Some(error_tag(&e)),
        }
    }
    let omega_pred = [cell.omega_rwa, cell.omega_tm]
        .into_iter()
        .filter(|w| *w > 0.0)
        .fold(f64::INFINITY, f64::min);
    let omega_pred = if omega_pred.is_finite() {
        omega_pred
    } else {
        0.0
    };
    let (duration, capped) = cfg.sizing.duration(p.period(), omega_pred);
    let outcome = propagate_exact(&p, &QubitState::DOWN, duration, cfg.steps_per_period)
        .and_then(|ts| extract_frequency(&ts, &FrequencyOptions::coarse_grained(p.period())));
    match outcome {
        Ok(est) => {
            cell.flags.suppressed = est.suppressed;
            cell.flags.ambiguous = est.ambiguous;
            cell.flags.below_resolution = capped || est.below_resolution;
            cell.estimate = Some(est);
        }
        Err(e) => cell.flags.error = Some(error_tag(&e)),
    }
    cell
}

/// Simulates every grid cell from `|down>` and attaches analytic
/// predictions. Cells are independent; failures are recorded as flags.
pub fn scan_resonance_map(cfg: &ScanConfig) -> Result<ScanResult> {
    let n = cfg.cell_count();
    if n > MAX_SCAN_CELLS {
        return Err(Error::Config(format!(
            "scan of {n} cells exceeds the limit of {MAX_SCAN_CELLS}"
        )));
    }
    let n2 = cfg.axis2.len();
    let cells = (0..n)
        .into_par_iter()
        .map(|k| run_cell(cfg, k / n2, k % n2))
        .collect();
    Ok(ScanResult {
        config: cfg.clone(),
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WidthMeasurement {
    /// Half-width at half-maximum along omega.
    pub hwhm: f64,
    /// Grid point with the largest amplitude.
    pub omega_peak: f64,
    pub peak_amplitude: f64,
    /// Run length shared by every grid point.
    pub duration: f64,
    pub amplitudes: Vec<f64>,
}

fn half_crossing(x0: f64, y0: f64, x1: f64, y1: f64, half: f64) -> f64 {
    x0 + (half - y0) * (x1 - x0) / (y1 - y0)
}

/// HWHM of the coarse-grained oscillation amplitude versus `omega` around
/// the `n`-photon resonance `omega = eps0 / n`. Every grid point is run for
/// the same length, sized from the predicted on-resonance frequency.
pub fn measure_resonance_width(
    p: &DriveParams,
    n: i64,
    omega_grid: &[f64],
    steps_per_period: usize,
) -> Result<WidthMeasurement> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "resonance width needs n >= 1, got {n}"
        )));
    }
    let grid = Grid::new(Axis::Omega, omega_grid.to_vec())?;
    if grid.len() < 3 {
        return Err(Error::Config(
            "width measurement needs at least three omega values".into(),
        ));
    }
    if !(p.epsilon0 > 0.0) {
        return Err(Error::Domain("resonance width needs eps0 > 0".into()));
    }
    let resonant = DriveParams {
        omega: p.epsilon0 / n as f64,
        ..*p
    };
    let omega_pred = rwa_frequency(&resonant, n);
    let longest_period = TAU / grid.values[0];
    let sizing = RunSizing::default();
    let (duration, _) = sizing.duration(longest_period, omega_pred);

    let amplitudes: Vec<f64> = grid
        .values
        .par_iter()
        .map(|&w| {
            let q = DriveParams { omega: w, ..*p };
            let ts = propagate_exact(&q, &QubitState::DOWN, duration, steps_per_period)?;
            Ok(extract_frequency(&ts, &FrequencyOptions::coarse_grained(q.period()))?.amplitude)
        })
        .collect::<Result<_>>()?;

    let (k, &peak) = amplitudes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid has at least three points");
    if k == 0 || k + 1 == amplitudes.len() {
        return Err(Error::Bracket(format!(
            "amplitude maximum at the grid edge (omega = {}); widen the grid",
            grid.values[k]
        )));
    }
    let half = 0.5 * peak;
    let x = &grid.values;
    let left = (1..=k)
        .rev()
        .find(|&i| amplitudes[i - 1] <= half)
        .map(|i| half_crossing(x[i - 1], amplitudes[i - 1], x[i], amplitudes[i], half));
    let right = (k..amplitudes.len() - 1)
        .find(|&i| amplitudes[i + 1] <= half)
        .map(|i| half_crossing(x[i], amplitudes[i], x[i + 1], amplitudes[i + 1], half));
    match (left, right) {
        (Some(l), Some(r)) => Ok(WidthMeasurement {
            hwhm: 0.5 * (r - l),
            omega_peak: x[k],
            peak_amplitude: peak,
            duration,
            amplitudes,
        }),
        _ => Err(Error::Bracket(
            "amplitude does not fall to half maximum on both sides".into(),
        )),
    }
}
