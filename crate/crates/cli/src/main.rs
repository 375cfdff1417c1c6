//! `lzs`: simulate a strongly driven two-level system and compare the exact
//! dynamics with rotating-wave and transfer-matrix predictions.
//!
//! All physical inputs are in units of the tunnelling gap `Delta`.

mod commands;
mod exit;
mod settings;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use exit::CliError;
use settings::{Format, Settings};

#[derive(Parser)]
#[command(name = "lzs", version, about = "Driven two-level system toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact P_up(t) from |down>, optionally with the stroboscopic
    /// transfer-matrix trace.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Drive periods to simulate [default: 20].
        #[arg(long)]
        cycles: Option<usize>,
        /// Add the transfer-matrix column (needs A > eps0).
        #[arg(long)]
        tm: bool,
    },
    /// Rotating-wave, weak-driving and transfer-matrix predictions (JSON).
    Predict {
        #[command(flatten)]
        common: Common,
        /// Fail with a regime error unless the transfer matrix applies.
        #[arg(long)]
        tm: bool,
    },
    /// Map the slow oscillation over a two-parameter grid.
    Scan {
        #[command(flatten)]
        common: Common,
        /// First grid, `name=start:stop:count` with name in A, eps0, omega.
        #[arg(long)]
        axis1: Option<String>,
        /// Second grid, same syntax.
        #[arg(long)]
        axis2: Option<String>,
    },
    /// Label the parameter point by applicable approximation.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Drive amplitudes that suppress tunnelling at zero bias.
    Cdt {
        #[command(flatten)]
        common: Common,
        /// Number of amplitudes [default: 5].
        #[arg(long)]
        kmax: Option<u32>,
    },
    /// Measure the half-width of the n-photon resonance along omega.
    Width {
        #[command(flatten)]
        common: Common,
        /// Photon number.
        #[arg(long)]
        n: Option<i64>,
        /// Drive frequencies, `start:stop:count`.
        #[arg(long)]
        omega_grid: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, allow_negative_numbers = true)]
    eps0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    amp: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Energy unit for outputs; inputs are always in units of Delta.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    steps_per_period: Option<usize>,
    /// Output path; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON object whose keys match the flag names; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Common {
    fn settings(self) -> (Option<PathBuf>, Settings) {
        let s = Settings {
            eps0: self.eps0,
            amp: self.amp,
            omega: self.omega,
            phi: self.phi,
            delta: self.delta,
            steps_per_period: self.steps_per_period,
            out: self.out,
            format: self.format,
            ..Default::default()
        };
        (self.config, s)
    }
}

type Runner = fn(&Settings) -> Result<String, CliError>;

fn resolve(command: Command) -> (Option<PathBuf>, Settings, Runner) {
    let flag = |b: bool| b.then_some(true);
    match command {
        Command::Simulate { common, cycles, tm } => {
            let (cfg, s) = common.settings();
            (
                cfg,
                Settings {
                    cycles,
                    tm: flag(tm),
                    ..s
                },
                commands::simulate,
            )
        }
        Command::Predict { common, tm } => {
            let (cfg, s) = common.settings();
            (cfg, Settings { tm: flag(tm), ..s }, commands::predict)
        }
        Command::Scan {
            common,
            axis1,
            axis2,
        } => {
            let (cfg, s) = common.settings();
            (cfg, Settings { axis1, axis2, ..s }, commands::scan)
        }
        Command::Classify { common } => {
            let (cfg, s) = common.settings();
            (cfg, s, commands::classify)
        }
        Command::Cdt { common, kmax } => {
            let (cfg, s) = common.settings();
            (cfg, Settings { kmax, ..s }, commands::cdt)
        }
        Command::Width {
            common,
            n,
            omega_grid,
        } => {
            let (cfg, s) = common.settings();
            (cfg, Settings { n, omega_grid, ..s }, commands::width)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (config, flags, runner) = resolve(cli.command);
    let settings = match config {
        Some(path) => Settings::from_file(&path)?.overlay(flags),
        None => flags,
    };
    let text = runner(&settings)?;
    match &settings.out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Config(format!("cannot write {path}: {e}")))
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Config(format!("cannot write to stdout: {e}"))),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lzs: {e}");
            e.exit_code()
        }
    }
}
