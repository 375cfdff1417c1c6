use thiserror::Error;

/// Failure modes shared by every module in the crate.
///
/// The variants are coarse on purpose: callers (the CLI in particular) map
/// them onto exit codes, and the message carries the detail.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),
    /// Integer argument outside the supported range.
    #[error("range error: {0}")]
    Range(String),
    /// Invalid run configuration (step counts, grids, parameter signs).
    #[error("config error: {0}")]
    Config(String),
    /// Parameters outside the physical regime an approximation needs.
    #[error("regime error: {0}")]
    Regime(String),
    /// A numerical routine failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numerical(String),
    /// Not enough samples to analyze a trace.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    /// A resonance peak was found on the edge of the scanned grid.
    #[error("bracket error: {0}")]
    Bracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;
