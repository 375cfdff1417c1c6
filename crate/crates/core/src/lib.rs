//! Simulation and analysis of a two-level system under strong harmonic
//! driving.
//!
//! * [`dynamics`]: the Hamiltonian and an exactly unitary propagator.
//! * [`rwa`]: rotating-wave predictions (resonance index, Bessel-renormalized
//!   oscillation frequency, widths, coherent destruction of tunnelling).
//! * [`transfer`]: Landau–Zener transfer matrices, full-cycle composition and
//!   the fast/slow crossing predictors.
//! * [`analysis`]: frequency extraction from traces, regime classification,
//!   resonance scans and width measurement.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod quadrature;
pub mod qubit;
pub mod rwa;
pub mod specfun;
pub mod transfer;

pub use dynamics::{DriveParams, TimeSeries};
pub use error::{Error, Result};
pub use qubit::{QubitState, Unitary2};
