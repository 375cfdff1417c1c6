//! Special-function kernels used by the rotating-wave and transfer-matrix
//! predictors. All functions are pure.

mod bessel;
mod gamma;
mod zeros;

pub use bessel::{bessel_jn, BesselOrder, MAX_ORDER};
pub use gamma::{log_gamma_complex, stokes_phase};
pub use zeros::{bessel_j0_zero, MAX_J0_ZERO_INDEX};

pub(crate) use bessel::jn_unchecked;
