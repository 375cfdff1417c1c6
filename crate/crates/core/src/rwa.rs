//! Rotating-wave predictions: multiphoton resonance index, Bessel-renormalized
//! oscillation frequency, resonance width, coherent destruction of tunnelling
//! and the weak-driving Rabi limit.

use serde::{Deserialize, Serialize};

use crate::dynamics::DriveParams;
use crate::error::{Error, Result};
use crate::specfun::{bessel_j0_zero, jn_unchecked, MAX_J0_ZERO_INDEX};

/// `omega / Delta` below which the rotating-wave result is flagged invalid.
pub const INVALID_BELOW: f64 = 1.0;
/// `omega / Delta` below which the rotating-wave result is flagged marginal.
pub const MARGINAL_BELOW: f64 = 3.0;
/// Weak-driving results are flagged once `A` exceeds this fraction of the
/// bare splitting `sqrt(Delta^2 + eps0^2)`.
pub const WEAK_DRIVING_LIMIT: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Validity {
    Valid,
    Marginal,
    Invalid,
}

impl Validity {
    pub fn for_params(p: &DriveParams) -> (Validity, &'static str) {
        let ratio = p.omega / p.delta;
        if ratio < INVALID_BELOW {
            (
                Validity::Invalid,
                "omega < Delta: the resonant term does not dominate",
            )
        } else if ratio < MARGINAL_BELOW {
            (Validity::Marginal, "omega is not large compared with Delta")
        } else {
            (Validity::Valid, "omega >> Delta")
        }
    }

    pub fn is_valid(self) -> bool {
        self != Validity::Invalid
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RwaPrediction {
    /// Resonant index in the `n omega + eps0 = 0` convention (negative for
    /// `eps0, omega > 0`); the photon number is `|n|`.
    pub n: i64,
    /// `n omega + eps0`.
    pub detuning: f64,
    /// `Delta |J_n(A / omega)|`.
    pub omega_osc: f64,
    /// `omega_osc / |n|`; `None` for `n = 0`.
    pub width: Option<f64>,
    pub validity: Validity,
    pub reason: String,
}

/// The `n` minimizing `|n omega + eps0|`; half-integer ties go to the
/// smaller `|n|`.
pub fn rwa_resonant_index(p: &DriveParams) -> i64 {
    let x = -p.epsilon0 / p.omega;
    let lo = x.floor();
    let hi = lo + 1.0;
    let (d_lo, d_hi) = (x - lo, hi - x);
    let n = if d_lo < d_hi {
        lo
    } else if d_hi < d_lo {
        hi
    } else if lo.abs() <= hi.abs() {
        lo
    } else {
        hi
    };
    n as i64
}

/// `Delta |J_n(A / omega)|`.
pub fn rwa_frequency(p: &DriveParams, n: i64) -> f64 {
    let order = n.clamp(i32::MIN as i64 + 1, i32::MAX as i64) as i32;
    p.delta * jn_unchecked(order, p.amplitude / p.omega).abs()
}

/// `omega_osc / |n|`.
pub fn rwa_width(omega_osc: f64, n: i64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain(
            "resonance width not applicable for n = 0".into(),
        ));
    }
    Ok(omega_osc / n.unsigned_abs() as f64)
}

/// Drive amplitudes `omega j_{0,k}`, `k = 1..=k_max`, where the zero-photon
/// tunnelling rate vanishes.
pub fn cdt_amplitudes(omega: f64, k_max: u32) -> Result<Vec<f64>> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::Domain(format!(
            "omega must be positive, got {omega}"
        )));
    }
    if k_max < 1 || k_max > MAX_J0_ZERO_INDEX {
        return Err(Error::Range(format!(
            "k_max must lie in 1..={MAX_J0_ZERO_INDEX}, got {k_max}"
        )));
    }
    (1..=k_max)
        .map(|k| Ok(omega * bessel_j0_zero(k)?))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RabiPrediction {
    /// Bare splitting `sqrt(Delta^2 + eps0^2)`.
    pub omega_res: f64,
    /// `A sin(alpha) / 2`, `tan(alpha) = Delta / eps0`.
    pub omega_rabi: f64,
    /// `A <= 0.2 sqrt(Delta^2 + eps0^2)`.
    pub valid: bool,
}

pub fn rabi_weak_driving(p: &DriveParams) -> RabiPrediction {
    let omega_res = p.delta.hypot(p.epsilon0);
    let sin_alpha = p.delta / omega_res;
    RabiPrediction {
        omega_res,
        omega_rabi: 0.5 * p.amplitude * sin_alpha,
        valid: p.amplitude <= WEAK_DRIVING_LIMIT * omega_res,
    }
}

pub fn rwa_predict(p: &DriveParams) -> RwaPrediction {
    let n = rwa_resonant_index(p);
    let omega_osc = rwa_frequency(p, n);
    let (validity, reason) = Validity::for_params(p);
    RwaPrediction {
        n,
        detuning: n as f64 * p.omega + p.epsilon0,
        omega_osc,
        width: rwa_width(omega_osc, n).ok(),
        validity,
        reason: reason.to_string(),
    }
}
