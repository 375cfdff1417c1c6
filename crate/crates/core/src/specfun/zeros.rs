use std::f64::consts::PI;

use super::bessel::{j0_prime, jn_unchecked};
use crate::error::{Error, Result};

pub const MAX_J0_ZERO_INDEX: u32 = 20;

/// The `k`-th positive zero of `J_0`, for `1 <= k <= 20`.
///
/// The zero is bracketed around McMahon's leading estimate `(k - 1/4) pi`,
/// narrowed by bisection and polished with Newton steps (`J_0' = -J_1`).
pub fn bessel_j0_zero(k: u32) -> Result<f64> {
    if !(1..=MAX_J0_ZERO_INDEX).contains(&k) {
        return Err(Error::Range(format!(
            "J0 zero index {k} outside [1, {MAX_J0_ZERO_INDEX}]"
        )));
    }
    let guess = (k as f64 - 0.25) * PI;
    let (mut lo, mut hi) = (guess - 0.5, guess + 0.5);
    let mut f_lo = jn_unchecked(0, lo);
    let f_hi = jn_unchecked(0, hi);
    if f_lo * f_hi > 0.0 {
        return Err(Error::Numerical(format!(
            "no sign change bracketing J0 zero {k}"
        )));
    }
    for _ in 0..30 {
        let mid = 0.5 * (lo + hi);
        let f_mid = jn_unchecked(0, mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..8 {
        let step = jn_unchecked(0, x) / j0_prime(x);
        let candidate = x - step;
        if !(lo..=hi).contains(&candidate) {
            break;
        }
        x = candidate;
        if step.abs() < 1e-15 * x {
            break;
        }
    }
    Ok(x)
}
