//! Bessel functions of the first kind for integer order.
//!
//! Small arguments use the ascending power series. Larger arguments use
//! Miller's downward recurrence normalized with
//! `J_0(x) + 2 * sum_k J_2k(x) = 1`, which is stable for every order below
//! the starting index.

use crate::error::{Error, Result};

/// Largest |n| for which accuracy has been validated.
pub const MAX_ORDER: i32 = 200;

/// Below this |x| the power series is used.
const SERIES_LIMIT: f64 = 12.0;

const RESCALE_ABOVE: f64 = 1e250;
const RESCALE_BY: f64 = 1e-250;

/// Integer Bessel order, limited to `|n| <= MAX_ORDER`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BesselOrder(i32);

impl BesselOrder {
    pub fn new(n: i32) -> Result<Self> {
        if n.unsigned_abs() > MAX_ORDER as u32 {
            return Err(Error::Range(format!(
                "Bessel order {n} outside [-{MAX_ORDER}, {MAX_ORDER}]"
            )));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> i32 {
        self.0
    }
}

impl TryFrom<i32> for BesselOrder {
    type Error = Error;

    fn try_from(n: i32) -> Result<Self> {
        Self::new(n)
    }
}

/// `J_n(x)` for integer `n` with `|n| <= 200` and finite `x`.
pub fn bessel_jn(n: i32, x: f64) -> Result<f64> {
    let order = BesselOrder::new(n)?;
    if !x.is_finite() {
        return Err(Error::Domain(format!(
            "Bessel argument must be finite, got {x}"
        )));
    }
    Ok(jn_unchecked(order.get(), x))
}

/// `J_n(x)` without argument validation; `n` must satisfy `|n| <= 200`.
pub(crate) fn jn_unchecked(n: i32, x: f64) -> f64 {
    let m = n.unsigned_abs();
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
    let odd = m % 2 == 1;
    let flip = odd && ((n < 0) != (x < 0.0));
    let ax = x.abs();
    let value = if ax == 0.0 {
        if m == 0 {
            1.0
        } else {
            0.0
        }
    } else if ax < SERIES_LIMIT {
        series(m, ax)
    } else {
        miller(m, ax)
    };
    if flip {
        -value
    } else {
        value
    }
}

fn series(m: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for k in 1..=m {
        term *= half / k as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = -half * half;
    let mut sum = term;
    let mut k = 0u32;
    loop {
        k += 1;
        term *= q / (k as f64 * (k + m) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k as f64 > half {
            break;
        }
        if k > 500 {
            break;
        }
    }
    sum
}

fn miller(m: u32, x: f64) -> f64 {
    let scale = (m as f64).max(x);
    let mut start = scale.ceil() as u32 + 30 + (60.0 * scale).sqrt().ceil() as u32;
    start += start % 2;

    let two_over_x = 2.0 / x;
    let mut next = 0.0; // J_{k+1}
    let mut cur = 1e-30; // J_k
    let mut result = if start == m { cur } else { 0.0 };
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        // cur is now J_{k-1}
        if k - 1 == m {
            result = cur;
        }
        if (k - 1) % 2 == 0 && k - 1 > 0 {
            norm += 2.0 * cur;
        }
        if cur.abs() > RESCALE_ABOVE {
            cur *= RESCALE_BY;
            next *= RESCALE_BY;
            result *= RESCALE_BY;
            norm *= RESCALE_BY;
        }
    }
    norm += cur;
    result / norm
}

/// `d/dx J_0(x) = -J_1(x)`.
pub(crate) fn j0_prime(x: f64) -> f64 {
    -jn_unchecked(1, x)
}
