//! Complex log-gamma and the Landau–Zener Stokes phase.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Gamma(z)` on the right half-plane.
///
/// The imaginary part is the continuous branch obtained by analytic
/// continuation from the positive real axis, not `arg Gamma(z)` reduced to
/// `(-pi, pi]`.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.re.is_nan() || z.im.is_nan() {
        return Err(Error::Domain("log-gamma of NaN".into()));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
        return Err(Error::Domain(format!("Gamma has a pole at {}", z.re)));
    }
    if z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "log-gamma only supported for Re(z) > 0, got {z}"
        )));
    }
    if z.re < 0.5 {
        // Gamma(z) = Gamma(z + 1) / z; ln z is continuous for Re z > 0.
        return Ok(lanczos(z + 1.0) - z.ln());
    }
    Ok(lanczos(z))
}

fn lanczos(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + series.ln()
}

/// Stokes phase of a single Landau–Zener passage,
/// `pi/4 + arg Gamma(1 - i delta) + delta (ln delta - 1)`,
/// with adiabaticity parameter `delta = Delta^2 / (4 v)`.
///
/// Tends to `pi/4` for fast passages and to zero for slow ones.
pub fn stokes_phase(delta_adiab: f64) -> Result<f64> {
    if delta_adiab.is_nan() || delta_adiab <= 0.0 {
        return Err(Error::Domain(format!(
            "adiabaticity parameter must be positive, got {delta_adiab}"
        )));
    }
    if delta_adiab.is_infinite() {
        return Ok(0.0);
    }
    let lg = log_gamma_complex(Complex64::new(1.0, -delta_adiab))?;
    Ok(FRAC_PI_4 + lg.im + delta_adiab * (delta_adiab.ln() - 1.0))
}
