//! Adaptive Gauss–Kronrod (7/15 point) quadrature.

use crate::error::{Error, Result};

const MAX_INTERVALS: usize = 4000;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_0,
];
// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over `[a, b]` to absolute tolerance `abs_tol` by global
/// bisection of the interval with the largest error estimate.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let (v, e) = gk15(&f, lo, hi);
    let mut pieces = vec![(lo, hi, v, e)];
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.3).sum();
        if total_err <= abs_tol {
            break;
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::Numerical(format!(
                "quadrature on [{lo}, {hi}] stalled at error {total_err:.3e} (tolerance {abs_tol:.1e})"
            )));
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .expect("non-empty");
        let (l, r, _, _) = pieces.swap_remove(worst);
        let m = 0.5 * (l + r);
        let (v1, e1) = gk15(&f, l, m);
        let (v2, e2) = gk15(&f, m, r);
        pieces.push((l, m, v1, e1));
        pieces.push((m, r, v2, e2));
    }
    let total: f64 = pieces.iter().map(|p| p.2).sum();
    if !total.is_finite() {
        return Err(Error::Numerical(
            "quadrature produced a non-finite value".into(),
        ));
    }
    Ok(sign * total)
}
