//! Transfer-matrix (adiabatic-impulse) description of repeated
//! Landau–Zener crossings.
//!
//! For `A > eps0` the bias crosses zero twice per period. Far from the
//! crossings the basis states only acquire relative phase; each crossing mixes
//! them with a matrix fixed by the Landau–Zener probability and the Stokes
//! phase. One drive period is the product
//! `G_LZ2 G_2 G_LZ1 G_1`, where region 1 is the `eps > 0` side (entered just
//! after the upward crossing) and region 2 the `eps < 0` side.
//!
//! Phases here are the boundary-independent ones: the region phases run
//! between crossing centres and the crossing phases are `pi - theta_Stokes`
//! (downward) and `theta_Stokes` (upward). [`windowed_cycle_matrix`] builds
//! the same cycle with explicit crossing windows of half-width `tau` for
//! checking that construction.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{drive_epsilon, DriveParams, TimeSeries};
use crate::error::{Error, Result};
use crate::quadrature;
use crate::qubit::{QubitState, Unitary2};
use crate::specfun::stokes_phase;

/// Absolute tolerance for the phase integrals.
pub const PHASE_QUAD_TOL: f64 = 1e-10;

/// Default crossing half-window as a fraction of the shorter region.
pub const DEFAULT_WINDOW_FRACTION: f64 = 0.1;

/// Direction of a bias sweep through `eps = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingDirection {
    /// `eps` goes from positive to negative (`k = 1`).
    Downward,
    /// `eps` goes from negative to positive (`k = 2`).
    Upward,
}

/// Parameters of a single Landau–Zener passage.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LzCrossing {
    /// Mixing angle with `sin^2(chi/2) = 1 - exp(-pi Delta^2 / (2 v))`.
    pub chi: f64,
    pub theta_lz_1: f64,
    pub theta_lz_2: f64,
    /// `v = omega sqrt(A^2 - eps0^2)`, the bias slope at either crossing.
    pub sweep_rate: f64,
    /// `Delta^2 / (4 v)`.
    pub delta_adiab: f64,
}

impl LzCrossing {
    pub fn transition_probability(&self) -> f64 {
        (0.5 * self.chi).sin().powi(2)
    }

    pub fn stokes_phase(&self) -> f64 {
        self.theta_lz_2
    }
}

/// Phases accumulated between crossings.
///
/// `theta1`/`theta2` are measured between the edges of the crossing windows
/// (default width); the tilde variants run between crossing centres.
/// `f1`, `f2` are the gap corrections
/// `1/2 int (sqrt(eps^2 + Delta^2) - |eps|) dt` over each region.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclePhases {
    pub theta1: f64,
    pub theta2: f64,
    pub theta_tilde_1: f64,
    pub theta_tilde_2: f64,
    pub f1: f64,
    pub f2: f64,
}

/// `U = e^{i gamma} R_xy(zeta_fc, phi_fc) Z(theta_fc)`.
///
/// For the special-unitary cycle matrices `global_phase` is `0` or `pi`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullCycleDecomposition {
    /// Rotation angle about the xy-plane axis, in `[0, pi]`.
    pub zeta_fc: f64,
    /// z-rotation angle, in `(-pi, pi]`.
    pub theta_fc: f64,
    /// Azimuth of the rotation axis, in `(-pi, pi]`.
    pub phi_fc: f64,
    pub global_phase: f64,
}

impl FullCycleDecomposition {
    pub fn reconstruct(&self) -> Unitary2 {
        (Unitary2::xy_rotation(self.zeta_fc, self.phi_fc) * Unitary2::z_phase(0.5 * self.theta_fc))
            .scale(C64::from_polar(1.0, self.global_phase))
    }
}

fn require_crossings(p: &DriveParams) -> Result<()> {
    p.validate()?;
    if p.amplitude <= p.epsilon0 {
        return Err(Error::Regime(format!(
            "transfer-matrix picture needs A > eps0 (A = {}, eps0 = {}): the bias never crosses zero",
            p.amplitude, p.epsilon0
        )));
    }
    Ok(())
}

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(TAU);
    if y > PI {
        y -= TAU;
    }
    y
}

/// Times in `[0, 2 pi / omega)` where the bias crosses zero:
/// downward (`k = 1`) then upward (`k = 2`) for `phi = 0`.
pub fn crossing_times(p: &DriveParams) -> Result<(f64, f64)> {
    require_crossings(p)?;
    let a = (-p.epsilon0 / p.amplitude).acos();
    let period = p.period();
    let down = (a - p.phi).rem_euclid(TAU) / p.omega;
    let up = (TAU - a - p.phi).rem_euclid(TAU) / p.omega;
    Ok((down.min(period), up.min(period)))
}

/// `omega sqrt(A^2 - eps0^2)`.
pub fn sweep_rate(p: &DriveParams) -> Result<f64> {
    require_crossings(p)?;
    Ok(p.omega * (p.amplitude.powi(2) - p.epsilon0.powi(2)).sqrt())
}

fn mixing_angle_for_rate(delta: f64, v: f64) -> f64 {
    // sin^2(chi/2) = 1 - exp(-x); cos^2(chi/2) = exp(-x).
    let x = PI * delta * delta / (2.0 * v);
    let sin_half = (-(-x).exp_m1()).sqrt();
    let cos_half = (-0.5 * x).exp();
    2.0 * sin_half.atan2(cos_half)
}

pub fn lz_mixing_angle(p: &DriveParams) -> Result<f64> {
    Ok(mixing_angle_for_rate(p.delta, sweep_rate(p)?))
}

/// Crossing parameters with the boundary-independent phases
/// `theta_LZ1 = pi - theta_Stokes`, `theta_LZ2 = theta_Stokes`.
pub fn lz_crossing(p: &DriveParams) -> Result<LzCrossing> {
    let v = sweep_rate(p)?;
    let delta_adiab = p.delta * p.delta / (4.0 * v);
    let stokes = stokes_phase(delta_adiab)?;
    Ok(LzCrossing {
        chi: mixing_angle_for_rate(p.delta, v),
        theta_lz_1: PI - stokes,
        theta_lz_2: stokes,
        sweep_rate: v,
        delta_adiab,
    })
}

/// `[[cos(chi/2), sin(chi/2) e^{i theta}], [-sin(chi/2) e^{-i theta}, cos(chi/2)]]`
/// with `theta = theta_LZ,k`.
pub fn lz_transfer_matrix(crossing: &LzCrossing, k: CrossingDirection) -> Unitary2 {
    let theta = match k {
        CrossingDirection::Downward => crossing.theta_lz_1,
        CrossingDirection::Upward => crossing.theta_lz_2,
    };
    Unitary2::xy_rotation(crossing.chi, theta)
}

/// `1/2 (sqrt(eps^2 + Delta^2) - |eps|)`, written without cancellation.
fn gap_excess(delta: f64, eps: f64) -> f64 {
    let a = eps.abs();
    0.5 * delta * delta / ((a * a + delta * delta).sqrt() + a)
}

struct Geometry {
    /// Downward crossing time (region 1 spans `[-t1, t1]`).
    t1: f64,
    /// Upward crossing time (region 2 spans `[t1, t2]`).
    t2: f64,
    root: f64,
    arccos: f64,
}

fn geometry(p: &DriveParams) -> Result<Geometry> {
    require_crossings(p)?;
    let t1 = (-p.epsilon0 / p.amplitude).acos() / p.omega;
    Ok(Geometry {
        t1,
        t2: p.period() - t1,
        root: (p.amplitude.powi(2) - p.epsilon0.powi(2)).sqrt(),
        arccos: (p.epsilon0 / p.amplitude).acos(),
    })
}

fn zero_phase(p: &DriveParams) -> DriveParams {
    DriveParams { phi: 0.0, ..*p }
}

/// Region phases `theta~_1`, `theta~_2` with numerically integrated gap
/// corrections, plus the window-edge phases for the default window.
pub fn theta_tildes(p: &DriveParams) -> Result<CyclePhases> {
    let g = geometry(p)?;
    let q = zero_phase(p);
    let f1 = 2.0
        * quadrature::integrate(
            |t| gap_excess(q.delta, drive_epsilon(t, &q)),
            0.0,
            g.t1,
            0.5 * PHASE_QUAD_TOL,
        )?;
    let f2 = 2.0
        * quadrature::integrate(
            |t| gap_excess(q.delta, drive_epsilon(t, &q)),
            g.t1,
            0.5 * q.period(),
            0.5 * PHASE_QUAD_TOL,
        )?;
    let (w, eps0) = (q.omega, q.epsilon0);
    let theta_tilde_1 = -g.root / w + eps0 / w * g.arccos - PI * eps0 / w - f1;
    let theta_tilde_2 = g.root / w - eps0 / w * g.arccos + f2;
    let window = balanced_window(&q, &g, default_window(p)?)?;
    let (theta1, theta2) = windowed_region_phases(&q, &g, &window)?;
    Ok(CyclePhases {
        theta1,
        theta2,
        theta_tilde_1,
        theta_tilde_2,
        f1,
        f2,
    })
}

/// Default crossing half-window: a tenth of the shorter region.
pub fn default_window(p: &DriveParams) -> Result<f64> {
    let g = geometry(p)?;
    Ok(DEFAULT_WINDOW_FRACTION * (2.0 * g.t1).min(g.t2 - g.t1))
}

/// Edges of the window around the downward crossing: `t1 - tau` on the
/// `eps > 0` side and `t1 + tau_far` on the other, with `tau_far` chosen so
/// both halves carry the same adiabatic phase. The window around the upward
/// crossing is its mirror image.
struct Window {
    tau: f64,
    tau_far: f64,
    /// Adiabatic phase `1/2 int sqrt(eps^2 + Delta^2) dt` of each half.
    half_phase: f64,
}

fn balanced_window(q: &DriveParams, g: &Geometry, tau: f64) -> Result<Window> {
    let energy = |t: f64| 0.5 * drive_epsilon(t, q).hypot(q.delta);
    let half_phase = quadrature::integrate(energy, g.t1 - tau, g.t1, 0.5 * PHASE_QUAD_TOL)?;
    let limit = 0.5 * q.period() - g.t1;
    let mut s = tau.min(limit);
    for _ in 0..50 {
        let value = quadrature::integrate(energy, g.t1, g.t1 + s, 0.5 * PHASE_QUAD_TOL)?;
        let step = (value - half_phase) / energy(g.t1 + s);
        s = (s - step).clamp(0.0, limit);
        if step.abs() < 1e-14 * (1.0 + s) {
            return Ok(Window {
                tau,
                tau_far: s,
                half_phase,
            });
        }
    }
    Err(Error::Numerical(
        "crossing window balance did not converge".into(),
    ))
}

/// Region phases measured between window edges.
fn windowed_region_phases(q: &DriveParams, g: &Geometry, w: &Window) -> Result<(f64, f64)> {
    let energy = |t: f64| 0.5 * drive_epsilon(t, q).hypot(q.delta);
    let theta1 = -2.0 * quadrature::integrate(energy, 0.0, g.t1 - w.tau, 0.5 * PHASE_QUAD_TOL)?;
    let theta2 = 2.0
        * quadrature::integrate(
            energy,
            g.t1 + w.tau_far,
            0.5 * q.period(),
            0.5 * PHASE_QUAD_TOL,
        )?;
    Ok((theta1, theta2))
}

/// One drive period `G_LZ2 G~_2 G_LZ1 G~_1` from boundary-independent phases.
pub fn full_cycle_matrix(p: &DriveParams) -> Result<Unitary2> {
    let crossing = lz_crossing(p)?;
    let phases = theta_tildes(p)?;
    Ok(compose_cycle(
        &crossing,
        phases.theta_tilde_1,
        phases.theta_tilde_2,
    ))
}

fn compose_cycle(c: &LzCrossing, theta1: f64, theta2: f64) -> Unitary2 {
    lz_transfer_matrix(c, CrossingDirection::Upward)
        * Unitary2::z_phase(theta2)
        * lz_transfer_matrix(c, CrossingDirection::Downward)
        * Unitary2::z_phase(theta1)
}

/// The same cycle with the cyclically shifted grouping
/// `G~_2 G_LZ1 G~_1 G_LZ2` (period starting just before the downward
/// crossing region ends).
pub fn full_cycle_matrix_regrouped(p: &DriveParams) -> Result<Unitary2> {
    let c = lz_crossing(p)?;
    let ph = theta_tildes(p)?;
    Ok(Unitary2::z_phase(ph.theta_tilde_2)
        * lz_transfer_matrix(&c, CrossingDirection::Downward)
        * Unitary2::z_phase(ph.theta_tilde_1)
        * lz_transfer_matrix(&c, CrossingDirection::Upward))
}

/// Full cycle assembled from explicit crossing windows of half-width `tau`.
///
/// The window reaches `tau` into the `eps > 0` region and as far into the
/// other region as needed to pick up the same adiabatic phase. Region phases
/// are integrated between window edges and each crossing matrix absorbs the
/// window phase, `theta_LZ1 = pi - theta_Stokes - W` and
/// `theta_LZ2 = theta_Stokes + W`, with `W` half the gap integrated over the
/// whole window. The returned matrix is transported back
/// to the crossing-centre boundary (conjugation by the phase of the first
/// half-window) so it is directly comparable with [`full_cycle_matrix`].
pub fn windowed_cycle_matrix(p: &DriveParams, tau: f64) -> Result<Unitary2> {
    let g = geometry(p)?;
    let q = zero_phase(p);
    if !(tau > 0.0 && tau < g.t1 && 2.0 * tau < g.t2 - g.t1) {
        return Err(Error::Config(format!(
            "crossing window {tau} overlaps a neighbouring crossing"
        )));
    }
    let window = balanced_window(&q, &g, tau)?;
    let base = lz_crossing(p)?;
    let crossing = LzCrossing {
        theta_lz_1: base.theta_lz_1 - 2.0 * window.half_phase,
        theta_lz_2: base.theta_lz_2 + 2.0 * window.half_phase,
        ..base
    };
    let (theta1, theta2) = windowed_region_phases(&q, &g, &window)?;
    let shifted = compose_cycle(&crossing, theta1, theta2);
    let before = window.half_phase;
    Ok(Unitary2::z_phase(before) * shifted * Unitary2::z_phase(-before))
}

/// Factors `U = e^{i gamma} R_xy(zeta, phi) Z(theta)`.
///
/// When either `|u12|` or `|u11|` vanishes the azimuth is not determined and
/// is set to zero.
pub fn decompose_full_cycle(u: &Unitary2) -> FullCycleDecomposition {
    const DEGENERATE: f64 = 1e-14;
    let half_det = 0.5 * u.det().arg();
    let v = u.scale(C64::from_polar(1.0, -half_det));
    let (a, b) = (v.u11, v.u12);
    let zeta = 2.0 * b.norm().atan2(a.norm());
    let (mut theta, phi) = if b.norm() <= DEGENERATE {
        (-2.0 * a.arg(), 0.0)
    } else if a.norm() <= DEGENERATE {
        (2.0 * b.arg(), 0.0)
    } else {
        let theta = -2.0 * a.arg();
        (theta, b.arg() - 0.5 * theta)
    };
    let mut gamma = half_det;
    // Z(theta - 2 pi) = -Z(theta): fold theta into (-pi, pi] and move the
    // sign into the global phase.
    let wrapped = wrap_angle(theta);
    if (wrapped - theta).abs() > PI {
        gamma += PI;
    }
    theta = wrapped;
    FullCycleDecomposition {
        zeta_fc: zeta,
        theta_fc: theta,
        phi_fc: wrap_angle(phi),
        global_phase: wrap_angle(gamma),
    }
}

/// Stroboscopic P_up after each application of the full-cycle matrix;
/// the first sample is the initial state.
pub fn propagate_tm(p: &DriveParams, psi0: &QubitState, n_cycles: usize) -> Result<TimeSeries> {
    if n_cycles < 1 {
        return Err(Error::Config(
            "propagate_tm needs at least one cycle".into(),
        ));
    }
    let g = full_cycle_matrix(p)?;
    let mut psi = *psi0;
    let mut values = Vec::with_capacity(n_cycles + 1);
    values.push(psi.p_up());
    for _ in 0..n_cycles {
        psi = g * psi;
        values.push(psi.p_up().clamp(0.0, 1.0));
    }
    TimeSeries::new(0.0, p.period(), values)
}

fn require_fast(p: &DriveParams) -> Result<f64> {
    let v = sweep_rate(p)?;
    if v < p.delta * p.delta {
        return Err(Error::Regime(format!(
            "fast-crossing formula needs omega sqrt(A^2 - eps0^2) >= Delta^2 (got {v:.4} < {:.4})",
            p.delta * p.delta
        )));
    }
    Ok(v)
}

/// Closed-form fast-crossing oscillation frequency
/// `(2 omega / pi) sqrt(pi Delta^2 / (2 v)) |cos(theta~_2 - pi/4)|` with the
/// gap correction `f2` dropped from `theta~_2`.
pub fn tm_fast_frequency(p: &DriveParams) -> Result<f64> {
    let v = require_fast(p)?;
    let g = geometry(p)?;
    let theta2 = g.root / p.omega - p.epsilon0 / p.omega * g.arccos;
    Ok(2.0 * p.omega / PI
        * (PI * p.delta * p.delta / (2.0 * v)).sqrt()
        * (theta2 - FRAC_PI_4).cos().abs())
}

/// Nearest integer to `eps0 / omega` and the distance to it; ties go to the
/// smaller integer.
pub fn tm_fast_resonance_check(p: &DriveParams) -> (i64, f64) {
    let x = p.epsilon0 / p.omega;
    let lo = x.floor();
    let n = if x - lo <= 0.5 { lo } else { lo + 1.0 };
    (n as i64, (x - n).abs())
}

/// Resonance width `omega^2 zeta_FC / (2 pi eps0)`.
pub fn tm_resonance_width(p: &DriveParams, zeta_fc: f64, n: i64) -> Result<f64> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "resonance width not applicable for n = {n}"
        )));
    }
    if p.epsilon0 <= 0.0 {
        return Err(Error::Domain(
            "resonance width not applicable for eps0 = 0".into(),
        ));
    }
    Ok(p.omega * p.omega * zeta_fc / (TAU * p.epsilon0))
}

/// Slow-crossing resonance estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlowResonance {
    /// `eps0/omega + 2 sqrt(A^2-eps0^2)/(pi omega) - 2 eps0 arccos(eps0/A)/(pi omega)`.
    pub lhs: f64,
    pub nearest_integer: i64,
    /// `|lhs - nearest_integer|`.
    pub residual: f64,
    /// Slow-limit closed form
    /// `-2 pi + 2 pi eps0/omega + 4 sqrt(A^2-eps0^2)/omega - 4 eps0 arccos(eps0/A)/omega + 2 f1 + 2 f2`.
    /// It equals minus the `theta_FC` of [`decompose_full_cycle`] modulo
    /// `2 pi`, up to the dropped Stokes phase; both vanish together on
    /// resonance.
    pub theta_fc_refined: f64,
    /// `omega sqrt(A^2 - eps0^2) <= Delta^2`.
    pub in_slow_regime: bool,
}

pub fn tm_slow_resonance_lhs(p: &DriveParams) -> Result<SlowResonance> {
    let g = geometry(p)?;
    let phases = theta_tildes(p)?;
    let (w, eps0) = (p.omega, p.epsilon0);
    let lhs = eps0 / w + 2.0 * g.root / (PI * w) - 2.0 * eps0 / (PI * w) * g.arccos;
    let (n, residual) = nearest_integer(lhs);
    let theta_fc_refined = -TAU + TAU * eps0 / w + 4.0 * g.root / w - 4.0 * eps0 / w * g.arccos
        + 2.0 * phases.f1
        + 2.0 * phases.f2;
    let v = sweep_rate(p)?;
    Ok(SlowResonance {
        lhs,
        nearest_integer: n,
        residual,
        theta_fc_refined,
        in_slow_regime: v <= p.delta * p.delta,
    })
}

fn nearest_integer(x: f64) -> (i64, f64) {
    let lo = x.floor();
    let n = if x - lo <= 0.5 { lo } else { lo + 1.0 };
    (n as i64, (x - n).abs())
}

/// `Omega = omega zeta_FC / (2 pi)` from the composed cycle matrix.
pub fn tm_slow_frequency(p: &DriveParams) -> Result<f64> {
    let d = decompose_full_cycle(&full_cycle_matrix(p)?);
    Ok(p.omega * d.zeta_fc / TAU)
}

/// Everything the transfer-matrix picture predicts for one parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TmPrediction {
    pub crossing: LzCrossing,
    pub phases: CyclePhases,
    pub decomposition: FullCycleDecomposition,
    /// `omega zeta_FC / (2 pi)`.
    pub omega_osc: f64,
    /// Closed-form fast-crossing frequency, when the sweep is fast enough.
    pub omega_fast: Option<f64>,
    pub resonance_n: i64,
    pub resonance_residual: f64,
    pub width: Option<f64>,
}

pub fn tm_predict(p: &DriveParams) -> Result<TmPrediction> {
    let crossing = lz_crossing(p)?;
    let phases = theta_tildes(p)?;
    let u = compose_cycle(&crossing, phases.theta_tilde_1, phases.theta_tilde_2);
    let decomposition = decompose_full_cycle(&u);
    let (resonance_n, resonance_residual) = tm_fast_resonance_check(p);
    Ok(TmPrediction {
        crossing,
        phases,
        decomposition,
        omega_osc: p.omega * decomposition.zeta_fc / TAU,
        omega_fast: tm_fast_frequency(p).ok(),
        resonance_n,
        resonance_residual,
        width: tm_resonance_width(p, decomposition.zeta_fc, resonance_n).ok(),
    })
}

/// Azimuth expected deep in the fast-crossing limit, `pi/2 - theta~_2`.
pub fn fast_limit_azimuth(phases: &CyclePhases) -> f64 {
    wrap_angle(FRAC_PI_2 - phases.theta_tilde_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(eps0: f64, amp: f64, omega: f64) -> DriveParams {
        DriveParams::new(1.0, eps0, amp, omega).unwrap()
    }

    #[test]
    fn crossing_time_examples() {
        let p = params(0.0, 4.0, 2.0);
        let (t1, t2) = crossing_times(&p).unwrap();
        assert!((t1 - PI / 4.0).abs() < 1e-14);
        assert!((t2 - 3.0 * PI / 4.0).abs() < 1e-14);

        let p = params(2.0, 4.0, 1.0);
        let (t1, _) = crossing_times(&p).unwrap();
        assert!((t1 - 2.0 * PI / 3.0).abs() < 1e-14);
        assert!(drive_epsilon(t1, &p).abs() < 1e-12);
    }

    #[test]
    fn no_crossing_is_a_regime_error() {
        let p = params(3.0, 3.0, 1.0);
        assert!(matches!(crossing_times(&p), Err(Error::Regime(_))));
        assert!(matches!(full_cycle_matrix(&p), Err(Error::Regime(_))));
        assert!(matches!(
            propagate_tm(&p, &QubitState::DOWN, 3),
            Err(Error::Regime(_))
        ));
    }

    #[test]
    fn mixing_angle_limits() {
        assert!(mixing_angle_for_rate(0.0, 1.0).abs() < 1e-15);
        assert!((mixing_angle_for_rate(1.0, 1e-6) - PI).abs() < 1e-12);
        let p = params(5.0, 30.0, 1.0);
        let chi = lz_mixing_angle(&p).unwrap();
        let expect = 1.0 - (-PI / (2.0 * 875f64.sqrt())).exp();
        assert!(((0.5 * chi).sin().powi(2) - expect).abs() < 1e-14);
    }

    #[test]
    fn transfer_matrix_examples() {
        let mut c = lz_crossing(&params(1.0, 10.0, 2.0)).unwrap();
        c.chi = 0.0;
        let u = lz_transfer_matrix(&c, CrossingDirection::Downward);
        assert!(u.max_abs_diff(&Unitary2::IDENTITY) < 1e-15);
        c.chi = PI;
        let u = lz_transfer_matrix(&c, CrossingDirection::Upward);
        assert!(u.u11.norm() < 1e-15 && (u.u12.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn boundary_independent_crossing_phases_sum_to_pi() {
        for &(e, a, w) in &[(0.0, 5.0, 1.0), (3.0, 15.0, 3.0), (1.0, 1.5, 0.05)] {
            let c = lz_crossing(&params(e, a, w)).unwrap();
            assert_eq!(c.theta_lz_1 + c.theta_lz_2, PI);
        }
    }

    #[test]
    fn gap_corrections_are_non_negative() {
        for &(e, a, w) in &[
            (0.0, 5.0, 1.0),
            (3.0, 15.0, 3.0),
            (1.0, 12.0, 0.5),
            (0.5, 2.0, 0.1),
        ] {
            let ph = theta_tildes(&params(e, a, w)).unwrap();
            assert!(ph.f1 >= 0.0 && ph.f2 >= 0.0, "{ph:?}");
        }
    }

    #[test]
    fn unbiased_phases_are_symmetric() {
        let ph = theta_tildes(&params(0.0, 7.0, 1.3)).unwrap();
        assert!((ph.theta_tilde_2 - ph.f2 - 7.0 / 1.3).abs() < 1e-12);
        assert!(
            ((ph.theta_tilde_1.abs() - ph.f1) - (ph.theta_tilde_2.abs() - ph.f2)).abs() < 1e-12
        );
        assert!((ph.f1 - ph.f2).abs() < 1e-9);
    }

    #[test]
    fn decomposition_special_cases() {
        let d = decompose_full_cycle(&Unitary2::IDENTITY);
        assert!(d.zeta_fc.abs() < 1e-15 && d.theta_fc.abs() < 1e-15);
        let beta = 0.7;
        let d = decompose_full_cycle(&Unitary2::z_phase(beta));
        assert!(d.zeta_fc.abs() < 1e-15);
        assert!((d.theta_fc - 2.0 * beta).abs() < 1e-14);
        assert_eq!(d.phi_fc, 0.0);
        let swap = Unitary2::xy_rotation(PI, 0.3);
        let d = decompose_full_cycle(&swap);
        assert!((d.zeta_fc - PI).abs() < 1e-14);
        assert_eq!(d.phi_fc, 0.0);
        assert!(d.reconstruct().max_abs_diff(&swap) < 1e-14);
    }

    #[test]
    fn resonance_check_examples() {
        assert_eq!(tm_fast_resonance_check(&params(5.0, 30.0, 1.0)), (5, 0.0));
        assert_eq!(tm_fast_resonance_check(&params(0.0, 3.0, 0.7)), (0, 0.0));
        assert_eq!(tm_fast_resonance_check(&params(3.5, 30.0, 1.0)), (3, 0.5));
    }

    #[test]
    fn width_examples() {
        let p = params(3.0, 15.0, 3.0);
        let w1 = tm_resonance_width(&p, 0.1, 1).unwrap();
        let w2 = tm_resonance_width(&p, 0.2, 1).unwrap();
        assert!((w2 - 2.0 * w1).abs() < 1e-15);
        assert!(tm_resonance_width(&p, 0.1, 0).is_err());
        assert!(tm_resonance_width(&params(0.0, 15.0, 3.0), 0.1, 1).is_err());
    }

    #[test]
    fn slow_lhs_limits() {
        let p = params(0.0, 3.0, 0.2);
        let s = tm_slow_resonance_lhs(&p).unwrap();
        assert!((s.lhs - 2.0 * 3.0 / (PI * 0.2)).abs() < 1e-12);
        let p = params(2.0, 2.0 + 1e-9, 0.5);
        let s = tm_slow_resonance_lhs(&p).unwrap();
        assert!((s.lhs - 4.0).abs() < 1e-3);
    }

    #[test]
    fn fast_formula_needs_fast_sweep() {
        assert!(matches!(
            tm_fast_frequency(&params(0.0, 2.0, 0.1)),
            Err(Error::Regime(_))
        ));
        assert!(tm_fast_frequency(&params(0.0, 20.0, 1.0)).is_ok());
    }
}
