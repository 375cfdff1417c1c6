//! Driven two-level Hamiltonian and its exact time-domain propagator.
//!
//! The Hamiltonian is `H(t) = -(Delta/2) sx - (eps(t)/2) sz` with harmonic
//! bias `eps(t) = eps0 + A cos(omega t + phi)` and `hbar = 1`. Propagation
//! uses the exponential midpoint rule: each substep is the closed-form
//! exponential of `H` at the substep midpoint, so every factor is unitary up
//! to rounding and the scheme is second order in the step size.

use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qubit::{QubitState, Unitary2};

pub const DEFAULT_STEPS_PER_PERIOD: usize = 256;
pub const MIN_STEPS_PER_PERIOD: usize = 16;
pub const MIN_SWEEP_STEPS: usize = 1000;

/// Physical parameters of the driven Hamiltonian, in units where `hbar = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriveParams {
    /// Minimum gap `Delta`.
    pub delta: f64,
    /// Static bias `eps0`.
    pub epsilon0: f64,
    /// Drive amplitude `A`.
    pub amplitude: f64,
    /// Drive angular frequency `omega`.
    pub omega: f64,
    /// Drive phase `phi`.
    pub phi: f64,
}

impl DriveParams {
    /// Checked constructor with `phi = 0`.
    pub fn new(delta: f64, epsilon0: f64, amplitude: f64, omega: f64) -> Result<Self> {
        let p = Self {
            delta,
            epsilon0,
            amplitude,
            omega,
            phi: 0.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_phi(mut self, phi: f64) -> Result<Self> {
        self.phi = phi;
        self.validate()?;
        Ok(self)
    }

    /// `Delta > 0`, `omega > 0`, `A >= 0`, `eps0 >= 0`, everything finite.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.delta,
            self.epsilon0,
            self.amplitude,
            self.omega,
            self.phi,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Config(format!(
                "non-finite drive parameter in {self:?}"
            )));
        }
        if self.delta <= 0.0 {
            return Err(Error::Config(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if self.omega <= 0.0 {
            return Err(Error::Config(format!(
                "omega must be positive, got {}",
                self.omega
            )));
        }
        if self.amplitude < 0.0 {
            return Err(Error::Config(format!(
                "amplitude must be non-negative, got {}",
                self.amplitude
            )));
        }
        if self.epsilon0 < 0.0 {
            return Err(Error::Config(format!(
                "eps0 must be non-negative, got {}",
                self.epsilon0
            )));
        }
        Ok(())
    }

    pub fn period(&self) -> f64 {
        TAU / self.omega
    }

    /// Same physics with every energy scaled by `factor` (time by `1/factor`).
    pub fn rescaled(&self, factor: f64) -> Self {
        Self {
            delta: self.delta * factor,
            epsilon0: self.epsilon0 * factor,
            amplitude: self.amplitude * factor,
            omega: self.omega * factor,
            phi: self.phi,
        }
    }
}

/// Bias `eps0 + A cos(omega t + phi)`.
pub fn drive_epsilon(t: f64, p: &DriveParams) -> f64 {
    p.epsilon0 + p.amplitude * (p.omega * t + p.phi).cos()
}

/// Traceless Hermitian 2x2 matrix `x sx + z sz`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hermitian2 {
    pub x: f64,
    pub z: f64,
}

impl Hermitian2 {
    pub fn entries(&self) -> [[C64; 2]; 2] {
        [
            [C64::new(self.z, 0.0), C64::new(self.x, 0.0)],
            [C64::new(self.x, 0.0), C64::new(-self.z, 0.0)],
        ]
    }

    /// Eigenvalues in ascending order, `-/+ sqrt(x^2 + z^2)`.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let r = self.x.hypot(self.z);
        [-r, r]
    }

    /// `exp(-i h self)` from `cos(h r) I - i sin(h r)/r (x sx + z sz)`.
    pub fn propagator(&self, h: f64) -> Unitary2 {
        let r = self.x.hypot(self.z);
        let (s, c) = (h * r).sin_cos();
        let k = if r > 0.0 { s / r } else { h };
        let off = C64::new(0.0, -k * self.x);
        Unitary2::from_entries(C64::new(c, -k * self.z), off, off, C64::new(c, k * self.z))
    }
}

pub fn hamiltonian(t: f64, p: &DriveParams) -> Hermitian2 {
    hamiltonian_at_bias(p.delta, drive_epsilon(t, p))
}

fn hamiltonian_at_bias(delta: f64, epsilon: f64) -> Hermitian2 {
    Hermitian2 {
        x: -0.5 * delta,
        z: -0.5 * epsilon,
    }
}

/// `exp(-i h H(t + h/2))`.
pub fn step_unitary(t: f64, h: f64, p: &DriveParams) -> Unitary2 {
    hamiltonian(t + 0.5 * h, p).propagator(h)
}

/// P_up sampled on a uniform time grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub t0: f64,
    pub dt: f64,
    pub values: Vec<f64>,
}

impl TimeSeries {
    /// Validated constructor: `dt > 0`, every value in `[0, 1]` within `1e-9`.
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::Config(format!(
                "time step must be positive, got {dt}"
            )));
        }
        if let Some(v) = values.iter().find(|v| !(-1e-9..=1.0 + 1e-9).contains(*v)) {
            return Err(Error::Domain(format!("probability {v} outside [0, 1]")));
        }
        Ok(Self { t0, dt, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn time(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.values.len().saturating_sub(1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(move |i| self.time(i))
    }

    /// Every `stride`-th sample starting from the first.
    pub fn decimate(&self, stride: usize) -> TimeSeries {
        let stride = stride.max(1);
        TimeSeries {
            t0: self.t0,
            dt: self.dt * stride as f64,
            values: self.values.iter().step_by(stride).copied().collect(),
        }
    }
}

/// Outcome of an exact propagation: the sampled trace plus the final state.
#[derive(Clone, Debug)]
pub struct ExactRun {
    pub series: TimeSeries,
    pub final_state: QubitState,
    pub steps_per_period: usize,
}

fn check_steps(steps_per_period: usize) -> Result<()> {
    if steps_per_period < MIN_STEPS_PER_PERIOD {
        return Err(Error::Config(format!(
            "steps_per_period must be at least {MIN_STEPS_PER_PERIOD}, got {steps_per_period}"
        )));
    }
    Ok(())
}

/// Number of substeps of length `period / steps_per_period` covering `t_end`.
fn substeps_for(t_end: f64, dt: f64) -> usize {
    let n = t_end / dt;
    // Absorb rounding so that t_end = N periods gives exactly N * steps.
    (n - 1e-9 * n.max(1.0)).ceil().max(1.0) as usize
}

/// Propagates `psi0` from `t = 0` to at least `t_end`, recording P_up at
/// `t = 0` and after every substep.
pub fn propagate_exact(
    p: &DriveParams,
    psi0: &QubitState,
    t_end: f64,
    steps_per_period: usize,
) -> Result<TimeSeries> {
    Ok(propagate_exact_run(p, psi0, t_end, steps_per_period)?.series)
}

pub fn propagate_exact_run(
    p: &DriveParams,
    psi0: &QubitState,
    t_end: f64,
    steps_per_period: usize,
) -> Result<ExactRun> {
    p.validate()?;
    check_steps(steps_per_period)?;
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Config(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    let dt = p.period() / steps_per_period as f64;
    let n = substeps_for(t_end, dt);
    let mut values = Vec::with_capacity(n + 1);
    let mut psi = *psi0;
    values.push(psi.p_up());
    for k in 0..n {
        psi = step_unitary(k as f64 * dt, dt, p) * psi;
        values.push(psi.p_up().clamp(0.0, 1.0));
    }
    Ok(ExactRun {
        series: TimeSeries {
            t0: 0.0,
            dt,
            values,
        },
        final_state: psi,
        steps_per_period,
    })
}

/// Smallest substep count per period (at least the default) for which no
/// midpoint step advances the largest instantaneous gap phase by more than
/// `max_step_phase`.
pub fn steps_for_resolution(p: &DriveParams, max_step_phase: f64) -> usize {
    let gap = p.delta.hypot(p.epsilon0.abs() + p.amplitude);
    let needed = (p.period() * gap / max_step_phase).ceil();
    if needed.is_finite() {
        (needed as usize).max(DEFAULT_STEPS_PER_PERIOD)
    } else {
        DEFAULT_STEPS_PER_PERIOD
    }
}

/// Composed propagator `U(t0 + n h, t0)` from `n` midpoint substeps.
pub fn propagator(p: &DriveParams, t0: f64, h: f64, n: usize) -> Unitary2 {
    (0..n).fold(Unitary2::IDENTITY, |acc, k| {
        step_unitary(t0 + k as f64 * h, h, p) * acc
    })
}

/// One-drive-period propagator starting at `t0`.
pub fn period_propagator(p: &DriveParams, t0: f64, steps_per_period: usize) -> Result<Unitary2> {
    p.validate()?;
    check_steps(steps_per_period)?;
    let h = p.period() / steps_per_period as f64;
    Ok(propagator(p, t0, h, steps_per_period))
}

/// Evolves under a linear bias ramp `eps(t) = v t` from `eps = -span` to
/// `eps = +span`.
///
/// `span` should be large compared with `delta`; the asymptotic
/// Landau–Zener formulas only apply in that limit.
pub fn propagate_linear_sweep(
    delta: f64,
    v: f64,
    span: f64,
    psi0: &QubitState,
    steps: usize,
) -> Result<QubitState> {
    Ok(linear_sweep_propagator(delta, v, span, steps)? * *psi0)
}

/// The full-ramp propagator used by [`propagate_linear_sweep`].
pub fn linear_sweep_propagator(delta: f64, v: f64, span: f64, steps: usize) -> Result<Unitary2> {
    if steps < MIN_SWEEP_STEPS {
        return Err(Error::Config(format!(
            "linear sweep needs at least {MIN_SWEEP_STEPS} steps, got {steps}"
        )));
    }
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Config(format!(
            "sweep rate must be positive, got {v}"
        )));
    }
    if !(span > 0.0 && span.is_finite()) {
        return Err(Error::Config(format!(
            "sweep span must be positive, got {span}"
        )));
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::Config(format!(
            "delta must be non-negative, got {delta}"
        )));
    }
    let t_start = -span / v;
    let h = 2.0 * span / v / steps as f64;
    Ok((0..steps).fold(Unitary2::IDENTITY, |acc, k| {
        let t_mid = t_start + (k as f64 + 0.5) * h;
        hamiltonian_at_bias(delta, v * t_mid).propagator(h) * acc
    }))
}

/// Probability that a linear sweep switches the system between the two
/// asymptotic adiabatic branches that connect `|down>` to `|up>`.
///
/// The ramp starts in the instantaneous eigenstate at `eps = -span` that is
/// dominated by `|down>` (the lower branch, since `E_down = eps/2 < 0`
/// there) and the result is projected onto the eigenstate at
/// `eps = +span` that is mostly `|up>`. Projecting onto eigenstates rather
/// than bare basis states removes the `O(delta/span)` ringing of the
/// diabatic populations at the ends of a finite ramp.
pub fn linear_sweep_transition_probability(
    delta: f64,
    v: f64,
    span: f64,
    steps: usize,
) -> Result<f64> {
    let u = linear_sweep_propagator(delta, v, span, steps)?;
    let start = eigenstate_dominated_by_down(delta, -span);
    let end = eigenstate_dominated_by_down(delta, span);
    // The up-dominated state at +span is orthogonal to the down-dominated one.
    let end_up = QubitState::new(-end.down().conj(), end.up().conj())?;
    let psi = u * start;
    Ok(end_up.overlap(&psi).norm_sqr())
}

/// Eigenvector of `H = -(delta/2) sx - (eps/2) sz` with the larger `|down>`
/// weight.
fn eigenstate_dominated_by_down(delta: f64, epsilon: f64) -> QubitState {
    // Mixing angle: tan(theta) = delta / |eps|.
    let theta = delta.atan2(epsilon.abs());
    let (s, c) = (0.5 * theta).sin_cos();
    // For eps > 0 the down state is the upper level, for eps < 0 the lower;
    // in both cases the small |up> admixture has sign +-s.
    let up = if epsilon >= 0.0 { -s } else { s };
    QubitState::new(C64::new(up, 0.0), C64::new(c, 0.0)).expect("unit vector")
}
