//! Exact propagator against closed forms, an independent fine-step RK4
//! integration, and structural invariants.

use std::f64::consts::PI;

use lzs_core::dynamics::{
    drive_epsilon, hamiltonian, linear_sweep_transition_probability, period_propagator,
    propagate_exact, propagate_exact_run, propagate_linear_sweep, propagator, step_unitary,
    steps_for_resolution, DriveParams,
};
use lzs_core::{QubitState, Unitary2};
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn params(eps0: f64, amp: f64, omega: f64) -> DriveParams {
    DriveParams::new(1.0, eps0, amp, omega).unwrap()
}

/// Classical RK4 on `i d/dt (a, b) = H (a, b)`, written out by hand.
fn rk4_p_up(p: &DriveParams, t_end: f64, n: usize) -> Vec<f64> {
    let deriv = |t: f64, a: C64, b: C64| {
        let e = drive_epsilon(t, p);
        let i = C64::new(0.0, 1.0);
        // H = [[-e/2, -d/2], [-d/2, e/2]]
        let ha = -0.5 * e * a - 0.5 * p.delta * b;
        let hb = -0.5 * p.delta * a + 0.5 * e * b;
        (-i * ha, -i * hb)
    };
    let h = t_end / n as f64;
    let (mut a, mut b) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let mut out = vec![0.0];
    for k in 0..n {
        let t = k as f64 * h;
        let (k1a, k1b) = deriv(t, a, b);
        let (k2a, k2b) = deriv(t + 0.5 * h, a + 0.5 * h * k1a, b + 0.5 * h * k1b);
        let (k3a, k3b) = deriv(t + 0.5 * h, a + 0.5 * h * k2a, b + 0.5 * h * k2b);
        let (k4a, k4b) = deriv(t + h, a + h * k3a, b + h * k3b);
        a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        out.push(a.norm_sqr());
    }
    out
}

#[test]
fn matches_independent_rk4() {
    let p = params(3.0, 10.0, 3.0);
    let periods = 10.0;
    let steps = 4096;
    let exact = propagate_exact(&p, &QubitState::DOWN, periods * p.period(), steps).unwrap();
    let fine = 4;
    let rk = rk4_p_up(&p, periods * p.period(), steps * 10 * fine);
    let worst = (0..exact.len())
        .map(|i| (exact.values[i] - rk[i * fine]).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1e-5, "worst deviation {worst}");
}

#[test]
fn undriven_unbiased_oscillation() {
    let p = params(0.0, 0.0, 1.0);
    let ts = propagate_exact(&p, &QubitState::DOWN, 40.0, 256).unwrap();
    for (t, v) in ts.times().zip(&ts.values) {
        assert!((v - (0.5 * t).sin().powi(2)).abs() < 1e-12);
    }
}

#[test]
fn undriven_biased_maximum() {
    let p = params(10.0, 0.0, 1.0);
    let ts = propagate_exact(&p, &QubitState::DOWN, 20.0, 512).unwrap();
    let max = ts.values.iter().copied().fold(0.0, f64::max);
    assert!((0.009..=0.011).contains(&max), "max {max}");
    assert!((max - 1.0 / 101.0).abs() < 1e-4);
}

#[test]
fn no_tunnelling_keeps_populations() {
    let p = DriveParams::new(1e-300, 2.0, 7.0, 1.3).unwrap();
    let ts = propagate_exact(&p, &QubitState::DOWN, 30.0, 64).unwrap();
    assert!(ts.values.iter().all(|v| *v < 1e-20));
}

#[test]
fn step_follows_diagonal_phase_without_tunnelling() {
    let p = DriveParams::new(1e-300, 1.0, 2.0, 1.0).unwrap();
    let (t, h) = (0.3, 0.01);
    let e = drive_epsilon(t + 0.5 * h, &p);
    let u = step_unitary(t, h, &p);
    let expect = Unitary2::from_entries(
        C64::from_polar(1.0, 0.5 * h * e),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::from_polar(1.0, -0.5 * h * e),
    );
    assert!(u.max_abs_diff(&expect) < 1e-15);
}

#[test]
fn hamiltonian_spectrum() {
    let p = params(1.5, 4.0, 2.0);
    for k in 0..20 {
        let t = 0.17 * k as f64;
        let [lo, hi] = hamiltonian(t, &p).eigenvalues();
        let e = 0.5 * drive_epsilon(t, &p).hypot(1.0);
        assert!((hi - e).abs() < 1e-14 && (lo + e).abs() < 1e-14);
    }
}

#[test]
fn unitarity_after_many_steps() {
    let p = params(2.0, 25.0, 0.7);
    let u = propagator(&p, 0.0, p.period() / 256.0, 10_000);
    assert!(u.unitarity_error() < 1e-10);
    assert!((u.det().norm() - 1.0).abs() < 1e-10);
}

#[test]
fn time_reversal() {
    let p = params(1.0, 12.0, 2.5);
    let psi0 = QubitState::normalized(C64::new(0.3, 0.1), C64::new(-0.2, 0.9)).unwrap();
    let u = propagator(&p, 0.0, p.period() / 256.0, 5_000);
    let back = u.adjoint() * (u * psi0);
    assert!((back.up() - psi0.up()).norm() < 1e-10);
    assert!((back.down() - psi0.down()).norm() < 1e-10);
}

#[test]
fn sigma_x_symmetry_at_zero_bias() {
    let p = params(0.0, 7.0, 1.7);
    let from_down = propagate_exact(&p, &QubitState::DOWN, 15.0, 256).unwrap();
    let from_up = propagate_exact(&p, &QubitState::UP, 15.0, 256).unwrap();
    for (a, b) in from_down.values.iter().zip(&from_up.values) {
        assert!((a - (1.0 - b)).abs() < 1e-9);
    }
}

fn max_dev_on_coarse_grid(coarse: &[f64], fine: &[f64]) -> f64 {
    let r = (fine.len() - 1) / (coarse.len() - 1);
    coarse
        .iter()
        .enumerate()
        .map(|(i, c)| (c - fine[i * r]).abs())
        .fold(0.0, f64::max)
}

#[test]
fn second_order_convergence() {
    let p = params(3.0, 10.0, 3.0);
    let t_end = 10.0 * p.period();
    let run = |s| {
        propagate_exact(&p, &QubitState::DOWN, t_end, s)
            .unwrap()
            .values
    };
    let (a, b, reference) = (run(256), run(512), run(2048));
    let ratio = max_dev_on_coarse_grid(&a, &reference) / max_dev_on_coarse_grid(&b, &reference);
    // h^2 errors against a reference four times finer than the finer run.
    assert!((3.6..=4.8).contains(&ratio), "ratio {ratio}");
}

#[test]
fn doubling_resolution_at_default_is_small_for_moderate_drive() {
    let p = params(3.0, 10.0, 3.0);
    let t_end = 20.0 * p.period();
    let a = propagate_exact(&p, &QubitState::DOWN, t_end, 256)
        .unwrap()
        .values;
    let b = propagate_exact(&p, &QubitState::DOWN, t_end, 512)
        .unwrap()
        .values;
    let dev = max_dev_on_coarse_grid(&a, &b);
    assert!(dev < 1e-2, "deviation {dev}");
}

#[test]
fn resolution_helper_scales_with_gap() {
    let p = params(0.0, 50.0, 0.2);
    let s = steps_for_resolution(&p, 0.05);
    assert!(s as f64 * 0.05 >= p.period() * 50.0);
    assert_eq!(steps_for_resolution(&params(0.0, 0.0, 10.0), 0.05), 256);
}

#[test]
fn period_propagator_composes_runs() {
    let p = params(1.0, 6.0, 2.0);
    let u = period_propagator(&p, 0.0, 128).unwrap();
    let run = propagate_exact_run(&p, &QubitState::DOWN, 3.0 * p.period(), 128).unwrap();
    let psi = u * (u * (u * QubitState::DOWN));
    assert!((psi.p_up() - run.final_state.p_up()).abs() < 1e-12);
    assert_eq!(run.series.len(), 3 * 128 + 1);
}

#[test]
fn landau_zener_probability() {
    for v in [2.0, 5.0, 20.0, 100.0] {
        let p = linear_sweep_transition_probability(1.0, v, 50.0, 200_000).unwrap();
        let expect = 1.0 - (-PI / (2.0 * v)).exp();
        assert!(
            ((p - expect) / expect).abs() < 0.05,
            "v {v}: {p} vs {expect}"
        );
    }
    let p = linear_sweep_transition_probability(1.0, PI / 2.0, 50.0, 200_000).unwrap();
    assert!((p - (1.0 - (-1.0f64).exp())).abs() < 0.02 * 0.632);
    // At v = 1e4 the ramp must extend far beyond sqrt(v) for the finite-span
    // correction to drop below the tolerance.
    let p = linear_sweep_transition_probability(1.0, 1e4, 1e4, 2_000_000).unwrap();
    let expect = -(-PI / 2e4f64).exp_m1();
    assert!(((p - expect) / expect).abs() < 0.05, "{p} vs {expect}");
}

#[test]
fn decoupled_sweep_stays_put() {
    let psi = propagate_linear_sweep(0.0, 3.0, 20.0, &QubitState::DOWN, 2000).unwrap();
    assert!(psi.p_up() < 1e-30);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_is_conserved(
        eps0 in 0.0..10.0f64,
        amp in 0.0..50.0f64,
        omega in 0.2..20.0f64,
        up_re in -1.0..1.0f64,
        down_im in -1.0..1.0f64,
    ) {
        prop_assume!(up_re.abs() + down_im.abs() > 1e-3);
        let p = params(eps0, amp, omega);
        let psi0 = QubitState::normalized(C64::new(up_re, 0.0), C64::new(0.0, down_im)).unwrap();
        let run = propagate_exact_run(&p, &psi0, 20.0 * p.period(), 64).unwrap();
        prop_assert!((run.final_state.norm() - 1.0).abs() < 1e-10);
        prop_assert!(run.series.values.iter().all(|v| (0.0..=1.0).contains(v)));
    }

    #[test]
    fn steps_are_unitary(t in -50.0..50.0f64, h in 1e-6..1.0f64, eps0 in 0.0..10.0f64, amp in 0.0..50.0f64) {
        let u = step_unitary(t, h, &params(eps0, amp, 1.3));
        prop_assert!(u.unitarity_error() < 1e-13);
        prop_assert!((u.det() - C64::new(1.0, 0.0)).norm() < 1e-13);
    }
}
