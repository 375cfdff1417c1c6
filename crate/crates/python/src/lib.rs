//! Python module `lzs`: exact propagation, rotating-wave and transfer-matrix
//! predictions, frequency extraction and parameter scans.
//!
//! Energies are in units of the gap `delta` carried by [`PyDriveParams`]
//! (default 1).

use lzs_core::analysis::{self, Axis, FrequencyOptions, Grid, ScanConfig};
use lzs_core::dynamics::{self, DriveParams, TimeSeries, DEFAULT_STEPS_PER_PERIOD};
use lzs_core::{rwa, specfun, transfer, Error, QubitState, Unitary2};
use num_complex::Complex64 as C64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

create_exception!(
    lzs,
    RegimeError,
    PyValueError,
    "Parameters outside the regime a method needs."
);
create_exception!(
    lzs,
    NumericalError,
    PyRuntimeError,
    "A numerical routine failed."
);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Regime(_) | Error::Bracket(_) => RegimeError::new_err(e.to_string()),
        Error::Numerical(_) | Error::InsufficientData(_) => NumericalError::new_err(e.to_string()),
        Error::Config(_) | Error::Domain(_) | Error::Range(_) => {
            PyValueError::new_err(e.to_string())
        }
    }
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for lzs_core::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// Drive parameters `eps(t) = eps0 + amp cos(omega t + phi)`.
#[pyclass(name = "DriveParams", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyDriveParams {
    inner: DriveParams,
}

#[pymethods]
impl PyDriveParams {
    #[new]
    #[pyo3(signature = (eps0, amp, omega, phi = 0.0, delta = 1.0))]
    fn new(eps0: f64, amp: f64, omega: f64, phi: f64, delta: f64) -> PyResult<Self> {
        let inner = DriveParams::new(delta, eps0, amp, omega)
            .and_then(|p| p.with_phi(phi))
            .py_err()?;
        Ok(Self { inner })
    }

    #[getter]
    fn eps0(&self) -> f64 {
        self.inner.epsilon0
    }

    #[getter]
    fn amp(&self) -> f64 {
        self.inner.amplitude
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.inner.omega
    }

    #[getter]
    fn phi(&self) -> f64 {
        self.inner.phi
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.inner.delta
    }

    fn period(&self) -> f64 {
        self.inner.period()
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "DriveParams(eps0={}, amp={}, omega={}, phi={}, delta={})",
            p.epsilon0, p.amplitude, p.omega, p.phi, p.delta
        )
    }
}

/// One-period unitary, entries `[[u11, u12], [u21, u22]]`.
#[pyclass(name = "Unitary2", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyUnitary2 {
    inner: Unitary2,
}

#[pymethods]
impl PyUnitary2 {
    #[new]
    fn new(rows: [[C64; 2]; 2]) -> Self {
        Self {
            inner: Unitary2::from_entries(rows[0][0], rows[0][1], rows[1][0], rows[1][1]),
        }
    }

    fn entries(&self) -> [[C64; 2]; 2] {
        let [a, b, c, d] = self.inner.entries();
        [[a, b], [c, d]]
    }

    fn trace(&self) -> C64 {
        self.inner.trace()
    }

    fn unitarity_error(&self) -> f64 {
        self.inner.unitarity_error()
    }

    /// `(zeta_fc, theta_fc, phi_fc, global_phase)`.
    fn decompose(&self) -> (f64, f64, f64, f64) {
        let d = transfer::decompose_full_cycle(&self.inner);
        (d.zeta_fc, d.theta_fc, d.phi_fc, d.global_phase)
    }

    fn __matmul__(&self, other: &Self) -> Self {
        Self {
            inner: self.inner * other.inner,
        }
    }
}

/// Rebuilds a unitary from its decomposition.
#[pyfunction]
#[pyo3(signature = (zeta_fc, theta_fc, phi_fc, global_phase = 0.0))]
fn reconstruct(zeta_fc: f64, theta_fc: f64, phi_fc: f64, global_phase: f64) -> PyUnitary2 {
    let d = transfer::FullCycleDecomposition {
        zeta_fc,
        theta_fc,
        phi_fc,
        global_phase,
    };
    PyUnitary2 {
        inner: d.reconstruct(),
    }
}

fn series(ts: &TimeSeries) -> (Vec<f64>, Vec<f64>) {
    (ts.times().collect(), ts.values.clone())
}

/// Exact `P_up(t)` from `|down>` over `cycles` drive periods; returns
/// `(t, p_up)`.
#[pyfunction]
#[pyo3(signature = (params, cycles = 20.0, steps_per_period = DEFAULT_STEPS_PER_PERIOD))]
fn simulate(
    params: PyDriveParams,
    cycles: f64,
    steps_per_period: usize,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let p = params.inner;
    let ts =
        dynamics::propagate_exact(&p, &QubitState::DOWN, cycles * p.period(), steps_per_period)
            .py_err()?;
    Ok(series(&ts))
}

/// Stroboscopic `P_up` after each transfer-matrix cycle, starting from `|down>`.
#[pyfunction]
fn propagate_tm(params: PyDriveParams, cycles: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let ts = transfer::propagate_tm(&params.inner, &QubitState::DOWN, cycles).py_err()?;
    Ok(series(&ts))
}

#[pyfunction]
#[pyo3(signature = (params, steps_per_period = 2048))]
fn period_propagator(params: PyDriveParams, steps_per_period: usize) -> PyResult<PyUnitary2> {
    let inner = dynamics::period_propagator(&params.inner, 0.0, steps_per_period).py_err()?;
    Ok(PyUnitary2 { inner })
}

#[pyfunction]
fn full_cycle_matrix(params: PyDriveParams) -> PyResult<PyUnitary2> {
    Ok(PyUnitary2 {
        inner: transfer::full_cycle_matrix(&params.inner).py_err()?,
    })
}

#[pyfunction]
fn rwa_predict<'py>(py: Python<'py>, params: PyDriveParams) -> PyResult<Bound<'py, PyDict>> {
    let r = rwa::rwa_predict(&params.inner);
    let d = PyDict::new(py);
    d.set_item("n", r.n)?;
    d.set_item("detuning", r.detuning)?;
    d.set_item("omega_osc", r.omega_osc)?;
    d.set_item("width", r.width)?;
    d.set_item("valid", r.validity.is_valid())?;
    d.set_item("reason", r.reason)?;
    Ok(d)
}

#[pyfunction]
fn tm_predict<'py>(py: Python<'py>, params: PyDriveParams) -> PyResult<Bound<'py, PyDict>> {
    let t = transfer::tm_predict(&params.inner).py_err()?;
    let d = PyDict::new(py);
    d.set_item("zeta_fc", t.decomposition.zeta_fc)?;
    d.set_item("theta_fc", t.decomposition.theta_fc)?;
    d.set_item("phi_fc", t.decomposition.phi_fc)?;
    d.set_item("omega_osc", t.omega_osc)?;
    d.set_item("omega_fast", t.omega_fast)?;
    d.set_item("resonance_n", t.resonance_n)?;
    d.set_item("resonance_residual", t.resonance_residual)?;
    d.set_item("width", t.width)?;
    d.set_item(
        "transition_probability",
        t.crossing.transition_probability(),
    )?;
    d.set_item("stokes_phase", t.crossing.stokes_phase())?;
    Ok(d)
}

/// Regime label: `RABI`, `RWA`, `TM_FAST`, `TM_SLOW`, `TM_INTERMEDIATE` or
/// `OUTSIDE`.
#[pyfunction]
fn classify(params: PyDriveParams) -> &'static str {
    analysis::classify_regime(&params.inner).label.as_str()
}

#[pyfunction]
#[pyo3(signature = (omega, k_max = 5))]
fn cdt_amplitudes(omega: f64, k_max: u32) -> PyResult<Vec<f64>> {
    rwa::cdt_amplitudes(omega, k_max).py_err()
}

/// Dominant slow angular frequency of a uniformly sampled trace.
#[pyfunction]
#[pyo3(signature = (values, dt, smoothing = 0.0))]
fn extract_frequency<'py>(
    py: Python<'py>,
    values: Vec<f64>,
    dt: f64,
    smoothing: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let ts = TimeSeries::new(0.0, dt, values).py_err()?;
    let opts = FrequencyOptions {
        smoothing,
        band: None,
    };
    let e = analysis::extract_frequency(&ts, &opts).py_err()?;
    let d = PyDict::new(py);
    d.set_item("omega_est", e.omega_est)?;
    d.set_item("amplitude", e.amplitude)?;
    d.set_item("confidence", e.confidence)?;
    d.set_item("suppressed", e.suppressed)?;
    d.set_item("ambiguous", e.ambiguous)?;
    d.set_item("below_resolution", e.below_resolution)?;
    Ok(d)
}

/// Two-parameter scan; each axis is `(name, start, stop, count)` with name
/// in `A`, `eps0`, `omega`. Returns the long-format CSV text.
#[pyfunction]
#[pyo3(signature = (params, axis1, axis2, steps_per_period = DEFAULT_STEPS_PER_PERIOD))]
fn scan_csv(
    params: PyDriveParams,
    axis1: (String, f64, f64, usize),
    axis2: (String, f64, f64, usize),
    steps_per_period: usize,
) -> PyResult<String> {
    let grid =
        |(name, a, b, n): (String, f64, f64, usize)| Grid::linspace(Axis::parse(&name)?, a, b, n);
    let mut cfg =
        ScanConfig::new(params.inner, grid(axis1).py_err()?, grid(axis2).py_err()?).py_err()?;
    cfg.steps_per_period = steps_per_period;
    Ok(analysis::scan_resonance_map(&cfg).py_err()?.to_csv())
}

#[pyfunction]
fn bessel_jn(n: i32, x: f64) -> PyResult<f64> {
    specfun::bessel_jn(n, x).py_err()
}

#[pyfunction]
fn stokes_phase(delta_adiab: f64) -> PyResult<f64> {
    specfun::stokes_phase(delta_adiab).py_err()
}

#[pymodule]
pub fn lzs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDriveParams>()?;
    m.add_class::<PyUnitary2>()?;
    m.add("RegimeError", m.py().get_type::<RegimeError>())?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(propagate_tm, m)?)?;
    m.add_function(wrap_pyfunction!(period_propagator, m)?)?;
    m.add_function(wrap_pyfunction!(full_cycle_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(rwa_predict, m)?)?;
    m.add_function(wrap_pyfunction!(tm_predict, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(cdt_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(extract_frequency, m)?)?;
    m.add_function(wrap_pyfunction!(scan_csv, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_jn, m)?)?;
    m.add_function(wrap_pyfunction!(stokes_phase, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
