//! Python bindings for `nogo-core`.

// pyo3 0.22 macros trip this lint on every PyResult method.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nogo_core::{
    channels, measures, nogo as experiments, states, ComplexMatrix, Ensemble, Error,
    ExperimentReport,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> PyResult<ComplexMatrix> {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n_cols) {
        return Err(PyValueError::new_err("ragged matrix rows"));
    }
    ComplexMatrix::new(n_rows, n_cols, rows.into_iter().flatten().collect()).map_err(err)
}

fn matrix_to_rows(m: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect()
}

#[pyclass(name = "PureState", module = "nogo")]
#[derive(Clone)]
struct PyPureState(states::PureState);

#[pymethods]
impl PyPureState {
    #[new]
    #[pyo3(signature = (amplitudes, dims=None))]
    fn new(amplitudes: Vec<Complex64>, dims: Option<Vec<usize>>) -> PyResult<Self> {
        let dims = dims.unwrap_or_else(|| vec![amplitudes.len()]);
        states::PureState::new(amplitudes, dims)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn basis(dim: usize, k: usize) -> PyResult<Self> {
        if k >= dim {
            return Err(PyValueError::new_err(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        Ok(Self(states::PureState::basis(dim, k)))
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.amplitudes().to_vec()
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().to_vec()
    }

    fn tensor(&self, other: &PyPureState) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn overlap(&self, other: &PyPureState) -> PyResult<Complex64> {
        self.0.overlap(&other.0).map_err(err)
    }

    fn to_density(&self) -> PyDensityMatrix {
        PyDensityMatrix(self.0.to_density())
    }

    fn __repr__(&self) -> String {
        format!("PureState(dims={:?})", self.0.dims())
    }
}

#[pyclass(name = "DensityMatrix", module = "nogo")]
#[derive(Clone)]
struct PyDensityMatrix(states::DensityMatrix);

#[pymethods]
impl PyDensityMatrix {
    #[new]
    #[pyo3(signature = (rows, dims=None))]
    fn new(rows: Vec<Vec<Complex64>>, dims: Option<Vec<usize>>) -> PyResult<Self> {
        let m = matrix_from_rows(rows)?;
        let dims = dims.unwrap_or_else(|| vec![m.rows()]);
        states::DensityMatrix::new(m, dims).map(Self).map_err(err)
    }

    #[staticmethod]
    fn maximally_mixed(dim: usize) -> Self {
        Self(states::DensityMatrix::maximally_mixed(dim))
    }

    #[getter]
    fn dims(&self) -> Vec<usize> {
        self.0.dims().to_vec()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.0.matrix())
    }

    fn spectrum(&self) -> PyResult<Vec<f64>> {
        self.0.spectrum().map_err(err)
    }

    fn partial_trace(&self, keep: Vec<usize>) -> PyResult<Self> {
        self.0.partial_trace(&keep).map(Self).map_err(err)
    }

    fn tensor(&self, other: &PyDensityMatrix) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dims={:?})", self.0.dims())
    }
}

#[pyclass(name = "Channel", module = "nogo")]
#[derive(Clone)]
struct PyChannel(channels::QuantumChannel);

#[pymethods]
impl PyChannel {
    /// Kraus operators as nested row lists; rejected unless trace preserving.
    #[new]
    fn new(
        kraus: Vec<Vec<Vec<Complex64>>>,
        in_dims: Vec<usize>,
        out_dims: Vec<usize>,
    ) -> PyResult<Self> {
        let ops = kraus
            .into_iter()
            .map(matrix_from_rows)
            .collect::<PyResult<Vec<_>>>()?;
        channels::QuantumChannel::new_cptp(ops, in_dims, out_dims)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn demon() -> Self {
        Self(channels::demon_channel())
    }

    #[staticmethod]
    fn identity(dims: Vec<usize>) -> Self {
        Self(channels::identity_channel(dims))
    }

    #[staticmethod]
    fn random(in_dim: usize, out_dim: usize, env_dim: usize, seed: u64) -> PyResult<Self> {
        channels::random_channel(in_dim, out_dim, env_dim, seed)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        channels::QuantumChannel::from_json_str(text)
            .map(Self)
            .map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Largest entry of `|Σ K†K − I|`.
    #[getter]
    fn deviation(&self) -> f64 {
        channels::validate_cptp(&self.0).max_deviation
    }

    fn apply(&self, rho: &PyDensityMatrix) -> PyResult<PyDensityMatrix> {
        channels::apply_channel(&self.0, &rho.0)
            .map(PyDensityMatrix)
            .map_err(err)
    }

    /// Applies the channel through its Stinespring unitary and traces out the environment.
    fn apply_dilated(&self, rho: &PyDensityMatrix) -> PyResult<PyDensityMatrix> {
        channels::stinespring(&self.0)
            .and_then(|d| d.reduce(&rho.0))
            .map(PyDensityMatrix)
            .map_err(err)
    }
}

#[pyfunction]
#[pyo3(signature = (theta, phi=0.0))]
fn qubit(theta: f64, phi: f64) -> PyPureState {
    PyPureState(states::qubit(theta, phi))
}

#[pyfunction]
fn random_pure_state(dim: usize, seed: u64) -> PyPureState {
    PyPureState(states::random_pure_state(dim, seed))
}

#[pyfunction]
fn random_density_matrix(dim: usize, seed: u64) -> PyDensityMatrix {
    PyDensityMatrix(states::random_density_matrix(dim, seed))
}

#[pyfunction]
fn binary_entropy(p: f64) -> PyResult<f64> {
    measures::binary_entropy(p).map_err(err)
}

#[pyfunction]
fn von_neumann_entropy(rho: &PyDensityMatrix) -> PyResult<f64> {
    measures::von_neumann_entropy(&rho.0).map_err(err)
}

/// `S(ρ‖σ)` in bits; `inf` when the support of ρ leaves that of σ.
#[pyfunction]
fn relative_entropy(rho: &PyDensityMatrix, sigma: &PyDensityMatrix) -> PyResult<f64> {
    measures::relative_entropy(&rho.0, &sigma.0)
        .map(|v| v.bits())
        .map_err(err)
}

/// Holevo quantity of `[(p, rho), ...]`.
#[pyfunction]
fn holevo_quantity(members: Vec<(f64, PyDensityMatrix)>) -> PyResult<f64> {
    let ensemble =
        Ensemble::new(members.into_iter().map(|(p, r)| (p, r.0)).collect()).map_err(err)?;
    measures::holevo_quantity(&ensemble).map_err(err)
}

#[pyfunction]
fn entanglement_entropy(psi: &PyPureState, alice: Vec<usize>) -> PyResult<f64> {
    measures::entanglement_entropy(&psi.0, &alice).map_err(err)
}

fn report_dict<'py>(py: Python<'py>, r: &ExperimentReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new_bound(py);
    d.set_item("name", &r.name)?;
    for (k, v) in r.params.iter().chain(&r.quantities) {
        d.set_item(k, v)?;
    }
    d.set_item("verdict", r.verdict.as_str())?;
    d.set_item("expected", r.expected.as_str())?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (tolerance=experiments::DEFAULT_TOLERANCE))]
fn deleting_entropy_gap(py: Python<'_>, tolerance: f64) -> PyResult<Bound<'_, PyDict>> {
    report_dict(
        py,
        &experiments::deleting_entropy_gap(tolerance).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (s, t=1.0, tolerance=experiments::DEFAULT_TOLERANCE))]
fn deleting_sweep_point(
    py: Python<'_>,
    s: f64,
    t: f64,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    let sc = experiments::DeletingScenario::new(s, t).map_err(err)?;
    report_dict(
        py,
        &experiments::sharper_deleting_entropies(&sc, tolerance).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (s, e=1.0, weak=false, tolerance=experiments::DEFAULT_TOLERANCE))]
fn cloning_holevo(
    py: Python<'_>,
    s: f64,
    e: f64,
    weak: bool,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    let sc = experiments::CloningScenario::new(s, e).map_err(err)?;
    report_dict(
        py,
        &experiments::cloning_holevo(&sc, weak, tolerance).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (s, tolerance=experiments::DEFAULT_TOLERANCE))]
fn entanglement_deleting(py: Python<'_>, s: f64, tolerance: f64) -> PyResult<Bound<'_, PyDict>> {
    let sc = experiments::DeletingScenario::exact(s).map_err(err)?;
    report_dict(
        py,
        &experiments::entanglement_deleting(&sc, tolerance).map_err(err)?,
    )
}

#[pyfunction]
#[pyo3(signature = (s, e=1.0, tolerance=experiments::DEFAULT_TOLERANCE))]
fn entanglement_cloning(
    py: Python<'_>,
    s: f64,
    e: f64,
    tolerance: f64,
) -> PyResult<Bound<'_, PyDict>> {
    let sc = experiments::CloningScenario::new(s, e).map_err(err)?;
    report_dict(
        py,
        &experiments::entanglement_cloning(&sc, tolerance).map_err(err)?,
    )
}

/// Runs the CLI with `args` (without the program name); returns the exit code.
#[pyfunction]
fn run_cli(args: Vec<String>) -> i32 {
    nogo_core::cli::main_with_args(std::iter::once("nogo".to_string()).chain(args))
}

#[pymodule]
fn nogo(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPureState>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyChannel>()?;
    m.add_function(wrap_pyfunction!(qubit, m)?)?;
    m.add_function(wrap_pyfunction!(random_pure_state, m)?)?;
    m.add_function(wrap_pyfunction!(random_density_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(holevo_quantity, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(deleting_entropy_gap, m)?)?;
    m.add_function(wrap_pyfunction!(deleting_sweep_point, m)?)?;
    m.add_function(wrap_pyfunction!(cloning_holevo, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_deleting, m)?)?;
    m.add_function(wrap_pyfunction!(entanglement_cloning, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
