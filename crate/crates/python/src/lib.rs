//! Python module `revunc`: observables, states, relation checks, sampling
//! and the gap minimizer. Library errors surface as `ValueError`.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use revunc_core::inequalities::{Checker, Relation};
use revunc_core::linalg::{CMatrix, CVector, Complex64};
use revunc_core::search::{minimize_gap as core_minimize, SearchConfig};
use revunc_core::{sampling, PairStatistics, Tolerances};

fn value_error(e: revunc_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

trait OrValueError<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrValueError<T> for revunc_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(value_error)
    }
}

fn relation(name: &str) -> PyResult<Relation> {
    name.parse().py()
}

fn checker(tolerance: Option<f64>) -> Checker {
    Checker::new(tolerance.map_or_else(Tolerances::default, Tolerances::with_holds))
}

/// Hermitian matrix with a display label.
#[pyclass(name = "Observable", module = "revunc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyObservable(revunc_core::Observable);

#[pymethods]
impl PyObservable {
    #[new]
    #[pyo3(signature = (matrix, label = "F"))]
    fn new(matrix: Vec<Vec<Complex64>>, label: &str) -> PyResult<Self> {
        let m = CMatrix::from_rows(&matrix).py()?;
        Ok(Self(revunc_core::Observable::new(m, label).py()?))
    }

    /// One of "I", "X", "Y", "Z".
    #[staticmethod]
    fn pauli(name: &str) -> PyResult<Self> {
        Ok(Self(revunc_core::Observable::pauli(name).py()?))
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label().to_owned()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.0.matrix().rows().map(<[Complex64]>::to_vec).collect()
    }

    fn expectation(&self, state: &PyState) -> PyResult<f64> {
        self.0.expectation(&state.0).py()
    }

    fn variance(&self, state: &PyState) -> PyResult<f64> {
        self.0.variance(&state.0).py()
    }

    fn std_dev(&self, state: &PyState) -> PyResult<f64> {
        self.0.std_dev(&state.0).py()
    }

    fn deviation_vector(&self, state: &PyState) -> PyResult<Vec<Complex64>> {
        Ok(self.0.deviation_vector(&state.0).py()?.vector.entries().to_vec())
    }

    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(self.0.matrix().eig_hermitian().py()?.eigenvalues().to_vec())
    }

    fn __repr__(&self) -> String {
        format!("Observable(label={:?}, dim={})", self.0.label(), self.0.dim())
    }
}

/// Normalized pure state.
#[pyclass(name = "State", module = "revunc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyState(revunc_core::State);

#[pymethods]
impl PyState {
    #[new]
    #[pyo3(signature = (amplitudes, normalize = false))]
    fn new(amplitudes: Vec<Complex64>, normalize: bool) -> PyResult<Self> {
        let v = CVector::new(amplitudes).py()?;
        let state = if normalize {
            revunc_core::State::normalize(v)
        } else {
            revunc_core::State::new(v)
        };
        Ok(Self(state.py()?))
    }

    #[staticmethod]
    fn basis(dim: usize, k: usize) -> PyResult<Self> {
        Ok(Self(revunc_core::State::basis(dim, k).py()?))
    }

    #[staticmethod]
    fn plus() -> Self {
        Self(revunc_core::State::plus())
    }

    #[staticmethod]
    fn bloch(theta: f64, phi: f64) -> Self {
        Self(sampling::bloch_state(theta, phi))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn amplitudes(&self) -> Vec<Complex64> {
        self.0.vector().entries().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("State(dim={})", self.0.dim())
    }
}

/// Outcome of one relation check.
#[pyclass(name = "EvalRecord", module = "revunc", frozen, get_all)]
struct PyEvalRecord {
    relation: String,
    defined: bool,
    holds: bool,
    lhs: Option<f64>,
    rhs: Option<f64>,
    gap: Option<f64>,
    scale: f64,
    aux: BTreeMap<String, f64>,
}

impl From<revunc_core::EvalRecord> for PyEvalRecord {
    fn from(r: revunc_core::EvalRecord) -> Self {
        Self {
            relation: r.relation.as_str().to_owned(),
            defined: r.defined,
            holds: r.holds,
            lhs: r.lhs,
            rhs: r.rhs,
            gap: r.gap,
            scale: r.scale,
            aux: r.aux.into_iter().map(|(k, v)| (k.to_owned(), v)).collect(),
        }
    }
}

#[pymethods]
impl PyEvalRecord {
    fn __repr__(&self) -> String {
        if self.defined {
            format!(
                "EvalRecord({} lhs={} rhs={} gap={} holds={})",
                self.relation,
                self.lhs.unwrap_or(f64::NAN),
                self.rhs.unwrap_or(f64::NAN),
                self.gap.unwrap_or(f64::NAN),
                if self.holds { "True" } else { "False" }
            )
        } else {
            format!("EvalRecord({} undefined)", self.relation)
        }
    }
}

/// Evaluate one relation. Vector relations are applied to the deviation vectors of A and B.
#[pyfunction]
#[pyo3(signature = (relation_name, a, b, phi, tolerance = None))]
fn evaluate(relation_name: &str, a: &PyObservable, b: &PyObservable, phi: &PyState, tolerance: Option<f64>) -> PyResult<PyEvalRecord> {
    let s = PairStatistics::compute(&a.0, &b.0, &phi.0).py()?;
    Ok(checker(tolerance).evaluate(relation(relation_name)?, &s).py()?.into())
}

#[pyfunction]
#[pyo3(signature = (a, b, phi, tolerance = None))]
fn evaluate_all(a: &PyObservable, b: &PyObservable, phi: &PyState, tolerance: Option<f64>) -> PyResult<Vec<PyEvalRecord>> {
    let s = PairStatistics::compute(&a.0, &b.0, &phi.0).py()?;
    Ok(checker(tolerance).evaluate_all(&s).py()?.into_iter().map(Into::into).collect())
}

/// ID1, IN0, IN1, CS or DW on two raw vectors.
#[pyfunction]
#[pyo3(signature = (relation_name, psi1, psi2, tolerance = None))]
fn vector_relation(relation_name: &str, psi1: Vec<Complex64>, psi2: Vec<Complex64>, tolerance: Option<f64>) -> PyResult<PyEvalRecord> {
    let (v1, v2) = (CVector::new(psi1).py()?, CVector::new(psi2).py()?);
    Ok(checker(tolerance).vector_relation(relation(relation_name)?, &v1, &v2).py()?.into())
}

/// Quantum covariance ⟨AB⟩ − ⟨A⟩⟨B⟩ (complex).
#[pyfunction]
fn covariance(a: &PyObservable, b: &PyObservable, phi: &PyState) -> PyResult<Complex64> {
    revunc_core::covariance(&a.0, &b.0, &phi.0).py()
}

#[pyfunction]
fn commutator_expectation(a: &PyObservable, b: &PyObservable, phi: &PyState) -> PyResult<Complex64> {
    revunc_core::commutator_expectation(&a.0, &b.0, &phi.0).py()
}

#[pyfunction]
fn haar_state(dim: usize, seed: u64) -> PyResult<PyState> {
    Ok(PyState(sampling::haar_state(dim, seed).py()?))
}

#[pyfunction]
#[pyo3(signature = (dim, seed, scale = 1.0))]
fn gue_hermitian(dim: usize, seed: u64, scale: f64) -> PyResult<PyObservable> {
    Ok(PyObservable(sampling::gue_hermitian(dim, seed, scale).py()?))
}

/// `(A, B, phi)` for a provenance name such as "HAAR_GUE" or "ORTHO_DEVIATION".
#[pyfunction]
fn instance(provenance: &str, dim: usize, seed: u64) -> PyResult<(PyObservable, PyObservable, PyState)> {
    let spec = revunc_core::InstanceSpec::regenerate(provenance.parse().py()?, dim, seed).py()?;
    Ok((PyObservable(spec.a), PyObservable(spec.b), PyState(spec.phi)))
}

#[pyfunction]
fn qutrit_instance() -> (PyObservable, PyObservable, PyState) {
    let spec = sampling::qutrit_instance();
    (PyObservable(spec.a), PyObservable(spec.b), PyState(spec.phi))
}

/// Result of a gap minimization.
#[pyclass(name = "SearchResult", module = "revunc", frozen, get_all)]
struct PySearchResult {
    best_state: PyState,
    best_gap: f64,
    defined: bool,
    evaluations: usize,
    converged: bool,
    trace: Option<Vec<(usize, f64)>>,
}

#[pymethods]
impl PySearchResult {
    fn __repr__(&self) -> String {
        format!(
            "SearchResult(best_gap={:e}, defined={}, evaluations={})",
            self.best_gap,
            if self.defined { "True" } else { "False" },
            self.evaluations
        )
    }
}

#[pyfunction]
#[pyo3(signature = (a, b, relation_name, restarts = 8, max_iterations = 2000, convergence_tol = 1e-9, seed = 0, trace = false))]
#[allow(clippy::too_many_arguments)]
fn minimize_gap(
    a: &PyObservable,
    b: &PyObservable,
    relation_name: &str,
    restarts: usize,
    max_iterations: usize,
    convergence_tol: f64,
    seed: u64,
    trace: bool,
) -> PyResult<PySearchResult> {
    let config = SearchConfig {
        relation: relation(relation_name)?,
        max_iterations,
        restarts,
        convergence_tol,
        seed,
        record_trace: trace,
    };
    let r = core_minimize(&a.0, &b.0, &config).py()?;
    Ok(PySearchResult {
        best_state: PyState(r.best_state),
        best_gap: r.best_gap,
        defined: r.defined,
        evaluations: r.evaluations,
        converged: r.converged,
        trace: r.trace,
    })
}

#[pymodule]
fn revunc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyObservable>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyEvalRecord>()?;
    m.add_class::<PySearchResult>()?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_all, m)?)?;
    m.add_function(wrap_pyfunction!(vector_relation, m)?)?;
    m.add_function(wrap_pyfunction!(covariance, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(haar_state, m)?)?;
    m.add_function(wrap_pyfunction!(gue_hermitian, m)?)?;
    m.add_function(wrap_pyfunction!(instance, m)?)?;
    m.add_function(wrap_pyfunction!(qutrit_instance, m)?)?;
    m.add_function(wrap_pyfunction!(minimize_gap, m)?)?;
    m.add("RELATIONS", Relation::ALL.iter().map(|r| r.as_str()).collect::<Vec<_>>())?;
    Ok(())
}
