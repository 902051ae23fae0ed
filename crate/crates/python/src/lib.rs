//! Python bindings. Matrices cross the boundary as nested lists of complex
//! (or real) numbers, row-major.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use matpersp::atoms::{lookup_atom, registry_samples, ScalarAtom};
use matpersp::commuting::{CommutingPair, DEFAULT_FLOOR};
use matpersp::functionals::{self, DensityMatrix, ProbabilityVector};
use matpersp::linalg::{self, CMatrix, HermitianMatrix, C64};
use matpersp::perspective as persp;
use matpersp::verify::{self, AtomSpec, Execution, TheoremTag, TrialConfig};

type Rows = Vec<Vec<C64>>;

fn err(e: matpersp::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_matrix(rows: Rows) -> PyResult<CMatrix> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(PyValueError::new_err("expected a non-empty square matrix"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn to_hermitian(rows: Rows) -> PyResult<HermitianMatrix> {
    HermitianMatrix::new_checked(to_matrix(rows)?, matpersp::encoding::HERMITIAN_READ_LIMIT)
        .map_err(err)
}

fn from_matrix(m: &CMatrix) -> Rows {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn density(rows: Rows, floor: f64) -> PyResult<DensityMatrix> {
    DensityMatrix::with_floor(to_hermitian(rows)?, floor).map_err(err)
}

/// A scalar function from the atom registry.
#[pyclass(name = "Atom", module = "matpersp_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAtom {
    inner: ScalarAtom,
}

#[pymethods]
impl PyAtom {
    #[new]
    #[pyo3(signature = (name, parameter=None))]
    fn new(name: &str, parameter: Option<f64>) -> PyResult<Self> {
        Ok(Self {
            inner: lookup_atom(name, parameter).map_err(err)?,
        })
    }

    #[getter]
    fn name(&self) -> &'static str {
        self.inner.name()
    }

    #[getter]
    fn parameter(&self) -> Option<f64> {
        self.inner.parameter
    }

    #[getter]
    fn domain(&self) -> String {
        self.inner.domain.to_string()
    }

    #[getter]
    fn operator_convex(&self) -> bool {
        self.inner.operator_convex
    }

    #[getter]
    fn operator_concave(&self) -> bool {
        self.inner.operator_concave
    }

    #[getter]
    fn f0_nonpositive(&self) -> bool {
        self.inner.f0_nonpositive
    }

    fn __call__(&self, x: f64) -> PyResult<f64> {
        self.inner.eval(x).map_err(err)
    }

    /// Functional calculus on a Hermitian matrix.
    fn apply(&self, t: Rows) -> PyResult<Rows> {
        let out = linalg::apply_scalar_function(&self.inner, &to_hermitian(t)?).map_err(err)?;
        Ok(from_matrix(out.matrix()))
    }

    fn __repr__(&self) -> String {
        format!("Atom('{}')", self.inner.label())
    }
}

#[pyfunction]
fn atoms() -> Vec<PyAtom> {
    registry_samples()
        .into_iter()
        .map(|inner| PyAtom { inner })
        .collect()
}

#[pyfunction]
fn eigenvalues(t: Rows) -> PyResult<Vec<f64>> {
    to_hermitian(t)?.eigenvalues().map_err(err)
}

/// Returns `(holds, slack, tolerance_used)`.
#[pyfunction]
#[pyo3(signature = (a, b, tol=0.0))]
fn loewner_leq(a: Rows, b: Rows, tol: f64) -> PyResult<(bool, f64, f64)> {
    let v = linalg::loewner_leq(&to_hermitian(a)?, &to_hermitian(b)?, tol).map_err(err)?;
    Ok((v.holds, v.slack, v.tolerance_used))
}

/// Symmetrized perspective `R^{1/2} f(R^{-1/2} L R^{-1/2}) R^{1/2}`.
#[pyfunction]
#[pyo3(signature = (f, l, r, floor=DEFAULT_FLOOR))]
fn perspective(f: &PyAtom, l: Rows, r: Rows, floor: f64) -> PyResult<Rows> {
    let g = persp::perspective_symmetrized(&f.inner, &to_hermitian(l)?, &to_hermitian(r)?, floor)
        .map_err(err)?;
    Ok(from_matrix(g.matrix()))
}

/// Perspective of a commuting pair through its joint eigenbasis.
#[pyfunction]
#[pyo3(signature = (f, l, r, floor=DEFAULT_FLOOR))]
fn perspective_commuting(f: &PyAtom, l: Rows, r: Rows, floor: f64) -> PyResult<Rows> {
    let pair = CommutingPair::from_commuting_matrices(&to_hermitian(l)?, &to_hermitian(r)?, floor)
        .map_err(err)?;
    let g = persp::perspective_eigen(&f.inner, &pair).map_err(err)?;
    Ok(from_matrix(g.matrix()))
}

#[pyfunction]
#[pyo3(signature = (f, h, l, r, floor=DEFAULT_FLOOR))]
fn marechal(f: &PyAtom, h: &PyAtom, l: Rows, r: Rows, floor: f64) -> PyResult<Rows> {
    let g = persp::marechal_symmetrized(
        &f.inner,
        &h.inner,
        &to_hermitian(l)?,
        &to_hermitian(r)?,
        floor,
    )
    .map_err(err)?;
    Ok(from_matrix(g.matrix()))
}

/// `S(rho || sigma)`; `path` is `"direct"` or `"perspective"`.
#[pyfunction]
#[pyo3(signature = (rho, sigma, path="direct", floor=DEFAULT_FLOOR))]
fn relative_entropy(rho: Rows, sigma: Rows, path: &str, floor: f64) -> PyResult<f64> {
    let (rho, sigma) = (density(rho, floor)?, density(sigma, floor)?);
    match path {
        "direct" => functionals::quantum_relative_entropy_direct(&rho, &sigma),
        "perspective" => functionals::quantum_relative_entropy_perspective(&rho, &sigma),
        other => return Err(PyValueError::new_err(format!("unknown path `{other}`"))),
    }
    .map_err(err)
}

#[pyfunction]
fn lieb(a: Rows, b: Rows, k: Rows, s: f64) -> PyResult<f64> {
    functionals::lieb_functional(&to_hermitian(a)?, &to_hermitian(b)?, &to_matrix(k)?, s)
        .map_err(err)
}

#[pyfunction]
fn lieb_pq(a: Rows, b: Rows, x: Rows, p: f64, q: f64) -> PyResult<f64> {
    functionals::lieb_pq_functional(&to_hermitian(a)?, &to_hermitian(b)?, &to_matrix(x)?, p, q)
        .map_err(err)
}

#[pyfunction]
fn entropy(p: Vec<f64>) -> PyResult<f64> {
    Ok(functionals::classical_entropy(
        &ProbabilityVector::new(p).map_err(err)?,
    ))
}

/// `H(q || p) = sum p log p - p log q`.
#[pyfunction]
fn classical_relative_entropy(q: Vec<f64>, p: Vec<f64>) -> PyResult<f64> {
    let q = ProbabilityVector::new(q).map_err(err)?;
    let p = ProbabilityVector::new(p).map_err(err)?;
    functionals::classical_relative_entropy(&q, &p).map_err(err)
}

/// Runs verification campaigns and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (
    theorem="all", *, atom=None, param=None, h=None, h_param=None, dim=3, dim_m=None,
    trials=200, seed=0, tol=1e-8, floor=1e-8, s=0.5, p=0.3, q=0.4, shrink=1.0,
    negative_control=false, serial=false
))]
#[allow(clippy::too_many_arguments)]
fn run_campaign(
    py: Python<'_>,
    theorem: &str,
    atom: Option<String>,
    param: Option<f64>,
    h: Option<String>,
    h_param: Option<f64>,
    dim: usize,
    dim_m: Option<usize>,
    trials: usize,
    seed: u64,
    tol: f64,
    floor: f64,
    s: f64,
    p: f64,
    q: f64,
    shrink: f64,
    negative_control: bool,
    serial: bool,
) -> PyResult<String> {
    let theorems = if theorem == "all" {
        TheoremTag::ALL.to_vec()
    } else {
        theorem
            .split(',')
            .map(|t| t.trim().parse::<TheoremTag>())
            .collect::<Result<_, _>>()
            .map_err(err)?
    };
    let config = TrialConfig {
        dim_n: dim,
        dim_m,
        trials,
        seed,
        tol,
        floor,
        f: atom.map(|n| AtomSpec::new(&n, param)),
        h: h.map(|n| AtomSpec::new(&n, h_param)),
        s,
        p,
        q,
        shrink,
        negative_control,
        ..TrialConfig::default()
    };
    let execution = if serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    let reports = py
        .detach(|| verify::run_campaign_with(&config, &theorems, execution))
        .map_err(err)?;
    Ok(verify::reports_to_json(&reports))
}

#[pymodule]
fn matpersp_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAtom>()?;
    m.add_function(wrap_pyfunction!(atoms, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(loewner_leq, m)?)?;
    m.add_function(wrap_pyfunction!(perspective, m)?)?;
    m.add_function(wrap_pyfunction!(perspective_commuting, m)?)?;
    m.add_function(wrap_pyfunction!(marechal, m)?)?;
    m.add_function(wrap_pyfunction!(relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(lieb, m)?)?;
    m.add_function(wrap_pyfunction!(lieb_pq, m)?)?;
    m.add_function(wrap_pyfunction!(entropy, m)?)?;
    m.add_function(wrap_pyfunction!(classical_relative_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    Ok(())
}
