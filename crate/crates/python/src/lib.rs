//! Python module `affine_cover`.

use affine_cover_core as ac;
use ac::fpt::{CoverQuery, Decision as CoreDecision, DecideOptions, NoReason};
use ac::stretch::ExternalSolver;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Simple undirected graph on vertices `0..n`.
#[pyclass(module = "affine_cover", name = "Graph", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: ac::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph { inner: ac::Graph::from_edges(n, &edges).map_err(value_err)? })
    }

    /// Parse the `p n m` / `e u v` text format (1-based ids).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: ac::parse_graph(text).map_err(value_err)? })
    }

    fn to_text(&self) -> String {
        ac::format_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(PyValueError::new_err(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn is_planar(&self) -> bool {
        ac::graph::is_planar(&self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Result of `kernelize`.
#[pyclass(module = "affine_cover", name = "Kernel", get_all)]
struct PyKernel {
    graph: PyGraph,
    rejected: Option<String>,
    origin: Vec<usize>,
}

/// Result of `decide`: `verdict` is "yes", "no" or "unknown".
#[pyclass(module = "affine_cover", name = "Decision", get_all)]
struct PyDecision {
    verdict: String,
    reason: Option<String>,
    /// `line <i>: (<v...>) ...` text, 1-based.
    description: Option<String>,
    /// Exact realization in the `v`/`l`/`a` text format.
    realization: Option<String>,
}

#[pymethods]
impl PyDecision {
    fn __bool__(&self) -> bool {
        self.verdict == "yes"
    }

    fn __repr__(&self) -> String {
        format!("Decision({:?})", self.verdict)
    }
}

#[pyfunction]
fn kernelize(g: &PyGraph, k: usize, d: usize) -> PyResult<PyKernel> {
    let r = ac::kernelize(&g.inner, k, d).map_err(value_err)?;
    let rejected = match r.verdict {
        ac::Verdict::Reduced => None,
        ac::Verdict::RejectedByCounts(why) => Some(why.to_string()),
    };
    Ok(PyKernel { graph: PyGraph { inner: r.h }, rejected, origin: r.origin })
}

/// Decide whether `g` has a drawing on `k` lines in dimension `d`.
#[pyfunction]
#[pyo3(signature = (g, k, d=2, budget=ac::stretch::DEFAULT_BUDGET, seed=ac::stretch::DEFAULT_SEED))]
fn decide(py: Python<'_>, g: &PyGraph, k: usize, d: usize, budget: usize, seed: u64) -> PyResult<PyDecision> {
    let q = CoverQuery { g: g.inner.clone(), k, d };
    let opts = DecideOptions { budget, seed, solver: ExternalSolver::from_env(), kernelize: true };
    let decision = py.detach(|| ac::decide_with(&q, &opts)).map_err(value_err)?;
    Ok(match decision {
        CoreDecision::Yes(c) => PyDecision {
            verdict: "yes".into(),
            reason: None,
            description: Some(c.description.to_text()),
            realization: Some(ac::geom::format_realization(&c.realization)),
        },
        CoreDecision::No(r) => PyDecision {
            verdict: "no".into(),
            reason: Some(match r {
                NoReason::Kernel(r) => r.to_string(),
                NoReason::Exhausted => "exhausted".into(),
            }),
            description: None,
            realization: None,
        },
        CoreDecision::Unknown(p) => PyDecision {
            verdict: "unknown".into(),
            reason: Some(format!("{} templates unresolved", p.len())),
            description: None,
            realization: None,
        },
    })
}

/// Violations of a realization (text format) as drawing of `g`; empty when
/// it certifies.
#[pyfunction]
fn verify_cover(g: &PyGraph, realization: &str) -> PyResult<Vec<String>> {
    let r = ac::geom::parse_realization(realization).map_err(value_err)?;
    Ok(ac::verify_cover(&g.inner, &r).violations.iter().map(|v| v.to_string()).collect())
}

/// `(value, partition)` for `pi13` (linear vertex arboricity) or `pi23`
/// (vertex thickness).
#[pyfunction]
fn weak(g: &PyGraph, param: &str) -> PyResult<(usize, Vec<Vec<usize>>)> {
    let r = match param {
        "pi13" => ac::weak::linear_vertex_arboricity(&g.inner),
        "pi23" => ac::weak::vertex_thickness(&g.inner),
        _ => return Err(PyValueError::new_err("param must be 'pi13' or 'pi23'")),
    }
    .map_err(value_err)?;
    Ok((r.value, r.partition))
}

/// Solver text of the formula for `rho12`, `rho13` or `rho23`.
#[pyfunction]
fn emit_formula(g: &PyGraph, param: &str, k: usize) -> PyResult<String> {
    let (d, l) = match param {
        "rho12" => (2, 1),
        "rho13" => (3, 1),
        "rho23" => (3, 2),
        _ => return Err(PyValueError::new_err("param must be 'rho12', 'rho13' or 'rho23'")),
    };
    let f = ac::formula::emit_rho_formula(&g.inner, k, d, l).map_err(value_err)?;
    Ok(ac::formula::to_solver_text(&f))
}

#[pyfunction]
fn add_tails(g: &PyGraph) -> PyResult<PyGraph> {
    Ok(PyGraph { inner: ac::reductions::add_tails(&g.inner).map_err(value_err)? })
}

/// The Perles graph with its exact realization text.
#[pyfunction]
fn perles() -> (PyGraph, String) {
    let (g, r) = ac::reductions::perles_graph();
    (PyGraph { inner: g }, ac::geom::format_realization(&r))
}

/// Number of templates for `k` lines.
#[pyfunction]
fn count_templates(k: usize) -> PyResult<usize> {
    if k > 4 {
        return Err(PyRuntimeError::new_err("template enumeration is limited to k <= 4"));
    }
    Ok(ac::enumerate_templates(k).len())
}

#[pymodule]
fn affine_cover(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyKernel>()?;
    m.add_class::<PyDecision>()?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cover, m)?)?;
    m.add_function(wrap_pyfunction!(weak, m)?)?;
    m.add_function(wrap_pyfunction!(emit_formula, m)?)?;
    m.add_function(wrap_pyfunction!(add_tails, m)?)?;
    m.add_function(wrap_pyfunction!(perles, m)?)?;
    m.add_function(wrap_pyfunction!(count_templates, m)?)?;
    Ok(())
}
