//! Python bindings: graphs, the dominating-set algorithms, the exact oracle
//! and result verification. Rationals cross the boundary as `"p/q"` strings.

use arbodom::cli::verify_result;
use arbodom::graph::{self, LowerBoundGraph, NodeId, WeightedGraph};
use arbodom::mds_det::{self, DominatingSetResult, MdsError};
use arbodom::mds_rand;
use arbodom::oracle;
use arbodom::rational::{format_rational, parse_rational};
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn eps_arg(eps: &str) -> PyResult<BigRational> {
    parse_rational(eps).map_err(value_error)
}

/// Node-weighted undirected graph.
#[pyclass(name = "Graph", module = "arbodom", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: WeightedGraph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (weights, edges, alpha=None))]
    fn new(weights: Vec<u64>, edges: Vec<(NodeId, NodeId)>, alpha: Option<u32>) -> PyResult<Self> {
        let mut g = WeightedGraph::new(weights, &edges).map_err(value_error)?;
        if let Some(a) = alpha {
            g = g.with_declared_alpha(a);
        }
        Ok(PyGraph { inner: g })
    }

    /// Union of `alpha` random forests with weights in `[1, weight_max]`.
    #[staticmethod]
    #[pyo3(signature = (n, alpha, weight_max=1, seed=0))]
    fn arboricity(n: usize, alpha: u32, weight_max: u64, seed: u64) -> PyResult<Self> {
        let g =
            graph::generate_bounded_arboricity(n, alpha, weight_max, seed).map_err(value_error)?;
        Ok(PyGraph { inner: g })
    }

    #[staticmethod]
    fn star(delta: usize) -> Self {
        PyGraph {
            inner: graph::generate_star(delta),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (n, seed=0))]
    fn tree(n: usize, seed: u64) -> Self {
        PyGraph {
            inner: graph::random_tree(n, seed),
        }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph {
            inner: graph::path(n),
        }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph {
            inner: graph::cycle(n),
        }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph {
            inner: graph::complete(n),
        }
    }

    #[staticmethod]
    fn petersen() -> Self {
        PyGraph {
            inner: graph::petersen(),
        }
    }

    /// Erdős–Rényi graph with edge probability `num/den`.
    #[staticmethod]
    #[pyo3(signature = (n, num, den, seed=0))]
    fn gnp(n: usize, num: u32, den: u32, seed: u64) -> Self {
        PyGraph {
            inner: graph::gnp(n, num, den, seed),
        }
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: graph::parse_graph(text).map_err(value_error)?,
        })
    }

    fn to_text(&self) -> String {
        graph::write_graph(&self.inner)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    #[getter]
    fn weights(&self) -> Vec<u64> {
        self.inner.weights().to_vec()
    }

    #[getter]
    fn alpha(&self) -> Option<u32> {
        self.inner.declared_alpha()
    }

    fn edges(&self) -> Vec<(NodeId, NodeId)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, v: NodeId) -> PyResult<Vec<NodeId>> {
        if v >= self.inner.n() {
            return Err(value_error(format!("node {v} is outside the graph")));
        }
        Ok(self.inner.neighbors(v).to_vec())
    }

    /// Smallest `k` with an orientation of out-degree at most `k`.
    fn pseudoarboricity(&self) -> u32 {
        graph::min_orientation_bound(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Output of one algorithm run.
#[pyclass(name = "DominatingSet", module = "arbodom", frozen)]
pub struct PyDominatingSet {
    inner: DominatingSetResult,
}

#[pymethods]
impl PyDominatingSet {
    #[getter]
    fn algo(&self) -> &'static str {
        self.inner.algo.name()
    }

    #[getter]
    fn members(&self) -> Vec<NodeId> {
        self.inner.members.clone()
    }

    #[getter]
    fn partial(&self) -> Vec<NodeId> {
        self.inner.partial.clone()
    }

    #[getter]
    fn total_weight(&self) -> u64 {
        self.inner.total_weight
    }

    #[getter]
    fn rounds(&self) -> u32 {
        self.inner.rounds
    }

    #[getter]
    fn iterations(&self) -> u32 {
        self.inner.iterations
    }

    #[getter]
    fn claimed_factor(&self) -> String {
        format_rational(&self.inner.claimed_factor)
    }

    #[getter]
    fn max_message_bits(&self) -> u32 {
        self.inner.max_message_bits
    }

    /// Total of the dual packing, if the algorithm produced one.
    #[getter]
    fn certificate_total(&self) -> Option<String> {
        self.inner
            .certificate
            .as_ref()
            .map(|c| format_rational(&c.total()))
    }

    #[getter]
    fn cover_counts(&self) -> Option<Vec<u32>> {
        self.inner.cover_counts.clone()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDominatingSet {
            inner: serde_json::from_str(text).map_err(value_error)?,
        })
    }

    /// `(name, passed, detail)` for every consistency check against `g`.
    fn verify(&self, g: &PyGraph) -> Vec<(String, bool, String)> {
        verify_result(&g.inner, &self.inner)
            .into_iter()
            .map(|c| (c.name.to_string(), c.passed, c.detail))
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "DominatingSet(algo={}, weight={}, size={})",
            self.inner.algo.name(),
            self.inner.total_weight,
            self.inner.members.len()
        )
    }
}

fn wrap(r: Result<DominatingSetResult, MdsError>) -> PyResult<PyDominatingSet> {
    r.map(|inner| PyDominatingSet { inner })
        .map_err(value_error)
}

#[pyfunction]
fn mds_deterministic(g: &PyGraph, eps: &str) -> PyResult<PyDominatingSet> {
    wrap(mds_det::mds_deterministic(&g.inner, &eps_arg(eps)?))
}

#[pyfunction]
fn mds_unweighted(g: &PyGraph, eps: &str) -> PyResult<PyDominatingSet> {
    wrap(mds_det::mds_unweighted(&g.inner, &eps_arg(eps)?))
}

#[pyfunction]
fn mds_unknown_delta(g: &PyGraph, eps: &str) -> PyResult<PyDominatingSet> {
    wrap(mds_det::mds_unknown_delta(&g.inner, &eps_arg(eps)?))
}

#[pyfunction]
fn mds_unknown_alpha(g: &PyGraph, eps: &str) -> PyResult<PyDominatingSet> {
    wrap(mds_det::mds_unknown_alpha(&g.inner, &eps_arg(eps)?))
}

#[pyfunction]
fn tree_mds(g: &PyGraph) -> PyResult<PyDominatingSet> {
    wrap(mds_det::tree_mds(&g.inner))
}

#[pyfunction]
#[pyo3(signature = (g, t, seed=0))]
fn mds_randomized(g: &PyGraph, t: u32, seed: u64) -> PyResult<PyDominatingSet> {
    wrap(mds_rand::mds_randomized(&g.inner, t, seed))
}

#[pyfunction]
#[pyo3(signature = (g, k, seed=0))]
fn mds_general(g: &PyGraph, k: u32, seed: u64) -> PyResult<PyDominatingSet> {
    wrap(mds_rand::mds_general(&g.inner, k, seed))
}

/// Minimum weight and a witness set (at most 26 nodes).
#[pyfunction]
fn exact_mds(g: &PyGraph) -> PyResult<(u64, Vec<NodeId>)> {
    let r = oracle::exact_mds(&g.inner).map_err(value_error)?;
    Ok((r.opt_weight, r.witness))
}

#[pyfunction]
fn is_dominating(g: &PyGraph, set: Vec<NodeId>) -> bool {
    oracle::is_dominating(&g.inner, &set)
}

/// Hub-and-subdivision graph over a base graph.
#[pyclass(name = "LowerBoundGraph", module = "arbodom", frozen)]
pub struct PyLowerBound {
    inner: LowerBoundGraph,
    base: WeightedGraph,
}

#[pymethods]
impl PyLowerBound {
    #[new]
    fn new(base: &PyGraph) -> PyResult<Self> {
        let inner = graph::build_lower_bound_graph(&base.inner).map_err(value_error)?;
        Ok(PyLowerBound {
            inner,
            base: base.inner.clone(),
        })
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.inner.graph.clone(),
        }
    }

    fn roles(&self) -> Vec<String> {
        self.inner
            .node_roles
            .iter()
            .map(ToString::to_string)
            .collect()
    }

    /// Fractional vertex cover of the base graph obtained from a dominating
    /// set of this graph, plus whether it covers every base edge.
    fn fractional_cover(&self, set: Vec<NodeId>) -> PyResult<(Vec<String>, bool)> {
        let y = oracle::ds_to_fractional_vc(&self.inner, &set).map_err(value_error)?;
        let feasible = y.violation(&self.base).is_none() && y.in_unit_range();
        Ok((y.y.iter().map(format_rational).collect(), feasible))
    }
}

#[pymodule]
#[pyo3(name = "arbodom")]
pub fn arbodom_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDominatingSet>()?;
    m.add_class::<PyLowerBound>()?;
    m.add_function(wrap_pyfunction!(mds_deterministic, m)?)?;
    m.add_function(wrap_pyfunction!(mds_unweighted, m)?)?;
    m.add_function(wrap_pyfunction!(mds_unknown_delta, m)?)?;
    m.add_function(wrap_pyfunction!(mds_unknown_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(tree_mds, m)?)?;
    m.add_function(wrap_pyfunction!(mds_randomized, m)?)?;
    m.add_function(wrap_pyfunction!(mds_general, m)?)?;
    m.add_function(wrap_pyfunction!(exact_mds, m)?)?;
    m.add_function(wrap_pyfunction!(is_dominating, m)?)?;
    Ok(())
}
