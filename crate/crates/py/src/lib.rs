//! Python bindings. Results come back as plain dicts with the same keys as
//! the CLI's JSON output.

use ::leafage as core;
use core::export::{self, to_json};
use core::oracle::{self, OracleError};
use core::{BudgetMode, CliqueGraph, GadgetError, VlError};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(
    leafage,
    OracleLimitError,
    PyException,
    "The oracle found more clique trees than its limit."
);

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn oracle_error(e: OracleError) -> PyErr {
    match e {
        OracleError::LimitExceeded { .. } => OracleLimitError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn gadget_error(e: GadgetError) -> PyErr {
    match e {
        GadgetError::Oracle(o) => oracle_error(o),
        other => value_error(other),
    }
}

/// Round-trips through `json.loads` so dict key order matches the CLI.
fn to_py(py: Python<'_>, json: String) -> PyResult<Bound<'_, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

/// Simple undirected graph with named vertices.
#[pyclass(module = "leafage", frozen)]
struct Graph {
    inner: core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (edges, vertices = Vec::new()))]
    fn new(edges: Vec<(String, String)>, vertices: Vec<String>) -> PyResult<Self> {
        core::Graph::new(vertices, edges)
            .map(|inner| Graph { inner })
            .map_err(value_error)
    }

    /// Parses the edge-list format (`v name`, `e a b`, `#` comments).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_graph(text)
            .map(|inner| Graph { inner })
            .map_err(value_error)
    }

    /// The eleven-vertex worked example.
    #[staticmethod]
    fn example() -> Self {
        Graph {
            inner: core::example::graph(),
        }
    }

    /// Random connected chordal graph, deterministic in `seed`.
    #[staticmethod]
    #[pyo3(signature = (n, density = 0.5, seed = 0))]
    fn random_chordal(n: usize, density: f64, seed: u64) -> PyResult<Self> {
        if n == 0 || !(0.0..=1.0).contains(&density) {
            return Err(value_error("need n >= 1 and density in [0, 1]"));
        }
        Ok(Graph {
            inner: oracle::random_chordal(n, density, seed),
        })
    }

    #[getter]
    fn vertices(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.inner
            .edge_names()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect()
    }

    fn is_chordal(&self) -> bool {
        core::check_chordal(&self.inner).is_chordal()
    }

    /// Sorted member lists of the maximal cliques; raises if not chordal.
    fn maximal_cliques(&self) -> PyResult<Vec<Vec<String>>> {
        let cg = CliqueGraph::from_graph(&self.inner).map_err(value_error)?;
        let mut out: Vec<Vec<String>> = cg
            .cliques()
            .iter()
            .map(|c| c.iter().map(|&v| self.inner.name(v).to_string()).collect())
            .collect();
        out.sort();
        Ok(out)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph({} vertices, {} edges)",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Positive not-all-equal SAT instance.
#[pyclass(module = "leafage", frozen)]
struct NaeInstance {
    inner: core::NaeInstance,
}

#[pymethods]
impl NaeInstance {
    #[new]
    fn new(clauses: Vec<Vec<String>>) -> PyResult<Self> {
        core::NaeInstance::from_clauses(&clauses)
            .map(|inner| NaeInstance { inner })
            .map_err(gadget_error)
    }

    /// Parses a clause file: optional `k <int>` header, one clause per line.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::parse_clauses(text)
            .map(|inner| NaeInstance { inner })
            .map_err(gadget_error)
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.variables().to_vec()
    }

    #[getter]
    fn clauses(&self) -> Vec<Vec<String>> {
        let vars = self.inner.variables();
        self.inner
            .clauses()
            .iter()
            .map(|c| c.iter().map(|&i| vars[i].clone()).collect())
            .collect()
    }

    /// Least solution by brute force (variables on one side), or `None`.
    fn solve(&self) -> Option<Vec<String>> {
        self.inner
            .brute_force_solution()
            .map(|s| self.inner.solution_names(&s))
    }

    fn normalize(&self) -> Self {
        NaeInstance {
            inner: core::normalize_star(&self.inner),
        }
    }

    /// The split graph of the reduction.
    #[pyo3(signature = (checked = true))]
    fn gadget(&self, checked: bool) -> PyResult<Graph> {
        let gg = if checked {
            core::build_gadget(&self.inner)
        } else {
            core::gadget::build_gadget_unchecked(&self.inner)
        };
        gg.map(|gg| Graph { inner: gg.graph }).map_err(gadget_error)
    }

    /// Checks the reduction against brute force on this instance.
    #[pyo3(signature = (limit = None))]
    fn verify<'py>(&self, py: Python<'py>, limit: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
        let report =
            core::verify_reduction(&self.inner, limit.unwrap_or_else(oracle::default_limit))
                .map_err(gadget_error)?;
        to_py(py, to_json(&export::reduction_view(&report)))
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "NaeInstance(k={}, {} clauses)",
            self.inner.k(),
            self.inner.clauses().len()
        )
    }
}

fn clique_graph(g: &Graph) -> PyResult<CliqueGraph> {
    CliqueGraph::from_graph(&g.inner).map_err(value_error)
}

/// `{"chordal", "peo", "cycle", "maximal_cliques"}`.
#[pyfunction]
fn check<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    to_py(
        py,
        to_json(&export::check_report(
            &graph.inner,
            &core::check_chordal(&graph.inner),
        )),
    )
}

/// `{"leafage", "tree_edges", "iterations"}`.
#[pyfunction]
#[pyo3(name = "leafage")]
fn leafage_of<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let cg = clique_graph(graph)?;
    let run = py
        .detach(|| {
            let start = core::build_clique_tree(&cg).map_err(|e| e.to_string())?;
            core::minimize_leafage(&cg, &start).map_err(|e| e.to_string())
        })
        .map_err(value_error)?;
    to_py(py, to_json(&export::leafage_view(&graph.inner, &cg, &run)))
}

/// Certificate dict, or `None` when the budget admits no clique tree.
#[pyfunction]
#[pyo3(signature = (graph, ell = None, budget_mode = "safe"))]
fn vertex_leafage<'py>(
    py: Python<'py>,
    graph: &Graph,
    ell: Option<usize>,
    budget_mode: &str,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let mode: BudgetMode = budget_mode.parse().map_err(value_error)?;
    let cg = clique_graph(graph)?;
    let cert = py
        .detach(|| core::vertex_leafage_bounded(&graph.inner, ell, mode))
        .map_err(|e: VlError| value_error(e))?;
    cert.map(|c| {
        to_py(
            py,
            to_json(&export::certificate_view(&graph.inner, &cg, &c)),
        )
    })
    .transpose()
}

/// `{"leafage", "vertex_leafage", "tree_edges", "model"}`.
#[pyfunction]
fn simultaneous_optimum<'py>(py: Python<'py>, graph: &Graph) -> PyResult<Bound<'py, PyAny>> {
    let cg = clique_graph(graph)?;
    let opt = py
        .detach(|| core::simultaneous_optimum(&graph.inner))
        .map_err(value_error)?;
    to_py(py, to_json(&export::optimum_view(&graph.inner, &cg, &opt)))
}

/// DOT export of the simultaneous optimum's host tree.
#[pyfunction]
fn model_dot(py: Python<'_>, graph: &Graph) -> PyResult<String> {
    let opt = py
        .detach(|| core::simultaneous_optimum(&graph.inner))
        .map_err(value_error)?;
    Ok(export::model_dot(&graph.inner, &opt.model))
}

/// Exact optima over all clique trees.
#[pyfunction]
#[pyo3(name = "oracle", signature = (graph, limit = None))]
fn oracle_optima<'py>(
    py: Python<'py>,
    graph: &Graph,
    limit: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let cg = clique_graph(graph)?;
    let limit = limit.unwrap_or_else(oracle::default_limit);
    let r = py
        .detach(|| oracle::oracle_optima_cg(&cg, limit))
        .map_err(oracle_error)?;
    to_py(py, to_json(&export::oracle_view(&graph.inner, &cg, &r)))
}

#[pymodule]
#[pyo3(name = "leafage")]
fn leafage_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<NaeInstance>()?;
    m.add("OracleLimitError", m.py().get_type::<OracleLimitError>())?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(leafage_of, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_leafage, m)?)?;
    m.add_function(wrap_pyfunction!(simultaneous_optimum, m)?)?;
    m.add_function(wrap_pyfunction!(model_dot, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_optima, m)?)?;
    Ok(())
}
