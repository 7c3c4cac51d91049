//! Python bindings: graphs, metered coloring runs, the search simulator,
//! and log-log fitting. Build as a cdylib and import as `qcolor_py`.

use std::collections::BTreeMap;
use std::str::FromStr;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qcolor::bench::{run_algorithm, AlgorithmId, RunMode, RunParams};
use qcolor::graph::{
    gen_clique, gen_cycle, gen_gnp_with_order, load_edge_list, save_edge_list, verify_coloring,
    Coloring, NeighborOrder,
};
use qcolor::grover::{self, GroverInstance, GroverMode, DEFAULT_COST_CONSTANT};
use qcolor::oracle::{LedgerSnapshot, OracleHandle, QuantumKind};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An immutable graph with a fixed neighbor ordering.
#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: qcolor::Graph,
}

#[pymethods]
impl PyGraph {
    /// Erdős–Rényi G(n, p), seeded; `ordered=True` gives ascending-id
    /// neighbor lists.
    #[staticmethod]
    #[pyo3(signature = (n, p, seed, ordered = false))]
    fn gnp(n: usize, p: f64, seed: u64, ordered: bool) -> PyResult<Self> {
        let order = if ordered {
            NeighborOrder::Ascending
        } else {
            NeighborOrder::Shuffled
        };
        Ok(PyGraph {
            inner: gen_gnp_with_order(n, p, seed, order).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn clique(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gen_clique(n).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn cycle(n: usize) -> PyResult<Self> {
        Ok(PyGraph {
            inner: gen_cycle(n).map_err(value_err)?,
        })
    }

    /// Parses the edge-list text format (`n m` header, then `u v` lines).
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: load_edge_list(text.as_bytes()).map_err(value_err)?,
        })
    }

    /// Canonical edge-list text (header plus sorted `u v` lines).
    fn to_edge_list(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        save_edge_list(&self.inner, &mut buf).map_err(value_err)?;
        String::from_utf8(buf).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check(v)?;
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.check(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={}, max_degree={})",
            self.inner.n(),
            self.inner.edge_count(),
            self.inner.max_degree()
        )
    }
}

impl PyGraph {
    fn check(&self, v: usize) -> PyResult<()> {
        if v >= self.inner.n() {
            return Err(value_err(format!(
                "vertex {v} out of range for n = {}",
                self.inner.n()
            )));
        }
        Ok(())
    }
}

fn ledger_map(snapshot: &LedgerSnapshot) -> BTreeMap<String, u64> {
    BTreeMap::from([
        ("adj_classical".into(), snapshot.adj_classical),
        ("deg_classical".into(), snapshot.deg_classical),
        ("nbr_classical".into(), snapshot.nbr_classical),
        ("adj_quantum".into(), snapshot.adj_quantum),
        ("nbr_quantum".into(), snapshot.nbr_quantum),
        ("total".into(), snapshot.total),
    ])
}

/// Outcome of one coloring run: the coloring (1-based colors, empty on
/// failure), verification flags, and the query ledger.
#[pyclass(name = "RunResult", frozen)]
struct PyRunResult {
    #[pyo3(get)]
    colors: Vec<usize>,
    #[pyo3(get)]
    palette_bound: usize,
    #[pyo3(get)]
    colors_used: usize,
    #[pyo3(get)]
    proper: bool,
    #[pyo3(get)]
    violation: Option<(usize, usize)>,
    #[pyo3(get)]
    q_adj: u64,
    #[pyo3(get)]
    q_deg: u64,
    #[pyo3(get)]
    q_nbr: u64,
    #[pyo3(get)]
    qq_adj: u64,
    #[pyo3(get)]
    qq_nbr: u64,
    #[pyo3(get)]
    total_queries: u64,
    #[pyo3(get)]
    branch: Option<String>,
    /// JSON report of the partitioned algorithm, when it ran.
    #[pyo3(get)]
    report_json: Option<String>,
    #[pyo3(get)]
    failure: Option<String>,
    ledger: LedgerSnapshot,
}

#[pymethods]
impl PyRunResult {
    fn ledger(&self) -> BTreeMap<String, u64> {
        ledger_map(&self.ledger)
    }

    fn __repr__(&self) -> String {
        format!(
            "RunResult(proper={}, colors_used={}, total_queries={})",
            self.proper, self.colors_used, self.total_queries
        )
    }
}

/// Runs one coloring algorithm against a fresh metered oracle.
///
/// `algo` is one of: greedy, alg1, boosted, morris-song, ordered-gnp, qadj,
/// qnbr, combined-classical, combined-qdp1, combined-qeps. `mode` selects
/// dynamics or cost-model simulation for the search-based algorithms.
#[pyfunction]
#[pyo3(signature = (graph, algo, seed = 0, mode = "dynamics", eps = 0.5, c0 = DEFAULT_COST_CONSTANT, delta = None, rounds = None, budget = None, p = None))]
#[allow(clippy::too_many_arguments)]
fn color(
    graph: &PyGraph,
    algo: &str,
    seed: u64,
    mode: &str,
    eps: f64,
    c0: f64,
    delta: Option<usize>,
    rounds: Option<usize>,
    budget: Option<u64>,
    p: Option<f64>,
) -> PyResult<PyRunResult> {
    let algo = AlgorithmId::from_str(algo).map_err(value_err)?;
    let mode = RunMode::from_str(mode).map_err(value_err)?;
    if eps <= 0.0 {
        return Err(value_err("eps must be positive"));
    }
    let params = RunParams {
        algo,
        mode,
        cost_constant: c0,
        eps,
        seed,
        delta,
        rounds,
        budget,
        gnp_p: p,
    };
    let summary = run_algorithm(&graph.inner, &params)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let colors = summary
        .coloring
        .as_ref()
        .map(|c| (0..c.n()).map(|v| c.color(v).unwrap_or(0)).collect())
        .unwrap_or_default();
    let report_json = summary
        .qn_report
        .as_ref()
        .map(|r| serde_json::to_string(r).expect("report serializes"));
    Ok(PyRunResult {
        colors,
        palette_bound: summary.palette_bound,
        colors_used: summary.colors_used,
        proper: summary.proper,
        violation: summary.violation,
        q_adj: summary.ledger.adj_classical,
        q_deg: summary.ledger.deg_classical,
        q_nbr: summary.ledger.nbr_classical,
        qq_adj: summary.ledger.adj_quantum,
        qq_nbr: summary.ledger.nbr_quantum,
        total_queries: summary.ledger.total,
        branch: summary.branch.map(|b| format!("{b:?}").to_lowercase()),
        report_json,
        failure: summary.failure,
        ledger: summary.ledger,
    })
}

/// Checks a coloring (list of 1-based colors, one per vertex) against a
/// graph without charging any queries.
#[pyfunction]
#[pyo3(signature = (graph, colors, bound = None))]
fn verify(
    graph: &PyGraph,
    colors: Vec<usize>,
    bound: Option<usize>,
) -> PyResult<BTreeMap<String, PyObject>> {
    if colors.len() != graph.inner.n() {
        return Err(value_err(format!(
            "expected {} colors, got {}",
            graph.inner.n(),
            colors.len()
        )));
    }
    let mut coloring = Coloring::new(graph.inner.n(), bound.unwrap_or(0));
    for (v, &c) in colors.iter().enumerate() {
        if c == 0 {
            return Err(value_err(format!("vertex {v} uncolored (colors are 1-based)")));
        }
        coloring.assign(v, c);
    }
    let bound = bound.unwrap_or_else(|| coloring.max_color());
    let report = verify_coloring(&graph.inner, &coloring, bound).map_err(value_err)?;
    Python::attach(|py| {
        Ok(BTreeMap::from([
            ("proper".to_string(), report.proper.into_py_any(py)?),
            ("colors_used".to_string(), report.colors_used.into_py_any(py)?),
            ("within_bound".to_string(), report.within_bound.into_py_any(py)?),
            ("violation".to_string(), report.violation.into_py_any(py)?),
        ]))
    })
}

/// sin^2((2j+1) asin(sqrt(k/N))): the probability that measuring after j
/// search iterations hits one of k marked items among N.
#[pyfunction]
fn success_probability(size: usize, marked: usize, iterations: u64) -> PyResult<f64> {
    if size < 1 {
        return Err(value_err("search space must be non-empty"));
    }
    if marked > size {
        return Err(value_err("marked count exceeds search space"));
    }
    Ok(grover::success_probability(size, marked, iterations))
}

/// One full search over `size` items with the given marked indices.
/// Returns a dict with the verified found index (or None), the quantum
/// queries charged, classical verifications, and iterations applied.
#[pyfunction]
#[pyo3(signature = (size, marked, seed = 0, mode = "dynamics", c0 = DEFAULT_COST_CONSTANT))]
fn search(
    size: usize,
    marked: Vec<usize>,
    seed: u64,
    mode: &str,
    c0: f64,
) -> PyResult<BTreeMap<String, PyObject>> {
    if size < 1 {
        return Err(value_err("search space must be non-empty"));
    }
    let mut flags = vec![false; size];
    for idx in marked {
        if idx >= size {
            return Err(value_err(format!("marked index {idx} out of range")));
        }
        flags[idx] = true;
    }
    let grover_mode = match RunMode::from_str(mode).map_err(value_err)? {
        RunMode::Dynamics => GroverMode::Dynamics,
        RunMode::CostModel => GroverMode::CostModel { cost_constant: c0 },
    };
    let inst = GroverInstance::new(flags, QuantumKind::Adjacency, grover_mode);
    // The ledger needs a host; a single-vertex graph serves.
    let host = gen_clique(1).map_err(value_err)?;
    let oracle = OracleHandle::new(&host);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let outcome = grover::search(&oracle, &inst, &mut rng, |idx| inst.is_marked(idx));
    Python::attach(|py| {
        Ok(BTreeMap::from([
            ("found".to_string(), outcome.found.into_py_any(py)?),
            ("quantum_queries".to_string(), outcome.quantum_queries.into_py_any(py)?),
            (
                "classical_verifications".to_string(),
                outcome.classical_verifications.into_py_any(py)?,
            ),
            ("iterations".to_string(), outcome.iterations.into_py_any(py)?),
        ]))
    })
}

/// Ordinary least squares on (ln x, ln y); returns (slope, intercept, r2).
#[pyfunction]
fn fit_loglog(xs: Vec<f64>, ys: Vec<f64>) -> PyResult<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(value_err("xs and ys must have the same length"));
    }
    let points: Vec<(f64, f64)> = xs.into_iter().zip(ys).collect();
    let fit = qcolor::bench::fit_loglog(&points).map_err(value_err)?;
    Ok((fit.slope, fit.intercept, fit.r_squared))
}

#[pymodule]
fn qcolor_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyRunResult>()?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(fit_loglog, m)?)?;
    m.add("DEFAULT_COST_CONSTANT", DEFAULT_COST_CONSTANT)?;
    Ok(())
}
