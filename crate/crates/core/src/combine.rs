//! Dispatch between a dense-regime algorithm whose cost falls with the
//! maximum degree and a sparse-regime algorithm whose cost grows with it:
//! estimate the degree, solve for the crossover, run the cheaper side.

use thiserror::Error;

use crate::classical::{delta_plus_one_color, greedy_color, ColorError, TraceRecord};
use crate::graph::Coloring;
use crate::grover::GroverMode;
use crate::oracle::OracleHandle;
use crate::quantum::{quantum_adjacency_color, quantum_neighborhood_color, QnReport};

/// Symbolic per-run query costs as functions of (n, Δ, ε). Logarithms are
/// natural throughout; constants only move intercepts, never fitted slopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostFn {
    /// Flat cost, used for degenerate models in tests.
    Constant(u64),
    /// Full neighbor enumeration: n Δ.
    GreedyNeighborhood,
    /// Randomized palette with classical checks: n^2 ln n / Δ.
    RandomizedPalette,
    /// Randomized palette with searched checks: n^{3/2} ln n / sqrt(Δ).
    GroverPalette,
    /// Partitioned neighborhood collection: n (ln n)^2 sqrt(Δ) / ε^2.
    PartitionedNeighborhood,
}

impl CostFn {
    pub fn eval(&self, n: usize, delta: usize, eps: f64) -> f64 {
        let nf = n as f64;
        let d = delta.max(1) as f64;
        let ln_n = nf.ln();
        match self {
            CostFn::Constant(c) => *c as f64,
            CostFn::GreedyNeighborhood => nf * d,
            CostFn::RandomizedPalette => nf * nf * ln_n / d,
            CostFn::GroverPalette => nf.powf(1.5) * ln_n / d.sqrt(),
            CostFn::PartitionedNeighborhood => nf * ln_n * ln_n * d.sqrt() / (eps * eps),
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("the {side} cost is not monotone {direction} in the degree")]
    NotMonotone {
        side: &'static str,
        direction: &'static str,
    },
}

/// A dense/sparse cost pair with tunable constants. The dense cost must be
/// non-increasing in Δ and the sparse cost non-decreasing.
#[derive(Debug, Clone, Copy)]
pub struct CostModel {
    pub dense: CostFn,
    pub sparse: CostFn,
    pub dense_constant: f64,
    pub sparse_constant: f64,
}

impl CostModel {
    pub fn new(dense: CostFn, sparse: CostFn) -> Self {
        CostModel {
            dense,
            sparse,
            dense_constant: 1.0,
            sparse_constant: 1.0,
        }
    }

    /// Randomized palette vs greedy.
    pub fn classical_dp1() -> Self {
        Self::new(CostFn::RandomizedPalette, CostFn::GreedyNeighborhood)
    }

    /// Searched palette vs greedy.
    pub fn quantum_dp1() -> Self {
        Self::new(CostFn::GroverPalette, CostFn::GreedyNeighborhood)
    }

    /// Searched palette vs partitioned neighborhoods.
    pub fn quantum_eps() -> Self {
        Self::new(CostFn::GroverPalette, CostFn::PartitionedNeighborhood)
    }

    pub fn dense_cost(&self, n: usize, delta: usize, eps: f64) -> f64 {
        self.dense_constant * self.dense.eval(n, delta, eps)
    }

    pub fn sparse_cost(&self, n: usize, delta: usize, eps: f64) -> f64 {
        self.sparse_constant * self.sparse.eval(n, delta, eps)
    }
}

/// Smallest degree at which the dense cost drops to the sparse cost, found
/// by bisection over [1, n-1]. Returns n when the dense side never catches
/// up, so a `delta >= crossover` dispatch then always takes the sparse side.
pub fn crossover(model: &CostModel, n: usize, eps: f64) -> Result<usize, ModelError> {
    assert!(n >= 2, "crossover needs n >= 2");
    // Monotonicity check over a geometric degree grid.
    let mut grid = vec![1usize];
    let mut d = 2;
    while d < n - 1 {
        grid.push(d);
        d *= 2;
    }
    if n - 1 > 1 {
        grid.push(n - 1);
    }
    for w in grid.windows(2) {
        if model.dense_cost(n, w[0], eps) < model.dense_cost(n, w[1], eps) {
            return Err(ModelError::NotMonotone {
                side: "dense",
                direction: "non-increasing",
            });
        }
        if model.sparse_cost(n, w[0], eps) > model.sparse_cost(n, w[1], eps) {
            return Err(ModelError::NotMonotone {
                side: "sparse",
                direction: "non-decreasing",
            });
        }
    }
    let cheaper_dense = |d: usize| model.dense_cost(n, d, eps) <= model.sparse_cost(n, d, eps);
    if !cheaper_dense(n - 1) {
        return Ok(n);
    }
    let (mut lo, mut hi) = (1usize, n - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if cheaper_dense(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Which side a combined run took.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Dense,
    Sparse,
}

/// A combined run's coloring plus the dispatch evidence.
pub struct CombinedRun {
    pub coloring: Coloring,
    pub branch: Branch,
    pub estimated_delta: usize,
    pub crossover_delta: usize,
    pub trace: Option<TraceRecord>,
    pub qn_report: Option<QnReport>,
}

/// (Δ+1)-coloring with classical queries: estimate the maximum degree with
/// n degree queries, then run the randomized palette algorithm above the
/// crossover and greedy below it.
pub fn combined_classical(oracle: &OracleHandle, seed: u64) -> Result<CombinedRun, ColorError> {
    let n = oracle.n();
    let delta = oracle.estimate_max_degree();
    let star = if n >= 2 {
        crossover(&CostModel::classical_dp1(), n, 1.0).expect("built-in model is monotone")
    } else {
        1
    };
    if delta >= star {
        let (coloring, trace) = delta_plus_one_color(oracle, delta, seed)?;
        Ok(CombinedRun {
            coloring,
            branch: Branch::Dense,
            estimated_delta: delta,
            crossover_delta: star,
            trace: Some(trace),
            qn_report: None,
        })
    } else {
        Ok(CombinedRun {
            coloring: greedy_color(oracle),
            branch: Branch::Sparse,
            estimated_delta: delta,
            crossover_delta: star,
            trace: None,
            qn_report: None,
        })
    }
}

/// (Δ+1)-coloring with quantum adjacency queries above the crossover and
/// greedy below it.
pub fn combined_quantum_dp1(
    oracle: &OracleHandle,
    seed: u64,
    mode: GroverMode,
) -> Result<CombinedRun, ColorError> {
    let n = oracle.n();
    let delta = oracle.estimate_max_degree();
    let star = if n >= 2 {
        crossover(&CostModel::quantum_dp1(), n, 1.0).expect("built-in model is monotone")
    } else {
        1
    };
    if delta >= star {
        let (coloring, trace) = quantum_adjacency_color(oracle, delta, seed, mode)?;
        Ok(CombinedRun {
            coloring,
            branch: Branch::Dense,
            estimated_delta: delta,
            crossover_delta: star,
            trace: Some(trace),
            qn_report: None,
        })
    } else {
        Ok(CombinedRun {
            coloring: greedy_color(oracle),
            branch: Branch::Sparse,
            estimated_delta: delta,
            crossover_delta: star,
            trace: None,
            qn_report: None,
        })
    }
}

/// (1+ε)Δ-coloring with quantum queries: a (Δ+1)-coloring from the searched
/// palette algorithm is also a (1+ε)Δ-coloring once Δ ≥ 1/ε, so the dense
/// side reuses it; the sparse side runs the partitioned algorithm.
pub fn combined_quantum_eps(
    oracle: &OracleHandle,
    eps: f64,
    seed: u64,
    mode: GroverMode,
) -> Result<CombinedRun, ColorError> {
    assert!(eps > 0.0, "eps must be positive");
    let n = oracle.n();
    let delta = oracle.estimate_max_degree();
    let star = if n >= 2 {
        crossover(&CostModel::quantum_eps(), n, eps).expect("built-in model is monotone")
    } else {
        1
    };
    if delta >= star {
        let (coloring, trace) = quantum_adjacency_color(oracle, delta, seed, mode)?;
        Ok(CombinedRun {
            coloring,
            branch: Branch::Dense,
            estimated_delta: delta,
            crossover_delta: star,
            trace: Some(trace),
            qn_report: None,
        })
    } else {
        let (coloring, report) = quantum_neighborhood_color(oracle, delta, eps, seed, mode);
        Ok(CombinedRun {
            coloring,
            branch: Branch::Sparse,
            estimated_delta: delta,
            crossover_delta: star,
            trace: None,
            qn_report: Some(report),
        })
    }
}
