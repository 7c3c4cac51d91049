//! The black-box access layer: algorithms see the graph only through an
//! [`OracleHandle`], and every probe increments the matching ledger counter.
//!
//! Accounting policy for simulated quantum search: one reflection built from
//! the phase-style adjacency oracle costs 1 quantum adjacency query; one
//! reflection built from the XOR-style neighborhood oracle costs 2 quantum
//! neighborhood queries (the oracle is applied on both sides of the partition
//! reflector, which itself is free). The classical read that verifies a
//! measured index is charged as 1 classical query of the same kind.
//! Out-of-range or degenerate arguments are programmer errors: they panic
//! without charging anything.

use std::cell::Cell;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Which quantum oracle a simulated search consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumKind {
    Adjacency,
    Neighborhood,
}

/// Monotone per-kind query counters for one run.
///
/// Counters only grow; starting a fresh count means constructing a new
/// [`OracleHandle`].
#[derive(Debug, Default)]
pub struct QueryLedger {
    adj_classical: Cell<u64>,
    deg_classical: Cell<u64>,
    nbr_classical: Cell<u64>,
    adj_quantum: Cell<u64>,
    nbr_quantum: Cell<u64>,
}

impl QueryLedger {
    pub fn adj_classical(&self) -> u64 {
        self.adj_classical.get()
    }

    pub fn deg_classical(&self) -> u64 {
        self.deg_classical.get()
    }

    pub fn nbr_classical(&self) -> u64 {
        self.nbr_classical.get()
    }

    pub fn adj_quantum(&self) -> u64 {
        self.adj_quantum.get()
    }

    pub fn nbr_quantum(&self) -> u64 {
        self.nbr_quantum.get()
    }

    pub fn total(&self) -> u64 {
        self.adj_classical()
            + self.deg_classical()
            + self.nbr_classical()
            + self.adj_quantum()
            + self.nbr_quantum()
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot {
            adj_classical: self.adj_classical(),
            deg_classical: self.deg_classical(),
            nbr_classical: self.nbr_classical(),
            adj_quantum: self.adj_quantum(),
            nbr_quantum: self.nbr_quantum(),
            total: self.total(),
        }
    }
}

/// Flat serializable ledger snapshot: the five counters plus their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerSnapshot {
    pub adj_classical: u64,
    pub deg_classical: u64,
    pub nbr_classical: u64,
    pub adj_quantum: u64,
    pub nbr_quantum: u64,
    pub total: u64,
}

/// Metered access to a hidden graph. One handle per run; a handle is
/// single-threaded (distinct runs on the same graph take their own handles).
pub struct OracleHandle<'g> {
    graph: &'g Graph,
    ledger: QueryLedger,
}

impl<'g> OracleHandle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        OracleHandle {
            graph,
            ledger: QueryLedger::default(),
        }
    }

    /// Vertex count; known for free.
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        self.ledger.snapshot()
    }

    fn check_vertex(&self, v: usize) {
        assert!(
            v < self.graph.n(),
            "vertex {v} out of range for n = {}",
            self.graph.n()
        );
    }

    /// Is {u, v} an edge? Charges 1 classical adjacency query.
    pub fn adjacency_query(&self, u: usize, v: usize) -> bool {
        assert!(u != v, "adjacency query on identical vertices ({u}, {u})");
        self.check_vertex(u);
        self.check_vertex(v);
        self.ledger.adj_classical.set(self.ledger.adj_classical.get() + 1);
        self.graph.has_edge(u, v)
    }

    /// d(v). Charges 1 classical degree query.
    pub fn degree_query(&self, v: usize) -> usize {
        self.check_vertex(v);
        self.ledger.deg_classical.set(self.ledger.deg_classical.get() + 1);
        self.graph.degree(v)
    }

    /// The j-th neighbor of v (1-based) or `None` beyond d(v). Charges 1
    /// classical neighborhood query either way.
    pub fn neighbor_query(&self, v: usize, j: usize) -> Option<usize> {
        self.check_vertex(v);
        assert!(j >= 1, "neighbor indices are 1-based");
        self.ledger.nbr_classical.set(self.ledger.nbr_classical.get() + 1);
        self.graph.neighbor(v, j)
    }

    /// Exact maximum degree via one degree query per vertex.
    pub fn estimate_max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree_query(v)).max().unwrap_or(0)
    }

    /// Adds `amount` to the requested quantum counter. Reserved for the
    /// search simulator; algorithm code never calls this directly.
    pub fn charge_quantum(&self, kind: QuantumKind, amount: u64) {
        let cell = match kind {
            QuantumKind::Adjacency => &self.ledger.adj_quantum,
            QuantumKind::Neighborhood => &self.ledger.nbr_quantum,
        };
        cell.set(cell.get() + amount);
    }

    /// Uncharged oracle-function evaluation used by the search simulator to
    /// realize the quantum adjacency oracle. The per-iteration quantum
    /// charges are applied separately. Not for algorithm code.
    pub fn peek_adjacent(&self, u: usize, v: usize) -> bool {
        self.graph.has_edge(u, v)
    }

    /// Uncharged counterpart of [`OracleHandle::neighbor_query`] for the
    /// simulated quantum neighborhood oracle.
    pub fn peek_neighbor(&self, v: usize, j: usize) -> Option<usize> {
        self.graph.neighbor(v, j)
    }
}
