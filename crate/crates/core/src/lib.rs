//! Sublinear vertex coloring in the query model.
//!
//! Algorithms access graphs only through a metered oracle (adjacency,
//! degree, and neighborhood probes), so query counts are exact by
//! construction. The crate provides:
//!
//! - deterministic graph generators and an edge-list text format,
//! - the query oracle with a five-counter ledger,
//! - a faithful two-dimensional simulation of Grover-style search with an
//!   exponential phase schedule, plus an idealized cost model,
//! - classical and search-accelerated coloring algorithms with (Δ+1) and
//!   (1+ε)Δ palettes,
//! - a degree-threshold combiner dispatching between them,
//! - a benchmark harness that sweeps graph sizes, emits CSV, and fits
//!   log-log scaling exponents.

pub mod bench;
pub mod classical;
pub mod combine;
pub mod graph;
pub mod grover;
pub mod oracle;
pub mod quantum;
pub mod seed;

pub use graph::{gen_clique, gen_cycle, gen_gnp, gen_gnp_with_order, Coloring, Graph};
pub use oracle::{LedgerSnapshot, OracleHandle};
