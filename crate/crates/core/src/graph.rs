//! Graph storage, deterministic generators, edge-list persistence, and the
//! trusted coloring verifier.
//!
//! Graphs are simple and undirected. Every vertex carries a fixed neighbor
//! ordering that the oracle layer exposes one index at a time; the ordering
//! is chosen at construction and never changes afterwards.

use std::io::{self, BufRead, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, Geometric};
use thiserror::Error;

/// Graphs with at most this many vertices store adjacency as a packed bit
/// matrix; larger graphs keep sorted adjacency lists instead. Both stores
/// answer membership identically.
pub const DEFAULT_DENSE_LIMIT: usize = 8192;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),
    #[error("graph needs at least {min} vertices, got {n}")]
    TooFewVertices { min: usize, n: usize },
    #[error("vertex {v} out of range for n = {n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {v} out of range for n = {n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge \"{u} {v}\" is not in canonical u < v form")]
    NotCanonical { line: usize, u: usize, v: usize },
    #[error("expected {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// How a generator orders each vertex's neighbor list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NeighborOrder {
    /// Seed-derived random permutation per vertex (the default; the oracle
    /// contract only promises an arbitrary fixed order).
    Shuffled,
    /// Ascending vertex ids, required by the interval-based coloring routine.
    Ascending,
}

enum EdgeStore {
    Dense { n: usize, bits: Vec<u64> },
    Sparse { sorted: Vec<Vec<usize>> },
}

impl EdgeStore {
    fn build(order: &[Vec<usize>], dense_limit: usize) -> Self {
        let n = order.len();
        if n <= dense_limit {
            let words = (n * n + 63) / 64;
            let mut bits = vec![0u64; words];
            for (u, nbrs) in order.iter().enumerate() {
                for &v in nbrs {
                    let i = u * n + v;
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            EdgeStore::Dense { n, bits }
        } else {
            let mut sorted: Vec<Vec<usize>> = order.to_vec();
            for list in &mut sorted {
                list.sort_unstable();
            }
            EdgeStore::Sparse { sorted }
        }
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        match self {
            EdgeStore::Dense { n, bits } => {
                let i = u * n + v;
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            EdgeStore::Sparse { sorted } => sorted[u].binary_search(&v).is_ok(),
        }
    }
}

/// An immutable simple graph with a fixed per-vertex neighbor ordering.
pub struct Graph {
    n: usize,
    m: usize,
    max_degree: usize,
    neighbor_order: Vec<Vec<usize>>,
    store: EdgeStore,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from an explicit edge list. Neighbor lists keep the
    /// order in which edges appear. Rejects self-loops, duplicates, and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Self::from_edges_with_dense_limit(n, edges, DEFAULT_DENSE_LIMIT)
    }

    /// Same as [`Graph::from_edges`] with an explicit dense-storage cutoff.
    pub fn from_edges_with_dense_limit(
        n: usize,
        edges: &[(usize, usize)],
        dense_limit: usize,
    ) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::TooFewVertices { min: 1, n });
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        // Duplicate detection on sorted copies; insertion order is preserved
        // in the lists the oracle sees.
        for (u, list) in adj.iter().enumerate() {
            let mut s = list.clone();
            s.sort_unstable();
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self::from_adjacency(adj, dense_limit))
    }

    /// Trusts `adj` to be symmetric, loop-free and duplicate-free.
    fn from_adjacency(adj: Vec<Vec<usize>>, dense_limit: usize) -> Self {
        let n = adj.len();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let max_degree = adj.iter().map(Vec::len).max().unwrap_or(0);
        let store = EdgeStore::build(&adj, dense_limit);
        Graph {
            n,
            m,
            max_degree,
            neighbor_order: adj,
            store,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbor_order[v].len()
    }

    /// The `j`-th neighbor of `v` in the fixed ordering, 1-based.
    /// Returns `None` when `j == 0` or `j > d(v)`.
    pub fn neighbor(&self, v: usize, j: usize) -> Option<usize> {
        if j == 0 {
            return None;
        }
        self.neighbor_order[v].get(j - 1).copied()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbor_order[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.store.has_edge(u, v)
    }

    /// All edges in canonical form: u < v, sorted ascending.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.m);
        for (u, nbrs) in self.neighbor_order.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        edges
    }
}

/// Erdős–Rényi G(n, p) with shuffled neighbor order.
pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    gen_gnp_with_order(n, p, seed, NeighborOrder::Shuffled)
}

/// Erdős–Rényi G(n, p): each of the C(n, 2) pairs is an edge independently
/// with probability `p`, driven entirely by `seed`.
pub fn gen_gnp_with_order(
    n: usize,
    p: f64,
    seed: u64,
    order: NeighborOrder,
) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::TooFewVertices { min: 1, n });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidProbability(p));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    if p >= 1.0 {
        for u in 0..n {
            for v in (u + 1)..n {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
    } else if p > 0.0 {
        // Skip-sampling: geometric jumps between successive edges within each
        // row of the upper triangle, one Bernoulli trial per pair overall.
        let skip = Geometric::new(p).expect("p checked above");
        for u in 0..n.saturating_sub(1) {
            let row = n - 1 - u;
            let mut pos = skip.sample(&mut rng) as usize;
            while pos < row {
                let v = u + 1 + pos;
                adj[u].push(v);
                adj[v].push(u);
                pos = pos.saturating_add(1 + skip.sample(&mut rng) as usize);
            }
        }
    }
    if order == NeighborOrder::Shuffled {
        for list in &mut adj {
            list.shuffle(&mut rng);
        }
    }
    Ok(Graph::from_adjacency(adj, DEFAULT_DENSE_LIMIT))
}

/// Complete graph K_n, neighbors ascending.
pub fn gen_clique(n: usize) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(GraphError::TooFewVertices { min: 1, n });
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| (0..n).filter(|&u| u != v).collect())
        .collect();
    Ok(Graph::from_adjacency(adj, DEFAULT_DENSE_LIMIT))
}

/// Cycle C_n, neighbors ascending.
pub fn gen_cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::TooFewVertices { min: 3, n });
    }
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut nb = vec![(v + n - 1) % n, (v + 1) % n];
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(Graph::from_adjacency(adj, DEFAULT_DENSE_LIMIT))
}

/// Reads the text edge-list format: a header line `n m` followed by `m`
/// lines `u v` with `0 <= u < v < n`. Neighbor order is the order in which
/// edges appear in the file.
pub fn load_edge_list(reader: impl BufRead) -> Result<Graph, ParseError> {
    let mut lines = reader.lines().enumerate();
    let (n, m) = loop {
        match lines.next() {
            Some((idx, line)) => {
                let line = line?;
                let t = line.trim();
                if t.is_empty() {
                    continue;
                }
                let mut it = t.split_whitespace();
                let parse = |s: Option<&str>, what: &str| -> Result<usize, ParseError> {
                    s.and_then(|x| x.parse().ok()).ok_or(ParseError::Malformed {
                        line: idx + 1,
                        msg: format!("expected header \"n m\", bad {what}"),
                    })
                };
                let n = parse(it.next(), "vertex count")?;
                let m = parse(it.next(), "edge count")?;
                if it.next().is_some() {
                    return Err(ParseError::Malformed {
                        line: idx + 1,
                        msg: "trailing tokens after header".into(),
                    });
                }
                if n < 1 {
                    return Err(ParseError::Malformed {
                        line: idx + 1,
                        msg: "vertex count must be at least 1".into(),
                    });
                }
                break (n, m);
            }
            None => {
                return Err(ParseError::Malformed {
                    line: 1,
                    msg: "missing header line".into(),
                })
            }
        }
    };

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut found = 0usize;
    for (idx, line) in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if found == m {
            return Err(ParseError::EdgeCountMismatch {
                expected: m,
                found: m + 1,
            });
        }
        let mut it = t.split_whitespace();
        let mut parse = |what: &str| -> Result<usize, ParseError> {
            it.next()
                .and_then(|x| x.parse().ok())
                .ok_or(ParseError::Malformed {
                    line: lineno,
                    msg: format!("expected edge \"u v\", bad {what}"),
                })
        };
        let u = parse("first endpoint")?;
        let v = parse("second endpoint")?;
        if it.next().is_some() {
            return Err(ParseError::Malformed {
                line: lineno,
                msg: "trailing tokens after edge".into(),
            });
        }
        if u == v {
            return Err(ParseError::SelfLoop { line: lineno, v: u });
        }
        if u > v {
            return Err(ParseError::NotCanonical { line: lineno, u, v });
        }
        if v >= n {
            return Err(ParseError::VertexOutOfRange {
                line: lineno,
                v,
                n,
            });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line: lineno, u, v });
        }
        adj[u].push(v);
        adj[v].push(u);
        found += 1;
    }
    if found != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            found,
        });
    }
    Ok(Graph::from_adjacency(adj, DEFAULT_DENSE_LIMIT))
}

/// Writes the canonical edge-list form: header, then edges sorted with u < v.
pub fn save_edge_list(graph: &Graph, mut w: impl Write) -> io::Result<()> {
    writeln!(w, "{} {}", graph.n(), graph.edge_count())?;
    for (u, v) in graph.canonical_edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

/// A (possibly partial) vertex coloring with a declared palette bound.
///
/// Colors are 1-based. Assignments above the declared bound are storable so
/// that overflow sentinels survive to verification; `verify_coloring` flags
/// them via `within_bound`.
#[derive(Debug, Clone)]
pub struct Coloring {
    assignment: Vec<Option<usize>>,
    palette_bound: usize,
    classes: Vec<Vec<usize>>,
    assigned: usize,
}

impl Coloring {
    pub fn new(n: usize, palette_bound: usize) -> Self {
        Coloring {
            assignment: vec![None; n],
            palette_bound,
            classes: Vec::new(),
            assigned: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn palette_bound(&self) -> usize {
        self.palette_bound
    }

    pub fn set_palette_bound(&mut self, bound: usize) {
        self.palette_bound = bound;
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    /// Assigns color `c >= 1` to an uncolored vertex and updates the color
    /// class index.
    pub fn assign(&mut self, v: usize, c: usize) {
        assert!(c >= 1, "colors are 1-based");
        assert!(self.assignment[v].is_none(), "vertex {v} is already colored");
        self.assignment[v] = Some(c);
        if c > self.classes.len() {
            self.classes.resize_with(c, Vec::new);
        }
        self.classes[c - 1].push(v);
        self.assigned += 1;
    }

    /// The vertices currently holding color `c`, in assignment order.
    pub fn class(&self, c: usize) -> &[usize] {
        assert!(c >= 1, "colors are 1-based");
        self.classes.get(c - 1).map_or(&[], Vec::as_slice)
    }

    pub fn is_complete(&self) -> bool {
        self.assigned == self.assignment.len()
    }

    pub fn first_uncolored(&self) -> Option<usize> {
        self.assignment.iter().position(Option::is_none)
    }

    /// Number of distinct colors in use.
    pub fn colors_used(&self) -> usize {
        self.classes.iter().filter(|c| !c.is_empty()).count()
    }

    pub fn max_color(&self) -> usize {
        self.classes
            .iter()
            .rposition(|c| !c.is_empty())
            .map_or(0, |i| i + 1)
    }

    pub fn colors(&self) -> impl Iterator<Item = Option<usize>> + '_ {
        self.assignment.iter().copied()
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("vertex {0} is uncolored")]
    Uncolored(usize),
    #[error("coloring covers {coloring} vertices but the graph has {graph}")]
    SizeMismatch { coloring: usize, graph: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub proper: bool,
    pub colors_used: usize,
    /// First monochromatic edge found, if any.
    pub violation: Option<(usize, usize)>,
    pub within_bound: bool,
}

/// Trusted checker: reads the graph directly and charges no oracle queries.
pub fn verify_coloring(
    graph: &Graph,
    coloring: &Coloring,
    bound: usize,
) -> Result<VerifyReport, VerifyError> {
    if coloring.n() != graph.n() {
        return Err(VerifyError::SizeMismatch {
            coloring: coloring.n(),
            graph: graph.n(),
        });
    }
    if let Some(v) = coloring.first_uncolored() {
        return Err(VerifyError::Uncolored(v));
    }
    let mut violation = None;
    'scan: for v in 0..graph.n() {
        for &u in graph.neighbors(v) {
            if u > v && coloring.color(v) == coloring.color(u) {
                violation = Some((v, u));
                break 'scan;
            }
        }
    }
    Ok(VerifyReport {
        proper: violation.is_none(),
        colors_used: coloring.colors_used(),
        violation,
        within_bound: coloring.max_color() <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn gnp_extremes() {
        let g = gen_gnp(5, 0.0, 123).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.max_degree(), 0);
        let g = gen_gnp(5, 1.0, 123).unwrap();
        assert_eq!(g.edge_count(), 10);
        assert_eq!(g.max_degree(), 4);
    }

    #[test]
    fn gnp_rejects_bad_probability() {
        assert!(matches!(
            gen_gnp(5, 1.5, 0),
            Err(GraphError::InvalidProbability(_))
        ));
        assert!(matches!(
            gen_gnp(5, -0.1, 0),
            Err(GraphError::InvalidProbability(_))
        ));
        assert!(matches!(
            gen_gnp(5, f64::NAN, 0),
            Err(GraphError::InvalidProbability(_))
        ));
    }

    #[test]
    fn gnp_edge_count_concentration() {
        // C(1000, 2) Bernoulli(1/2) trials: mean 249750, sigma ~ 353.5.
        let g = gen_gnp(1000, 0.5, 7).unwrap();
        let mean = 249750.0;
        let sigma = (499500.0f64 * 0.25).sqrt();
        let dev = (g.edge_count() as f64 - mean).abs();
        assert!(dev <= 4.0 * sigma, "edge count {} too far from mean", g.edge_count());
    }

    #[test]
    fn gnp_is_deterministic() {
        let a = gen_gnp(64, 0.3, 42).unwrap();
        let b = gen_gnp(64, 0.3, 42).unwrap();
        assert_eq!(a.canonical_edges(), b.canonical_edges());
        for v in 0..64 {
            assert_eq!(a.neighbors(v), b.neighbors(v));
        }
        let c = gen_gnp(64, 0.3, 43).unwrap();
        assert_ne!(a.canonical_edges(), c.canonical_edges());
    }

    #[test]
    fn gnp_ascending_order() {
        let g = gen_gnp_with_order(50, 0.4, 9, NeighborOrder::Ascending).unwrap();
        for v in 0..50 {
            assert!(g.neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn clique_and_cycle_basics() {
        let k1 = gen_clique(1).unwrap();
        assert_eq!((k1.n(), k1.max_degree()), (1, 0));
        let k2 = gen_clique(2).unwrap();
        assert_eq!(k2.edge_count(), 1);
        let k6 = gen_clique(6).unwrap();
        assert_eq!(k6.edge_count(), 15);
        let c3 = gen_cycle(3).unwrap();
        assert_eq!((c3.edge_count(), c3.max_degree()), (3, 2));
        assert!(gen_cycle(2).is_err());
    }

    /// Exhaustive search for a proper k-coloring; independent of the
    /// production verifier and of any coloring algorithm.
    fn colorable(g: &Graph, k: usize) -> bool {
        fn rec(g: &Graph, k: usize, colors: &mut Vec<usize>, v: usize) -> bool {
            if v == g.n() {
                return true;
            }
            for c in 1..=k {
                if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                    colors[v] = c;
                    if rec(g, k, colors, v + 1) {
                        return true;
                    }
                }
            }
            false
        }
        rec(g, k, &mut vec![0; g.n()], 0)
    }

    #[test]
    fn chromatic_numbers_of_named_graphs() {
        let k6 = gen_clique(6).unwrap();
        assert!(!colorable(&k6, 5));
        assert!(colorable(&k6, 6));
        let c5 = gen_cycle(5).unwrap();
        assert!(!colorable(&c5, 2));
        assert!(colorable(&c5, 3));
        let c4 = gen_cycle(4).unwrap();
        assert!(colorable(&c4, 2));
        let c3 = gen_cycle(3).unwrap();
        assert!(!colorable(&c3, 2));
        assert!(colorable(&c3, 3));
    }

    #[test]
    fn dense_and_sparse_stores_agree() {
        let edges: Vec<(usize, usize)> = gen_gnp(40, 0.3, 5).unwrap().canonical_edges();
        let dense = Graph::from_edges_with_dense_limit(40, &edges, 64).unwrap();
        let sparse = Graph::from_edges_with_dense_limit(40, &edges, 8).unwrap();
        for u in 0..40 {
            for v in 0..40 {
                assert_eq!(dense.has_edge(u, v), sparse.has_edge(u, v));
            }
            assert_eq!(dense.neighbors(u), sparse.neighbors(u));
        }
    }

    #[test]
    fn from_edges_rejects_bad_input() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange { v: 3, n: 3 })
        ));
    }

    #[test]
    fn load_trivial_cases() {
        let g = load_edge_list("3 0\n".as_bytes()).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 0));
        let g = load_edge_list("3 3\n0 1\n0 2\n1 2\n".as_bytes()).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(0, 1) && g.has_edge(0, 2) && g.has_edge(1, 2));
    }

    #[test]
    fn load_neighbor_order_is_file_order() {
        let g = load_edge_list("4 3\n2 3\n0 2\n1 2\n".as_bytes()).unwrap();
        assert_eq!(g.neighbors(2), &[3, 0, 1]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = load_edge_list("3 1\n0 0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::SelfLoop { line: 2, v: 0 }));
        let err = load_edge_list("3 2\n0 1\n1 0\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::NotCanonical { line: 3, .. }));
        let err = load_edge_list("3 2\n0 1\n0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::DuplicateEdge { line: 3, u: 0, v: 1 }));
        let err = load_edge_list("3 1\n0 7\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::VertexOutOfRange { line: 2, v: 7, n: 3 }));
        let err = load_edge_list("3 2\n0 1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::EdgeCountMismatch { expected: 2, found: 1 }));
        let err = load_edge_list("bad\n".as_bytes()).unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 1, .. }));
    }

    #[test]
    fn save_load_round_trip() {
        let g = gen_gnp(30, 0.2, 11).unwrap();
        let mut buf = Vec::new();
        save_edge_list(&g, &mut buf).unwrap();
        let g2 = load_edge_list(buf.as_slice()).unwrap();
        assert_eq!(g.canonical_edges(), g2.canonical_edges());
        let mut buf2 = Vec::new();
        save_edge_list(&g2, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn verify_examples() {
        let g = triangle();
        let mut c = Coloring::new(3, 3);
        c.assign(0, 1);
        c.assign(1, 2);
        c.assign(2, 3);
        let r = verify_coloring(&g, &c, 3).unwrap();
        assert!(r.proper && r.within_bound);
        assert_eq!(r.colors_used, 3);

        let mut c = Coloring::new(3, 3);
        c.assign(0, 1);
        c.assign(1, 1);
        c.assign(2, 2);
        let r = verify_coloring(&g, &c, 3).unwrap();
        assert!(!r.proper);
        assert_eq!(r.violation, Some((0, 1)));
    }

    #[test]
    fn verify_rejects_incomplete() {
        let g = triangle();
        let mut c = Coloring::new(3, 3);
        c.assign(0, 1);
        assert!(matches!(
            verify_coloring(&g, &c, 3),
            Err(VerifyError::Uncolored(1))
        ));
    }

    #[test]
    fn coloring_classes_track_assignment() {
        let mut c = Coloring::new(5, 2);
        c.assign(3, 2);
        c.assign(1, 2);
        c.assign(0, 1);
        assert_eq!(c.class(2), &[3, 1]);
        assert_eq!(c.class(1), &[0]);
        assert_eq!(c.class(7), &[] as &[usize]);
        assert_eq!(c.colors_used(), 2);
        assert_eq!(c.max_color(), 2);
        assert!(!c.is_complete());
    }
}
