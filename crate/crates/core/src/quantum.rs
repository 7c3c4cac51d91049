//! Search-accelerated coloring: the (Δ+1) palette algorithm with each class
//! check replaced by a quantum-style search over the class, and the
//! partition-based (1+ε)Δ algorithm that collects same-part neighborhoods
//! through repeated searches over neighbor indices.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::classical::{ColorError, TraceRecord};
use crate::graph::Coloring;
use crate::grover::{self, GroverInstance, GroverMode};
use crate::oracle::{OracleHandle, QuantumKind};

/// A random partition of 0..n into parts whose sizes differ by at most one.
pub struct EquitablePartition {
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl EquitablePartition {
    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn same_part(&self, u: usize, v: usize) -> bool {
        self.part_of[u] == self.part_of[v]
    }
}

/// Uniformly random equitable partition: shuffle the ids and slice them into
/// `t` blocks, the first n mod t blocks taking the extra vertex.
pub fn make_equitable_partition(n: usize, t: usize, seed: u64) -> EquitablePartition {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    partition_with_rng(n, t, &mut rng)
}

fn partition_with_rng(n: usize, t: usize, rng: &mut ChaCha12Rng) -> EquitablePartition {
    assert!(t >= 1 && t <= n, "part count {t} out of range for n = {n}");
    let mut ids: Vec<usize> = (0..n).collect();
    ids.shuffle(rng);
    let base = n / t;
    let extra = n % t;
    let mut parts = Vec::with_capacity(t);
    let mut part_of = vec![0usize; n];
    let mut cursor = 0;
    for i in 0..t {
        let size = base + usize::from(i < extra);
        let block: Vec<usize> = ids[cursor..cursor + size].to_vec();
        for &v in &block {
            part_of[v] = i;
        }
        parts.push(block);
        cursor += size;
    }
    EquitablePartition { part_of, parts }
}

/// Derived parameters of the partition-based algorithm.
#[derive(Debug, Clone)]
pub struct QnConfig {
    pub n: usize,
    pub delta: usize,
    pub eps: f64,
    /// Part count: floor(eps^2 * delta / (6 ln n)), at least 1.
    pub t: usize,
    /// Colors per part: floor((1+eps) * delta / t) + 1. One more than the
    /// concentration bound on in-part degree, so greedy always has a slot.
    pub palette_size: usize,
    /// Concentration cap on in-part degrees: ceil((1+eps) * delta / t).
    pub part_degree_cap: usize,
}

impl QnConfig {
    pub fn new(n: usize, delta: usize, eps: f64) -> Self {
        assert!(n >= 1);
        assert!(eps > 0.0, "eps must be positive");
        let t = if n > 1 {
            let raw = eps * eps * delta as f64 / (6.0 * (n as f64).ln());
            (raw.floor() as usize).clamp(1, n)
        } else {
            1
        };
        let ratio = (1.0 + eps) * delta as f64 / t as f64;
        QnConfig {
            n,
            delta,
            eps,
            t,
            palette_size: ratio.floor() as usize + 1,
            part_degree_cap: ratio.ceil() as usize,
        }
    }

    /// Search-space cap used to size the repeat count for a vertex of the
    /// given degree.
    pub fn k_cap(&self, degree: usize) -> usize {
        self.part_degree_cap.min(degree)
    }

    /// Outer repetitions per vertex: ceil(8 k max(ln k, 1) ln n / max(ln ln n, 1)).
    /// Sized so the uniform-coupon process over at most k in-part neighbors
    /// completes with high probability.
    pub fn repeats(&self, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        let ln_n = (self.n as f64).ln();
        let lnln_n = ln_n.ln().max(1.0);
        let ln_k = (k as f64).ln().max(1.0);
        (8.0 * k as f64 * ln_k * ln_n / lnln_n).ceil() as u64
    }

    /// Tail exponent of the coupon bound at the chosen repeat count.
    pub fn tail_constant(&self) -> f64 {
        let ln_n = (self.n as f64).ln();
        2.0 * ln_n / ln_n.ln().max(1.0)
    }

    pub fn total_colors(&self) -> usize {
        self.t * self.palette_size
    }
}

/// Run report for the partition-based algorithm, serialized alongside
/// colorings so palette overshoot and local failures stay auditable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QnReport {
    pub t: usize,
    pub palette_size: usize,
    pub colors_used: usize,
    /// Vertices whose part palette was exhausted; each got the sentinel
    /// overflow color and the coloring fails bound verification.
    pub failures: Vec<usize>,
    /// Largest observed in-part neighborhood per part.
    pub per_part_max_indegree: Vec<usize>,
}

/// Collects the same-part neighbors of `v` by repeated searches over its
/// neighbor indices: one degree query, then `repeats(k_cap)` searches, each
/// verified by one classical neighborhood query. Every returned vertex is a
/// confirmed in-part neighbor; the fixed repeat count makes missing one
/// unlikely rather than impossible.
pub fn grover_neighbors(
    oracle: &OracleHandle,
    v: usize,
    config: &QnConfig,
    partition: &EquitablePartition,
    mode: GroverMode,
    rng: &mut ChaCha12Rng,
) -> Vec<usize> {
    let degree = oracle.degree_query(v);
    if degree == 0 {
        return Vec::new();
    }
    let marked: Vec<bool> = (1..=degree)
        .map(|j| {
            oracle
                .peek_neighbor(v, j)
                .is_some_and(|u| partition.same_part(u, v))
        })
        .collect();
    let inst = GroverInstance::new(marked, QuantumKind::Neighborhood, mode);
    let repeats = config.repeats(config.k_cap(degree));
    let mut found_flags = vec![false; degree];
    let mut found = Vec::new();
    for _ in 0..repeats {
        let mut witness: Option<(usize, usize)> = None;
        let outcome = grover::search(oracle, &inst, rng, |idx| {
            match oracle.neighbor_query(v, idx + 1) {
                Some(u) if partition.same_part(u, v) => {
                    witness = Some((idx, u));
                    true
                }
                _ => false,
            }
        });
        if outcome.found.is_some() {
            let (idx, u) = witness.expect("a verified find always has a witness");
            if !found_flags[idx] {
                found_flags[idx] = true;
                found.push(u);
            }
        }
    }
    found.sort_unstable();
    found
}

/// The (Δ+1) palette algorithm with the class membership check performed by
/// a search over the candidate color class. In cost-model mode the check
/// never misses, so the output is always proper; in dynamics mode a search
/// can miss a neighbor, leaving a residual error the trusted verifier
/// measures.
pub fn quantum_adjacency_color(
    oracle: &OracleHandle,
    delta: usize,
    seed: u64,
    mode: GroverMode,
) -> Result<(Coloring, TraceRecord), ColorError> {
    let n = oracle.n();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    if delta == 0 {
        let mut coloring = Coloring::new(n, 1);
        for v in 0..n {
            coloring.assign(v, 1);
        }
        return Ok((coloring, TraceRecord::new(order)));
    }
    let palette = delta + 1;
    let mut coloring = Coloring::new(n, palette);
    let mut trace = TraceRecord::new(order);
    let cap = 64 * palette as u64;
    for t in 0..n {
        let v = trace.order[t];
        let before = oracle.ledger().adj_classical() + oracle.ledger().adj_quantum();
        let mut attempts: u64 = 0;
        loop {
            attempts += 1;
            if attempts > cap {
                return Err(ColorError::AttemptCapExceeded {
                    vertex: v,
                    attempts: cap,
                });
            }
            let c = rng.random_range(1..=palette);
            let accepted = {
                let class = coloring.class(c);
                if class.is_empty() {
                    true
                } else {
                    let marked: Vec<bool> =
                        class.iter().map(|&u| oracle.peek_adjacent(v, u)).collect();
                    let inst = GroverInstance::new(marked, QuantumKind::Adjacency, mode);
                    let outcome = grover::search(oracle, &inst, &mut rng, |idx| {
                        oracle.adjacency_query(v, class[idx])
                    });
                    outcome.found.is_none()
                }
            };
            if accepted {
                coloring.assign(v, c);
                break;
            }
            trace.retries[t] += 1;
        }
        trace.queries[t] = oracle.ledger().adj_classical() + oracle.ledger().adj_quantum() - before;
    }
    Ok((coloring, trace))
}

/// Partition-based (1+ε)Δ coloring: randomly partition the vertices, give
/// each part a disjoint palette sized for the concentrated in-part degree,
/// and greedily color each part against searched neighborhoods. Local
/// palette exhaustion is recorded and marked with a sentinel color so the
/// failure is visible to verification instead of silently absorbed.
pub fn quantum_neighborhood_color(
    oracle: &OracleHandle,
    delta: usize,
    eps: f64,
    seed: u64,
    mode: GroverMode,
) -> (Coloring, QnReport) {
    let n = oracle.n();
    let config = QnConfig::new(n, delta, eps);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let partition = partition_with_rng(n, config.t, &mut rng);
    let palette_size = config.palette_size;
    let mut coloring = Coloring::new(n, config.total_colors());
    let mut report = QnReport {
        t: config.t,
        palette_size,
        colors_used: 0,
        failures: Vec::new(),
        per_part_max_indegree: vec![0; config.t],
    };
    for i in 0..config.t {
        for idx in 0..partition.part(i).len() {
            let v = partition.part(i)[idx];
            let neighbors = grover_neighbors(oracle, v, &config, &partition, mode, &mut rng);
            report.per_part_max_indegree[i] = report.per_part_max_indegree[i].max(neighbors.len());
            let base = i * palette_size;
            let mut used = vec![false; palette_size];
            for &u in &neighbors {
                if let Some(c) = coloring.color(u) {
                    if c > base && c <= base + palette_size {
                        used[c - base - 1] = true;
                    }
                }
            }
            match used.iter().position(|&b| !b) {
                Some(slot) => coloring.assign(v, base + slot + 1),
                None => {
                    report.failures.push(v);
                    coloring.assign(v, config.total_colors() + 1);
                }
            }
        }
    }
    report.colors_used = coloring.colors_used();
    (coloring, report)
}
