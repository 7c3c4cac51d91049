//! Classical coloring algorithms: greedy neighbor enumeration, the
//! randomized (Δ+1) palette algorithm, its budgeted Monte Carlo boosting,
//! the (1+ε)Δ relaxation, and the interval routine for ascending-order
//! random graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use thiserror::Error;

use crate::graph::Coloring;
use crate::oracle::OracleHandle;
use crate::seed;

#[derive(Debug, Error)]
pub enum ColorError {
    #[error("vertex {vertex} drew {attempts} rejected colors; is the degree bound too small?")]
    AttemptCapExceeded { vertex: usize, attempts: u64 },
    #[error("round exceeded its adjacency-query budget after {queries_spent} queries")]
    BudgetExhausted { queries_spent: u64 },
    #[error("all {0} rounds exhausted their budget", .per_round_queries.len())]
    AllRoundsAborted { per_round_queries: Vec<u64> },
    #[error("in-part neighborhood of vertex {vertex} overflowed the scan window")]
    ScanOverflow { vertex: usize },
    #[error("{algo} requires {what}")]
    MissingParameter { algo: &'static str, what: &'static str },
}

/// Per-run trace of the randomized palette algorithms: the visit order and,
/// for each position, how many adjacency queries and rejected colors the
/// vertex cost. The query column sums to the run's adjacency-ledger delta
/// (classical plus quantum for the search-based variant).
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub order: Vec<usize>,
    pub queries: Vec<u64>,
    pub retries: Vec<u64>,
}

impl TraceRecord {
    pub fn new(order: Vec<usize>) -> Self {
        let n = order.len();
        TraceRecord {
            order,
            queries: vec![0; n],
            retries: vec![0; n],
        }
    }

    pub fn total_queries(&self) -> u64 {
        self.queries.iter().sum()
    }

    pub fn total_retries(&self) -> u64 {
        self.retries.iter().sum()
    }
}

/// Rejected candidates are redrawn uniformly from the full palette, with
/// replacement; the analysis of the palette algorithms assumes fresh draws.
/// The cap bounds candidate draws per vertex so that an understated degree
/// bound aborts with a diagnostic instead of looping forever.
const ATTEMPT_CAP_FACTOR: u64 = 64;

/// Core accept/reject loop shared by the (Δ+1) and (1+ε)Δ algorithms: visit
/// vertices in `order`, draw palette colors uniformly, and accept a color
/// only after adjacency checks against every current member of its class
/// come back negative (scanning stops at the first hit).
fn palette_color(
    oracle: &OracleHandle,
    palette: usize,
    order: Vec<usize>,
    rng: &mut ChaCha12Rng,
    budget: Option<u64>,
) -> Result<(Coloring, TraceRecord), ColorError> {
    let n = oracle.n();
    debug_assert!(palette >= 1);
    let mut coloring = Coloring::new(n, palette);
    let mut trace = TraceRecord::new(order);
    if budget == Some(0) {
        return Err(ColorError::BudgetExhausted { queries_spent: 0 });
    }
    let cap = ATTEMPT_CAP_FACTOR * palette as u64;
    let mut spent: u64 = 0;
    for t in 0..n {
        let v = trace.order[t];
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
            let mut valid = true;
            for &u in coloring.class(c) {
                if let Some(b) = budget {
                    if spent >= b {
                        return Err(ColorError::BudgetExhausted { queries_spent: spent });
                    }
                }
                spent += 1;
                trace.queries[t] += 1;
                if oracle.adjacency_query(v, u) {
                    valid = false;
                    break;
                }
            }
            if valid {
                coloring.assign(v, c);
                break;
            }
            trace.retries[t] += 1;
        }
    }
    Ok((coloring, trace))
}

/// Greedy coloring by full neighbor enumeration: each vertex takes the
/// smallest color absent among its already-colored neighbors, at a cost of
/// d(v) + 1 neighborhood queries (the last probe hits the end marker).
pub fn greedy_color(oracle: &OracleHandle) -> Coloring {
    let n = oracle.n();
    let mut coloring = Coloring::new(n, 1);
    let mut max_degree = 0;
    for v in 0..n {
        let mut neighbor_colors = Vec::new();
        let mut j = 1;
        while let Some(u) = oracle.neighbor_query(v, j) {
            if let Some(c) = coloring.color(u) {
                neighbor_colors.push(c);
            }
            j += 1;
        }
        let degree = j - 1;
        max_degree = max_degree.max(degree);
        // Smallest free color is at most degree + 1.
        let mut used = vec![false; degree + 2];
        for c in neighbor_colors {
            if c <= degree + 1 {
                used[c] = true;
            }
        }
        let c = (1..=degree + 1)
            .find(|&c| !used[c])
            .expect("degree + 1 colors always suffice");
        coloring.assign(v, c);
    }
    // Full enumeration reveals every degree, so the bound costs nothing extra.
    coloring.set_palette_bound(max_degree + 1);
    coloring
}

/// Randomized (Δ+1)-coloring: visit vertices in a uniformly random order,
/// draw colors from [Δ+1], and accept after adjacency checks against the
/// candidate class. Always proper when `delta` bounds the true maximum
/// degree; running time is the random variable.
pub fn delta_plus_one_color(
    oracle: &OracleHandle,
    delta: usize,
    seed: u64,
) -> Result<(Coloring, TraceRecord), ColorError> {
    delta_plus_one_color_bounded(oracle, delta, seed, None)
}

/// [`delta_plus_one_color`] with an optional adjacency-query budget; a round
/// that would exceed the budget aborts with [`ColorError::BudgetExhausted`].
pub fn delta_plus_one_color_bounded(
    oracle: &OracleHandle,
    delta: usize,
    seed: u64,
    budget: Option<u64>,
) -> Result<(Coloring, TraceRecord), ColorError> {
    let n = oracle.n();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    if delta == 0 {
        // A zero degree bound promises an edgeless graph; no checks needed.
        let mut coloring = Coloring::new(n, 1);
        for v in 0..n {
            coloring.assign(v, 1);
        }
        return Ok((coloring, TraceRecord::new(order)));
    }
    palette_color(oracle, delta + 1, order, &mut rng, budget)
}

#[derive(Debug, Clone)]
pub struct BoostReport {
    /// Zero-based index of the round that produced the coloring.
    pub succeeded_round: usize,
    /// Adjacency queries spent by every round attempted, the last being the
    /// successful one.
    pub per_round_queries: Vec<u64>,
}

/// Monte Carlo wrapper: run the (Δ+1) algorithm up to `rounds` times with
/// independent seeds, aborting any round that would exceed `budget`
/// adjacency queries. With the budget at twice the expected cost each round
/// aborts with probability at most 1/2, so all-round failure decays as
/// 2^-rounds.
pub fn boosted_color(
    oracle: &OracleHandle,
    delta: usize,
    seed: u64,
    rounds: usize,
    budget: u64,
) -> Result<(Coloring, BoostReport), ColorError> {
    let mut per_round_queries = Vec::with_capacity(rounds);
    for round in 0..rounds {
        let round_seed = seed::mix(&[seed, round as u64]);
        let before = oracle.ledger().adj_classical();
        match delta_plus_one_color_bounded(oracle, delta, round_seed, Some(budget)) {
            Ok((coloring, _)) => {
                per_round_queries.push(oracle.ledger().adj_classical() - before);
                return Ok((
                    coloring,
                    BoostReport {
                        succeeded_round: round,
                        per_round_queries,
                    },
                ));
            }
            Err(ColorError::BudgetExhausted { .. }) => {
                per_round_queries.push(oracle.ledger().adj_classical() - before);
            }
            Err(e) => return Err(e),
        }
    }
    Err(ColorError::AllRoundsAborted { per_round_queries })
}

/// The (1+ε)Δ relaxation: vertices in index order, colors drawn from a
/// palette of ceil((1+ε)Δ) + 1, same accept/reject rule. The looser palette
/// trades colors for fewer retries.
pub fn morris_song_color(
    oracle: &OracleHandle,
    delta: usize,
    eps: f64,
    seed: u64,
) -> Result<Coloring, ColorError> {
    assert!(eps > 0.0, "eps must be positive");
    let n = oracle.n();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let order: Vec<usize> = (0..n).collect();
    if delta == 0 {
        let mut coloring = Coloring::new(n, 1);
        for v in 0..n {
            coloring.assign(v, 1);
        }
        return Ok(coloring);
    }
    let palette = ((1.0 + eps) * delta as f64).ceil() as usize + 1;
    palette_color(oracle, palette, order, &mut rng, None).map(|(c, _)| c)
}

/// Interval coloring for graphs whose neighbor lists ascend by vertex id
/// and whose degrees concentrate like G(n, p): split the ids into near-equal
/// contiguous blocks, binary-search each vertex's first in-block neighbor,
/// scan one window of neighbors, and color each block from its own palette.
/// Fails explicitly when an in-block neighborhood overflows the window,
/// which for genuine G(n, p) inputs happens with vanishing probability.
pub fn ordered_gnp_color(
    oracle: &OracleHandle,
    p: f64,
    eps: f64,
) -> Result<Coloring, ColorError> {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    assert!(eps > 0.0, "eps must be positive");
    let n = oracle.n();
    let expected_degree = n as f64 * p;
    let parts = if n > 1 {
        let raw = expected_degree * eps * eps / (6.0 * (n as f64).ln());
        (raw.floor() as usize).clamp(1, n)
    } else {
        1
    };
    let window = ((1.0 + eps) * expected_degree / parts as f64).ceil() as usize;
    let palette_size = window + 1;

    // Contiguous near-equal blocks; the first n mod t blocks take the extra
    // vertex.
    let base = n / parts;
    let extra = n % parts;
    let mut part_start = vec![0usize; parts + 1];
    for i in 0..parts {
        part_start[i + 1] = part_start[i] + base + usize::from(i < extra);
    }
    let part_of = |v: usize| -> usize {
        match part_start.binary_search(&v) {
            Ok(i) if i < parts => i,
            Ok(i) => i - 1,
            Err(i) => i - 1,
        }
    };

    let mut coloring = Coloring::new(n, parts * palette_size);
    for v in 0..n {
        let part = part_of(v);
        let (lo, hi) = (part_start[part], part_start[part + 1]);
        let degree = oracle.degree_query(v);
        let base_color = part * palette_size;
        if degree == 0 {
            coloring.assign(v, base_color + 1);
            continue;
        }
        // Smallest j whose neighbor id reaches the block, in the spirit of a
        // lower-bound search; j = degree + 1 means none does.
        let (mut lo_j, mut hi_j) = (1usize, degree + 1);
        while lo_j < hi_j {
            let mid = (lo_j + hi_j) / 2;
            let u = oracle
                .neighbor_query(v, mid)
                .expect("mid is at most the degree");
            if u < lo {
                lo_j = mid + 1;
            } else {
                hi_j = mid;
            }
        }
        let mut in_part = Vec::new();
        for j in lo_j..=degree {
            match oracle.neighbor_query(v, j) {
                Some(u) if u < hi => {
                    in_part.push(u);
                    if in_part.len() > window {
                        return Err(ColorError::ScanOverflow { vertex: v });
                    }
                }
                _ => break,
            }
        }
        let mut used = vec![false; palette_size];
        for &u in &in_part {
            if let Some(c) = coloring.color(u) {
                debug_assert!(c > base_color && c <= base_color + palette_size);
                used[c - base_color - 1] = true;
            }
        }
        let slot = used
            .iter()
            .position(|&b| !b)
            .expect("window + 1 colors always suffice");
        coloring.assign(v, base_color + slot + 1);
    }
    Ok(coloring)
}
