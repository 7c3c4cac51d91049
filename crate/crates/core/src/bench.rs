//! Experiment sweeps, CSV emission, and log-log scaling fits.
//!
//! Every run is keyed by a seed derived from (master seed, n, trial,
//! algorithm id) through the fixed avalanche mix in [`crate::seed`], so a
//! configuration reproduces byte for byte. Trials execute in parallel and
//! records are emitted sorted by (n, trial) regardless of scheduling.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use rayon::prelude::*;

use crate::classical::{
    boosted_color, delta_plus_one_color, greedy_color, morris_song_color, ordered_gnp_color,
    ColorError,
};
use crate::combine::{combined_classical, combined_quantum_dp1, combined_quantum_eps, Branch};
use crate::graph::{
    gen_clique, gen_cycle, gen_gnp_with_order, verify_coloring, Coloring, Graph, GraphError,
    NeighborOrder, VerifyError,
};
use crate::grover::{GroverMode, DEFAULT_COST_CONSTANT};
use crate::oracle::{LedgerSnapshot, OracleHandle};
use crate::quantum::{quantum_adjacency_color, quantum_neighborhood_color, QnReport};
use crate::seed;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("bad config: {0}")]
    BadConfig(String),
    #[error("unknown algorithm id {0:?}")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("algorithm failed: {0}")]
    Color(#[from] ColorError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("{algo} produced an improper coloring at n = {n}, trial {trial} (seed {seed}); this algorithm must never do that")]
    ImproperLasVegas {
        algo: AlgorithmId,
        n: usize,
        trial: usize,
        seed: u64,
    },
    #[error("log-log fit needs at least 3 distinct n values, got {0}")]
    TooFewPoints(usize),
    #[error("log-log fit needs positive means, got {0}")]
    NonPositiveMean(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Algorithm ids as they appear on the CLI and in configs.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmId {
    Greedy,
    Alg1,
    Boosted,
    MorrisSong,
    OrderedGnp,
    Qadj,
    Qnbr,
    CombinedClassical,
    CombinedQdp1,
    CombinedQeps,
}

impl AlgorithmId {
    pub fn as_str(&self) -> &'static str {
        match self {
            AlgorithmId::Greedy => "greedy",
            AlgorithmId::Alg1 => "alg1",
            AlgorithmId::Boosted => "boosted",
            AlgorithmId::MorrisSong => "morris-song",
            AlgorithmId::OrderedGnp => "ordered-gnp",
            AlgorithmId::Qadj => "qadj",
            AlgorithmId::Qnbr => "qnbr",
            AlgorithmId::CombinedClassical => "combined-classical",
            AlgorithmId::CombinedQdp1 => "combined-qdp1",
            AlgorithmId::CombinedQeps => "combined-qeps",
        }
    }

    /// Algorithms that must never emit an improper coloring (failure, when
    /// allowed at all, is an explicit error instead).
    pub fn is_las_vegas(&self, mode: RunMode) -> bool {
        match self {
            AlgorithmId::Greedy
            | AlgorithmId::Alg1
            | AlgorithmId::MorrisSong
            | AlgorithmId::CombinedClassical => true,
            AlgorithmId::Qadj | AlgorithmId::CombinedQdp1 => mode == RunMode::CostModel,
            _ => false,
        }
    }
}

impl std::fmt::Display for AlgorithmId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for AlgorithmId {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use AlgorithmId::*;
        for algo in [
            Greedy,
            Alg1,
            Boosted,
            MorrisSong,
            OrderedGnp,
            Qadj,
            Qnbr,
            CombinedClassical,
            CombinedQdp1,
            CombinedQeps,
        ] {
            if algo.as_str() == s {
                return Ok(algo);
            }
        }
        Err(BenchError::UnknownAlgorithm(s.to_string()))
    }
}

/// Simulation mode for the search-based algorithms.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum RunMode {
    Dynamics,
    CostModel,
}

impl RunMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            RunMode::Dynamics => "dynamics",
            RunMode::CostModel => "cost-model",
        }
    }
}

impl std::fmt::Display for RunMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for RunMode {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dynamics" => Ok(RunMode::Dynamics),
            "cost-model" => Ok(RunMode::CostModel),
            other => Err(BenchError::BadConfig(format!(
                "unknown mode {other:?}, expected \"dynamics\" or \"cost-model\""
            ))),
        }
    }
}

pub fn grover_mode(mode: RunMode, cost_constant: f64) -> GroverMode {
    match mode {
        RunMode::Dynamics => GroverMode::Dynamics,
        RunMode::CostModel => GroverMode::CostModel { cost_constant },
    }
}

/// Degree schedules that pin G(n, p) families to crossover regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PSchedule {
    /// p = sqrt(ln n / n): expected degree sqrt(n ln n).
    ClassicalCrossover,
    /// p = (sqrt(n) ln n)^{2/3} / n: expected degree at the quantum (Δ+1)
    /// crossover.
    Qdp1Crossover,
    /// p = eps^2 / (sqrt(n) ln n): expected degree at the eps-combiner
    /// crossover.
    QepsCrossover,
}

impl PSchedule {
    pub fn probability(&self, n: usize, eps: f64) -> f64 {
        let nf = n as f64;
        let ln_n = nf.ln();
        let p = match self {
            PSchedule::ClassicalCrossover => (ln_n / nf).sqrt(),
            PSchedule::Qdp1Crossover => (nf.sqrt() * ln_n).powf(2.0 / 3.0) / nf,
            PSchedule::QepsCrossover => eps * eps / (nf.sqrt() * ln_n),
        };
        p.clamp(0.0, 1.0)
    }
}

/// Graph family of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GraphFamily {
    Gnp { p: f64 },
    GnpSchedule { schedule: PSchedule },
    Clique,
    Cycle,
    Edgeless,
}

impl GraphFamily {
    pub fn probability(&self, n: usize, eps: f64) -> Option<f64> {
        match self {
            GraphFamily::Gnp { p } => Some(*p),
            GraphFamily::GnpSchedule { schedule } => Some(schedule.probability(n, eps)),
            GraphFamily::Edgeless => Some(0.0),
            _ => None,
        }
    }

    pub fn build(
        &self,
        n: usize,
        seed: u64,
        eps: f64,
        order: NeighborOrder,
    ) -> Result<Graph, GraphError> {
        match self {
            GraphFamily::Gnp { p } => gen_gnp_with_order(n, *p, seed, order),
            GraphFamily::GnpSchedule { schedule } => {
                gen_gnp_with_order(n, schedule.probability(n, eps), seed, order)
            }
            GraphFamily::Clique => gen_clique(n),
            GraphFamily::Cycle => gen_cycle(n),
            GraphFamily::Edgeless => gen_gnp_with_order(n, 0.0, seed, order),
        }
    }
}

fn default_eps() -> f64 {
    0.5
}

fn default_cost_constant() -> f64 {
    DEFAULT_COST_CONSTANT
}

fn default_mode() -> RunMode {
    RunMode::Dynamics
}

/// One sweep: an algorithm over a graph family at increasing sizes.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algo: AlgorithmId,
    #[serde(default = "default_mode")]
    pub mode: RunMode,
    #[serde(default = "default_eps")]
    pub eps: f64,
    #[serde(default = "default_cost_constant")]
    pub cost_constant: f64,
    pub family: GraphFamily,
    pub ns: Vec<usize>,
    pub trials: usize,
    pub master_seed: u64,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Rounds for the boosted algorithm (default 10).
    #[serde(default)]
    pub rounds: Option<usize>,
    /// Per-round adjacency budget for the boosted algorithm (default twice a
    /// safe bound on the expected cost).
    #[serde(default)]
    pub budget: Option<u64>,
}

/// One trial's measurements. `total_queries` is the sum of the five ledger
/// columns. `wall_ms` is reserved and always zero: emitted output must be
/// bit-reproducible, which measured wall time is not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub algo: AlgorithmId,
    pub mode: RunMode,
    pub n: usize,
    pub m: usize,
    pub delta: usize,
    pub eps: f64,
    pub seed: u64,
    pub trial: usize,
    pub colors_bound: usize,
    pub colors_used: usize,
    pub proper: bool,
    pub q_adj: u64,
    pub q_deg: u64,
    pub q_nbr: u64,
    pub qq_adj: u64,
    pub qq_nbr: u64,
    pub total_queries: u64,
    pub wall_ms: u64,
}

/// Everything one algorithm invocation produced.
pub struct RunSummary {
    pub coloring: Option<Coloring>,
    pub palette_bound: usize,
    pub colors_used: usize,
    /// Verified proper and within the declared bound; false when the
    /// algorithm reported failure.
    pub proper: bool,
    pub violation: Option<(usize, usize)>,
    pub ledger: LedgerSnapshot,
    pub branch: Option<Branch>,
    pub qn_report: Option<QnReport>,
    /// Expected-failure description (budget exhaustion, window overflow).
    pub failure: Option<String>,
}

/// Parameters for a single run, shared by the CLI, the harness, and the
/// Python bindings.
pub struct RunParams {
    pub algo: AlgorithmId,
    pub mode: RunMode,
    pub cost_constant: f64,
    pub eps: f64,
    pub seed: u64,
    /// Degree bound; estimated through the oracle when absent.
    pub delta: Option<usize>,
    pub rounds: Option<usize>,
    pub budget: Option<u64>,
    /// Edge probability the interval algorithm should assume.
    pub gnp_p: Option<f64>,
}

impl RunParams {
    pub fn new(algo: AlgorithmId, seed: u64) -> Self {
        RunParams {
            algo,
            mode: RunMode::Dynamics,
            cost_constant: DEFAULT_COST_CONSTANT,
            eps: default_eps(),
            seed,
            delta: None,
            rounds: None,
            budget: None,
            gnp_p: None,
        }
    }
}

fn default_boost_budget(n: usize, delta: usize) -> u64 {
    let nf = n as f64;
    ((4.0 * nf * nf * nf.ln().max(1.0)) / (delta as f64 + 1.0)).ceil() as u64
}

/// Runs one algorithm against a fresh oracle over `graph` and verifies the
/// result with the trusted checker. Expected failures (exhausted boosting
/// budget, overflowed scan window) come back as summaries with
/// `coloring: None`; contract violations are errors.
pub fn run_algorithm(graph: &Graph, params: &RunParams) -> Result<RunSummary, BenchError> {
    let oracle = OracleHandle::new(graph);
    let mode = grover_mode(params.mode, params.cost_constant);
    let estimate = |o: &OracleHandle| params.delta.unwrap_or_else(|| o.estimate_max_degree());

    let mut branch = None;
    let mut qn_report = None;
    let mut failure = None;

    let coloring: Option<Coloring> = match params.algo {
        AlgorithmId::Greedy => Some(greedy_color(&oracle)),
        AlgorithmId::Alg1 => {
            let delta = estimate(&oracle);
            Some(delta_plus_one_color(&oracle, delta, params.seed)?.0)
        }
        AlgorithmId::Boosted => {
            let delta = estimate(&oracle);
            let rounds = params.rounds.unwrap_or(10);
            let budget = params
                .budget
                .unwrap_or_else(|| default_boost_budget(oracle.n(), delta));
            match boosted_color(&oracle, delta, params.seed, rounds, budget) {
                Ok((coloring, _)) => Some(coloring),
                Err(e @ ColorError::AllRoundsAborted { .. }) => {
                    failure = Some(e.to_string());
                    None
                }
                Err(e) => return Err(e.into()),
            }
        }
        AlgorithmId::MorrisSong => {
            let delta = estimate(&oracle);
            Some(morris_song_color(&oracle, delta, params.eps, params.seed)?)
        }
        AlgorithmId::OrderedGnp => {
            let p = params.gnp_p.ok_or(BenchError::BadConfig(
                "ordered-gnp needs the edge probability of the graph family".into(),
            ))?;
            match ordered_gnp_color(&oracle, p, params.eps) {
                Ok(coloring) => Some(coloring),
                Err(e @ ColorError::ScanOverflow { .. }) => {
                    failure = Some(e.to_string());
                    None
                }
                Err(e) => return Err(e.into()),
            }
        }
        AlgorithmId::Qadj => {
            let delta = estimate(&oracle);
            Some(quantum_adjacency_color(&oracle, delta, params.seed, mode)?.0)
        }
        AlgorithmId::Qnbr => {
            let delta = estimate(&oracle);
            let (coloring, report) =
                quantum_neighborhood_color(&oracle, delta, params.eps, params.seed, mode);
            qn_report = Some(report);
            Some(coloring)
        }
        AlgorithmId::CombinedClassical => {
            let run = combined_classical(&oracle, params.seed)?;
            branch = Some(run.branch);
            Some(run.coloring)
        }
        AlgorithmId::CombinedQdp1 => {
            let run = combined_quantum_dp1(&oracle, params.seed, mode)?;
            branch = Some(run.branch);
            Some(run.coloring)
        }
        AlgorithmId::CombinedQeps => {
            let run = combined_quantum_eps(&oracle, params.eps, params.seed, mode)?;
            branch = Some(run.branch);
            qn_report = run.qn_report;
            Some(run.coloring)
        }
    };

    let ledger = oracle.snapshot();
    match coloring {
        Some(coloring) => {
            let bound = coloring.palette_bound();
            let report = verify_coloring(graph, &coloring, bound)?;
            Ok(RunSummary {
                palette_bound: bound,
                colors_used: report.colors_used,
                proper: report.proper && report.within_bound,
                violation: report.violation,
                coloring: Some(coloring),
                ledger,
                branch,
                qn_report,
                failure,
            })
        }
        None => Ok(RunSummary {
            coloring: None,
            palette_bound: 0,
            colors_used: 0,
            proper: false,
            violation: None,
            ledger,
            branch,
            qn_report,
            failure,
        }),
    }
}

fn validate(config: &ExperimentConfig) -> Result<(), BenchError> {
    if config.trials < 1 {
        return Err(BenchError::BadConfig("trials must be at least 1".into()));
    }
    if config.ns.is_empty() {
        return Err(BenchError::BadConfig("ns must be non-empty".into()));
    }
    if !config.ns.windows(2).all(|w| w[0] < w[1]) {
        return Err(BenchError::BadConfig(
            "ns must be strictly increasing".into(),
        ));
    }
    if config.eps <= 0.0 {
        return Err(BenchError::BadConfig("eps must be positive".into()));
    }
    if let GraphFamily::Gnp { p } = config.family {
        if !(0.0..=1.0).contains(&p) {
            return Err(BenchError::BadConfig(format!(
                "edge probability {p} outside [0, 1]"
            )));
        }
    }
    if config.algo == AlgorithmId::OrderedGnp
        && config.family.probability(config.ns[0], config.eps).is_none()
    {
        return Err(BenchError::BadConfig(
            "ordered-gnp requires a gnp family".into(),
        ));
    }
    Ok(())
}

const GRAPH_STREAM: u64 = 1;
const RUN_STREAM: u64 = 2;

/// Per-trial seed: avalanche mix of master seed, size, trial index, and the
/// algorithm id hash. Graph generation and the run draw from separate
/// streams derived from it.
pub fn trial_seed(master_seed: u64, algo: AlgorithmId, n: usize, trial: usize) -> u64 {
    seed::mix(&[
        master_seed,
        n as u64,
        trial as u64,
        seed::hash_label(algo.as_str()),
    ])
}

fn run_single(config: &ExperimentConfig, n: usize, trial: usize) -> Result<ExperimentRecord, BenchError> {
    let trial_seed = trial_seed(config.master_seed, config.algo, n, trial);
    let order = if config.algo == AlgorithmId::OrderedGnp {
        NeighborOrder::Ascending
    } else {
        NeighborOrder::Shuffled
    };
    let graph = config
        .family
        .build(n, seed::mix(&[trial_seed, GRAPH_STREAM]), config.eps, order)?;
    let params = RunParams {
        algo: config.algo,
        mode: config.mode,
        cost_constant: config.cost_constant,
        eps: config.eps,
        seed: seed::mix(&[trial_seed, RUN_STREAM]),
        delta: None,
        rounds: config.rounds,
        budget: config.budget,
        gnp_p: config.family.probability(n, config.eps),
    };
    let summary = run_algorithm(&graph, &params)?;
    if config.algo.is_las_vegas(config.mode) && !summary.proper {
        return Err(BenchError::ImproperLasVegas {
            algo: config.algo,
            n,
            trial,
            seed: trial_seed,
        });
    }
    let ledger = summary.ledger;
    Ok(ExperimentRecord {
        algo: config.algo,
        mode: config.mode,
        n,
        m: graph.edge_count(),
        delta: graph.max_degree(),
        eps: config.eps,
        seed: trial_seed,
        trial,
        colors_bound: summary.palette_bound,
        colors_used: summary.colors_used,
        proper: summary.proper,
        q_adj: ledger.adj_classical,
        q_deg: ledger.deg_classical,
        q_nbr: ledger.nbr_classical,
        qq_adj: ledger.adj_quantum,
        qq_nbr: ledger.nbr_quantum,
        total_queries: ledger.total,
        wall_ms: 0,
    })
}

/// Runs the full sweep; trials run in parallel and the output is sorted by
/// (n, trial), so identical configs yield identical records.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, BenchError> {
    validate(config)?;
    let points: Vec<(usize, usize)> = config
        .ns
        .iter()
        .flat_map(|&n| (0..config.trials).map(move |t| (n, t)))
        .collect();
    let mut records = points
        .par_iter()
        .map(|&(n, trial)| run_single(config, n, trial))
        .collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| (r.n, r.trial));
    Ok(records)
}

pub fn write_csv(records: &[ExperimentRecord], writer: impl Write) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(writer);
    for record in records {
        w.serialize(record)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv(reader: impl Read) -> Result<Vec<ExperimentRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(reader);
    let mut records = Vec::new();
    for row in r.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

/// Least-squares fit of ln(mean queries) against ln(n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Ordinary least squares on (ln n, ln y) for raw points (n, y). Needs at
/// least 3 distinct n values and positive ys.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<ScalingFit, BenchError> {
    let mut distinct: Vec<u64> = points.iter().map(|(x, _)| x.to_bits()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(BenchError::TooFewPoints(distinct.len()));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| {
            if y <= 0.0 || x <= 0.0 {
                Err(BenchError::NonPositiveMean(y.min(x)))
            } else {
                Ok((x.ln(), y.ln()))
            }
        })
        .collect::<Result<_, _>>()?;
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let var_x: f64 = logs.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let cov: f64 = logs
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let slope = cov / var_x;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = logs
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    let ss_tot: f64 = logs.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
    })
}

/// Group identity for fits over mixed record sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FitKey {
    pub algo: AlgorithmId,
    pub mode: RunMode,
    eps_bits: u64,
}

impl FitKey {
    pub fn eps(&self) -> f64 {
        f64::from_bits(self.eps_bits)
    }
}

/// Per-n means of total queries for one record group.
pub fn mean_total_by_n(records: &[&ExperimentRecord]) -> Vec<(f64, f64)> {
    let mut by_n: BTreeMap<usize, (u64, usize)> = BTreeMap::new();
    for r in records {
        let e = by_n.entry(r.n).or_insert((0, 0));
        e.0 += r.total_queries;
        e.1 += 1;
    }
    by_n.into_iter()
        .map(|(n, (sum, count))| (n as f64, sum as f64 / count as f64))
        .collect()
}

/// Fits each (algo, mode, eps) group with at least 3 distinct sizes.
pub fn fit_records(records: &[ExperimentRecord]) -> Vec<(FitKey, ScalingFit)> {
    let mut groups: BTreeMap<FitKey, Vec<&ExperimentRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry(FitKey {
                algo: r.algo,
                mode: r.mode,
                eps_bits: r.eps.to_bits(),
            })
            .or_default()
            .push(r);
    }
    groups
        .into_iter()
        .filter_map(|(key, rows)| {
            fit_loglog(&mean_total_by_n(&rows)).ok().map(|fit| (key, fit))
        })
        .collect()
}
