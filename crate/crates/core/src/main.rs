use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qcolor::bench::{
    fit_records, read_csv, run_algorithm, run_experiment, write_csv, AlgorithmId,
    ExperimentConfig, RunMode, RunParams,
};
use qcolor::graph::{
    gen_clique, gen_cycle, gen_gnp_with_order, load_edge_list, save_edge_list, verify_coloring,
    Coloring, Graph, NeighborOrder,
};

#[derive(Parser)]
#[command(
    name = "qcolor",
    version,
    about = "Sublinear vertex coloring in the query model: generators, metered coloring runs, benchmark sweeps, scaling fits"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Gnp,
    Clique,
    Cycle,
    Edgeless,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph and emit its edge list
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Edge probability for the gnp family
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one coloring algorithm and emit the coloring file
    Color(ColorArgs),
    /// Run a sweep from a JSON config and emit CSV records
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Output path; overrides the config's `output`, stdout when both absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit log-log scaling slopes from a records CSV
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Check a coloring file against a graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// Palette bound to check against; defaults to the coloring header
        #[arg(long)]
        bound: Option<usize>,
    },
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, value_enum)]
    algo: AlgorithmId,
    #[arg(long, value_enum, default_value_t = RunMode::Dynamics)]
    mode: RunMode,
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Cost-model multiplier for simulated search charges
    #[arg(long, default_value_t = qcolor::grover::DEFAULT_COST_CONSTANT)]
    c0: f64,
    /// Run seed (all algorithm randomness derives from it)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Load the graph from an edge-list file instead of generating one
    #[arg(long = "in", conflicts_with_all = ["family", "n", "graph_seed"])]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    /// Seed for graph generation; defaults to a stream derived from --seed
    #[arg(long)]
    graph_seed: Option<u64>,
    /// Degree bound handed to the algorithm; estimated via n degree queries
    /// when absent
    #[arg(long)]
    delta: Option<usize>,
    /// Rounds for the boosted algorithm
    #[arg(long)]
    rounds: Option<usize>,
    /// Per-round adjacency budget for the boosted algorithm
    #[arg(long)]
    budget: Option<u64>,
    /// Coloring output path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_graph(path: &Path) -> Result<Graph> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(load_edge_list(BufReader::new(file))?)
}

fn generate(family: Family, n: usize, p: f64, seed: u64, order: NeighborOrder) -> Result<Graph> {
    Ok(match family {
        Family::Gnp => gen_gnp_with_order(n, p, seed, order)?,
        Family::Clique => gen_clique(n)?,
        Family::Cycle => gen_cycle(n)?,
        Family::Edgeless => gen_gnp_with_order(n, 0.0, seed, order)?,
    })
}

fn write_coloring(coloring: &Coloring, mut w: impl Write) -> Result<()> {
    writeln!(w, "{} {}", coloring.n(), coloring.palette_bound())?;
    for v in 0..coloring.n() {
        let c = coloring.color(v).ok_or_else(|| anyhow!("vertex {v} uncolored"))?;
        writeln!(w, "{v} {c}")?;
    }
    Ok(())
}

fn read_coloring(path: &Path) -> Result<(Coloring, usize)> {
    let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut lines = BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| anyhow!("{}: missing header line", path.display()))??;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| anyhow!("line 1: bad vertex count"))?;
    let bound: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| anyhow!("line 1: bad palette bound"))?;
    let mut coloring = Coloring::new(n, bound);
    for (idx, line) in lines.enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let lineno = idx + 2;
        let mut it = t.split_whitespace();
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| anyhow!("line {lineno}: bad vertex id"))?;
        let c: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| anyhow!("line {lineno}: bad color"))?;
        if v >= n {
            bail!("line {lineno}: vertex {v} out of range for n = {n}");
        }
        if c == 0 {
            bail!("line {lineno}: colors are 1-based");
        }
        if coloring.color(v).is_some() {
            bail!("line {lineno}: vertex {v} colored twice");
        }
        coloring.assign(v, c);
    }
    Ok((coloring, bound))
}

fn cmd_color(args: ColorArgs) -> Result<i32> {
    let wants_ascending = args.algo == AlgorithmId::OrderedGnp;
    let graph = match (&args.input, args.family) {
        (Some(path), _) => load_graph(path)?,
        (None, Some(family)) => {
            let n = args.n.ok_or_else(|| anyhow!("--family needs --n"))?;
            let p = args.p.unwrap_or(0.5);
            let graph_seed = args
                .graph_seed
                .unwrap_or_else(|| qcolor::seed::mix(&[args.seed, 1]));
            let order = if wants_ascending {
                NeighborOrder::Ascending
            } else {
                NeighborOrder::Shuffled
            };
            generate(family, n, p, graph_seed, order)?
        }
        (None, None) => bail!("either --in or --family is required"),
    };
    let gnp_p = match args.algo {
        AlgorithmId::OrderedGnp => Some(
            args.p
                .ok_or_else(|| anyhow!("ordered-gnp needs --p, the edge probability the windows are sized for"))?,
        ),
        _ => args.p,
    };
    let params = RunParams {
        algo: args.algo,
        mode: args.mode,
        cost_constant: args.c0,
        eps: args.eps,
        seed: args.seed,
        delta: args.delta,
        rounds: args.rounds,
        budget: args.budget,
        gnp_p,
    };
    let summary = run_algorithm(&graph, &params)?;
    let mut info = json!({
        "algo": args.algo.as_str(),
        "mode": args.mode.as_str(),
        "n": graph.n(),
        "m": graph.edge_count(),
        "delta": graph.max_degree(),
        "eps": args.eps,
        "seed": args.seed,
        "proper": summary.proper,
        "colors_bound": summary.palette_bound,
        "colors_used": summary.colors_used,
        "ledger": summary.ledger,
    });
    if let Some(report) = &summary.qn_report {
        info["report"] = serde_json::to_value(report)?;
    }
    if let Some(branch) = summary.branch {
        info["branch"] = json!(format!("{branch:?}").to_lowercase());
    }
    if let Some(failure) = &summary.failure {
        info["failure"] = json!(failure);
    }
    eprintln!("{info}");
    match &summary.coloring {
        Some(coloring) => {
            write_coloring(coloring, open_out(&args.out)?)?;
            Ok(0)
        }
        None => {
            eprintln!(
                "error: {}",
                summary.failure.as_deref().unwrap_or("algorithm failed")
            );
            Ok(1)
        }
    }
}

fn run() -> Result<i32> {
    match Cli::parse().cmd {
        Cmd::Gen {
            family,
            n,
            p,
            seed,
            out,
        } => {
            let graph = generate(family, n, p, seed, NeighborOrder::Shuffled)?;
            save_edge_list(&graph, open_out(&out)?)?;
            Ok(0)
        }
        Cmd::Color(args) => cmd_color(args),
        Cmd::Bench { config, out } => {
            let text = fs::read_to_string(&config)
                .with_context(|| format!("reading {}", config.display()))?;
            let config: ExperimentConfig = serde_json::from_str(&text)?;
            let started = std::time::Instant::now();
            let records = run_experiment(&config)?;
            let out = out.or(config.output);
            write_csv(&records, open_out(&out)?)?;
            eprintln!(
                "{} records ({} algo, {} sizes x {} trials) in {:.1}s",
                records.len(),
                config.algo,
                config.ns.len(),
                config.trials,
                started.elapsed().as_secs_f64()
            );
            Ok(0)
        }
        Cmd::Fit { input } => {
            let file = fs::File::open(&input)
                .with_context(|| format!("opening {}", input.display()))?;
            let records = read_csv(BufReader::new(file))?;
            let fits = fit_records(&records);
            if fits.is_empty() {
                bail!("no group has at least 3 distinct n values");
            }
            let mut stdout = io::stdout().lock();
            for (key, fit) in fits {
                let line = json!({
                    "algo": key.algo.as_str(),
                    "mode": key.mode.as_str(),
                    "eps": key.eps(),
                    "slope": fit.slope,
                    "intercept": fit.intercept,
                    "r_squared": fit.r_squared,
                });
                writeln!(stdout, "{line}")?;
            }
            Ok(0)
        }
        Cmd::Verify {
            graph,
            coloring,
            bound,
        } => {
            let g = load_graph(&graph)?;
            let (coloring, header_bound) = read_coloring(&coloring)?;
            let bound = bound.unwrap_or(header_bound);
            let report = verify_coloring(&g, &coloring, bound)?;
            let line = json!({
                "proper": report.proper,
                "colors_used": report.colors_used,
                "within_bound": report.within_bound,
                "violation": report.violation,
                "bound": bound,
            });
            println!("{line}");
            Ok(if report.proper && report.within_bound { 0 } else { 1 })
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
