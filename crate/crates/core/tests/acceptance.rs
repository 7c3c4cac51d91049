//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them all). Tolerances are
//! pinned in the assertions.

use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use qcolor::bench::{
    run_experiment, write_csv, AlgorithmId, ExperimentConfig, GraphFamily, PSchedule, RunMode,
};
use qcolor::classical::{boosted_color, delta_plus_one_color};
use qcolor::graph::{gen_clique, gen_cycle, gen_gnp, verify_coloring, Graph};
use qcolor::grover::{
    bbht_search, grover_measure, success_probability, GroverInstance, GroverMode,
    DEFAULT_COST_CONSTANT,
};
use qcolor::oracle::{OracleHandle, QuantumKind};
use qcolor::quantum::{make_equitable_partition, QnConfig};
use qcolor::seed::mix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

fn pass(id: u32, name: &str, details: String) {
    println!("acceptance {id:02} {name}: PASS ({details})");
}

fn config(algo: AlgorithmId, family: GraphFamily, ns: &[usize], trials: usize, seed: u64) -> ExperimentConfig {
    ExperimentConfig {
        algo,
        mode: RunMode::CostModel,
        eps: 0.5,
        cost_constant: DEFAULT_COST_CONSTANT,
        family,
        ns: ns.to_vec(),
        trials,
        master_seed: seed,
        output: None,
        rounds: None,
        budget: None,
    }
}

/// Criterion 1: the randomized (Δ+1) algorithm is always correct. 1000
/// seeded runs across five graph families, every coloring proper within
/// Δ+1 colors.
#[test]
fn criterion_01_las_vegas_correctness() {
    let families: Vec<(&str, Box<dyn Fn(u64) -> Graph + Sync>)> = vec![
        ("edgeless", Box::new(|_| gen_gnp(32, 0.0, 0).unwrap())),
        ("cycle5", Box::new(|_| gen_cycle(5).unwrap())),
        ("clique16", Box::new(|_| gen_clique(16).unwrap())),
        ("gnp64", Box::new(|s| gen_gnp(64, 0.3, mix(&[100, s])).unwrap())),
        ("gnp256", Box::new(|s| gen_gnp(256, 0.5, mix(&[200, s])).unwrap())),
    ];
    let checked: usize = families
        .par_iter()
        .map(|(name, make)| {
            for run in 0..200u64 {
                let graph = make(run);
                let delta = graph.max_degree();
                let oracle = OracleHandle::new(&graph);
                let (coloring, _) =
                    delta_plus_one_color(&oracle, delta, mix(&[1, run])).unwrap_or_else(|e| {
                        panic!("acceptance 01: {name} run {run} failed: {e}")
                    });
                let report = verify_coloring(&graph, &coloring, delta + 1).unwrap();
                assert!(
                    report.proper && report.within_bound,
                    "acceptance 01 FAIL: improper coloring on {name} run {run}"
                );
            }
            200
        })
        .sum();
    assert_eq!(checked, 1000);
    pass(1, "las-vegas-correctness", "1000/1000 proper within Delta+1".into());
}

/// Criterion 2: the 1/Δ law. On G(1024, p) the mean adjacency-query count
/// at p = 1/8 exceeds the p = 1/2 count by a factor in [2.8, 5.2], and each
/// point stays under 10 n^2 ln n / Δ.
#[test]
fn criterion_02_classical_rate() {
    let n = 1024usize;
    let trials = 50u64;
    let mut means = Vec::new();
    for (tag, p) in [(1u64, 0.125f64), (2, 0.5)] {
        let stats: Vec<(u64, usize)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let graph = gen_gnp(n, p, mix(&[300, tag, t])).unwrap();
                let oracle = OracleHandle::new(&graph);
                delta_plus_one_color(&oracle, graph.max_degree(), mix(&[301, tag, t])).unwrap();
                (oracle.ledger().adj_classical(), graph.max_degree())
            })
            .collect();
        let mean_q = stats.iter().map(|s| s.0 as f64).sum::<f64>() / trials as f64;
        let mean_delta = stats.iter().map(|s| s.1 as f64).sum::<f64>() / trials as f64;
        let envelope = 10.0 * (n * n) as f64 * (n as f64).ln() / mean_delta;
        assert!(
            mean_q <= envelope,
            "acceptance 02 FAIL: p={p} mean {mean_q} above envelope {envelope}"
        );
        means.push(mean_q);
    }
    let ratio = means[0] / means[1];
    // Known red check. The window builds in the expected-degree ratio 4,
    // but the palette is sized by the maximum degree (ratio 3.46 on this
    // family) and the tighter relative palette at p = 1/2 costs extra
    // retries (factor 0.80), so the true ratio concentrates near 2.78.
    // Confirmed against an independent reimplementation; left failing
    // rather than loosening the pinned window.
    assert!(
        (2.8..=5.2).contains(&ratio),
        "acceptance 02 FAIL: query ratio {ratio:.3} outside [2.8, 5.2] \
         (true value of this quantity is ~2.78: max-degree ratio 3.46 x retry asymmetry 0.80)"
    );
    pass(2, "classical-rate", format!("ratio {ratio:.2} in [2.8, 5.2]"));
}

/// Criterion 3: combined classical scaling. With the expected degree pinned
/// near sqrt(n ln n), total queries fit a log-log slope in [1.40, 1.70]
/// with r^2 >= 0.98.
#[test]
fn criterion_03_combined_classical_exponent() {
    let cfg = ExperimentConfig {
        mode: RunMode::Dynamics,
        ..config(
            AlgorithmId::CombinedClassical,
            GraphFamily::GnpSchedule {
                schedule: PSchedule::ClassicalCrossover,
            },
            &[512, 1024, 2048, 4096, 8192],
            20,
            424242,
        )
    };
    let records = run_experiment(&cfg).unwrap();
    assert!(records.iter().all(|r| r.proper));
    let fits = qcolor::bench::fit_records(&records);
    let (_, fit) = fits.first().expect("one group");
    assert!(
        (1.40..=1.70).contains(&fit.slope),
        "acceptance 03 FAIL: slope {} outside [1.40, 1.70]",
        fit.slope
    );
    assert!(
        fit.r_squared >= 0.98,
        "acceptance 03 FAIL: r^2 {} below 0.98",
        fit.r_squared
    );
    pass(
        3,
        "combined-classical-exponent",
        format!("slope {:.3}, r^2 {:.4}", fit.slope, fit.r_squared),
    );
}

/// Criterion 4: the 1/sqrt(Δ) law and the combined quantum (Δ+1) exponent,
/// both in cost-model accounting.
#[test]
fn criterion_04_quantum_adjacency_rate() {
    // Ratio across p = 1/8 vs 1/2 on G(1024, p).
    let cfg_eighth = config(AlgorithmId::Qadj, GraphFamily::Gnp { p: 0.125 }, &[1024], 50, 53);
    let cfg_half = config(AlgorithmId::Qadj, GraphFamily::Gnp { p: 0.5 }, &[1024], 50, 54);
    let mean_qq = |cfg: &ExperimentConfig| {
        let records = run_experiment(cfg).unwrap();
        assert!(records.iter().all(|r| r.proper));
        records.iter().map(|r| r.qq_adj as f64).sum::<f64>() / records.len() as f64
    };
    let ratio = mean_qq(&cfg_eighth) / mean_qq(&cfg_half);
    assert!(
        (1.4..=2.6).contains(&ratio),
        "acceptance 04 FAIL: quantum query ratio {ratio} outside [1.4, 2.6]"
    );

    // Scaling at the crossover family.
    let cfg = config(
        AlgorithmId::CombinedQdp1,
        GraphFamily::GnpSchedule {
            schedule: PSchedule::Qdp1Crossover,
        },
        &[512, 1024, 2048, 4096, 8192],
        20,
        555,
    );
    let records = run_experiment(&cfg).unwrap();
    assert!(records.iter().all(|r| r.proper));
    let fits = qcolor::bench::fit_records(&records);
    let (_, fit) = fits.first().expect("one group");
    assert!(
        (1.25..=1.55).contains(&fit.slope),
        "acceptance 04 FAIL: slope {} outside [1.25, 1.55]",
        fit.slope
    );
    pass(
        4,
        "quantum-adjacency-rate",
        format!("ratio {ratio:.2} in [1.4, 2.6], slope {:.3}", fit.slope),
    );
}

/// Exact success probability of the full randomized search schedule,
/// derived independently from the phase structure: every phase draws j
/// uniformly in {0..floor(m)} and fails independently.
fn schedule_success(n: usize, k: usize) -> f64 {
    let sqrt_n = (n as f64).sqrt();
    let mut m = 1.0f64;
    let mut fail = 1.0f64;
    loop {
        let top = m.floor() as u64;
        let mean_p = (0..=top)
            .map(|j| success_probability(n, k, j))
            .sum::<f64>()
            / (top + 1) as f64;
        fail *= 1.0 - mean_p;
        if m >= sqrt_n {
            break;
        }
        m = (1.2 * m).min(sqrt_n);
    }
    1.0 - fail
}

/// Criterion 5: search-dynamics fidelity. Measurement frequencies match
/// sin^2((2j+1)theta) within 3 binomial sigma on the whole (N, k, j) grid;
/// the full schedule finds a marked item at the predicted rate, at least
/// 0.99 pooled over the grid; found items are uniform.
#[test]
fn criterion_05_grover_dynamics_fidelity() {
    let graph = gen_clique(2).unwrap();
    let oracle = OracleHandle::new(&graph);
    let trials = 100_000u64;
    let mut cells = 0;
    for &n in &[4usize, 16, 64] {
        for &k in &[1usize, 2, 4] {
            let marked: Vec<bool> = (0..n).map(|i| i < k).collect();
            let inst = GroverInstance::new(marked, QuantumKind::Adjacency, GroverMode::Dynamics);
            for j in 0..=5u64 {
                let mut rng = ChaCha12Rng::seed_from_u64(mix(&[500, n as u64, k as u64, j]));
                let mut hits = 0u64;
                for _ in 0..trials {
                    if inst.is_marked(grover_measure(&oracle, &inst, j, &mut rng)) {
                        hits += 1;
                    }
                }
                let p = success_probability(n, k, j);
                let sigma = (p * (1.0 - p) / trials as f64).sqrt();
                let freq = hits as f64 / trials as f64;
                assert!(
                    (freq - p).abs() <= 3.0 * sigma + 1e-12,
                    "acceptance 05 FAIL: N={n} k={k} j={j}: freq {freq} vs p {p} (sigma {sigma})"
                );
                cells += 1;
            }
        }
    }
    assert_eq!(cells, 54);

    // Full-schedule searches, pooled over the grid, plus per-pair agreement
    // with the independently derived schedule success and uniformity of the
    // found items.
    let runs = 20_000u64;
    let mut pooled_found = 0u64;
    let mut pooled_runs = 0u64;
    for &n in &[4usize, 16, 64] {
        for &k in &[1usize, 2, 4] {
            let marked: Vec<bool> = (0..n).map(|i| i < k).collect();
            let inst = GroverInstance::new(marked, QuantumKind::Adjacency, GroverMode::Dynamics);
            let mut rng = ChaCha12Rng::seed_from_u64(mix(&[600, n as u64, k as u64]));
            let mut found = 0u64;
            let mut counts = vec![0u64; k];
            for _ in 0..runs {
                let out = bbht_search(&oracle, &inst, &mut rng, |i| inst.is_marked(i));
                if let Some(idx) = out.found {
                    assert!(inst.is_marked(idx), "one-sidedness violated");
                    counts[idx] += 1;
                    found += 1;
                }
            }
            let predicted = schedule_success(n, k);
            let sigma = (predicted * (1.0 - predicted) / runs as f64).sqrt();
            let freq = found as f64 / runs as f64;
            assert!(
                (freq - predicted).abs() <= 3.0 * sigma + 1e-12,
                "acceptance 05 FAIL: schedule N={n} k={k}: freq {freq} vs predicted {predicted}"
            );
            if k >= 2 {
                let expected = found as f64 / k as f64;
                let stat: f64 = counts
                    .iter()
                    .map(|&c| (c as f64 - expected).powi(2) / expected)
                    .sum();
                let p_value = 1.0 - ChiSquared::new((k - 1) as f64).unwrap().cdf(stat);
                assert!(
                    p_value > 0.01,
                    "acceptance 05 FAIL: uniformity chi-square p={p_value} at N={n} k={k}"
                );
            }
            pooled_found += found;
            pooled_runs += runs;
        }
    }
    let pooled = pooled_found as f64 / pooled_runs as f64;
    assert!(
        pooled >= 0.99,
        "acceptance 05 FAIL: pooled found rate {pooled} below 0.99"
    );
    pass(
        5,
        "grover-dynamics-fidelity",
        format!("54 cells within 3 sigma, pooled found rate {pooled:.4}"),
    );
}

/// Criterion 6: coupon-collector tail. With success probability 1/4 per
/// step and 16 uniform outcomes, Pr[T >= (C/p) k ln k] at C = 2 stays
/// under 0.09 (union bound 1/16 plus sampling slack).
#[test]
fn criterion_06_coupon_collector_tail() {
    let (p, k, c) = (0.25f64, 16usize, 2.0f64);
    let threshold = (c / p) * k as f64 * (k as f64).ln();
    let trials = 10_000u64;
    let late: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha12Rng::seed_from_u64(mix(&[700, t]));
            let mut seen = vec![false; k];
            let mut remaining = k;
            let mut steps = 0f64;
            while remaining > 0 {
                steps += 1.0;
                if rng.random_bool(p) {
                    let coupon = rng.random_range(0..k);
                    if !seen[coupon] {
                        seen[coupon] = true;
                        remaining -= 1;
                    }
                }
            }
            u64::from(steps >= threshold)
        })
        .sum();
    let freq = late as f64 / trials as f64;
    assert!(
        freq <= 0.09,
        "acceptance 06 FAIL: tail frequency {freq} above 0.09"
    );
    pass(
        6,
        "coupon-collector-tail",
        format!("Pr[T >= {threshold:.1}] = {freq:.4} <= 0.09"),
    );
}

/// Criterion 7: partition degree concentration. On G(1024, 0.5) with
/// t = floor(eps^2 Δ / 6 ln n), at most 5% of 200 random equitable
/// partitions put more than (1+eps) Δ / t same-part neighbors on any vertex.
#[test]
fn criterion_07_partition_concentration() {
    let n = 1024usize;
    let graph = gen_gnp(n, 0.5, 808).unwrap();
    let delta = graph.max_degree();
    let config = QnConfig::new(n, delta, 0.5);
    let cap = 1.5 * delta as f64 / config.t as f64;
    let violating: u32 = (0..200u64)
        .into_par_iter()
        .map(|s| {
            let partition = make_equitable_partition(n, config.t, mix(&[800, s]));
            let bad = (0..n).any(|v| {
                let in_part = graph
                    .neighbors(v)
                    .iter()
                    .filter(|&&u| partition.same_part(u, v))
                    .count();
                in_part as f64 > cap
            });
            u32::from(bad)
        })
        .sum();
    let fraction = violating as f64 / 200.0;
    assert!(
        fraction <= 0.05,
        "acceptance 07 FAIL: {fraction} of partitions violate the degree cap"
    );
    pass(
        7,
        "partition-concentration",
        format!("violating fraction {fraction:.3} <= 0.05 (t = {})", config.t),
    );
}

/// Criterion 8: the partitioned (1+eps)Δ algorithm succeeds with
/// probability at least 2/3 in cost-model accounting, never uses more than
/// (1+eps)Δ + t colors, and its query constant against
/// eps^-2 n (ln n)^2 sqrt(Δ) is stable within +-50% across sizes.
#[test]
fn criterion_08_partitioned_neighborhood() {
    let cfg = config(AlgorithmId::Qnbr, GraphFamily::Gnp { p: 0.5 }, &[512], 60, 88);
    let records = run_experiment(&cfg).unwrap();
    let proper = records.iter().filter(|r| r.proper).count();
    assert!(
        proper as f64 >= 2.0 / 3.0 * records.len() as f64,
        "acceptance 08 FAIL: proper frequency {proper}/60 below 2/3"
    );
    for r in &records {
        let t = QnConfig::new(r.n, r.delta, 0.5).t;
        assert!(
            r.colors_used as f64 <= 1.5 * r.delta as f64 + t as f64,
            "acceptance 08 FAIL: trial {} used {} colors above (1+eps)Delta + t",
            r.trial,
            r.colors_used
        );
    }

    // Constant stability across sizes.
    let cfg = config(
        AlgorithmId::Qnbr,
        GraphFamily::Gnp { p: 0.5 },
        &[256, 512, 1024, 2048],
        3,
        89,
    );
    let records = run_experiment(&cfg).unwrap();
    let mut constants = Vec::new();
    for &n in &[256usize, 512, 1024, 2048] {
        let rows: Vec<_> = records.iter().filter(|r| r.n == n).collect();
        let mean_qq = rows.iter().map(|r| r.qq_nbr as f64).sum::<f64>() / rows.len() as f64;
        let mean_delta = rows.iter().map(|r| r.delta as f64).sum::<f64>() / rows.len() as f64;
        let nf = n as f64;
        let denom = 4.0 * nf * nf.ln().powi(2) * mean_delta.sqrt();
        constants.push(mean_qq / denom);
    }
    let mean_c = constants.iter().sum::<f64>() / constants.len() as f64;
    for (i, c) in constants.iter().enumerate() {
        assert!(
            (0.5 * mean_c..=1.5 * mean_c).contains(c),
            "acceptance 08 FAIL: constant {c} at size index {i} outside +-50% of {mean_c} ({constants:?})"
        );
    }
    pass(
        8,
        "partitioned-neighborhood",
        format!(
            "proper {proper}/60, constants {:?} within +-50% of {mean_c:.1}",
            constants.iter().map(|c| (c * 10.0).round() / 10.0).collect::<Vec<_>>()
        ),
    );
}

/// Criterion 9: the eps-combiner at its crossover family scales with a
/// log-log slope in [1.15, 1.45].
#[test]
fn criterion_09_eps_combiner_exponent() {
    let cfg = config(
        AlgorithmId::CombinedQeps,
        GraphFamily::GnpSchedule {
            schedule: PSchedule::QepsCrossover,
        },
        &[512, 1024, 2048, 4096, 8192],
        20,
        99,
    );
    let records = run_experiment(&cfg).unwrap();
    let fits = qcolor::bench::fit_records(&records);
    let (_, fit) = fits.first().expect("one group");
    assert!(
        (1.15..=1.45).contains(&fit.slope),
        "acceptance 09 FAIL: slope {} outside [1.15, 1.45]",
        fit.slope
    );
    pass(9, "eps-combiner-exponent", format!("slope {:.3}", fit.slope));
}

/// Criterion 10: Monte Carlo boosting. With the budget at twice the
/// empirical mean and 10 rounds, a thousand boosted runs never fail
/// outright and rounds abort no more often than the Markov bound allows.
#[test]
fn criterion_10_boosting() {
    let graph = gen_gnp(128, 0.5, 1010).unwrap();
    let delta = graph.max_degree();
    let estimate_runs = 100u64;
    let total: u64 = (0..estimate_runs)
        .into_par_iter()
        .map(|s| {
            let oracle = OracleHandle::new(&graph);
            delta_plus_one_color(&oracle, delta, mix(&[1000, s])).unwrap();
            oracle.ledger().adj_classical()
        })
        .sum();
    let budget = 2 * total / estimate_runs;

    let meta_trials = 1000u64;
    let (failures, aborted_rounds, total_rounds) = (0..meta_trials)
        .into_par_iter()
        .map(|t| {
            let oracle = OracleHandle::new(&graph);
            match boosted_color(&oracle, delta, mix(&[1100, t]), 10, budget) {
                Ok((coloring, report)) => {
                    let verify = verify_coloring(&graph, &coloring, delta + 1).unwrap();
                    assert!(verify.proper, "acceptance 10 FAIL: improper boosted output");
                    (0u64, report.per_round_queries.len() as u64 - 1, report.per_round_queries.len() as u64)
                }
                Err(_) => (1u64, 10, 10),
            }
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    assert_eq!(
        failures, 0,
        "acceptance 10 FAIL: {failures} boosted runs exhausted all rounds"
    );
    let abort_freq = aborted_rounds as f64 / total_rounds as f64;
    let bound = 0.5 + 3.0 * (0.25f64 / total_rounds as f64).sqrt();
    assert!(
        abort_freq <= bound,
        "acceptance 10 FAIL: abort frequency {abort_freq} above {bound}"
    );
    pass(
        10,
        "boosting",
        format!("0 failures in 1000, abort frequency {abort_freq:.4} <= {bound:.3}"),
    );
}

/// Criterion 11: identical bench configs produce byte-identical CSV.
#[test]
fn criterion_11_determinism() {
    for cfg in [
        ExperimentConfig {
            mode: RunMode::Dynamics,
            ..config(AlgorithmId::Alg1, GraphFamily::Gnp { p: 0.5 }, &[64, 128], 3, 7)
        },
        config(AlgorithmId::Qnbr, GraphFamily::Gnp { p: 0.3 }, &[32, 64], 2, 8),
        config(
            AlgorithmId::CombinedQeps,
            GraphFamily::GnpSchedule {
                schedule: PSchedule::QepsCrossover,
            },
            &[64, 128],
            2,
            9,
        ),
    ] {
        let mut first = Vec::new();
        let mut second = Vec::new();
        write_csv(&run_experiment(&cfg).unwrap(), &mut first).unwrap();
        write_csv(&run_experiment(&cfg).unwrap(), &mut second).unwrap();
        assert_eq!(
            first, second,
            "acceptance 11 FAIL: rerun of {:?} differs",
            cfg.algo
        );
    }
    pass(11, "determinism", "3 configs byte-identical on rerun".into());
}
