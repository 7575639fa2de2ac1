//! Runs a configured experiment and writes its artifacts.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use ndarray::{Array1, Array2, ArrayView1, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::apps::{
    bicluster_batch, bicluster_online, kmeans, matched_cosines, novelty_pipeline, purity, synthetic_bicluster,
    synthetic_topic_stream, BiclusterConfig, NoveltyConfig, PlantedBiclusterSpec, TopicStreamSpec,
};
use crate::error::{Error, Result};
use crate::inference::{
    centralized_inference_oracle, diffusion_solve_observed, median, outcome_from_state, DictionaryShard,
    DiffusionOptions, RoundTrace,
};
use crate::io::svg::{line_plot, scatter_plot, Series};
use crate::io::{fmt_f64, load_matrix, normalize_columns, write_csv, write_matrix_csv, ExperimentConfig, Pipeline};
use crate::learner::{
    initialize_shards_with, learn_online_observed, write_learning_trace, write_shards, LearnerConfig,
};
use crate::netsim::{random_connected_graph_with, write_edge_list, Adjacency, CombinationRule, Network, Workers};
use crate::prox::TaskSpec;

/// Tolerance of the reference solve used for SNR traces.
pub const ORACLE_RTOL: f64 = 1e-12;

/// Exit status for an error: 2 for configuration problems, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Parse { .. } | Error::InvalidParameter(_) => 2,
        _ => 1,
    }
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub pipeline: Pipeline,
    pub artifacts: Vec<PathBuf>,
    /// Human-readable `key: value` lines.
    pub lines: Vec<String>,
}

/// Network, shards and one signal drawn from the configuration's seed.
#[derive(Debug, Clone)]
pub struct Instance {
    pub network: Network,
    pub shards: Vec<DictionaryShard>,
    pub x: Array1<f64>,
}

pub fn build_network<R: Rng>(cfg: &ExperimentConfig, rng: &mut R) -> Result<Network> {
    let n = cfg.network.agents;
    let adj = match cfg.network.rule {
        CombinationRule::Uniform => Adjacency::complete(n)?,
        CombinationRule::Metropolis => random_connected_graph_with(n, cfg.network.edge_probability, rng)?,
    };
    let informed: BTreeSet<usize> = match cfg.network.informed {
        0 => (0..n).collect(),
        c => (0..c).collect(),
    };
    let combine = crate::netsim::CombinationMatrix::from_rule(cfg.network.rule, &adj)?;
    Network::new(adj, &informed, combine)
}

/// Sparse combination of feasible atoms plus noise; nonnegative for nonneg tasks.
pub fn planted_samples<R: Rng>(
    atoms: &Array2<f64>,
    sparsity: usize,
    samples: usize,
    noise: f64,
    task: &TaskSpec,
    rng: &mut R,
) -> Array2<f64> {
    let (m, k) = atoms.dim();
    let nonneg = task.coeff_reg.nonneg;
    let mut x = Array2::zeros((m, samples));
    let idx: Vec<usize> = (0..k).collect();
    for t in 0..samples {
        let mut col = Array1::<f64>::zeros(m);
        for &q in rand::seq::IndexedRandom::choose_multiple(idx.as_slice(), rng, sparsity.min(k)) {
            let mag = rng.random_range(0.5..1.5);
            let c = if nonneg || rng.random::<bool>() { mag } else { -mag };
            col.scaled_add(c, &atoms.column(q));
        }
        for v in col.iter_mut() {
            *v += noise * (rng.random::<f64>() - 0.5) * 2.0;
            if nonneg {
                *v = v.max(0.0);
            }
        }
        x.column_mut(t).assign(&col);
    }
    x
}

fn stack(shards: &[DictionaryShard]) -> Array2<f64> {
    let views: Vec<_> = shards.iter().map(|s| s.atoms()).collect();
    ndarray::concatenate(Axis(1), &views).expect("shards share a height")
}

/// The configured network with random feasible shards and one planted signal.
pub fn build_instance(cfg: &ExperimentConfig) -> Result<Instance> {
    let task = cfg.task_spec()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let network = build_network(cfg, &mut rng)?;
    let widths = vec![cfg.network.atoms_per_agent; cfg.network.agents];
    let shards = initialize_shards_with(cfg.dim, &widths, &task, 0, &mut rng)?;
    let x = planted_samples(&stack(&shards), cfg.sparsity, 1, cfg.noise, &task, &mut rng).column(0).to_owned();
    Ok(Instance { network, shards, x })
}

fn load_data(cfg: &ExperimentConfig) -> Result<Option<Array2<f64>>> {
    let Some(path) = &cfg.input else { return Ok(None) };
    let x = load_matrix(path, cfg.format)?;
    Ok(Some(match cfg.normalize {
        Some(norm) => normalize_columns(x.view(), norm),
        None => x,
    }))
}

pub fn run_experiment(cfg: &ExperimentConfig, workers: Workers) -> Result<RunSummary> {
    cfg.validate()?;
    fs::create_dir_all(&cfg.output_dir)?;
    fs::write(cfg.output_dir.join("config.txt"), cfg.serialize())?;
    let mut summary =
        RunSummary { pipeline: cfg.pipeline, artifacts: vec![cfg.output_dir.join("config.txt")], lines: Vec::new() };
    match cfg.pipeline {
        Pipeline::Infer => run_infer(cfg, workers, &mut summary)?,
        Pipeline::Bench => run_bench(cfg, workers, &mut summary)?,
        Pipeline::Learn => run_learn(cfg, workers, &mut summary)?,
        Pipeline::Novelty => run_novelty(cfg, workers, &mut summary)?,
        Pipeline::Bicluster => run_bicluster(cfg, workers, &mut summary)?,
    }
    Ok(summary)
}

fn diffusion_options(cfg: &ExperimentConfig, workers: Workers) -> DiffusionOptions {
    DiffusionOptions { step: cfg.step, rounds: cfg.rounds, rtol: cfg.rtol, unchecked_step: cfg.unchecked_step, workers }
}

fn traced_solve(
    inst: &Instance,
    task: &TaskSpec,
    opts: &DiffusionOptions,
) -> Result<(crate::inference::DualState, Array1<f64>, Vec<RoundTrace>)> {
    let oracle = centralized_inference_oracle(&inst.shards, inst.x.view(), task, ORACLE_RTOL)?;
    let reference = oracle.dual;
    let mut trace = Vec::new();
    let state = diffusion_solve_observed(&inst.network, &inst.shards, inst.x.view(), task, opts, |s| {
        trace.push(RoundTrace::capture(s, reference.view()));
    })?;
    Ok((state, reference, trace))
}

fn run_infer(cfg: &ExperimentConfig, workers: Workers, out: &mut RunSummary) -> Result<()> {
    let task = cfg.task_spec()?;
    let mut inst = build_instance(cfg)?;
    if let Some(x) = load_data(cfg)? {
        if x.nrows() != cfg.dim || x.ncols() == 0 {
            return Err(Error::Config(format!("input must have {} rows and at least one column", cfg.dim)));
        }
        inst.x = x.column(0).to_owned();
    }
    let (state, _, trace) = traced_solve(&inst, &task, &diffusion_options(cfg, workers))?;
    let outcome = outcome_from_state(&inst.network, &inst.shards, inst.x.view(), &task, state)?;

    let dir = &cfg.output_dir;
    let trace_path = dir.join("trace.csv");
    crate::inference::write_trace_csv(&trace_path, &trace)?;
    let coeff_path = dir.join("coefficients.csv");
    let header = ["agent", "atom", "coefficient"].map(String::from);
    let rows = outcome.coeffs.iter().enumerate().flat_map(|(k, y)| {
        y.iter().enumerate().map(move |(q, v)| vec![k.to_string(), q.to_string(), fmt_f64(*v)]).collect::<Vec<_>>()
    });
    write_csv(&coeff_path, &header, rows)?;
    let edges = dir.join("network.txt");
    write_edge_list(&edges, inst.network.adjacency())?;
    let svg = dir.join("trace.svg");
    plot_median(&svg, &trace)?;
    out.artifacts.extend([trace_path, coeff_path, edges, svg]);
    out.lines.push(format!("rounds_used: {}", outcome.rounds_used));
    out.lines.push(format!("dual_cost: {}", outcome.dual_cost));
    if let Some(last) = trace.last() {
        out.lines.push(format!("median_snr_db: {:.2}", last.median_snr_db()));
    }
    Ok(())
}

fn plot_median(path: &Path, trace: &[RoundTrace]) -> Result<()> {
    let pts = trace.iter().map(|t| (t.round as f64, t.median_snr_db().min(300.0))).collect();
    line_plot(path, "Dual estimate SNR", "round", "median SNR (dB)", &[Series { label: "median".into(), points: pts }])
}

/// SNR-versus-round study on the configured instance.
fn run_bench(cfg: &ExperimentConfig, workers: Workers, out: &mut RunSummary) -> Result<()> {
    let task = cfg.task_spec()?;
    let inst = build_instance(cfg)?;
    let (_, _, trace) = traced_solve(&inst, &task, &diffusion_options(cfg, workers))?;
    let path = cfg.output_dir.join("snr.csv");
    let header = ["round", "median_snr_db", "min_snr_db", "max_snr_db", "disagreement"].map(String::from);
    let rows = trace.iter().map(|t| {
        let lo = t.snr_db.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = t.snr_db.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        vec![t.round.to_string(), fmt_f64(t.median_snr_db()), fmt_f64(lo), fmt_f64(hi), fmt_f64(t.disagreement)]
    });
    write_csv(&path, &header, rows)?;
    let svg = cfg.output_dir.join("snr.svg");
    plot_median(&svg, &trace)?;
    out.artifacts.extend([path, svg]);
    let crossing = trace.iter().find(|t| t.median_snr_db() >= 40.0).map(|t| t.round);
    out.lines.push(format!("first_round_above_40db: {}", crossing.map_or("never".to_string(), |r| r.to_string())));
    if let Some(last) = trace.last() {
        out.lines.push(format!("final_median_snr_db: {:.2}", last.median_snr_db()));
    }
    Ok(())
}

fn run_learn(cfg: &ExperimentConfig, workers: Workers, out: &mut RunSummary) -> Result<()> {
    let task = cfg.task_spec()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let network = build_network(cfg, &mut rng)?;
    let widths = vec![cfg.network.atoms_per_agent; cfg.network.agents];
    let stream = match load_data(cfg)? {
        Some(x) => x,
        None => {
            let planted = initialize_shards_with(cfg.dim, &widths, &task, 0, &mut rng)?;
            planted_samples(&stack(&planted), cfg.sparsity, cfg.samples, cfg.noise, &task, &mut rng)
        }
    };
    if stream.nrows() != cfg.dim {
        return Err(Error::Config(format!("data has {} rows, data.dim = {}", stream.nrows(), cfg.dim)));
    }
    let shards = initialize_shards_with(cfg.dim, &widths, &task, 0, &mut rng)?;
    let learner = LearnerConfig {
        step: cfg.step,
        inference_rounds: cfg.rounds,
        dict_step: cfg.dict_step,
        time_step: 1,
        seed: cfg.seed,
        rtol: cfg.rtol,
        unchecked_step: cfg.unchecked_step,
        workers,
    };
    let mut violations = 0usize;
    let result = learn_online_observed(&network, shards, stream.view(), &task, &learner, |_, sh| {
        violations += sh.iter().filter(|s| !s.is_feasible(task.constraint)).count();
    })?;
    let dir = &cfg.output_dir;
    let shards_path = dir.join("shards.txt");
    write_shards(&shards_path, &result.shards)?;
    let trace_path = dir.join("trace.csv");
    write_learning_trace(&trace_path, &result.trace)?;
    let svg = dir.join("trace.svg");
    let pts = result.trace.iter().map(|s| (s.t as f64, s.dual_cost)).collect();
    line_plot(
        &svg,
        "Optimal inference cost per sample",
        "t",
        "dual cost",
        &[Series { label: "dual cost".into(), points: pts }],
    )?;
    out.artifacts.extend([shards_path, trace_path, svg]);
    out.lines.push(format!("samples: {}", stream.ncols()));
    out.lines.push(format!("feasibility_violations: {violations}"));
    Ok(())
}

fn run_novelty(cfg: &ExperimentConfig, workers: Workers, out: &mut RunSummary) -> Result<()> {
    let nv = &cfg.novelty;
    let full = TopicStreamSpec::standard(cfg.seed);
    let mut schedule = full.schedule.clone();
    schedule.resize(nv.time_steps, Vec::new());
    schedule.iter_mut().for_each(|s| s.retain(|&t| t < nv.topics));
    let spec = TopicStreamSpec {
        dim: cfg.dim,
        n_topics: nv.topics,
        words_per_topic: nv.words_per_topic,
        schedule,
        docs_per_step: nv.docs_per_step,
        novel_fraction: nv.novel_fraction,
        noise: nv.noise,
        seed: cfg.seed,
    };
    let stream = synthetic_topic_stream(&spec)?;
    let config = NoveltyConfig {
        gamma: cfg.gamma,
        delta: cfg.delta,
        eta: cfg.eta,
        step: cfg.step,
        rounds: cfg.rounds,
        dict_step: cfg.dict_step,
        consensus_step: cfg.consensus_step,
        consensus_rounds: cfg.consensus_rounds,
        initial_atoms: nv.growth.initial_atoms,
        atoms_added_per_step: nv.growth.atoms_added_per_step,
        edge_probability: cfg.network.edge_probability,
        rule: cfg.network.rule,
        threshold: nv.threshold,
        rtol: cfg.rtol,
        workers,
    };
    let report = novelty_pipeline(&stream, &config, cfg.seed)?;
    let dir = &cfg.output_dir;
    let mut series = Vec::new();
    for step in &report.steps {
        let path = dir.join(format!("roc_step_{}.csv", step.step));
        let header = ["threshold", "fpr", "tpr"].map(String::from);
        let rows = (0..step.roc.fpr.len())
            .map(|i| vec![fmt_f64(step.roc.thresholds[i]), fmt_f64(step.roc.fpr[i]), fmt_f64(step.roc.tpr[i])]);
        write_csv(&path, &header, rows)?;
        out.artifacts.push(path);
        series.push(Series {
            label: format!("step {}", step.step),
            points: step.roc.fpr.iter().copied().zip(step.roc.tpr.iter().copied()).collect(),
        });
    }
    let auc_path = dir.join("auc.csv");
    let header = ["step", "agents", "auc", "flagged", "documents"].map(String::from);
    let rows = report.steps.iter().map(|s| {
        vec![
            s.step.to_string(),
            s.n_agents.to_string(),
            fmt_f64(s.roc.auc),
            s.flagged.to_string(),
            s.scores.len().to_string(),
        ]
    });
    write_csv(&auc_path, &header, rows)?;
    let svg = dir.join("roc.svg");
    line_plot(&svg, "Novel document detection", "false alarm rate", "detection rate", &series)?;
    out.artifacts.extend([auc_path, svg]);
    for s in &report.steps {
        out.lines.push(format!("step {} ({} agents): auc {:.4}", s.step, s.n_agents, s.roc.auc));
    }
    out.lines.push(format!("feasibility_violations: {}", report.feasibility_violations));
    Ok(())
}

fn run_bicluster(cfg: &ExperimentConfig, workers: Workers, out: &mut RunSummary) -> Result<()> {
    let bc = &cfg.bicluster;
    let (x, truth) = match load_data(cfg)? {
        Some(x) => (x, None),
        None => {
            let spec = PlantedBiclusterSpec {
                samples: bc.samples,
                noise: bc.noise,
                ..PlantedBiclusterSpec::standard(cfg.seed)
            };
            let p = synthetic_bicluster(&spec)?;
            (p.x, Some((p.atoms, p.groups)))
        }
    };
    let config = BiclusterConfig {
        n_factors: bc.factors,
        gamma: cfg.gamma,
        delta: cfg.delta,
        beta: cfg.beta,
        step: cfg.step,
        dict_step: bc.dict_step,
        inference_rounds: cfg.rounds,
        rtol: cfg.rtol,
        workers,
    };
    let online = bicluster_online(x.view(), &config, cfg.seed)?;
    let batch = bicluster_batch(x.view(), bc.lambda, cfg.beta, bc.factors)?;
    let mut batch_atoms = Array2::zeros((x.nrows(), bc.factors));
    for (k, f) in batch.iter().enumerate() {
        batch_atoms.column_mut(k).assign(&f.w);
    }
    let dir = &cfg.output_dir;
    let online_path = dir.join("atoms_online.csv");
    write_matrix_csv(&online_path, online.atoms.view())?;
    let batch_path = dir.join("atoms_batch.csv");
    write_matrix_csv(&batch_path, batch_atoms.view())?;
    out.artifacts.extend([online_path, batch_path]);

    let (agree, _) = matched_cosines(online.atoms.view(), batch_atoms.view())?;
    out.lines.push(format!("online_vs_batch_cosines: {}", join(&agree)));
    out.lines.push(format!("feasibility_violations: {}", online.feasibility_violations));
    let groups = match &truth {
        Some((planted, groups)) => {
            let (cos, _) = matched_cosines(online.atoms.view(), planted.view())?;
            out.lines.push(format!("online_vs_planted_cosines: {}", join(&cos)));
            Some(groups.clone())
        }
        None => None,
    };
    let n_groups = groups.as_ref().map_or(bc.factors + 1, |g| g.iter().max().unwrap() + 1);
    let km = kmeans(online.atoms.view(), n_groups, 20, cfg.seed)?;
    let labels_path = dir.join("clusters.csv");
    let header = ["row", "cluster"].map(String::from);
    write_csv(&labels_path, &header, km.labels.iter().enumerate().map(|(i, l)| vec![i.to_string(), l.to_string()]))?;
    out.artifacts.push(labels_path);
    if let Some(g) = &groups {
        out.lines.push(format!("purity: {:.4}", purity(&km.labels, g)?));
    }
    if bc.factors >= 2 {
        let color = groups.unwrap_or(km.labels);
        let pts: Vec<_> =
            (0..online.atoms.nrows()).map(|i| (online.atoms[[i, 0]], online.atoms[[i, 1]], color[i])).collect();
        let svg = dir.join("profiles.svg");
        scatter_plot(&svg, "Row profiles", "[w1]", "[w2]", &pts)?;
        out.artifacts.push(svg);
    }
    Ok(())
}

fn join(v: &[f64]) -> String {
    v.iter().map(|c| format!("{c:.4}")).collect::<Vec<_>>().join(" ")
}

/// Median of per-agent SNRs at a single dual estimate set.
pub fn median_snr_db(reference: ArrayView1<'_, f64>, iterates: &[Array1<f64>]) -> f64 {
    let snr: Vec<f64> = iterates.iter().map(|nu| crate::inference::snr_db(reference, nu.view())).collect();
    median(&snr)
}
