//! Streaming novel-document detection with a growing network of single-atom
//! agents and a Huber residual.

use ndarray::ArrayView1;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::roc::{roc_and_auc, RocResult};
use super::topics::TopicStream;
use crate::error::{invalid, Result};
use crate::inference::{diffusion_solve, dual_value_consensus, local_costs_at, DictionaryShard, DiffusionOptions};
use crate::learner::{initialize_shards_with, learn_online_observed, LearnerConfig, StepSchedule};
use crate::netsim::{random_connected_graph_with, Adjacency, CombinationRule, Network, Workers};
use crate::prox::TaskSpec;

/// Inference and consensus settings used to score one document.
#[derive(Debug, Clone)]
pub struct ScoreOptions {
    pub step: f64,
    pub rounds: usize,
    pub consensus_step: f64,
    pub consensus_rounds: usize,
    pub rtol: Option<f64>,
    pub workers: Workers,
}

/// Per-agent estimates of `g° = −(1/N)·Σ_k J_k(ν°; ξ)`.
///
/// Comparing `g°` with a threshold `χ` is the same decision as comparing the
/// full dual value `−Σ_k J_k` with `N·χ`.
pub fn novelty_score(
    network: &Network,
    shards: &[DictionaryShard],
    xi: ArrayView1<'_, f64>,
    task: &TaskSpec,
    opts: &ScoreOptions,
) -> Result<Vec<f64>> {
    let diffusion = DiffusionOptions {
        step: opts.step,
        rounds: opts.rounds,
        rtol: opts.rtol,
        unchecked_step: false,
        workers: opts.workers.clone(),
    };
    let state = diffusion_solve(network, shards, xi, task, &diffusion)?;
    let costs = local_costs_at(network, shards, xi, task, &state.iterates)?;
    dual_value_consensus(network.combination(), &costs, opts.consensus_step, opts.consensus_rounds)
}

#[derive(Debug, Clone)]
pub struct NoveltyConfig {
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub step: f64,
    pub rounds: usize,
    pub dict_step: StepSchedule,
    pub consensus_step: f64,
    pub consensus_rounds: usize,
    pub initial_atoms: usize,
    pub atoms_added_per_step: usize,
    pub edge_probability: f64,
    pub rule: CombinationRule,
    /// Decision threshold `χ` applied to `g°`.
    pub threshold: f64,
    pub rtol: Option<f64>,
    pub workers: Workers,
}

impl Default for NoveltyConfig {
    fn default() -> Self {
        Self {
            gamma: 0.05,
            delta: 0.1,
            eta: 0.2,
            step: 0.05,
            rounds: 1000,
            dict_step: StepSchedule::InverseTime,
            consensus_step: 0.5,
            consensus_rounds: 200,
            initial_atoms: 10,
            atoms_added_per_step: 10,
            edge_probability: 0.5,
            rule: CombinationRule::Metropolis,
            threshold: 0.1,
            rtol: Some(DiffusionOptions::DEFAULT_RTOL),
            workers: Workers::Sequential,
        }
    }
}

impl NoveltyConfig {
    pub fn task(&self) -> Result<TaskSpec> {
        TaskSpec::nmf_huber(self.gamma, self.delta, self.eta)
    }

    fn validate(&self) -> Result<()> {
        if self.initial_atoms == 0 || self.rounds == 0 || self.consensus_rounds == 0 {
            return invalid("initial_atoms, rounds and consensus_rounds must be positive");
        }
        if !self.threshold.is_finite() {
            return invalid("detection threshold must be finite");
        }
        if !(self.edge_probability > 0.0 && self.edge_probability <= 1.0) {
            return invalid(format!("edge probability must lie in (0, 1], got {}", self.edge_probability));
        }
        Ok(())
    }

    fn score_options(&self) -> ScoreOptions {
        ScoreOptions {
            step: self.step,
            rounds: self.rounds,
            consensus_step: self.consensus_step,
            consensus_rounds: self.consensus_rounds,
            rtol: self.rtol,
            workers: self.workers.clone(),
        }
    }
}

/// Detection results for one evaluated block.
#[derive(Debug, Clone)]
pub struct StepReport {
    pub step: usize,
    pub n_agents: usize,
    /// Agent 0's consensus score per document.
    pub scores: Vec<f64>,
    pub labels: Vec<bool>,
    /// Documents with `g° ≥ χ`.
    pub flagged: usize,
    pub roc: RocResult,
}

#[derive(Debug, Clone)]
pub struct NoveltyReport {
    pub steps: Vec<StepReport>,
    pub shards: Vec<DictionaryShard>,
    pub network: Network,
    /// Shard constraint violations seen after any dictionary update.
    pub feasibility_violations: usize,
    pub dictionary_updates: usize,
}

fn build_network(n: usize, cfg: &NoveltyConfig, rng: &mut ChaCha8Rng) -> Result<Network> {
    let adj = match cfg.rule {
        CombinationRule::Uniform => Adjacency::complete(n)?,
        CombinationRule::Metropolis => random_connected_graph_with(n, cfg.edge_probability, rng)?,
    };
    Network::fully_informed(adj, cfg.rule)
}

/// Test-then-train over the blocks: score every block that contains both
/// novel and known documents with the current dictionary, learn on the block
/// with `µ_w = µ_w(s + 1)`, then grow the network.
pub fn novelty_pipeline(stream: &TopicStream, config: &NoveltyConfig, seed: u64) -> Result<NoveltyReport> {
    config.validate()?;
    let task = config.task()?;
    let m = stream.topics.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut network = build_network(config.initial_atoms, config, &mut rng)?;
    let mut shards = initialize_shards_with(m, &vec![1; config.initial_atoms], &task, 0, &mut rng)?;
    let score_opts = config.score_options();

    let mut steps = Vec::new();
    let mut violations = 0;
    let mut updates = 0;
    for (s, block) in stream.blocks.iter().enumerate() {
        if s > 0 && block.has_both_labels() {
            let scores = block
                .docs
                .columns()
                .into_iter()
                .map(|doc| novelty_score(&network, &shards, doc, &task, &score_opts).map(|g| g[0]))
                .collect::<Result<Vec<_>>>()?;
            let roc = roc_and_auc(&scores, &block.novel)?;
            steps.push(StepReport {
                step: s,
                n_agents: network.n_agents(),
                flagged: scores.iter().filter(|&&g| g >= config.threshold).count(),
                labels: block.novel.clone(),
                scores,
                roc,
            });
        }

        let learner = LearnerConfig {
            step: config.step,
            inference_rounds: config.rounds,
            dict_step: config.dict_step,
            time_step: s + 1,
            seed,
            rtol: config.rtol,
            unchecked_step: false,
            workers: config.workers.clone(),
        };
        let out = learn_online_observed(&network, shards, block.docs.view(), &task, &learner, |_, sh| {
            updates += 1;
            violations += sh.iter().filter(|w| !w.is_feasible(task.constraint)).count();
        })?;
        shards = out.shards;

        if s + 1 < stream.blocks.len() && config.atoms_added_per_step > 0 {
            let n = network.n_agents();
            network = network.grow(config.atoms_added_per_step, config.edge_probability, config.rule, &mut rng)?;
            shards.extend(initialize_shards_with(m, &vec![1; config.atoms_added_per_step], &task, n, &mut rng)?);
        }
    }
    Ok(NoveltyReport { steps, shards, network, feasibility_violations: violations, dictionary_updates: updates })
}
