//! Flat `section.key = value` experiment configuration.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::inference::check_step;
use crate::io::{ColumnNorm, MatrixFormat};
use crate::learner::StepSchedule;
use crate::netsim::CombinationRule;
use crate::prox::TaskSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    Infer,
    Learn,
    Novelty,
    Bicluster,
    Bench,
}

impl Pipeline {
    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::Infer => "infer",
            Pipeline::Learn => "learn",
            Pipeline::Novelty => "novelty",
            Pipeline::Bicluster => "bicluster",
            Pipeline::Bench => "bench",
        }
    }
}

impl FromStr for Pipeline {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "infer" => Pipeline::Infer,
            "learn" => Pipeline::Learn,
            "novelty" => Pipeline::Novelty,
            "bicluster" => Pipeline::Bicluster,
            "bench" => Pipeline::Bench,
            _ => return Err(format!("unknown pipeline `{s}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    SparseSvd,
    Biclustering,
    Nmf,
    NmfHuber,
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::SparseSvd => "sparse_svd",
            TaskKind::Biclustering => "biclustering",
            TaskKind::Nmf => "nmf",
            TaskKind::NmfHuber => "nmf_huber",
        }
    }
}

impl FromStr for TaskKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "sparse_svd" => TaskKind::SparseSvd,
            "biclustering" => TaskKind::Biclustering,
            "nmf" => TaskKind::Nmf,
            "nmf_huber" => TaskKind::NmfHuber,
            _ => return Err(format!("unknown task `{s}`")),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    pub agents: usize,
    pub atoms_per_agent: usize,
    pub edge_probability: f64,
    pub rule: CombinationRule,
    /// Number of informed agents (the first ones); 0 means all.
    pub informed: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthConfig {
    pub initial_atoms: usize,
    pub atoms_added_per_step: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoveltySection {
    pub time_steps: usize,
    pub docs_per_step: usize,
    pub topics: usize,
    pub words_per_topic: usize,
    pub novel_fraction: f64,
    pub noise: f64,
    pub growth: GrowthConfig,
    /// Threshold `χ` on the consensus score.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BiclusterSection {
    pub factors: usize,
    pub dict_step: f64,
    /// Coefficient threshold of the batch baseline.
    pub lambda: f64,
    pub samples: usize,
    pub noise: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub pipeline: Pipeline,
    pub seed: u64,
    pub output_dir: PathBuf,

    pub task: TaskKind,
    pub gamma: f64,
    pub delta: f64,
    pub beta: f64,
    pub eta: f64,

    pub network: NetworkConfig,

    pub step: f64,
    pub rounds: usize,
    pub rtol: Option<f64>,
    pub unchecked_step: bool,
    pub consensus_step: f64,
    pub consensus_rounds: usize,

    pub dict_step: StepSchedule,
    pub samples: usize,

    /// External data; synthetic data is generated when absent.
    pub input: Option<PathBuf>,
    pub format: MatrixFormat,
    pub normalize: Option<ColumnNorm>,
    pub dim: usize,
    pub sparsity: usize,
    pub noise: f64,

    pub novelty: NoveltySection,
    pub bicluster: BiclusterSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            pipeline: Pipeline::Bench,
            seed: 7,
            output_dir: PathBuf::from("out"),
            task: TaskKind::SparseSvd,
            gamma: 0.05,
            delta: 0.1,
            beta: 0.0,
            eta: 0.2,
            network: NetworkConfig {
                agents: 10,
                atoms_per_agent: 1,
                edge_probability: 0.5,
                rule: CombinationRule::Uniform,
                informed: 0,
            },
            step: 0.09,
            rounds: 1000,
            rtol: None,
            unchecked_step: false,
            consensus_step: 0.5,
            consensus_rounds: 200,
            dict_step: StepSchedule::Constant(0.05),
            samples: 200,
            input: None,
            format: MatrixFormat::DenseCsv,
            normalize: None,
            dim: 20,
            sparsity: 2,
            noise: 0.01,
            novelty: NoveltySection {
                time_steps: 9,
                docs_per_step: 100,
                topics: 8,
                words_per_topic: 25,
                novel_fraction: 0.3,
                noise: 0.02,
                growth: GrowthConfig { initial_atoms: 10, atoms_added_per_step: 2 },
                threshold: 0.1,
            },
            bicluster: BiclusterSection { factors: 3, dict_step: 5e-3, lambda: 0.5, samples: 2000, noise: 0.1 },
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("`{key}`: cannot parse `{value}`: {e}"))
}

fn parse_bool(key: &str, value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(format!("`{key}`: expected true or false, got `{value}`")),
    }
}

fn rule_name(rule: CombinationRule) -> &'static str {
    match rule {
        CombinationRule::Metropolis => "metropolis",
        CombinationRule::Uniform => "uniform",
    }
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text).map_err(|e| match e {
            Error::Parse { line, msg, .. } => Error::Parse { path: path.to_path_buf(), line, msg },
            other => other,
        })
    }

    /// Unlisted keys keep their defaults; unknown keys are errors.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { path: PathBuf::from("<config>"), line: i + 1, msg };
            let (key, value) =
                line.split_once('=').ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            cfg.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        match key {
            "experiment.pipeline" => self.pipeline = parse(key, v)?,
            "experiment.seed" => self.seed = parse(key, v)?,
            "experiment.output_dir" => self.output_dir = PathBuf::from(v),
            "task.kind" => self.task = parse(key, v)?,
            "task.gamma" => self.gamma = parse(key, v)?,
            "task.delta" => self.delta = parse(key, v)?,
            "task.beta" => self.beta = parse(key, v)?,
            "task.eta" => self.eta = parse(key, v)?,
            "network.agents" => self.network.agents = parse(key, v)?,
            "network.atoms_per_agent" => self.network.atoms_per_agent = parse(key, v)?,
            "network.edge_probability" => self.network.edge_probability = parse(key, v)?,
            "network.rule" => {
                self.network.rule = match v {
                    "metropolis" => CombinationRule::Metropolis,
                    "uniform" => CombinationRule::Uniform,
                    _ => return Err(format!("`{key}`: unknown rule `{v}`")),
                }
            }
            "network.informed" => self.network.informed = parse(key, v)?,
            "inference.step" => self.step = parse(key, v)?,
            "inference.rounds" => self.rounds = parse(key, v)?,
            "inference.rtol" => self.rtol = if v == "none" { None } else { Some(parse(key, v)?) },
            "inference.unchecked_step" => self.unchecked_step = parse_bool(key, v)?,
            "inference.consensus_step" => self.consensus_step = parse(key, v)?,
            "inference.consensus_rounds" => self.consensus_rounds = parse(key, v)?,
            "learner.dict_step" => {
                self.dict_step =
                    if v == "inverse_time" { StepSchedule::InverseTime } else { StepSchedule::Constant(parse(key, v)?) }
            }
            "learner.samples" => self.samples = parse(key, v)?,
            "data.input" => self.input = if v.is_empty() { None } else { Some(PathBuf::from(v)) },
            "data.format" => {
                self.format = match v {
                    "csv" => MatrixFormat::DenseCsv,
                    _ => match v.strip_prefix("triplet:").and_then(|s| s.split_once('x')) {
                        Some((r, c)) => MatrixFormat::Triplet { rows: parse(key, r)?, cols: parse(key, c)? },
                        None => return Err(format!("`{key}`: expected `csv` or `triplet:RxC`, got `{v}`")),
                    },
                }
            }
            "data.normalize" => {
                self.normalize = match v {
                    "none" => None,
                    "l2" => Some(ColumnNorm::L2),
                    "l1" => Some(ColumnNorm::L1),
                    _ => return Err(format!("`{key}`: expected none, l2 or l1, got `{v}`")),
                }
            }
            "data.dim" => self.dim = parse(key, v)?,
            "data.sparsity" => self.sparsity = parse(key, v)?,
            "data.noise" => self.noise = parse(key, v)?,
            "novelty.time_steps" => self.novelty.time_steps = parse(key, v)?,
            "novelty.docs_per_step" => self.novelty.docs_per_step = parse(key, v)?,
            "novelty.topics" => self.novelty.topics = parse(key, v)?,
            "novelty.words_per_topic" => self.novelty.words_per_topic = parse(key, v)?,
            "novelty.novel_fraction" => self.novelty.novel_fraction = parse(key, v)?,
            "novelty.noise" => self.novelty.noise = parse(key, v)?,
            "novelty.initial_atoms" => self.novelty.growth.initial_atoms = parse(key, v)?,
            "novelty.atoms_added_per_step" => self.novelty.growth.atoms_added_per_step = parse(key, v)?,
            "novelty.threshold" => self.novelty.threshold = parse(key, v)?,
            "bicluster.factors" => self.bicluster.factors = parse(key, v)?,
            "bicluster.dict_step" => self.bicluster.dict_step = parse(key, v)?,
            "bicluster.lambda" => self.bicluster.lambda = parse(key, v)?,
            "bicluster.samples" => self.bicluster.samples = parse(key, v)?,
            "bicluster.noise" => self.bicluster.noise = parse(key, v)?,
            _ => return Err(format!("unknown key `{key}`")),
        }
        Ok(())
    }

    /// Every key, in a fixed order; parsing the output yields `self` again.
    pub fn serialize(&self) -> String {
        let f = |x: f64| format!("{x:?}");
        let mut entries: Vec<(&str, String)> = vec![
            ("experiment.pipeline", self.pipeline.name().into()),
            ("experiment.seed", self.seed.to_string()),
            ("experiment.output_dir", self.output_dir.display().to_string()),
            ("task.kind", self.task.name().into()),
            ("task.gamma", f(self.gamma)),
            ("task.delta", f(self.delta)),
            ("task.beta", f(self.beta)),
            ("task.eta", f(self.eta)),
            ("network.agents", self.network.agents.to_string()),
            ("network.atoms_per_agent", self.network.atoms_per_agent.to_string()),
            ("network.edge_probability", f(self.network.edge_probability)),
            ("network.rule", rule_name(self.network.rule).into()),
            ("network.informed", self.network.informed.to_string()),
            ("inference.step", f(self.step)),
            ("inference.rounds", self.rounds.to_string()),
            ("inference.rtol", self.rtol.map_or("none".into(), f)),
            ("inference.unchecked_step", self.unchecked_step.to_string()),
            ("inference.consensus_step", f(self.consensus_step)),
            ("inference.consensus_rounds", self.consensus_rounds.to_string()),
            (
                "learner.dict_step",
                match self.dict_step {
                    StepSchedule::InverseTime => "inverse_time".into(),
                    StepSchedule::Constant(mu) => f(mu),
                },
            ),
            ("learner.samples", self.samples.to_string()),
            ("data.input", self.input.as_ref().map_or(String::new(), |p| p.display().to_string())),
            (
                "data.format",
                match self.format {
                    MatrixFormat::DenseCsv => "csv".into(),
                    MatrixFormat::Triplet { rows, cols } => format!("triplet:{rows}x{cols}"),
                },
            ),
            (
                "data.normalize",
                match self.normalize {
                    None => "none",
                    Some(ColumnNorm::L2) => "l2",
                    Some(ColumnNorm::L1) => "l1",
                }
                .into(),
            ),
            ("data.dim", self.dim.to_string()),
            ("data.sparsity", self.sparsity.to_string()),
            ("data.noise", f(self.noise)),
        ];
        entries.extend([
            ("novelty.time_steps", self.novelty.time_steps.to_string()),
            ("novelty.docs_per_step", self.novelty.docs_per_step.to_string()),
            ("novelty.topics", self.novelty.topics.to_string()),
            ("novelty.words_per_topic", self.novelty.words_per_topic.to_string()),
            ("novelty.novel_fraction", f(self.novelty.novel_fraction)),
            ("novelty.noise", f(self.novelty.noise)),
            ("novelty.initial_atoms", self.novelty.growth.initial_atoms.to_string()),
            ("novelty.atoms_added_per_step", self.novelty.growth.atoms_added_per_step.to_string()),
            ("novelty.threshold", f(self.novelty.threshold)),
            ("bicluster.factors", self.bicluster.factors.to_string()),
            ("bicluster.dict_step", f(self.bicluster.dict_step)),
            ("bicluster.lambda", f(self.bicluster.lambda)),
            ("bicluster.samples", self.bicluster.samples.to_string()),
            ("bicluster.noise", f(self.bicluster.noise)),
        ]);
        let mut out = String::new();
        for (k, v) in entries {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }

    pub fn task_spec(&self) -> Result<TaskSpec> {
        match self.task {
            TaskKind::SparseSvd => TaskSpec::sparse_svd(self.gamma, self.delta),
            TaskKind::Biclustering => TaskSpec::biclustering(self.gamma, self.delta, self.beta),
            TaskKind::Nmf => TaskSpec::nmf(self.gamma, self.delta),
            TaskKind::NmfHuber => TaskSpec::nmf_huber(self.gamma, self.delta, self.eta),
        }
    }

    /// Atoms per agent seen by the step-size bound.
    pub fn max_atoms_per_agent(&self) -> usize {
        match self.pipeline {
            Pipeline::Novelty | Pipeline::Bicluster => 1,
            _ => self.network.atoms_per_agent,
        }
    }

    /// Checks every constant against its module's preconditions.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        let task = self.task_spec().map_err(|e| Error::Config(e.to_string()))?;
        match (self.pipeline, self.task) {
            (Pipeline::Novelty, TaskKind::NmfHuber) | (Pipeline::Bicluster, TaskKind::Biclustering) => {}
            (Pipeline::Novelty, _) => return bad("the novelty pipeline needs task.kind = nmf_huber".into()),
            (Pipeline::Bicluster, _) => return bad("the bicluster pipeline needs task.kind = biclustering".into()),
            _ => {}
        }
        let n = &self.network;
        if n.agents == 0 || n.atoms_per_agent == 0 {
            return bad("network.agents and network.atoms_per_agent must be positive".into());
        }
        if !(n.edge_probability > 0.0 && n.edge_probability <= 1.0) {
            return bad(format!("network.edge_probability must lie in (0, 1], got {}", n.edge_probability));
        }
        if n.informed > n.agents {
            return bad(format!("network.informed = {} exceeds {} agents", n.informed, n.agents));
        }
        if self.rounds == 0 || self.consensus_rounds == 0 {
            return bad("round budgets must be positive".into());
        }
        if !(self.consensus_step > 0.0 && self.consensus_step <= 1.0) {
            return bad(format!("inference.consensus_step must lie in (0, 1], got {}", self.consensus_step));
        }
        if let Some(r) = self.rtol {
            if !(r > 0.0) {
                return bad(format!("inference.rtol must be positive, got {r}"));
            }
        }
        if let StepSchedule::Constant(mu) = self.dict_step {
            if !(mu >= 0.0 && mu.is_finite()) {
                return bad(format!("learner.dict_step must be nonnegative, got {mu}"));
            }
        }
        if self.dim == 0 || self.samples == 0 {
            return bad("data.dim and learner.samples must be positive".into());
        }
        if self.sparsity == 0 || self.sparsity > n.agents * n.atoms_per_agent {
            return bad("data.sparsity must lie between 1 and the total atom count".into());
        }
        if !(self.noise >= 0.0) || !(self.novelty.noise >= 0.0) || !(self.bicluster.noise >= 0.0) {
            return bad("noise levels must be nonnegative".into());
        }
        let nv = &self.novelty;
        if nv.time_steps == 0 || nv.docs_per_step == 0 || nv.topics == 0 || nv.growth.initial_atoms == 0 {
            return bad("novelty sizes must be positive".into());
        }
        if !nv.threshold.is_finite() || !(0.0..=1.0).contains(&nv.novel_fraction) {
            return bad("novelty.threshold must be finite and novelty.novel_fraction in [0, 1]".into());
        }
        let bc = &self.bicluster;
        if bc.factors == 0 || bc.samples == 0 || !(bc.dict_step > 0.0) || !(bc.lambda >= 0.0) {
            return bad("bicluster sizes and step-sizes must be positive".into());
        }
        check_step(self.step, &task, self.max_atoms_per_agent(), self.unchecked_step)
            .map_err(|e| Error::Config(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_default_and_modified() {
        let d = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::parse_str(&d.serialize()).unwrap(), d);
        let text = "experiment.pipeline = novelty\ntask.kind = nmf_huber # huber row\n\
                    inference.rtol = 1e-9\nlearner.dict_step = inverse_time\n\
                    data.format = triplet:3x4\ndata.normalize = l2\ndata.input = x.txt\n\
                    network.rule = uniform\ninference.step = 0.05\n";
        let c = ExperimentConfig::parse_str(text).unwrap();
        assert_eq!(c.pipeline, Pipeline::Novelty);
        assert_eq!(c.format, MatrixFormat::Triplet { rows: 3, cols: 4 });
        assert_eq!(c.rtol, Some(1e-9));
        assert_eq!(ExperimentConfig::parse_str(&c.serialize()).unwrap(), c);
        c.validate().unwrap();
    }

    #[test]
    fn errors_name_the_line() {
        match ExperimentConfig::parse_str("\n# c\ntask.gamma = abc\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(ExperimentConfig::parse_str("nope = 1").is_err());
        assert!(ExperimentConfig::parse_str("task.gamma 1").is_err());
    }

    #[test]
    fn validation_enforces_step_bound() {
        let mut c = ExperimentConfig::default();
        c.validate().unwrap();
        c.step = 0.1;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.unchecked_step = true;
        c.validate().unwrap();
        let mut c = ExperimentConfig { pipeline: Pipeline::Novelty, ..Default::default() };
        assert!(c.validate().is_err());
        c.task = TaskKind::NmfHuber;
        c.validate().unwrap();
    }
}
