//! Online dictionary learning: diffusion inference per sample followed by a
//! local proximal gradient step on every shard.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::error::{invalid, shape, Error, Result};
use crate::inference::{
    check_step, common_height, diffusion_solve, local_costs_at, max_width, recover_coefficients, snr_db,
    DictionaryShard, DiffusionOptions,
};
use crate::netsim::{Network, Workers};
use crate::prox::{project_columns_inplace, shrink, ConstraintSet, DictRegularizer, ResidualKind, TaskSpec};

/// Largest admissible inference step-size for `n_max` atoms per agent.
pub fn step_size_bound(task: &TaskSpec, n_max: usize) -> f64 {
    let load = n_max as f64 / task.coeff_reg.delta;
    match task.residual {
        ResidualKind::Quadratic => 1.0 / (1.0 + load),
        ResidualKind::Huber { eta } => 1.0 / (eta + load),
    }
}

/// Dictionary step-size `µ_w(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSchedule {
    Constant(f64),
    /// `µ_w(s) = 1/s`.
    InverseTime,
}

impl StepSchedule {
    pub fn at(&self, s: usize) -> f64 {
        match *self {
            StepSchedule::Constant(mu) => mu,
            StepSchedule::InverseTime => 1.0 / s.max(1) as f64,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LearnerConfig {
    /// Inference step-size `µ`.
    pub step: f64,
    pub inference_rounds: usize,
    pub dict_step: StepSchedule,
    /// Time-step index `s` fed to the schedule.
    pub time_step: usize,
    pub seed: u64,
    pub rtol: Option<f64>,
    pub unchecked_step: bool,
    pub workers: Workers,
}

impl LearnerConfig {
    pub fn new(step: f64, inference_rounds: usize, dict_step: StepSchedule) -> Self {
        Self {
            step,
            inference_rounds,
            dict_step,
            time_step: 1,
            seed: 0,
            rtol: Some(DiffusionOptions::DEFAULT_RTOL),
            unchecked_step: false,
            workers: Workers::Sequential,
        }
    }

    pub fn diffusion_options(&self) -> DiffusionOptions {
        DiffusionOptions {
            step: self.step,
            rounds: self.inference_rounds,
            rtol: self.rtol,
            unchecked_step: self.unchecked_step,
            workers: self.workers.clone(),
        }
    }

    /// `µ_w = 0` is accepted and turns learning into a pure inference pass.
    pub fn validate(&self, task: &TaskSpec, n_max: usize) -> Result<()> {
        check_step(self.step, task, n_max, self.unchecked_step)?;
        if self.inference_rounds == 0 {
            return invalid("inference_rounds must be at least 1");
        }
        if let StepSchedule::Constant(mu) = self.dict_step {
            if !(mu >= 0.0 && mu.is_finite()) {
                return invalid(format!("dictionary step-size must be nonnegative, got {mu}"));
            }
        }
        Ok(())
    }
}

/// `W ← Π(prox_{µ_w h_W}(W + µ_w ν yᵀ))`.
pub fn dictionary_step(
    shard: &DictionaryShard,
    nu: ArrayView1<'_, f64>,
    y: ArrayView1<'_, f64>,
    mu_w: f64,
    task: &TaskSpec,
) -> Result<DictionaryShard> {
    if nu.len() != shard.height() {
        return shape(format!("dual has length {}, shard height {}", nu.len(), shard.height()));
    }
    if y.len() != shard.width() {
        return shape(format!("{} coefficients for {} atoms", y.len(), shard.width()));
    }
    if !(mu_w >= 0.0 && mu_w.is_finite()) {
        return invalid(format!("dictionary step-size must be nonnegative, got {mu_w}"));
    }
    let mut out = shard.clone();
    update_atoms(out.atoms_mut(), nu, y, mu_w, task);
    Ok(out)
}

fn update_atoms(w: &mut Array2<f64>, nu: ArrayView1<'_, f64>, y: ArrayView1<'_, f64>, mu_w: f64, task: &TaskSpec) {
    if mu_w == 0.0 {
        return;
    }
    for (mut col, &yq) in w.axis_iter_mut(Axis(1)).zip(y) {
        if yq != 0.0 {
            let a = mu_w * yq;
            Zip::from(&mut col).and(&nu).for_each(|w, &v| *w += a * v);
        }
    }
    if let DictRegularizer::L1Sum { beta } = task.dict_reg {
        let theta = mu_w * beta;
        if theta > 0.0 {
            w.mapv_inplace(|v| shrink(v, theta));
        }
    }
    project_columns_inplace(w, task.constraint);
}

/// Per-sample learning diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTrace {
    pub t: usize,
    /// `−Σ_k J_k(ν_k; x_t)` before the dictionary step.
    pub dual_cost: f64,
    /// Mean over agents of the SNR of `ν_k` against the network average.
    pub mean_snr: f64,
    pub rounds_used: usize,
}

#[derive(Debug, Clone)]
pub struct LearnOutput {
    pub shards: Vec<DictionaryShard>,
    pub trace: Vec<SampleTrace>,
    /// Recovered coefficients, agents stacked in order, `K × T`.
    pub coefficients: Array2<f64>,
}

/// One online pass over the columns of `stream` (`M × T`).
pub fn learn_online(
    network: &Network,
    shards: Vec<DictionaryShard>,
    stream: ArrayView2<'_, f64>,
    task: &TaskSpec,
    config: &LearnerConfig,
) -> Result<LearnOutput> {
    learn_online_observed(network, shards, stream, task, config, |_, _| {})
}

/// [`learn_online`] calling `observer(t, shards)` after every dictionary step.
pub fn learn_online_observed<F>(
    network: &Network,
    mut shards: Vec<DictionaryShard>,
    stream: ArrayView2<'_, f64>,
    task: &TaskSpec,
    config: &LearnerConfig,
    mut observer: F,
) -> Result<LearnOutput>
where
    F: FnMut(usize, &[DictionaryShard]),
{
    let m = common_height(&shards)?;
    if shards.len() != network.n_agents() {
        return shape(format!("{} shards for {} agents", shards.len(), network.n_agents()));
    }
    if stream.ncols() > 0 && stream.nrows() != m {
        return shape(format!("stream has {} rows, shards have height {m}", stream.nrows()));
    }
    config.validate(task, max_width(&shards))?;
    if let Some(s) = shards.iter().find(|s| !s.is_feasible(task.constraint)) {
        return invalid(format!("shard {} violates its constraint set", s.agent_id()));
    }
    let opts = config.diffusion_options();
    let mu_w = config.dict_step.at(config.time_step);
    let mut trace = Vec::with_capacity(stream.ncols());
    let k_total: usize = shards.iter().map(|s| s.width()).sum();
    let mut coefficients = Array2::zeros((k_total, stream.ncols()));
    for (t, x) in stream.axis_iter(Axis(1)).enumerate() {
        let state = diffusion_solve(network, &shards, x, task, &opts)?;
        let costs = local_costs_at(network, &shards, x, task, &state.iterates)?;
        let mean = mean_vector(&state.iterates);
        let mean_snr =
            state.iterates.iter().map(|nu| snr_db(mean.view(), nu.view())).sum::<f64>() / state.iterates.len() as f64;
        trace.push(SampleTrace { t, dual_cost: -costs.iter().sum::<f64>(), mean_snr, rounds_used: state.round });
        let coeffs = shards
            .iter()
            .zip(&state.iterates)
            .map(|(s, nu)| recover_coefficients(s, nu.view(), task))
            .collect::<Result<Vec<_>>>()?;
        let mut row = 0;
        for y in &coeffs {
            coefficients.slice_mut(ndarray::s![row..row + y.len(), t]).assign(y);
            row += y.len();
        }
        {
            let iterates = &state.iterates;
            config.workers.for_each_mut(&mut shards, |k, shard| {
                update_atoms(shard.atoms_mut(), iterates[k].view(), coeffs[k].view(), mu_w, task);
            });
        }
        observer(t, &shards);
    }
    Ok(LearnOutput { shards, trace, coefficients })
}

fn mean_vector(vs: &[Array1<f64>]) -> Array1<f64> {
    let mut mean = Array1::zeros(vs[0].len());
    for v in vs {
        mean += v;
    }
    mean / vs.len() as f64
}

/// Random feasible shards: standard normal entries for signed tasks, uniform
/// on `[0, 1)` for nonnegative ones, then column projection.
pub fn initialize_shards(m: usize, widths: &[usize], task: &TaskSpec, seed: u64) -> Result<Vec<DictionaryShard>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    initialize_shards_with(m, widths, task, 0, &mut rng)
}

pub(crate) fn initialize_shards_with<R: rand::Rng>(
    m: usize,
    widths: &[usize],
    task: &TaskSpec,
    first_id: usize,
    rng: &mut R,
) -> Result<Vec<DictionaryShard>> {
    if m == 0 || widths.is_empty() || widths.contains(&0) {
        return invalid("shards need a positive height and at least one atom each");
    }
    let unit = Uniform::new(0.0, 1.0).expect("valid range");
    widths
        .iter()
        .enumerate()
        .map(|(k, &nk)| {
            let mut w = match task.constraint {
                ConstraintSet::UnitColumns => Array2::from_shape_simple_fn((m, nk), || StandardNormal.sample(rng)),
                ConstraintSet::NonnegUnitColumns => Array2::from_shape_simple_fn((m, nk), || unit.sample(rng)),
            };
            project_columns_inplace(&mut w, task.constraint);
            DictionaryShard::new(first_id + k, w)
        })
        .collect()
}

/// Header `M K N`, then one `agent_id col_index w_1 … w_M` line per atom.
pub fn write_shards(path: &Path, shards: &[DictionaryShard]) -> Result<()> {
    let m = common_height(shards)?;
    let k: usize = shards.iter().map(|s| s.width()).sum();
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "{m} {k} {}", shards.len())?;
    for s in shards {
        for (q, col) in s.atoms().axis_iter(Axis(1)).enumerate() {
            write!(out, "{} {q}", s.agent_id())?;
            for v in col {
                write!(out, " {}", crate::io::fmt_f64(*v))?;
            }
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_shards(path: &Path) -> Result<Vec<DictionaryShard>> {
    let parse_err = |line: usize, msg: String| Error::Parse { path: path.to_path_buf(), line, msg };
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines().enumerate();
    let (m, k, n) = loop {
        let Some((i, line)) = lines.next() else {
            return Err(parse_err(1, "missing `M K N` header".into()));
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(i + 1, format!("bad header: {e}")))?;
        if nums.len() != 3 {
            return Err(parse_err(i + 1, "header must be `M K N`".into()));
        }
        break (nums[0], nums[1], nums[2]);
    };
    let mut groups: Vec<(usize, Vec<Vec<f64>>)> = Vec::new();
    let mut atoms = 0;
    for (i, line) in lines {
        let line = line?;
        let mut toks = line.split_whitespace();
        let Some(first) = toks.next() else { continue };
        let lineno = i + 1;
        let id: usize = first.parse().map_err(|e| parse_err(lineno, format!("bad agent id: {e}")))?;
        let col: usize = toks
            .next()
            .ok_or_else(|| parse_err(lineno, "missing column index".into()))?
            .parse()
            .map_err(|e| parse_err(lineno, format!("bad column index: {e}")))?;
        let vals: Vec<f64> = toks
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| parse_err(lineno, format!("bad value: {e}")))?;
        if vals.len() != m {
            return Err(parse_err(lineno, format!("expected {m} values, found {}", vals.len())));
        }
        if vals.iter().any(|v| !v.is_finite()) {
            return Err(parse_err(lineno, "non-finite value".into()));
        }
        match groups.last_mut() {
            Some((last, cols)) if *last == id => {
                if col != cols.len() {
                    return Err(parse_err(lineno, format!("expected column {}, found {col}", cols.len())));
                }
                cols.push(vals);
            }
            _ => {
                if groups.iter().any(|(g, _)| *g == id) {
                    return Err(parse_err(lineno, format!("atoms of agent {id} are not contiguous")));
                }
                if col != 0 {
                    return Err(parse_err(lineno, format!("agent {id} must start at column 0")));
                }
                groups.push((id, vec![vals]));
            }
        }
        atoms += 1;
    }
    if atoms != k || groups.len() != n {
        return Err(parse_err(
            1,
            format!("header declares {k} atoms over {n} agents, found {atoms} over {}", groups.len()),
        ));
    }
    groups
        .into_iter()
        .map(|(id, cols)| {
            let w = Array2::from_shape_fn((m, cols.len()), |(r, c)| cols[c][r]);
            DictionaryShard::new(id, w)
        })
        .collect()
}

/// CSV columns `t, dual_cost, mean_snr`.
pub fn write_learning_trace(path: &Path, trace: &[SampleTrace]) -> Result<()> {
    let header = ["t", "dual_cost", "mean_snr"].map(String::from);
    let rows =
        trace.iter().map(|s| vec![s.t.to_string(), crate::io::fmt_f64(s.dual_cost), crate::io::fmt_f64(s.mean_snr)]);
    crate::io::write_csv(path, &header, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    #[test]
    fn step_bound_examples() {
        let q = TaskSpec::sparse_svd(0.05, 0.1).unwrap();
        assert_abs_diff_eq!(step_size_bound(&q, 10), 1.0 / 101.0, epsilon = 1e-15);
        let h = TaskSpec::nmf_huber(0.05, 0.1, 0.2).unwrap();
        assert_abs_diff_eq!(step_size_bound(&h, 10), 1.0 / 100.2, epsilon = 1e-15);
        let unit = TaskSpec::sparse_svd(0.05, 1.0).unwrap();
        assert_eq!(step_size_bound(&unit, 1), 0.5);
    }

    #[test]
    fn dictionary_step_examples() {
        let task = TaskSpec::sparse_svd(0.1, 1.0).unwrap();
        let shard = DictionaryShard::new(0, array![[0.6], [0.8]]).unwrap();
        let same = dictionary_step(&shard, array![1.0, 0.0].view(), array![0.0].view(), 0.1, &task).unwrap();
        assert_eq!(same, shard);
        let moved = dictionary_step(&shard, array![1.0, 0.0].view(), array![0.5].view(), 0.1, &task).unwrap();
        let norm = 1.0625f64.sqrt();
        assert_abs_diff_eq!(moved.atoms()[[0, 0]], 0.65 / norm, epsilon = 1e-12);
        assert_abs_diff_eq!(moved.atoms()[[1, 0]], 0.8 / norm, epsilon = 1e-12);
        assert_abs_diff_eq!(moved.atoms()[[0, 0]], 0.63059, epsilon = 1e-5);
        assert!(moved.is_feasible(task.constraint));

        let nonneg = TaskSpec::nmf(0.1, 1.0).unwrap();
        let s = DictionaryShard::new(0, array![[0.1, 0.5], [0.2, 0.0]]).unwrap();
        let out = dictionary_step(&s, array![-1.0, 3.0].view(), array![2.0, 1.0].view(), 0.5, &nonneg).unwrap();
        assert!(out.atoms().iter().all(|&v| v >= 0.0));
        assert!(out.is_feasible(nonneg.constraint));

        assert!(dictionary_step(&s, array![1.0].view(), array![1.0, 1.0].view(), 0.1, &task).is_err());
        assert!(dictionary_step(&s, array![1.0, 0.0].view(), array![1.0].view(), 0.1, &task).is_err());
    }

    #[test]
    fn l1_dictionary_prox_precedes_projection() {
        let task = TaskSpec::biclustering(0.1, 1.0, 0.5).unwrap();
        let s = DictionaryShard::new(0, array![[0.3], [0.02]]).unwrap();
        let out = dictionary_step(&s, array![0.0, 0.0].view(), array![1.0].view(), 0.1, &task).unwrap();
        assert_abs_diff_eq!(out.atoms()[[0, 0]], 0.25, epsilon = 1e-15);
        assert_eq!(out.atoms()[[1, 0]], 0.0);
    }

    #[test]
    fn initialization_is_feasible_and_deterministic() {
        for task in [TaskSpec::sparse_svd(0.1, 1.0).unwrap(), TaskSpec::nmf(0.1, 1.0).unwrap()] {
            let a = initialize_shards(7, &[1, 3, 2], &task, 11).unwrap();
            let b = initialize_shards(7, &[1, 3, 2], &task, 11).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.iter().map(|s| s.width()).collect::<Vec<_>>(), vec![1, 3, 2]);
            assert!(a.iter().all(|s| s.is_feasible(task.constraint)));
            let c = initialize_shards(7, &[1, 3, 2], &task, 12).unwrap();
            assert_ne!(a, c);
        }
        let nonneg = TaskSpec::nmf(0.1, 1.0).unwrap();
        let s = initialize_shards(5, &[4], &nonneg, 3).unwrap();
        assert!(s[0].atoms().iter().all(|&v| v >= 0.0));
        assert!(initialize_shards(5, &[], &nonneg, 3).is_err());
        assert!(initialize_shards(5, &[2, 0], &nonneg, 3).is_err());
    }

    #[test]
    fn empty_stream_leaves_shards() {
        let task = TaskSpec::sparse_svd(0.1, 1.0).unwrap();
        let net = Network::fully_connected(2).unwrap();
        let shards = initialize_shards(3, &[1, 1], &task, 5).unwrap();
        let cfg = LearnerConfig::new(0.2, 10, StepSchedule::Constant(0.1));
        let out = learn_online(&net, shards.clone(), Array2::zeros((3, 0)).view(), &task, &cfg).unwrap();
        assert_eq!(out.shards, shards);
        assert!(out.trace.is_empty());
    }

    #[test]
    fn zero_dictionary_step_is_pure_inference() {
        let task = TaskSpec::sparse_svd(0.1, 1.0).unwrap();
        let net = Network::fully_connected(2).unwrap();
        let shards = initialize_shards(3, &[1, 2], &task, 5).unwrap();
        let cfg = LearnerConfig::new(0.2, 50, StepSchedule::Constant(0.0));
        let stream = array![[1.0, -0.5], [0.3, 0.2], [0.0, 2.0]];
        let out = learn_online(&net, shards.clone(), stream.view(), &task, &cfg).unwrap();
        assert_eq!(out.shards, shards);
        assert_eq!(out.trace.len(), 2);
    }

    #[test]
    fn inverse_time_schedule() {
        assert_eq!(StepSchedule::InverseTime.at(4), 0.25);
        assert_eq!(StepSchedule::InverseTime.at(1), 1.0);
        assert_eq!(StepSchedule::Constant(0.3).at(9), 0.3);
    }

    #[test]
    fn checkpoint_round_trip() {
        let task = TaskSpec::sparse_svd(0.1, 1.0).unwrap();
        let shards = initialize_shards(4, &[2, 1, 3], &task, 9).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("shards.txt");
        write_shards(&path, &shards).unwrap();
        let back = read_shards(&path).unwrap();
        assert_eq!(back, shards);

        std::fs::write(&path, "2 1 1\n0 0 1.0\n").unwrap();
        match read_shards(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
