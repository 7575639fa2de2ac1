//! Sparse rank-one factorizations for bi-clustering: the online diffusion
//! learner and the batch alternating-threshold baseline.

use nalgebra::DMatrix;
use ndarray::{Array1, Array2, ArrayView2, Axis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Error, Result};
use crate::inference::DiffusionOptions;
use crate::learner::{initialize_shards, learn_online_observed, LearnerConfig, StepSchedule};
use crate::netsim::{Network, Workers};
use crate::prox::{l2_norm, shrink, TaskSpec};

#[derive(Debug, Clone)]
pub struct BiclusterConfig {
    pub n_factors: usize,
    pub gamma: f64,
    pub delta: f64,
    pub beta: f64,
    /// Inference step-size `µ_ν`.
    pub step: f64,
    /// Dictionary step-size `µ_w`.
    pub dict_step: f64,
    pub inference_rounds: usize,
    pub rtol: Option<f64>,
    pub workers: Workers,
}

impl Default for BiclusterConfig {
    fn default() -> Self {
        Self {
            n_factors: 3,
            gamma: 0.5,
            delta: 0.01,
            beta: 0.01,
            // just under the bound 1/(1 + 1/δ) = 1/101
            step: 0.0098,
            dict_step: 5e-3,
            inference_rounds: 2000,
            rtol: Some(DiffusionOptions::DEFAULT_RTOL),
            workers: Workers::Sequential,
        }
    }
}

impl BiclusterConfig {
    pub fn task(&self) -> Result<TaskSpec> {
        TaskSpec::biclustering(self.gamma, self.delta, self.beta)
    }
}

#[derive(Debug, Clone)]
pub struct BiclusterOutput {
    /// Learned atoms as columns, `M × N`.
    pub atoms: Array2<f64>,
    /// Coefficient stream, `N × T`.
    pub coeffs: Array2<f64>,
    pub feasibility_violations: usize,
}

/// One online pass over the columns of `x` with one atom per agent on a
/// fully connected network.
pub fn bicluster_online(x: ArrayView2<'_, f64>, config: &BiclusterConfig, seed: u64) -> Result<BiclusterOutput> {
    if config.n_factors == 0 {
        return invalid("need at least one factor");
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("data matrix has non-finite entries".into()));
    }
    let task = config.task()?;
    let network = Network::fully_connected(config.n_factors)?;
    let shards = initialize_shards(x.nrows(), &vec![1; config.n_factors], &task, seed)?;
    let learner = LearnerConfig {
        step: config.step,
        inference_rounds: config.inference_rounds,
        dict_step: StepSchedule::Constant(config.dict_step),
        time_step: 1,
        seed,
        rtol: config.rtol,
        unchecked_step: false,
        workers: config.workers.clone(),
    };
    let mut violations = 0;
    let out = learn_online_observed(&network, shards, x, &task, &learner, |_, sh| {
        violations += sh.iter().filter(|s| !s.is_feasible(task.constraint)).count();
    })?;
    let mut atoms = Array2::zeros((x.nrows(), config.n_factors));
    for (k, s) in out.shards.iter().enumerate() {
        atoms.column_mut(k).assign(&s.atoms().column(0));
    }
    Ok(BiclusterOutput { atoms, coeffs: out.coefficients, feasibility_violations: violations })
}

/// One sparse rank-one factor `s·w yᵀ`, stored as `w` and `s·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct BatchFactor {
    pub w: Array1<f64>,
    pub s: f64,
    pub y: Array1<f64>,
    /// Set when thresholding removed the whole factor.
    pub degenerate: bool,
    pub iterations: usize,
}

const BATCH_TOL: f64 = 1e-10;
const BATCH_MAX_ITER: usize = 100_000;

/// Leading left singular vector and value of `x`, or `None` for a zero matrix.
fn leading_pair(x: ArrayView2<'_, f64>) -> Option<(Array1<f64>, f64)> {
    let (m, t) = x.dim();
    let gram = x.dot(&x.t());
    let eig = DMatrix::from_fn(m, m, |i, j| gram[[i, j]]).symmetric_eigen();
    let (idx, &lambda) = eig.eigenvalues.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    let sigma = lambda.max(0.0).sqrt();
    if t == 0 || sigma <= f64::EPSILON * (1.0 + x.iter().map(|v| v.abs()).fold(0.0, f64::max)) {
        return None;
    }
    let u = Array1::from_iter(eig.eigenvectors.column(idx).iter().copied());
    Some((u, sigma))
}

fn zero_factor(m: usize, t: usize) -> BatchFactor {
    BatchFactor { w: Array1::zeros(m), s: 0.0, y: Array1::zeros(t), degenerate: true, iterations: 0 }
}

/// Alternating thresholded power iterations with deflation.
pub fn bicluster_batch(x: ArrayView2<'_, f64>, lambda: f64, beta: f64, n_factors: usize) -> Result<Vec<BatchFactor>> {
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("data matrix has non-finite entries".into()));
    }
    if !(lambda >= 0.0 && beta >= 0.0) {
        return invalid("thresholds must be nonnegative");
    }
    let (m, t) = x.dim();
    let mut work = x.to_owned();
    let mut factors = Vec::with_capacity(n_factors);
    for _ in 0..n_factors {
        let Some((mut w, _)) = leading_pair(work.view()) else {
            factors.push(zero_factor(m, t));
            continue;
        };
        let mut y = Array1::zeros(t);
        let mut converged = false;
        let mut iterations = 0;
        let mut dead = false;
        while iterations < BATCH_MAX_ITER {
            iterations += 1;
            let y_tilde = work.t().dot(&w).mapv(|v| shrink(v, lambda));
            let ny = l2_norm(y_tilde.view());
            if ny == 0.0 {
                dead = true;
                break;
            }
            y = y_tilde / ny;
            let w_tilde = work.dot(&y).mapv(|v| shrink(v, beta));
            let nw = l2_norm(w_tilde.view());
            if nw == 0.0 {
                dead = true;
                break;
            }
            let w_new = w_tilde / nw;
            let change = w_new.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            w = w_new;
            if change < BATCH_TOL {
                converged = true;
                break;
            }
        }
        if dead {
            factors.push(BatchFactor { iterations, ..zero_factor(m, t) });
            continue;
        }
        if !converged {
            return Err(Error::NoConvergence(format!(
                "sparse rank-one iteration did not settle within {BATCH_MAX_ITER} iterations"
            )));
        }
        let s = w.dot(&work.dot(&y));
        let y = s * &y;
        for (mut row, &wi) in work.axis_iter_mut(Axis(0)).zip(&w) {
            row.scaled_add(-wi, &y);
        }
        factors.push(BatchFactor { w, s, y, degenerate: false, iterations });
    }
    Ok(factors)
}

/// Best one-to-one matching of the columns of `a` to those of `b` by absolute
/// cosine; returns the matched cosines (per column of `a`) and the matching.
pub fn matched_cosines(a: ArrayView2<'_, f64>, b: ArrayView2<'_, f64>) -> Result<(Vec<f64>, Vec<usize>)> {
    if a.nrows() != b.nrows() || a.ncols() > b.ncols() || b.ncols() > 8 {
        return invalid("matched_cosines needs equal heights and at most 8 candidate columns");
    }
    let cos = |i: usize, j: usize| {
        let (x, y) = (a.column(i), b.column(j));
        let d = l2_norm(x) * l2_norm(y);
        if d == 0.0 {
            0.0
        } else {
            (x.dot(&y) / d).abs()
        }
    };
    let mut best = (f64::NEG_INFINITY, Vec::new());
    let mut perm: Vec<usize> = Vec::with_capacity(a.ncols());
    fn search(
        i: usize,
        n: usize,
        nb: usize,
        perm: &mut Vec<usize>,
        cos: &dyn Fn(usize, usize) -> f64,
        best: &mut (f64, Vec<usize>),
    ) {
        if i == n {
            let total: f64 = perm.iter().enumerate().map(|(i, &j)| cos(i, j)).sum();
            if total > best.0 {
                *best = (total, perm.clone());
            }
            return;
        }
        for j in 0..nb {
            if !perm.contains(&j) {
                perm.push(j);
                search(i + 1, n, nb, perm, cos, best);
                perm.pop();
            }
        }
    }
    search(0, a.ncols(), b.ncols(), &mut perm, &cos, &mut best);
    let cosines = best.1.iter().enumerate().map(|(i, &j)| cos(i, j)).collect();
    Ok((cosines, best.1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedBiclusterSpec {
    /// Patients per group; the last group has no planted factor.
    pub group_sizes: Vec<usize>,
    /// Number of streamed columns (genes).
    pub samples: usize,
    /// Probability that a factor is active on a given gene.
    pub density: f64,
    /// Per-factor coefficient scale; one entry per planted factor.
    pub strengths: Vec<f64>,
    pub noise: f64,
    pub seed: u64,
}

impl PlantedBiclusterSpec {
    /// 56 patients in groups of 17, 20, 13 and 6.
    pub fn standard(seed: u64) -> Self {
        Self {
            group_sizes: vec![17, 20, 13, 6],
            samples: 2000,
            density: 0.2,
            strengths: vec![8.0, 6.0, 4.5],
            noise: 0.1,
            seed,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PlantedBicluster {
    /// Patients × genes.
    pub x: Array2<f64>,
    /// Unit planted atoms, patients × factors.
    pub atoms: Array2<f64>,
    /// Group index per patient.
    pub groups: Vec<usize>,
}

/// Rank-`strengths.len()` data whose atoms live on disjoint patient groups.
pub fn synthetic_bicluster(spec: &PlantedBiclusterSpec) -> Result<PlantedBicluster> {
    let n_factors = spec.strengths.len();
    if spec.group_sizes.len() < n_factors || spec.group_sizes.contains(&0) {
        return invalid("need one nonempty patient group per planted factor");
    }
    if !(spec.density > 0.0 && spec.density <= 1.0) || !(spec.noise >= 0.0) || spec.samples == 0 {
        return invalid("density must lie in (0, 1], noise must be nonnegative, samples positive");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let m: usize = spec.group_sizes.iter().sum();
    let groups: Vec<usize> =
        spec.group_sizes.iter().enumerate().flat_map(|(g, &n)| std::iter::repeat_n(g, n)).collect();
    let mut atoms = Array2::zeros((m, n_factors));
    for k in 0..n_factors {
        for (p, _) in groups.iter().enumerate().filter(|(_, &g)| g == k) {
            atoms[[p, k]] = rng.random_range(0.5..1.0);
        }
        let norm = l2_norm(atoms.column(k));
        atoms.column_mut(k).mapv_inplace(|v| v / norm);
    }
    let mut genes = Array2::zeros((n_factors, spec.samples));
    for k in 0..n_factors {
        for t in 0..spec.samples {
            if rng.random::<f64>() < spec.density {
                let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                genes[[k, t]] = sign * spec.strengths[k] * rng.random_range(0.5..1.5);
            }
        }
    }
    let gauss = Normal::new(0.0, 1.0).expect("unit normal");
    let mut x = atoms.dot(&genes);
    if spec.noise > 0.0 {
        x.mapv_inplace(|v| v + spec.noise * gauss.sample(&mut rng));
    }
    Ok(PlantedBicluster { x, atoms, groups })
}
