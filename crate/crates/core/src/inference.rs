//! Distributed sparse-coding inference through the dual problem.
//!
//! Every agent `k` owns a block of atoms `W_k` and the local dual cost
//!
//! ```text
//! J_k(ν; x) = (1/N)·f*(ν) + h*(W_kᵀν) − [k informed]·νᵀx/|𝒩_I|
//! ```
//!
//! whose sum over the network is the negated dual function. The agents
//! minimize `Σ_k J_k` over the conjugate domain with adapt-then-combine
//! diffusion; the primal coefficients are then recovered locally from the
//! dual estimate.

use std::path::Path;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis, Zip};

use crate::error::{invalid, shape, Error, Result};
use crate::learner::step_size_bound;
use crate::netsim::{sync_round_into, CombinationMatrix, Network, Workers};
use crate::prox::{l2_norm, primal_objective, ConstraintSet, ResidualKind, TaskSpec};

/// One agent's block of atoms, `M × N_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryShard {
    agent_id: usize,
    atoms: Array2<f64>,
}

impl DictionaryShard {
    pub fn new(agent_id: usize, atoms: Array2<f64>) -> Result<Self> {
        if atoms.nrows() == 0 || atoms.ncols() == 0 {
            return shape(format!("shard {agent_id} must hold at least one atom of positive length"));
        }
        if atoms.iter().any(|v| !v.is_finite()) {
            return invalid(format!("shard {agent_id} has non-finite entries"));
        }
        Ok(Self { agent_id, atoms })
    }

    pub fn agent_id(&self) -> usize {
        self.agent_id
    }

    pub fn atoms(&self) -> ArrayView2<'_, f64> {
        self.atoms.view()
    }

    pub(crate) fn atoms_mut(&mut self) -> &mut Array2<f64> {
        &mut self.atoms
    }

    pub fn into_atoms(self) -> Array2<f64> {
        self.atoms
    }

    /// Signal dimension `M`.
    pub fn height(&self) -> usize {
        self.atoms.nrows()
    }

    /// Number of atoms `N_k`.
    pub fn width(&self) -> usize {
        self.atoms.ncols()
    }

    pub fn is_feasible(&self, constraint: ConstraintSet) -> bool {
        constraint.contains(self.atoms.view())
    }
}

/// Checks that shards share a height and returns it.
pub(crate) fn common_height(shards: &[DictionaryShard]) -> Result<usize> {
    let m = shards
        .first()
        .map(|s| s.height())
        .ok_or_else(|| Error::InvalidParameter("at least one dictionary shard is required".into()))?;
    if let Some(s) = shards.iter().find(|s| s.height() != m) {
        return shape(format!("shard {} has height {}, expected {m}", s.agent_id, s.height()));
    }
    Ok(m)
}

/// Maximum number of atoms held by a single agent.
pub fn max_width(shards: &[DictionaryShard]) -> usize {
    shards.iter().map(|s| s.width()).max().unwrap_or(0)
}

/// What agent `k` knows about the network when evaluating its local cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgentRole {
    pub n_agents: usize,
    pub informed_count: usize,
    pub informed: bool,
}

impl AgentRole {
    pub fn of(network: &Network, k: usize) -> Self {
        Self {
            n_agents: network.n_agents(),
            informed_count: network.informed_count(),
            informed: network.is_informed(k),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_agents == 0 || self.informed_count == 0 || self.informed_count > self.n_agents {
            return invalid(format!("inconsistent role: {} agents, {} informed", self.n_agents, self.informed_count));
        }
        Ok(())
    }
}

fn check_local(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    shard: &DictionaryShard,
    task: &TaskSpec,
    role: &AgentRole,
) -> Result<()> {
    role.validate()?;
    if nu.len() != shard.height() || x.len() != shard.height() {
        return shape(format!(
            "dual ({}) and signal ({}) must match shard height {}",
            nu.len(),
            x.len(),
            shard.height()
        ));
    }
    if !task.residual.in_domain(nu) {
        return Err(Error::Domain(format!(
            "‖ν‖∞ = {} exceeds 1 for the {} residual",
            nu.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            task.residual.name()
        )));
    }
    Ok(())
}

/// `J_k(ν; x)`.
pub fn local_dual_cost(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    shard: &DictionaryShard,
    task: &TaskSpec,
    role: &AgentRole,
) -> Result<f64> {
    check_local(nu, x, shard, task, role)?;
    Ok(local_cost_unchecked(nu, x, shard.atoms(), task, role))
}

fn local_cost_unchecked(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    atoms: ArrayView2<'_, f64>,
    task: &TaskSpec,
    role: &AgentRole,
) -> f64 {
    let fstar = 0.5 * task.residual.conjugate_curvature() * nu.dot(&nu);
    let hstar = task.coeff_reg.conjugate(atoms.t().dot(&nu).view());
    let data = if role.informed { nu.dot(&x) / role.informed_count as f64 } else { 0.0 };
    fstar / role.n_agents as f64 + hstar - data
}

/// `∇J_k(ν; x)`.
pub fn local_dual_grad(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    shard: &DictionaryShard,
    task: &TaskSpec,
    role: &AgentRole,
) -> Result<Array1<f64>> {
    check_local(nu, x, shard, task, role)?;
    let mut out = Array1::zeros(nu.len());
    accumulate_grad(nu, x, shard.atoms(), task, role, 1.0, &mut out);
    Ok(out)
}

/// `out += scale · ∇J_k(ν; x)` without allocating.
fn accumulate_grad(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    atoms: ArrayView2<'_, f64>,
    task: &TaskSpec,
    role: &AgentRole,
    scale: f64,
    out: &mut Array1<f64>,
) {
    let c = scale * task.residual.conjugate_curvature() / role.n_agents as f64;
    if role.informed {
        let d = scale / role.informed_count as f64;
        Zip::from(&mut *out).and(&nu).and(&x).for_each(|o, &v, &xv| *o += c * v - d * xv);
    } else {
        Zip::from(&mut *out).and(&nu).for_each(|o, &v| *o += c * v);
    }
    accumulate_hstar_grad(nu, atoms, task, scale, out);
}

/// `out += scale · W ∇h*(Wᵀν)`.
fn accumulate_hstar_grad(
    nu: ArrayView1<'_, f64>,
    atoms: ArrayView2<'_, f64>,
    task: &TaskSpec,
    scale: f64,
    out: &mut Array1<f64>,
) {
    let reg = &task.coeff_reg;
    let inv_delta = 1.0 / reg.delta;
    for col in atoms.axis_iter(Axis(1)) {
        let z = col.dot(&nu);
        let t = if reg.nonneg { crate::prox::shrink_plus(z, reg.gamma) } else { crate::prox::shrink(z, reg.gamma) };
        if t != 0.0 {
            let a = scale * t * inv_delta;
            match (out.as_slice_mut(), col.as_slice()) {
                (Some(o), Some(c)) => o.iter_mut().zip(c).for_each(|(o, &w)| *o += a * w),
                _ => Zip::from(&mut *out).and(&col).for_each(|o, &w| *o += a * w),
            }
        }
    }
}

/// Per-agent dual iterates `ν_{k,i}` and adapt-step intermediates `ψ_{k,i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualState {
    pub iterates: Vec<Array1<f64>>,
    pub intermediates: Vec<Array1<f64>>,
    pub round: usize,
    /// Set when the relative-change early stop fired.
    pub converged: bool,
}

impl DualState {
    fn zeros(n: usize, m: usize) -> Self {
        Self {
            iterates: vec![Array1::zeros(m); n],
            intermediates: vec![Array1::zeros(m); n],
            round: 0,
            converged: false,
        }
    }

    /// Largest pairwise distance between agents' dual estimates.
    pub fn disagreement(&self) -> f64 {
        let mut worst = 0.0f64;
        for (k, a) in self.iterates.iter().enumerate() {
            for b in &self.iterates[k + 1..] {
                let d: f64 = a.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum();
                worst = worst.max(d.sqrt());
            }
        }
        worst
    }
}

#[derive(Debug, Clone)]
pub struct DiffusionOptions {
    /// Adaptation step-size `µ`.
    pub step: f64,
    /// Round budget.
    pub rounds: usize,
    /// Stop when `max_k ‖ν_{k,i} − ν_{k,i−1}‖ / max(1, ‖ν_{k,i}‖) < rtol`.
    pub rtol: Option<f64>,
    /// Skip the step-size bound check.
    pub unchecked_step: bool,
    pub workers: Workers,
}

impl DiffusionOptions {
    pub const DEFAULT_RTOL: f64 = 1e-10;

    pub fn new(step: f64, rounds: usize) -> Self {
        Self { step, rounds, rtol: Some(Self::DEFAULT_RTOL), unchecked_step: false, workers: Workers::Sequential }
    }

    /// Runs exactly `rounds` rounds.
    pub fn fixed_budget(step: f64, rounds: usize) -> Self {
        Self { rtol: None, ..Self::new(step, rounds) }
    }

    pub fn with_rtol(mut self, rtol: Option<f64>) -> Self {
        self.rtol = rtol;
        self
    }

    pub fn unchecked(mut self) -> Self {
        self.unchecked_step = true;
        self
    }

    pub fn with_workers(mut self, workers: Workers) -> Self {
        self.workers = workers;
        self
    }
}

fn validate_problem(network: &Network, shards: &[DictionaryShard], x: ArrayView1<'_, f64>) -> Result<usize> {
    if shards.len() != network.n_agents() {
        return shape(format!("{} shards for {} agents", shards.len(), network.n_agents()));
    }
    let m = common_height(shards)?;
    if x.len() != m {
        return shape(format!("signal has length {}, shards have height {m}", x.len()));
    }
    Ok(m)
}

/// Rejects `µ ≤ 0` and, unless `unchecked`, any `µ` at or above the bound.
pub fn check_step(step: f64, task: &TaskSpec, n_max: usize, unchecked: bool) -> Result<()> {
    if !(step > 0.0 && step.is_finite()) {
        return invalid(format!("step-size must be positive, got {step}"));
    }
    if !unchecked {
        let bound = step_size_bound(task, n_max.max(1));
        if step >= bound {
            return invalid(format!("step-size {step} violates the convergence bound {bound:.6} (n_max = {n_max})"));
        }
    }
    Ok(())
}

/// Projected adapt-then-combine diffusion from `ν_{k,0} = 0`.
pub fn diffusion_solve(
    network: &Network,
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    opts: &DiffusionOptions,
) -> Result<DualState> {
    diffusion_solve_observed(network, shards, x, task, opts, |_| {})
}

/// [`diffusion_solve`] calling `observer` after every round.
pub fn diffusion_solve_observed<F>(
    network: &Network,
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    opts: &DiffusionOptions,
    mut observer: F,
) -> Result<DualState>
where
    F: FnMut(&DualState),
{
    let m = validate_problem(network, shards, x)?;
    check_step(opts.step, task, max_width(shards), opts.unchecked_step)?;
    let n = network.n_agents();
    let combine = network.combination();
    let roles: Vec<AgentRole> = (0..n).map(|k| AgentRole::of(network, k)).collect();
    let mu = opts.step;

    let x = x.to_owned();
    let mut state = DualState::zeros(n, m);
    let mut next = vec![Array1::zeros(m); n];
    for round in 1..=opts.rounds {
        {
            let iterates = &state.iterates;
            let x = x.view();
            opts.workers.for_each_mut(&mut state.intermediates, |k, psi| {
                adapt_into(iterates[k].view(), x, shards[k].atoms(), task, &roles[k], mu, psi);
            });
        }
        sync_round_into(&state.intermediates, combine, &mut next)?;
        let change = project_and_change(&task.residual, &state.iterates, &mut next);
        std::mem::swap(&mut state.iterates, &mut next);
        state.round = round;
        observer(&state);
        if let Some(rtol) = opts.rtol {
            if change < rtol {
                state.converged = true;
                break;
            }
        }
    }
    Ok(state)
}

/// `ψ = ν − µ ∇J_k(ν)` written into `psi`; `nu` and `x` are contiguous.
fn adapt_into(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    atoms: ArrayView2<'_, f64>,
    task: &TaskSpec,
    role: &AgentRole,
    mu: f64,
    psi: &mut Array1<f64>,
) {
    let keep = 1.0 - mu * task.residual.conjugate_curvature() / role.n_agents as f64;
    let d = if role.informed { mu / role.informed_count as f64 } else { 0.0 };
    let (nu_s, x_s) = (nu.as_slice().expect("owned iterate"), x.as_slice().expect("owned signal"));
    let out = psi.as_slice_mut().expect("owned intermediate");
    for ((o, &v), &xv) in out.iter_mut().zip(nu_s).zip(x_s) {
        *o = keep * v + d * xv;
    }
    accumulate_hstar_grad(nu, atoms, task, -mu, psi);
}

/// Projects every new iterate onto the residual's dual domain and returns
/// `max_k ‖cur_k − prev_k‖ / max(1, ‖cur_k‖)`.
fn project_and_change(residual: &ResidualKind, prev: &[Array1<f64>], cur: &mut [Array1<f64>]) -> f64 {
    let clamp = residual.has_bounded_domain();
    let mut worst: f64 = 0.0;
    for (p, c) in prev.iter().zip(cur.iter_mut()) {
        let (ps, cs) = (p.as_slice().expect("owned iterate"), c.as_slice_mut().expect("owned iterate"));
        let (mut diff, mut norm) = (0.0, 0.0);
        for (&a, b) in ps.iter().zip(cs.iter_mut()) {
            if clamp {
                *b = b.clamp(-1.0, 1.0);
            }
            diff += (a - *b) * (a - *b);
            norm += *b * *b;
        }
        worst = worst.max(diff.sqrt() / norm.sqrt().max(1.0));
    }
    worst
}

/// `y_k = argmax_y (W_kᵀν)ᵀy − h(y)`.
pub fn recover_coefficients(shard: &DictionaryShard, nu: ArrayView1<'_, f64>, task: &TaskSpec) -> Result<Array1<f64>> {
    if nu.len() != shard.height() {
        return shape(format!("dual has length {}, shard height {}", nu.len(), shard.height()));
    }
    Ok(task.coeff_reg.argmax(shard.atoms().t().dot(&nu).view()))
}

/// `z = x − ν`, available only for the quadratic residual.
pub fn recover_signal(x: ArrayView1<'_, f64>, nu: ArrayView1<'_, f64>, task: &TaskSpec) -> Result<Array1<f64>> {
    match task.residual {
        ResidualKind::Quadratic => {
            if x.len() != nu.len() {
                return shape(format!("signal {} vs dual {}", x.len(), nu.len()));
            }
            Ok(&x - &nu)
        }
        ResidualKind::Huber { .. } => Err(Error::UnsupportedRecovery("huber")),
    }
}

/// Scalar diffusion for `min_g Σ_k ½(J_k + g)²` from `g_k(0) = 0`.
///
/// With a doubly stochastic matrix the network average of the outputs is
/// `−mean(J)` after every round; individual agents reach it exactly only
/// when the matrix is uniform; otherwise they settle within `O(µ_g)` of it.
pub fn dual_value_consensus(
    combine: &CombinationMatrix,
    local_costs: &[f64],
    step: f64,
    rounds: usize,
) -> Result<Vec<f64>> {
    if !(step > 0.0 && step <= 1.0) {
        return invalid(format!("consensus step must lie in (0, 1], got {step}"));
    }
    let n = combine.n_agents();
    if local_costs.len() != n {
        return shape(format!("{} local costs for {n} agents", local_costs.len()));
    }
    let mut g = vec![0.0; n];
    let mut phi = vec![0.0; n];
    for _ in 0..rounds {
        for k in 0..n {
            phi[k] = g[k] - step * (local_costs[k] + g[k]);
        }
        for (k, gk) in g.iter_mut().enumerate() {
            *gk = combine.combine_scalar(k, &phi);
        }
    }
    Ok(g)
}

/// Local dual costs `J_k(ν_k; x)` with each agent evaluated at its own iterate.
pub fn local_costs_at(
    network: &Network,
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    iterates: &[Array1<f64>],
) -> Result<Vec<f64>> {
    validate_problem(network, shards, x)?;
    if iterates.len() != shards.len() {
        return shape(format!("{} iterates for {} agents", iterates.len(), shards.len()));
    }
    (0..shards.len())
        .map(|k| local_dual_cost(iterates[k].view(), x, &shards[k], task, &AgentRole::of(network, k)))
        .collect()
}

/// Result of a full distributed inference pass for one sample.
#[derive(Debug, Clone)]
pub struct InferenceOutcome {
    /// Per-agent dual estimates.
    pub dual: Vec<Array1<f64>>,
    /// Per-agent coefficients recovered from each agent's own estimate.
    pub coeffs: Vec<Array1<f64>>,
    /// `x − ν` from the first informed agent (quadratic residual only).
    pub reconstruction: Option<Array1<f64>>,
    /// `−Σ_k J_k(ν_k; x)`.
    pub dual_cost: f64,
    pub rounds_used: usize,
}

/// Diffusion inference followed by local primal recovery.
pub fn infer(
    network: &Network,
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    opts: &DiffusionOptions,
) -> Result<InferenceOutcome> {
    let state = diffusion_solve(network, shards, x, task, opts)?;
    outcome_from_state(network, shards, x, task, state)
}

pub(crate) fn outcome_from_state(
    network: &Network,
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    state: DualState,
) -> Result<InferenceOutcome> {
    let coeffs = shards
        .iter()
        .zip(&state.iterates)
        .map(|(s, nu)| recover_coefficients(s, nu.view(), task))
        .collect::<Result<Vec<_>>>()?;
    let costs = local_costs_at(network, shards, x, task, &state.iterates)?;
    let reporter = (0..network.n_agents()).find(|&k| network.is_informed(k)).unwrap_or(0);
    let reconstruction = match task.residual {
        ResidualKind::Quadratic => Some(recover_signal(x, state.iterates[reporter].view(), task)?),
        ResidualKind::Huber { .. } => None,
    };
    Ok(InferenceOutcome {
        dual_cost: -costs.iter().sum::<f64>(),
        coeffs,
        reconstruction,
        rounds_used: state.round,
        dual: state.iterates,
    })
}

/// Centralized dual objective `f*(ν) − νᵀx + Σ_k h*(W_kᵀν)` (that is `−g(ν; x)`).
pub fn dual_objective(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    shards: &[DictionaryShard],
    task: &TaskSpec,
) -> f64 {
    let fstar = 0.5 * task.residual.conjugate_curvature() * nu.dot(&nu);
    let h: f64 = shards.iter().map(|s| task.coeff_reg.conjugate(s.atoms().t().dot(&nu).view())).sum();
    fstar - nu.dot(&x) + h
}

fn dual_objective_grad(
    nu: ArrayView1<'_, f64>,
    x: ArrayView1<'_, f64>,
    shards: &[DictionaryShard],
    task: &TaskSpec,
) -> Array1<f64> {
    let c = task.residual.conjugate_curvature();
    let mut g = Zip::from(&nu).and(&x).map_collect(|&v, &xv| c * v - xv);
    for s in shards {
        accumulate_hstar_grad(nu, s.atoms(), task, 1.0, &mut g);
    }
    g
}

/// Reference solution of the inference problem computed centrally.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub dual: Array1<f64>,
    pub coeffs: Vec<Array1<f64>>,
    /// Primal objective at the recovered coefficients.
    pub primal: f64,
    /// Dual function value `g(ν*)`.
    pub dual_value: f64,
    pub iterations: usize,
    /// Dual objective `−g` after every accepted step (starting at `ν = 0`).
    pub objective_trace: Vec<f64>,
}

pub const ORACLE_MAX_ITER: usize = 1_000_000;

/// Projected gradient descent with backtracking on the centralized dual.
pub fn centralized_inference_oracle(
    shards: &[DictionaryShard],
    x: ArrayView1<'_, f64>,
    task: &TaskSpec,
    rtol: f64,
) -> Result<OracleSolution> {
    let m = common_height(shards)?;
    if x.len() != m {
        return shape(format!("signal has length {}, shards have height {m}", x.len()));
    }
    if !(rtol > 0.0) {
        return invalid(format!("oracle tolerance must be positive, got {rtol}"));
    }
    let curvature = task.residual.conjugate_curvature();
    let frob: f64 = shards.iter().map(|s| s.atoms().iter().map(|v| v * v).sum::<f64>()).sum();
    let lipschitz = curvature + frob / task.coeff_reg.delta;
    let min_step = 1.0 / lipschitz;

    let mut nu = Array1::<f64>::zeros(m);
    let mut obj = dual_objective(nu.view(), x, shards, task);
    let mut trace = vec![obj];
    let mut t = 2.0 * min_step;
    for iter in 1..=ORACLE_MAX_ITER {
        let grad = dual_objective_grad(nu.view(), x, shards, task);
        let (cand, cand_obj, diff) = loop {
            let mut cand = &nu - &(t * &grad);
            task.residual.project_domain_inplace(&mut cand);
            let d = &cand - &nu;
            let cand_obj = dual_objective(cand.view(), x, shards, task);
            let model = obj + grad.dot(&d) + d.dot(&d) / (2.0 * t);
            if cand_obj <= model || t <= min_step {
                break (cand, cand_obj, d);
            }
            t = (0.5 * t).max(min_step);
        };
        let rel = l2_norm(diff.view()) / l2_norm(cand.view()).max(1.0);
        nu = cand;
        obj = cand_obj;
        trace.push(obj);
        if rel < rtol {
            let coeffs = shards.iter().map(|s| recover_coefficients(s, nu.view(), task)).collect::<Result<Vec<_>>>()?;
            let primal = primal_objective(x, shards, &coeffs, task)?;
            return Ok(OracleSolution {
                dual_value: -obj,
                dual: nu,
                coeffs,
                primal,
                iterations: iter,
                objective_trace: trace,
            });
        }
        t *= 1.5;
    }
    Err(Error::NoConvergence(format!(
        "centralized dual descent did not reach rtol {rtol} in {ORACLE_MAX_ITER} iterations"
    )))
}

/// `10·log10(‖reference‖² / ‖estimate − reference‖²)`; `+∞` on exact match.
pub fn snr_db(reference: ArrayView1<'_, f64>, estimate: ArrayView1<'_, f64>) -> f64 {
    let signal = reference.dot(&reference);
    let err: f64 = reference.iter().zip(estimate).map(|(r, e)| (e - r) * (e - r)).sum();
    10.0 * (signal / err).log10()
}

/// One row of a convergence trace.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundTrace {
    pub round: usize,
    pub snr_db: Vec<f64>,
    pub disagreement: f64,
}

impl RoundTrace {
    pub fn capture(state: &DualState, reference: ArrayView1<'_, f64>) -> Self {
        Self {
            round: state.round,
            snr_db: state.iterates.iter().map(|nu| snr_db(reference, nu.view())).collect(),
            disagreement: state.disagreement(),
        }
    }

    pub fn median_snr_db(&self) -> f64 {
        median(&self.snr_db)
    }
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        f64::NAN
    } else if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// CSV columns: `round, snr_agent_0 … snr_agent_{N-1}, disagreement`.
pub fn write_trace_csv(path: &Path, trace: &[RoundTrace]) -> Result<()> {
    let n = trace.first().map_or(0, |t| t.snr_db.len());
    let mut header = vec!["round".to_string()];
    header.extend((0..n).map(|k| format!("snr_db_agent_{k}")));
    header.push("disagreement".into());
    let rows = trace.iter().map(|t| {
        let mut rec = vec![t.round.to_string()];
        rec.extend(t.snr_db.iter().map(|&v| crate::io::fmt_f64(v)));
        rec.push(crate::io::fmt_f64(t.disagreement));
        rec
    });
    crate::io::write_csv(path, &header, rows)
}
