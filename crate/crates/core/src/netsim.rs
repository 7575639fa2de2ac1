//! Undirected agent graphs, combination matrices and the synchronous round.
//!
//! Neighborhoods always include the agent itself. A round reads only the
//! pre-round snapshot of every agent's state, and each agent sums its
//! neighbors in ascending id order, so results do not depend on how many
//! worker threads evaluate the round.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use ndarray::{Array1, Array2, Zip};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, shape, Error, Result};

/// Upper bound on resampling attempts before a topology draw gives up.
pub const MAX_GRAPH_ATTEMPTS: usize = 10_000;

/// Symmetric adjacency with mandatory self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    /// Builds a graph from undirected edges; self-loops are added.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return invalid("a network needs at least one agent");
        }
        let mut sets: Vec<BTreeSet<usize>> = (0..n).map(|k| BTreeSet::from([k])).collect();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for {n} agents"));
            }
            sets[u].insert(v);
            sets[v].insert(u);
        }
        Ok(Self { neighbors: sets.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("a network needs at least one agent");
        }
        Ok(Self { neighbors: (0..n).map(|_| (0..n).collect()).collect() })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn n_agents(&self) -> usize {
        self.neighbors.len()
    }

    /// Neighborhood of `k` (including `k`), ascending.
    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.neighbors[k]
    }

    /// `|𝒩_k|`, counting the self-loop.
    pub fn degree(&self, k: usize) -> usize {
        self.neighbors[k].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nb) in self.neighbors.iter().enumerate() {
            out.extend(nb.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n_agents();
        self.neighbors.iter().all(|nb| nb.len() == n)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n_agents();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &v in &self.neighbors[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == n
    }

    /// Adds `count` agents whose edges (to every other agent, old or new)
    /// are drawn with probability `p`, resampling until connected. Existing
    /// edges are kept.
    pub fn grow<R: Rng>(&self, count: usize, p: f64, rng: &mut R) -> Result<Self> {
        check_probability(p)?;
        let old = self.n_agents();
        let n = old + count;
        let base = self.edges();
        for _ in 0..MAX_GRAPH_ATTEMPTS {
            let mut edges = base.clone();
            for v in old..n {
                for u in 0..v {
                    if rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            let adj = Self::from_edges(n, &edges)?;
            if adj.is_connected() {
                return Ok(adj);
            }
        }
        Err(Error::NoConvergence(format!(
            "could not grow a connected graph from {old} to {n} agents at p={p} in {MAX_GRAPH_ATTEMPTS} attempts"
        )))
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        invalid(format!("edge probability must lie in (0, 1], got {p}"))
    }
}

/// Erdős–Rényi draw conditioned on connectivity (by resampling).
pub fn random_connected_graph(n: usize, p: f64, seed: u64) -> Result<Adjacency> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected_graph_with(n, p, &mut rng)
}

pub fn random_connected_graph_with<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Adjacency> {
    if n == 0 {
        return invalid("a network needs at least one agent");
    }
    check_probability(p)?;
    for _ in 0..MAX_GRAPH_ATTEMPTS {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        let adj = Adjacency::from_edges(n, &edges)?;
        if adj.is_connected() {
            return Ok(adj);
        }
    }
    Err(Error::NoConvergence(format!(
        "no connected graph with {n} agents at p={p} after {MAX_GRAPH_ATTEMPTS} attempts"
    )))
}

/// How combination weights are derived from the topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombinationRule {
    Metropolis,
    Uniform,
}

/// `A = [a_ℓk]`: agent `k` weights the state of `ℓ` by `a_ℓk`.
#[derive(Debug, Clone, PartialEq)]
pub struct CombinationMatrix {
    entries: Array2<f64>,
    /// Nonzero rows of each column, ascending.
    support: Vec<Vec<usize>>,
    uniform: bool,
}

impl CombinationMatrix {
    /// Wraps an arbitrary nonnegative square matrix.
    pub fn from_entries(entries: Array2<f64>) -> Result<Self> {
        let (r, c) = entries.dim();
        if r != c || r == 0 {
            return shape(format!("combination matrix must be square and nonempty, got {r}x{c}"));
        }
        if entries.iter().any(|&a| !(a >= 0.0 && a.is_finite())) {
            return invalid("combination weights must be finite and nonnegative");
        }
        let support = (0..c).map(|k| (0..r).filter(|&l| entries[[l, k]] > 0.0).collect()).collect();
        Ok(Self { entries, support, uniform: false })
    }

    pub fn metropolis(adj: &Adjacency) -> Self {
        let n = adj.n_agents();
        let mut a = Array2::zeros((n, n));
        for k in 0..n {
            let mut off = 0.0;
            for &l in adj.neighbors(k) {
                if l != k {
                    let w = 1.0 / adj.degree(k).max(adj.degree(l)) as f64;
                    a[[l, k]] = w;
                    off += w;
                }
            }
            a[[k, k]] = 1.0 - off;
        }
        Self::from_entries(a).expect("metropolis weights are valid")
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("a network needs at least one agent");
        }
        let a = Array2::from_elem((n, n), 1.0 / n as f64);
        let mut m = Self::from_entries(a)?;
        m.uniform = true;
        Ok(m)
    }

    pub fn from_rule(rule: CombinationRule, adj: &Adjacency) -> Result<Self> {
        match rule {
            CombinationRule::Metropolis => Ok(Self::metropolis(adj)),
            CombinationRule::Uniform => Self::uniform(adj.n_agents()),
        }
    }

    pub fn n_agents(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    /// Agents `ℓ` with `a_ℓk > 0`, ascending.
    pub fn support(&self, k: usize) -> &[usize] {
        &self.support[k]
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Largest deviation of any row or column sum from one.
    pub fn stochasticity_error(&self) -> f64 {
        let rows = self.entries.rows().into_iter().map(|r| (r.sum() - 1.0).abs());
        let cols = self.entries.columns().into_iter().map(|c| (c.sum() - 1.0).abs());
        rows.chain(cols).fold(0.0, f64::max)
    }

    pub fn is_doubly_stochastic(&self, tol: f64) -> bool {
        self.stochasticity_error() <= tol
    }

    /// Support equals the adjacency (self-loops included).
    pub fn matches(&self, adj: &Adjacency) -> bool {
        self.n_agents() == adj.n_agents() && (0..adj.n_agents()).all(|k| self.support(k) == adj.neighbors(k))
    }

    /// `Σ_ℓ a_ℓk s_ℓ` written into `out`, summing in ascending `ℓ`.
    pub(crate) fn combine_for(&self, k: usize, states: &[Array1<f64>], out: &mut Array1<f64>) {
        out.fill(0.0);
        for &l in &self.support[k] {
            let a = self.entries[[l, k]];
            Zip::from(&mut *out).and(&states[l]).for_each(|o, &s| *o += a * s);
        }
    }

    /// Scalar version of [`Self::combine_for`].
    pub(crate) fn combine_scalar(&self, k: usize, states: &[f64]) -> f64 {
        self.support[k].iter().map(|&l| self.entries[[l, k]] * states[l]).sum()
    }
}

/// Topology, informed set and combination weights.
#[derive(Debug, Clone)]
pub struct Network {
    adjacency: Adjacency,
    informed: Vec<bool>,
    combine: CombinationMatrix,
}

impl Network {
    pub fn new(adjacency: Adjacency, informed: &BTreeSet<usize>, combine: CombinationMatrix) -> Result<Self> {
        let n = adjacency.n_agents();
        if !adjacency.is_connected() {
            return invalid("network graph must be connected");
        }
        if informed.is_empty() {
            return invalid("at least one agent must observe the data");
        }
        if let Some(&k) = informed.iter().find(|&&k| k >= n) {
            return invalid(format!("informed agent {k} out of range for {n} agents"));
        }
        if !combine.matches(&adjacency) {
            return invalid("combination weights must be positive exactly on neighborhoods");
        }
        if !combine.is_doubly_stochastic(1e-12) {
            return invalid(format!(
                "combination matrix is not doubly stochastic (error {:.3e})",
                combine.stochasticity_error()
            ));
        }
        let mut flags = vec![false; n];
        for &k in informed {
            flags[k] = true;
        }
        Ok(Self { adjacency, informed: flags, combine })
    }

    /// All agents observe the data.
    pub fn fully_informed(adjacency: Adjacency, rule: CombinationRule) -> Result<Self> {
        let combine = CombinationMatrix::from_rule(rule, &adjacency)?;
        let all: BTreeSet<usize> = (0..adjacency.n_agents()).collect();
        Self::new(adjacency, &all, combine)
    }

    /// Complete graph with `A = 11ᵀ/N`, everyone informed.
    pub fn fully_connected(n: usize) -> Result<Self> {
        Self::fully_informed(Adjacency::complete(n)?, CombinationRule::Uniform)
    }

    pub fn n_agents(&self) -> usize {
        self.adjacency.n_agents()
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adjacency
    }

    pub fn combination(&self) -> &CombinationMatrix {
        &self.combine
    }

    pub fn is_informed(&self, k: usize) -> bool {
        self.informed[k]
    }

    /// `|𝒩_I|`
    pub fn informed_count(&self) -> usize {
        self.informed.iter().filter(|&&b| b).count()
    }

    pub fn informed_agents(&self) -> BTreeSet<usize> {
        (0..self.n_agents()).filter(|&k| self.informed[k]).collect()
    }

    /// Adds `count` agents to the topology (edge probability `p`) and
    /// recomputes the weights with `rule`. New agents are informed when every
    /// existing agent is.
    pub fn grow<R: Rng>(&self, count: usize, p: f64, rule: CombinationRule, rng: &mut R) -> Result<Self> {
        let adjacency = match rule {
            CombinationRule::Uniform => Adjacency::complete(self.n_agents() + count)?,
            CombinationRule::Metropolis => self.adjacency.grow(count, p, rng)?,
        };
        let all_informed = self.informed.iter().all(|&b| b);
        let mut informed = self.informed_agents();
        if all_informed {
            informed.extend(self.n_agents()..adjacency.n_agents());
        }
        let combine = CombinationMatrix::from_rule(rule, &adjacency)?;
        Self::new(adjacency, &informed, combine)
    }
}

/// Worker pool for per-agent work inside a round.
#[derive(Debug, Clone, Default)]
pub enum Workers {
    #[default]
    Sequential,
    Pool(Arc<rayon::ThreadPool>),
}

impl Workers {
    /// `0` means sequential.
    pub fn with_threads(n: usize) -> Result<Self> {
        if n == 0 {
            return Ok(Workers::Sequential);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        Ok(Workers::Pool(Arc::new(pool)))
    }

    /// Reads `DIFFUDICT_THREADS`; unset means sequential.
    pub fn from_env() -> Result<Self> {
        match std::env::var("DIFFUDICT_THREADS") {
            Ok(v) => {
                let n = v
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("DIFFUDICT_THREADS must be an integer, got {v:?}")))?;
                Self::with_threads(n)
            }
            Err(_) => Ok(Workers::Sequential),
        }
    }

    /// Evaluates `f` on every element of `items` in place.
    pub(crate) fn for_each_mut<T, F>(&self, items: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        match self {
            Workers::Sequential => items.iter_mut().enumerate().for_each(|(k, t)| f(k, t)),
            Workers::Pool(pool) => pool.install(|| items.par_iter_mut().enumerate().for_each(|(k, t)| f(k, t))),
        }
    }
}

/// One synchronous combination round over per-agent states.
pub fn sync_round(states: &[Array1<f64>], combine: &CombinationMatrix) -> Result<Vec<Array1<f64>>> {
    let mut out = states.to_vec();
    sync_round_into(states, combine, &mut out)?;
    Ok(out)
}

pub(crate) fn check_states(states: &[Array1<f64>], n: usize) -> Result<usize> {
    if states.len() != n {
        return shape(format!("{} states for {n} agents", states.len()));
    }
    let dim = states.first().map_or(0, |s| s.len());
    if states.iter().any(|s| s.len() != dim) {
        return shape("agent states have unequal lengths");
    }
    Ok(dim)
}

/// Combines `states` into `out` (which must not alias `states`).
pub(crate) fn sync_round_into(
    states: &[Array1<f64>],
    combine: &CombinationMatrix,
    out: &mut [Array1<f64>],
) -> Result<()> {
    let n = combine.n_agents();
    let dim = check_states(states, n)?;
    if out.len() != n || out.iter().any(|o| o.len() != dim) {
        return shape("output buffer does not match the agent states");
    }
    if combine.is_uniform() {
        // every column is identical, so one ascending sum serves all agents
        let (first, rest) = out.split_first_mut().expect("n >= 1");
        combine.combine_for(0, states, first);
        for o in rest {
            o.assign(first);
        }
        return Ok(());
    }
    // Stacking the states and mixing with one matrix product is far cheaper
    // than per-neighbour updates once agents have more than a few neighbours.
    let mut stacked = Array2::zeros((n, dim));
    for (mut row, s) in stacked.rows_mut().into_iter().zip(states) {
        row.assign(s);
    }
    let mixed = combine.entries.t().dot(&stacked);
    for (o, row) in out.iter_mut().zip(mixed.rows()) {
        o.assign(&row);
    }
    Ok(())
}

/// Writes `u v` lines (0-indexed, `u < v`) preceded by a `# agents N` comment.
pub fn write_edge_list(path: &Path, adj: &Adjacency) -> Result<()> {
    let mut s = format!("# agents {}\n", adj.n_agents());
    for (u, v) in adj.edges() {
        writeln!(s, "{u} {v}").expect("string write");
    }
    fs::write(path, s)?;
    Ok(())
}

/// Reads an edge list. The agent count comes from a `# agents N` comment
/// when present, otherwise from the largest id seen.
pub fn read_edge_list(path: &Path) -> Result<Adjacency> {
    let text = fs::read_to_string(path)?;
    let parse_err = |line: usize, msg: String| Error::Parse { path: path.to_path_buf(), line, msg };
    let mut declared = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let mut it = comment.split_whitespace();
            if it.next() == Some("agents") {
                let n = it
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| parse_err(i + 1, "malformed agent count".into()))?;
                declared = Some(n);
            }
            continue;
        }
        let ids: Vec<_> = line.split_whitespace().map(str::parse::<usize>).collect();
        match ids.as_slice() {
            [Ok(u), Ok(v)] => edges.push((*u, *v)),
            _ => return Err(parse_err(i + 1, format!("expected `u v`, got {line:?}"))),
        }
    }
    let inferred = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = declared.unwrap_or(inferred);
    if n == 0 {
        return Err(parse_err(0, "edge list defines no agents".into()));
    }
    Adjacency::from_edges(n, &edges)
}

/// Writes the combination matrix as CSV with a header `from,a_0,...`.
pub fn write_combination_csv(path: &Path, combine: &CombinationMatrix) -> Result<()> {
    let n = combine.n_agents();
    let mut w = csv::Writer::from_path(path)?;
    let mut header = vec!["from".to_string()];
    header.extend((0..n).map(|k| format!("to_{k}")));
    w.write_record(&header)?;
    for l in 0..n {
        let mut rec = vec![l.to_string()];
        rec.extend((0..n).map(|k| crate::io::fmt_f64(combine.entries()[[l, k]])));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::array;

    #[test]
    fn trivial_graphs() {
        let g = random_connected_graph(1, 0.3, 1).unwrap();
        assert_eq!(g.n_agents(), 1);
        assert_eq!(g.neighbors(0), &[0]);
        let g = random_connected_graph(2, 1.0, 1).unwrap();
        assert!(g.is_complete());
        assert!(random_connected_graph(3, 0.0, 1).is_err());
        assert!(random_connected_graph(3, 1.5, 1).is_err());
    }

    #[test]
    fn seeded_graph_is_reproducible() {
        let a = random_connected_graph(10, 0.5, 7).unwrap();
        let b = random_connected_graph(10, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.is_connected());
        for k in 0..10 {
            assert!(a.has_edge(k, k));
            for &l in a.neighbors(k) {
                assert!(a.has_edge(l, k));
            }
        }
    }

    #[test]
    fn metropolis_on_path() {
        let a = CombinationMatrix::metropolis(&Adjacency::path(3).unwrap());
        let third = 1.0 / 3.0;
        let expected = array![[2.0 / 3.0, third, 0.0], [third, third, third], [0.0, third, 2.0 / 3.0]];
        assert_abs_diff_eq!(*a.entries(), expected, epsilon = 1e-15);
        assert!(a.is_doubly_stochastic(1e-12));
    }

    #[test]
    fn metropolis_small_cases() {
        let a = CombinationMatrix::metropolis(&Adjacency::complete(2).unwrap());
        assert_eq!(*a.entries(), array![[0.5, 0.5], [0.5, 0.5]]);
        let a = CombinationMatrix::metropolis(&Adjacency::complete(1).unwrap());
        assert_eq!(*a.entries(), array![[1.0]]);
    }

    #[test]
    fn uniform_matrix() {
        let a = CombinationMatrix::uniform(4).unwrap();
        assert!(a.entries().iter().all(|&v| v == 0.25));
        assert_eq!(a.stochasticity_error(), 0.0);
        assert_eq!(*CombinationMatrix::uniform(1).unwrap().entries(), array![[1.0]]);
    }

    #[test]
    fn sync_round_examples() {
        let a = CombinationMatrix::metropolis(&Adjacency::path(3).unwrap());
        let out = sync_round(&[array![0.0], array![3.0], array![0.0]], &a).unwrap();
        for o in &out {
            assert_abs_diff_eq!(o[0], 1.0, epsilon = 1e-15);
        }

        let s = array![1.5, -2.0];
        let out = sync_round(&[s.clone(), s.clone(), s.clone()], &a).unwrap();
        for o in &out {
            assert_abs_diff_eq!(*o, s, epsilon = 1e-15);
        }

        let u = CombinationMatrix::uniform(4).unwrap();
        let states = [array![1.0], array![2.0], array![3.0], array![6.0]];
        for o in sync_round(&states, &u).unwrap() {
            assert_eq!(o[0], 3.0);
        }

        assert!(sync_round(&[array![1.0]], &a).is_err());
        assert!(sync_round(&[array![1.0], array![1.0, 2.0], array![1.0]], &a).is_err());
    }

    #[test]
    fn network_validation() {
        let adj = Adjacency::from_edges(3, &[(0, 1)]).unwrap();
        assert!(Network::fully_informed(adj, CombinationRule::Metropolis).is_err());
        let adj = Adjacency::path(3).unwrap();
        let uniform = CombinationMatrix::uniform(3).unwrap();
        assert!(Network::new(adj.clone(), &BTreeSet::from([0]), uniform).is_err());
        let m = CombinationMatrix::metropolis(&adj);
        assert!(Network::new(adj.clone(), &BTreeSet::new(), m.clone()).is_err());
        let net = Network::new(adj, &BTreeSet::from([2]), m).unwrap();
        assert_eq!(net.informed_count(), 1);
        assert!(net.is_informed(2) && !net.is_informed(0));
    }

    #[test]
    fn growth_keeps_edges_and_stochasticity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let net =
            Network::fully_informed(random_connected_graph(5, 0.5, 11).unwrap(), CombinationRule::Metropolis).unwrap();
        let grown = net.grow(4, 0.5, CombinationRule::Metropolis, &mut rng).unwrap();
        assert_eq!(grown.n_agents(), 9);
        assert_eq!(grown.informed_count(), 9);
        for (u, v) in net.adjacency().edges() {
            assert!(grown.adjacency().has_edge(u, v));
        }
        assert!(grown.combination().is_doubly_stochastic(1e-12));
    }

    #[test]
    fn edge_list_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = random_connected_graph(8, 0.4, 5).unwrap();
        write_edge_list(&path, &g).unwrap();
        assert_eq!(read_edge_list(&path).unwrap(), g);

        let single = Adjacency::complete(1).unwrap();
        write_edge_list(&path, &single).unwrap();
        assert_eq!(read_edge_list(&path).unwrap(), single);

        fs::write(&path, "0 1\n1 x\n").unwrap();
        match read_edge_list(&path) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn stacked_round_matches_neighbour_sums() {
        let adj = random_connected_graph(12, 0.3, 2).unwrap();
        let a = CombinationMatrix::metropolis(&adj);
        let states: Vec<_> = (0..12).map(|k| Array1::from_elem(5, k as f64 * 0.37 - 1.0)).collect();
        let mixed = sync_round(&states, &a).unwrap();
        for (k, got) in mixed.iter().enumerate() {
            let mut want = Array1::zeros(5);
            a.combine_for(k, &states, &mut want);
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-14);
            }
        }
    }
}
