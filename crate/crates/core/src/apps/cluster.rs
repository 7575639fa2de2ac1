//! k-means and label-matched purity for evaluating profile clusterings.

use ndarray::{Array2, ArrayView1, ArrayView2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    pub labels: Vec<usize>,
    pub centroids: Array2<f64>,
    pub inertia: f64,
}

fn sq_dist(a: ArrayView1<'_, f64>, b: ArrayView1<'_, f64>) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Lloyd iterations from k-means++ seeds; keeps the best of `restarts` runs.
pub fn kmeans(points: ArrayView2<'_, f64>, k: usize, restarts: usize, seed: u64) -> Result<KMeans> {
    let n = points.nrows();
    if k == 0 || k > n {
        return invalid(format!("cannot form {k} clusters from {n} points"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<KMeans> = None;
    for _ in 0..restarts.max(1) {
        let run = lloyd(points, seeds(points, k, &mut rng));
        if best.as_ref().is_none_or(|b| run.inertia < b.inertia) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least one restart"))
}

fn seeds<R: Rng>(points: ArrayView2<'_, f64>, k: usize, rng: &mut R) -> Array2<f64> {
    let n = points.nrows();
    let mut centroids = Array2::zeros((k, points.ncols()));
    centroids.row_mut(0).assign(&points.row(rng.random_range(0..n)));
    let mut d2: Vec<f64> = (0..n).map(|i| sq_dist(points.row(i), centroids.row(0))).collect();
    for c in 1..k {
        let total: f64 = d2.iter().sum();
        let pick = if total > 0.0 {
            let mut r = rng.random::<f64>() * total;
            let mut idx = n - 1;
            for (i, &d) in d2.iter().enumerate() {
                if r < d {
                    idx = i;
                    break;
                }
                r -= d;
            }
            idx
        } else {
            rng.random_range(0..n)
        };
        centroids.row_mut(c).assign(&points.row(pick));
        for (i, d) in d2.iter_mut().enumerate() {
            *d = d.min(sq_dist(points.row(i), centroids.row(c)));
        }
    }
    centroids
}

fn lloyd(points: ArrayView2<'_, f64>, mut centroids: Array2<f64>) -> KMeans {
    let (n, k) = (points.nrows(), centroids.nrows());
    let mut labels = vec![usize::MAX; n];
    for _ in 0..1000 {
        let mut changed = false;
        for (i, label) in labels.iter_mut().enumerate() {
            let nearest = (0..k)
                .min_by(|&a, &b| {
                    sq_dist(points.row(i), centroids.row(a)).total_cmp(&sq_dist(points.row(i), centroids.row(b)))
                })
                .expect("k > 0");
            if *label != nearest {
                *label = nearest;
                changed = true;
            }
        }
        if !changed {
            break;
        }
        for c in 0..k {
            let members: Vec<usize> = (0..n).filter(|&i| labels[i] == c).collect();
            if members.is_empty() {
                continue;
            }
            let mut mean = centroids.row(c).to_owned();
            mean.fill(0.0);
            for &i in &members {
                mean += &points.row(i);
            }
            centroids.row_mut(c).assign(&(mean / members.len() as f64));
        }
    }
    let inertia = (0..n).map(|i| sq_dist(points.row(i), centroids.row(labels[i]))).sum();
    KMeans { labels, centroids, inertia }
}

/// Fraction of points whose predicted cluster maps to their true group under
/// the best one-to-one relabeling.
pub fn purity(predicted: &[usize], truth: &[usize]) -> Result<f64> {
    if predicted.len() != truth.len() || predicted.is_empty() {
        return invalid("purity needs two equally long, nonempty labelings");
    }
    let kp = predicted.iter().max().unwrap() + 1;
    let kt = truth.iter().max().unwrap() + 1;
    if kp.max(kt) > 10 {
        return invalid("purity matching supports at most 10 labels");
    }
    let mut counts = vec![vec![0usize; kt]; kp];
    for (&p, &t) in predicted.iter().zip(truth) {
        counts[p][t] += 1;
    }
    fn search(row: usize, counts: &[Vec<usize>], used: &mut Vec<bool>) -> usize {
        if row == counts.len() {
            return 0;
        }
        // leaving this cluster unmatched is allowed when clusters outnumber groups
        let mut best = search(row + 1, counts, used);
        for t in 0..used.len() {
            if !used[t] {
                used[t] = true;
                best = best.max(counts[row][t] + search(row + 1, counts, used));
                used[t] = false;
            }
        }
        best
    }
    let matched = search(0, &counts, &mut vec![false; kt]);
    Ok(matched as f64 / predicted.len() as f64)
}
