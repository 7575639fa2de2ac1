use diffudict::experiment::planted_samples;
use diffudict::{
    centralized_inference_oracle, dictionary_step, initialize_shards, learn_online, residual_grad, step_size_bound,
    DictionaryShard, LearnerConfig, Network, StepSchedule, TaskSpec,
};
use ndarray::{Array1, Array2, Axis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn stack(shards: &[DictionaryShard]) -> Array2<f64> {
    ndarray::concatenate(Axis(1), &shards.iter().map(|s| s.atoms()).collect::<Vec<_>>()).unwrap()
}

/// Mean of `f(x − W y°)` over the columns of `data`, with `y°` from the oracle.
fn representation_error(shards: &[DictionaryShard], data: &Array2<f64>, task: &TaskSpec) -> f64 {
    let w = stack(shards);
    let total: f64 = data
        .columns()
        .into_iter()
        .map(|x| {
            let sol = centralized_inference_oracle(shards, x, task, 1e-10).unwrap();
            let y = ndarray::concatenate(Axis(0), &sol.coeffs.iter().map(|c| c.view()).collect::<Vec<_>>()).unwrap();
            task.residual.value((&x - &w.dot(&y)).view())
        })
        .sum();
    total / data.ncols() as f64
}

#[test]
fn planted_dictionary_is_learned_in_one_pass() {
    let task = TaskSpec::sparse_svd(0.05, 0.1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let truth = initialize_shards(16, &[1; 4], &task, 1000).unwrap();
    let stream = planted_samples(&stack(&truth), 2, 2000, 0.01, &task, &mut rng);
    let held_out = planted_samples(&stack(&truth), 2, 200, 0.01, &task, &mut rng);

    let net = Network::fully_connected(4).unwrap();
    let start = initialize_shards(16, &[1; 4], &task, 3).unwrap();
    let before = representation_error(&start, &held_out, &task);
    let cfg = LearnerConfig::new(0.09, 1000, StepSchedule::Constant(0.05));
    let out = learn_online(&net, start, stream.view(), &task, &cfg).unwrap();
    let after = representation_error(&out.shards, &held_out, &task);
    eprintln!("representation error {before:.4} -> {after:.4}");
    assert!(after < 0.2 * before, "error {before:.4} -> {after:.4}");
}

#[test]
fn repeated_sample_objective_descends() {
    let task = TaskSpec::sparse_svd(0.05, 0.1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shards = initialize_shards(12, &[2, 2, 2], &task, 5).unwrap();
    let x = planted_samples(&stack(&initialize_shards(12, &[2], &task, 77).unwrap()), 2, 1, 0.0, &task, &mut rng);
    let stream = ndarray::concatenate(Axis(1), &vec![x.view(); 200]).unwrap();
    let net = Network::fully_connected(3).unwrap();
    let step = 0.9 * step_size_bound(&task, 2);
    let cfg = LearnerConfig::new(step, 2000, StepSchedule::Constant(0.05));
    let out = learn_online(&net, shards, stream.view(), &task, &cfg).unwrap();
    let costs: Vec<f64> = out.trace.iter().map(|s| s.dual_cost).collect();
    let down = costs.windows(2).filter(|w| w[1] <= w[0]).count();
    assert!(down as f64 >= 0.9 * (costs.len() - 1) as f64, "{down} of {}", costs.len() - 1);
    assert!(costs.last().unwrap() < &(0.5 * costs[0]));
}

#[test]
fn update_direction_is_the_negative_stochastic_gradient() {
    let tasks = [TaskSpec::sparse_svd(0.05, 0.1).unwrap(), TaskSpec::nmf_huber(0.05, 0.1, 0.2).unwrap()];
    for (i, task) in tasks.iter().enumerate() {
        let shards = initialize_shards(8, &[2, 1, 2], task, i as u64).unwrap();
        let x = Array1::from_shape_fn(8, |j| ((j * 7 + 3) % 5) as f64 * 0.3);
        let sol = centralized_inference_oracle(&shards, x.view(), task, 1e-13).unwrap();
        let mut residual = x.clone();
        for (s, y) in shards.iter().zip(&sol.coeffs) {
            residual -= &s.atoms().dot(y);
        }
        // ∇_{W_k} of f(x − Σ W_j y_j) + Σ h(y_j) at the optimal pair
        let df = residual_grad(residual.view(), &task.residual);
        for y in &sol.coeffs {
            let grad = -df.view().insert_axis(Axis(1)).dot(&y.view().insert_axis(Axis(0)));
            let step = sol.dual.view().insert_axis(Axis(1)).dot(&y.view().insert_axis(Axis(0)));
            assert!((&step + &grad).iter().all(|d| d.abs() <= 1e-8));
        }
    }
}

#[test]
fn dictionary_step_keeps_nonneg_atoms_feasible() {
    let task = TaskSpec::nmf(0.05, 0.1).unwrap();
    let shard = initialize_shards(5, &[3], &task, 2).unwrap().remove(0);
    let nu = Array1::from(vec![-3.0, 2.0, -1.0, 0.5, 4.0]);
    let y = Array1::from(vec![1.0, 0.0, 2.0]);
    let next = dictionary_step(&shard, nu.view(), y.view(), 0.7, &task).unwrap();
    assert!(next.is_feasible(task.constraint));
    assert!(next.atoms().iter().all(|&v| v >= 0.0));
    assert_eq!(next.atoms().column(1), shard.atoms().column(1));
}
