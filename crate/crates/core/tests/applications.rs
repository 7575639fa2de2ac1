use diffudict::apps::{
    bicluster_online, novelty_pipeline, novelty_score, roc_and_auc, synthetic_bicluster, synthetic_topic_stream,
    BiclusterConfig, NoveltyConfig, PlantedBiclusterSpec, ScoreOptions, TopicStreamSpec,
};
use diffudict::inference::local_costs_at;
use diffudict::{
    centralized_inference_oracle, diffusion_solve, dual_value_consensus, initialize_shards, DiffusionOptions, Network,
    TaskSpec, Workers,
};
use ndarray::Array1;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn huber_task() -> TaskSpec {
    TaskSpec::nmf_huber(0.05, 0.1, 0.2).unwrap()
}

fn document(m: usize, seed: u64) -> Array1<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Array1::from_shape_fn(m, |_| if rng.random::<f64>() < 0.4 { rng.random::<f64>() } else { 0.0 });
    let n = x.dot(&x).sqrt();
    x / n
}

fn tight_scoring() -> ScoreOptions {
    ScoreOptions {
        step: 0.09,
        rounds: 400_000,
        consensus_step: 0.5,
        consensus_rounds: 200,
        rtol: Some(1e-13),
        workers: Workers::Sequential,
    }
}

#[test]
fn novelty_score_is_the_scaled_optimal_dual_value() {
    let task = huber_task();
    let net = Network::fully_connected(5).unwrap();
    let shards = initialize_shards(12, &[1; 5], &task, 8).unwrap();
    for seed in 0..4 {
        let xi = document(12, seed);
        let scores = novelty_score(&net, &shards, xi.view(), &task, &tight_scoring()).unwrap();
        let oracle = centralized_inference_oracle(&shards, xi.view(), &task, 1e-13).unwrap();
        let expected = oracle.dual_value / 5.0;
        for g in scores {
            assert!((g - expected).abs() <= 1e-4, "{g} vs {expected}");
        }
    }
}

#[test]
fn score_threshold_matches_dual_threshold() {
    let task = huber_task();
    let net = Network::fully_connected(4).unwrap();
    let n = net.n_agents() as f64;
    let shards = initialize_shards(10, &[1; 4], &task, 2).unwrap();
    let opts = DiffusionOptions::new(0.09, 400_000).with_rtol(Some(1e-13));
    let mut pairs = Vec::new();
    for seed in 0..30 {
        let xi = document(10, 100 + seed);
        let state = diffusion_solve(&net, &shards, xi.view(), &task, &opts).unwrap();
        let costs = local_costs_at(&net, &shards, xi.view(), &task, &state.iterates).unwrap();
        let g = dual_value_consensus(net.combination(), &costs, 0.5, 200).unwrap();
        pairs.push((g, -costs.iter().sum::<f64>()));
    }
    let mut checked = 0;
    for chi in (0..40).map(|i| 0.005 * i as f64) {
        for (g, total) in &pairs {
            for gk in g {
                if (gk - chi).abs() < 1e-8 {
                    continue;
                }
                assert_eq!(*gk >= chi, *total >= n * chi);
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn learned_topics_score_below_novel_documents() {
    let spec = TopicStreamSpec {
        dim: 60,
        n_topics: 4,
        words_per_topic: 10,
        schedule: vec![vec![0, 1], vec![2], vec![], vec![3]],
        docs_per_step: 40,
        novel_fraction: 0.3,
        noise: 0.02,
        seed: 4,
    };
    let stream = synthetic_topic_stream(&spec).unwrap();
    let cfg = NoveltyConfig { initial_atoms: 6, atoms_added_per_step: 2, ..NoveltyConfig::default() };
    let report = novelty_pipeline(&stream, &cfg, 4).unwrap();
    assert_eq!(report.feasibility_violations, 0);
    assert_eq!(report.steps.iter().map(|s| s.step).collect::<Vec<_>>(), vec![1, 3]);
    for step in &report.steps {
        let mut novel: Vec<f64> = step.scores.iter().zip(&step.labels).filter(|(_, &l)| l).map(|(s, _)| *s).collect();
        novel.sort_by(f64::total_cmp);
        let median = novel[novel.len() / 2];
        let known: Vec<f64> = step.scores.iter().zip(&step.labels).filter(|(_, &l)| !l).map(|(s, _)| *s).collect();
        let below = known.iter().filter(|&&s| s < median).count();
        assert!(below as f64 >= 0.9 * known.len() as f64, "step {}: {below} of {}", step.step, known.len());
        assert!((0.0..=1.0).contains(&step.roc.auc));
    }
    assert_eq!(report.network.n_agents(), 6 + 2 * 3);
    assert!(report.network.combination().stochasticity_error() <= 1e-12);
}

#[test]
fn random_scores_give_chance_auc() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let scores: Vec<f64> = (0..400).map(|_| rng.random()).collect();
        let labels: Vec<bool> = (0..400).map(|_| rng.random()).collect();
        let auc = roc_and_auc(&scores, &labels).unwrap().auc;
        assert!((auc - 0.5).abs() <= 0.1, "{auc}");
    }
}

#[test]
fn online_biclustering_keeps_unit_columns() {
    let spec = PlantedBiclusterSpec { samples: 300, ..PlantedBiclusterSpec::standard(1) };
    let data = synthetic_bicluster(&spec).unwrap();
    let out = bicluster_online(data.x.view(), &BiclusterConfig::default(), 1).unwrap();
    assert_eq!(out.feasibility_violations, 0);
    for col in out.atoms.columns() {
        assert!(col.dot(&col) <= 1.0 + 1e-12);
    }
    assert_eq!(out.coeffs.dim(), (3, 300));
}
