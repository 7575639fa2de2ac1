use diffudict::{random_connected_graph, sync_round, CombinationMatrix, CombinationRule, Network};
use ndarray::Array1;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mean(states: &[Array1<f64>]) -> Array1<f64> {
    let n = states.len() as f64;
    states.iter().fold(Array1::zeros(states[0].len()), |acc, s| acc + s) / n
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn metropolis_is_doubly_stochastic(n in 2usize..=50, p in 0.05f64..1.0, seed in any::<u64>()) {
        let adj = random_connected_graph(n, p, seed).unwrap();
        prop_assert!(adj.is_connected());
        let a = CombinationMatrix::metropolis(&adj);
        prop_assert!(a.stochasticity_error() <= 1e-12);
        prop_assert!(a.matches(&adj));
        prop_assert_eq!(random_connected_graph(n, p, seed).unwrap(), adj);
    }

    #[test]
    fn rounds_preserve_mean_and_reach_consensus(
        n in 2usize..=12,
        p in 0.2f64..1.0,
        seed in any::<u64>(),
        values in prop::collection::vec(-5.0f64..5.0, 36),
    ) {
        let adj = random_connected_graph(n, p, seed).unwrap();
        let a = CombinationMatrix::metropolis(&adj);
        let start: Vec<Array1<f64>> = (0..n).map(|k| Array1::from(values[3 * k..3 * k + 3].to_vec())).collect();
        let target = mean(&start);
        let mut states = start;
        let once = sync_round(&states, &a).unwrap();
        prop_assert!((mean(&once) - &target).iter().all(|d| d.abs() <= 1e-12));
        for _ in 0..5000 {
            states = sync_round(&states, &a).unwrap();
        }
        for s in &states {
            prop_assert!((s - &target).iter().all(|d| d.abs() <= 1e-8));
        }
    }

    #[test]
    fn growth_keeps_double_stochasticity(n in 1usize..=10, add in 1usize..=6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let adj = random_connected_graph(n, 0.5, seed).unwrap();
        let mut net = Network::fully_informed(adj, CombinationRule::Metropolis).unwrap();
        for _ in 0..3 {
            net = net.grow(add, 0.5, CombinationRule::Metropolis, &mut rng).unwrap();
            prop_assert!(net.combination().stochasticity_error() <= 1e-12);
            prop_assert!(net.adjacency().is_connected());
        }
        prop_assert_eq!(net.n_agents(), n + 3 * add);
    }
}
