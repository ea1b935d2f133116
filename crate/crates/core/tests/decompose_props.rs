mod common;

use std::collections::BTreeSet;

use common::{brute_force_graph, brute_force_weights, graph_sets, random_hypergraph, weighted_sets};
use hyperdecomp::hypergraph::binomial;
use hyperdecomp::{decompose, decompose_weighted, DecomposeConfig, Hyperedge, Hypergraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unweighted_matches_subset_pair_scan(seed in any::<u64>(), k in 1usize..=4, cap in prop::option::of(1usize..=8)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 12, 7, 15);
        let cap = cap.unwrap_or(usize::MAX).max(k);
        let g = decompose(&h, DecomposeConfig::new(k, cap).unwrap()).unwrap();
        prop_assert_eq!(graph_sets(&g), brute_force_graph(&h, k, cap));
    }

    #[test]
    fn weighted_matches_containment_count(seed in any::<u64>(), k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 12, 7, 15);
        let w = decompose_weighted(&h, k).unwrap();
        prop_assert_eq!(weighted_sets(&w), brute_force_weights(&h, k));
        let plain = decompose(&h, DecomposeConfig::uncapped(k).unwrap()).unwrap();
        prop_assert_eq!(w.base(), &plain);
    }

    #[test]
    fn single_hyperedge_is_a_clique(s in 1usize..=10, k in 1usize..=5) {
        prop_assume!(k <= s);
        let ids: Vec<u32> = (0..s as u32).collect();
        let h = Hypergraph::from_edges(vec![Hyperedge::from_ids(&ids).unwrap()]);
        let g = decompose(&h, DecomposeConfig::uncapped(k).unwrap()).unwrap();
        let c = binomial(s, k) as usize;
        prop_assert_eq!(g.node_count(), c);
        prop_assert_eq!(g.edge_count(), c * (c - 1) / 2);
    }

    #[test]
    fn node_level_is_the_pairwise_projection(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 20, 8, 25);
        let g = decompose(&h, DecomposeConfig::uncapped(1).unwrap()).unwrap();
        let mut expect = BTreeSet::new();
        for e in h.sorted_member_sets() {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    expect.insert((vec![a], vec![b]));
                }
            }
        }
        prop_assert_eq!(graph_sets(&g).1, expect);
    }

    #[test]
    fn independent_of_edge_order(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 15, 6, 20);
        let mut edges = h.edges().to_vec();
        edges.shuffle(&mut rng);
        let shuffled = Hypergraph::new(h.n(), edges).unwrap();
        let cfg = DecomposeConfig::with_default_cap(k).unwrap();
        prop_assert_eq!(decompose(&h, cfg).unwrap(), decompose(&shuffled, cfg).unwrap());
        prop_assert_eq!(decompose_weighted(&h, k).unwrap(), decompose_weighted(&shuffled, k).unwrap());
    }
}
