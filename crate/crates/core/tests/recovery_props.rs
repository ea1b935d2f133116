mod common;

use std::collections::BTreeMap;

use common::random_hypergraph;
use hyperdecomp::{decompose_weighted, recover, Error, Hypergraph, RecoverOptions, WeightedDecomposedGraph};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn levels(h: &Hypergraph) -> BTreeMap<usize, WeightedDecomposedGraph> {
    let top = h.max_edge_size().saturating_sub(1).max(1);
    (1..=top).map(|k| (k, decompose_weighted(h, k).unwrap())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 40, 6, 30);
        let back = recover(&levels(&h), RecoverOptions::default()).unwrap();
        prop_assert_eq!(back.sorted_member_sets(), h.sorted_member_sets());
    }

    #[test]
    fn peeling_order_is_irrelevant(seed in any::<u64>(), order in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 25, 6, 25);
        let g = levels(&h);
        let a = recover(&g, RecoverOptions::default()).unwrap();
        let b = recover(&g, RecoverOptions { shuffle_seed: Some(order), ..Default::default() }).unwrap();
        prop_assert_eq!(a.sorted_member_sets(), b.sorted_member_sets());
    }

    #[test]
    fn extra_weight_is_detected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hypergraph(&mut rng, 20, 5, 20);
        prop_assume!(h.max_edge_size() >= 3);
        let mut g = levels(&h);
        // a hyperedge missing from levels it should appear on leaves residual weight
        let mut m = h.sorted_member_sets();
        let big = m.iter().position(|e| e.len() == h.max_edge_size()).unwrap();
        m.remove(big);
        let without: Vec<_> = m.iter().map(|e| hyperdecomp::Hyperedge::from_ids(e).unwrap()).collect();
        let smaller = Hypergraph::new(h.n(), without).unwrap();
        g.insert(1, decompose_weighted(&smaller, 1).unwrap());
        match recover(&g, RecoverOptions::default()) {
            Err(Error::Consistency { .. }) => {}
            Ok(r) => prop_assert_ne!(r.sorted_member_sets(), h.sorted_member_sets()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }
}
