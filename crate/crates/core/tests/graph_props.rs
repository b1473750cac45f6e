mod common;

use chromaroot::graph::{
    bridges_of, canonical_code, graph6_decode, graph6_encode, is_connected, two_cuts, Graph,
};
use common::{brute_isomorphic, oracle_two_connected, oracle_two_cuts, random_graph, random_perm};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n).unwrap();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #[test]
    fn graph6_round_trip(g in graph_strategy(12)) {
        let back = graph6_decode(&graph6_encode(&g)).unwrap();
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
    }

    #[test]
    fn canonical_code_ignores_labels(g in graph_strategy(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_perm(&mut rng, g.vertex_count());
        prop_assert_eq!(canonical_code(&g), canonical_code(&g.permuted(&p)));
    }

    #[test]
    fn canonical_code_matches_permutation_search(a in graph_strategy(8), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // same order and size, so the comparison is not decided by counts
        let n = a.vertex_count();
        let m = a.edge_count();
        let mut b = Graph::empty(n).unwrap();
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let order = random_perm(&mut rng, pairs.len());
        pairs = order.iter().map(|&i| pairs[i]).collect();
        for &(u, v) in pairs.iter().take(m) {
            b.add_edge(u, v).unwrap();
        }
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), brute_isomorphic(&a, &b));
    }

    #[test]
    fn two_cuts_match_oracle(g in graph_strategy(9)) {
        prop_assume!(oracle_two_connected(&g));
        let cuts: Vec<(usize, usize)> = two_cuts(&g).unwrap().iter().map(|c| (c.x, c.y)).collect();
        prop_assert_eq!(cuts, oracle_two_cuts(&g));
    }
}

#[test]
fn bridges_partition_the_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut tested = 0;
    while tested < 300 {
        let n = rng.gen_range(4..=10);
        let g = random_graph(&mut rng, n, 0.35);
        if !oracle_two_connected(&g) {
            continue;
        }
        for cut in two_cuts(&g).unwrap() {
            let bridges = bridges_of(&g, cut).unwrap();
            assert!(bridges.len() >= 2);
            let sets: Vec<u128> = bridges.iter().map(|b| b.vertex_set()).collect();
            for i in 0..sets.len() {
                for j in i + 1..sets.len() {
                    assert_eq!(sets[i] & sets[j], cut.set());
                }
            }
            assert_eq!(sets.iter().fold(0, |a, s| a | s), g.vertex_set());
            assert!(bridges.iter().all(|b| is_connected(&b.graph)));
        }
        tested += 1;
    }
}

#[test]
fn canonical_code_separates_atlas_on_six() {
    let atlas = chromaroot::graph::atlas::graphs_on(6);
    assert_eq!(atlas.len(), 156);
    for (i, a) in atlas.iter().enumerate() {
        for b in &atlas[i + 1..] {
            if a.edge_count() == b.edge_count() {
                assert!(!brute_isomorphic(a, b), "{} ~ {}", graph6_encode(a), graph6_encode(b));
            }
        }
    }
}
