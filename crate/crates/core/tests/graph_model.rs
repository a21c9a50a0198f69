mod common;

use ndmc_core::cliquewidth::cliquewidth_expression;
use ndmc_core::graph::Graph;
use ndmc_core::partition::{neighborhood_partition, nd, quotient_graph, same_type, ClassKind};
use ndmc_core::random::{random_digraph, random_typed_graph};
use ndmc_core::vertex_cover::{is_vertex_cover, vertex_cover};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn seeded_graph(seed: u64) -> Graph {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut g = match r.gen_range(0..3) {
        0 => random_small_graph(&mut r, 0, 7),
        1 => random_typed_graph(&mut r, 4, 3, 0.5),
        _ => {
            let n = r.gen_range(1..=6);
            random_digraph(&mut r, n, 0.4)
        }
    };
    decorate(&mut r, &mut g);
    g
}

#[test]
fn same_type_is_an_equivalence_and_matches_the_definition() {
    let mut r = ChaCha8Rng::seed_from_u64(17);
    for mut g in all_graphs_up_to(4) {
        decorate(&mut r, &mut g);
        let n = g.n();
        let rel: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| same_type(&g, u, v).unwrap()).collect()).collect();
        for u in 0..n {
            assert!(rel[u][u]);
            for v in 0..n {
                assert_eq!(rel[u][v], brute_same_type(&g, u, v));
                assert_eq!(rel[u][v], rel[v][u]);
                for w in 0..n {
                    assert!(!(rel[u][v] && rel[v][w]) || rel[u][w]);
                }
            }
        }
    }
}

#[test]
fn nd_bounded_by_vertex_cover() {
    for g in all_graphs_up_to(5) {
        let k = vertex_cover(&g).unwrap().size;
        assert!(nd(&g) <= (1 << k) + k);
    }
}

#[test]
fn cover_of_complete_bipartite() {
    assert_eq!(vertex_cover(&Graph::complete_bipartite(3, 3)).unwrap().size, 3);
    assert_eq!(vertex_cover(&Graph::star(6)).unwrap().size, 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn partition_classes_are_homogeneous(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        let p = neighborhood_partition(&g);
        prop_assert!(p.validate(&g).is_ok());
        for (i, class) in p.classes().iter().enumerate() {
            for &u in class {
                for &v in class {
                    if u != v {
                        prop_assert_eq!(g.adjacent(u, v), p.kind(i) == ClassKind::Clique);
                    }
                }
            }
            if class.len() == 1 {
                prop_assert_eq!(p.kind(i), ClassKind::Independent);
            }
            for (j, other) in p.classes().iter().enumerate().skip(i + 1) {
                let pairs = class.iter().flat_map(|&u| other.iter().map(move |&v| (u, v)));
                let joined: Vec<bool> = pairs.clone().map(|(u, v)| g.adjacent(u, v)).collect();
                let back: Vec<bool> = pairs.map(|(u, v)| g.adjacent(v, u)).collect();
                prop_assert!(joined.iter().all(|&b| b == joined[0]), "classes {} and {}", i, j);
                prop_assert!(back.iter().all(|&b| b == back[0]));
            }
        }
    }

    #[test]
    fn partition_width_is_minimum(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        prop_assert_eq!(nd(&g), brute_min_partition(&g));
    }

    #[test]
    fn width_is_relabeling_invariant(seed in any::<u64>()) {
        let g = seeded_graph(seed);
        let mut r = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut r);
        prop_assert_eq!(nd(&g), nd(&g.permuted(&perm)));
    }

    #[test]
    fn quotient_edges_are_full_joins(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut r, 1, 7);
        let p = neighborhood_partition(&g);
        let q = quotient_graph(&g, &p).unwrap();
        prop_assert_eq!(q.width(), p.width());
        for i in 0..q.width() {
            prop_assert_eq!(q.node(i).size, p.class(i).len());
            for j in 0..q.width() {
                if i != j {
                    let full = p.class(i).iter().all(|&u| p.class(j).iter().all(|&v| g.adjacent(u, v)));
                    prop_assert_eq!(q.has_edge(i, j), full);
                }
            }
        }
    }

    #[test]
    fn vertex_cover_is_minimum(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = random_small_graph(&mut r, 0, 10);
        let vc = vertex_cover(&g).unwrap();
        prop_assert!(is_vertex_cover(&g, &vc.cover));
        prop_assert_eq!(vc.size, vc.cover.count_ones(..));
        prop_assert_eq!(vc.size, brute_vertex_cover(&g));
    }

    #[test]
    fn cliquewidth_replay_is_isomorphic(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = if r.gen_bool(0.5) {
            random_small_graph(&mut r, 0, 8)
        } else {
            random_typed_graph(&mut r, 3, 3, 0.5)
        };
        let p = neighborhood_partition(&g);
        let script = cliquewidth_expression(&g, &p).unwrap();
        prop_assert!(script.labels_used() <= p.width() + 1);
        prop_assert!(script.label_budget <= p.width() + 1);
        prop_assert_eq!(script.count_introduce(), g.n());
        prop_assert!(isomorphic(&script.replay(), &g));
    }
}
