mod common;

use std::collections::HashMap;

use ndmc_core::eval::{eval_naive, eval_naive_with, CheckOptions, Environment};
use ndmc_core::graph::{set_of, Graph};
use ndmc_core::logic::{parse, Formula};
use ndmc_core::partition::same_type;
use ndmc_core::random::{random_digraph, random_sentence, SentenceConfig};
use ndmc_core::Error;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn sample(seed: u64) -> (Graph, Formula) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut g = if r.gen_bool(0.7) {
        random_small_graph(&mut r, 1, 5)
    } else {
        let n = r.gen_range(1..=5);
        random_digraph(&mut r, n, 0.4)
    };
    decorate(&mut r, &mut g);
    let config = SentenceConfig {
        max_vertex_quantifiers: 3,
        max_set_quantifiers: r.gen_range(0..=2),
        ..SentenceConfig::for_graph(&g)
    };
    let f = random_sentence(&mut r, &config);
    (g, f)
}

fn open_value(g: &Graph, f: &Formula, z: Option<usize>, set: Option<&[usize]>) -> bool {
    let mut env = Environment::new();
    if let Some(v) = z {
        env = env.bind_vertex("z", v);
    }
    if let Some(s) = set {
        env = env.bind_set("Z", set_of(g.n(), s));
    }
    eval_naive_with(g, f, &env, &CheckOptions::default()).unwrap().value
}

/// Unlabeled vertex pairs of the same type.
fn same_type_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let labeled = g.labeled_vertices();
    let mut out = Vec::new();
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !labeled.contains(u) && !labeled.contains(v) && same_type(g, u, v).unwrap() {
                out.push((u, v));
            }
        }
    }
    out
}

#[test]
fn hand_checked_values() {
    let two_col = parse("existsS X. forall x. forall y. (E(x,y) -> !(x in X <-> y in X))").unwrap();
    assert!(eval_naive(&Graph::complete_bipartite(2, 2), &two_col, u64::MAX).unwrap());
    assert!(!eval_naive(&Graph::cycle(5), &two_col, u64::MAX).unwrap());
    let f = parse("exists x. exists y. D(x, y) & !D(y, x)").unwrap();
    assert!(eval_naive(&Graph::from_arcs(2, &[(0, 1)]).unwrap(), &f, u64::MAX).unwrap());
    assert!(matches!(
        eval_naive(&Graph::complete(3), &f, u64::MAX),
        Err(Error::PredicateMismatch { .. })
    ));
}

#[test]
fn free_variables_follow_the_environment() {
    let g = Graph::path(3);
    let f = parse_free("exists y. (E(z, y) & y in Z)");
    assert!(open_value(&g, &f, Some(1), Some(&[2])));
    assert!(!open_value(&g, &f, Some(0), Some(&[2])));
}

fn parse_free(text: &str) -> Formula {
    ndmc_core::logic::parse_open(text, &["z"], &["Z"]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn agrees_with_direct_recursion(seed in any::<u64>()) {
        let (g, f) = sample(seed);
        prop_assert_eq!(eval_naive(&g, &f, u64::MAX).unwrap(), brute_eval(&g, &f), "{}", f);
    }

    #[test]
    fn invariant_under_relabeling(seed in any::<u64>()) {
        let (g, f) = sample(seed);
        let mut r = ChaCha8Rng::seed_from_u64(!seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut r);
        prop_assert_eq!(
            eval_naive(&g, &f, u64::MAX).unwrap(),
            eval_naive(&g.permuted(&perm), &f, u64::MAX).unwrap()
        );
    }

    #[test]
    fn negation_flips(seed in any::<u64>()) {
        let (g, f) = sample(seed);
        prop_assert_eq!(
            eval_naive(&g, &Formula::not(f.clone()), u64::MAX).unwrap(),
            !eval_naive(&g, &f, u64::MAX).unwrap()
        );
    }

    #[test]
    fn same_type_vertices_satisfy_the_same_formulas(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut g = random_small_graph(&mut r, 2, 6);
        decorate(&mut r, &mut g);
        let pairs = same_type_pairs(&g);
        prop_assume!(!pairs.is_empty());
        let (u, v) = *pairs.choose(&mut r).unwrap();
        let f = random_open_formula(&mut r, &g, true, false, 3, 0);
        prop_assert_eq!(open_value(&g, &f, Some(u), None), open_value(&g, &f, Some(v), None));
    }

    #[test]
    fn same_type_swaps_preserve_set_formulas(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let mut g = random_small_graph(&mut r, 2, 6);
        decorate(&mut r, &mut g);
        let pairs = same_type_pairs(&g);
        prop_assume!(!pairs.is_empty());
        let (u, v) = *pairs.choose(&mut r).unwrap();
        let mut s1: Vec<usize> = (0..g.n()).filter(|&w| w != u && w != v && r.gen_bool(0.5)).collect();
        let mut s2 = s1.clone();
        s1.push(u);
        s2.push(v);
        let f = random_open_formula(&mut r, &g, false, true, 2, 1);
        prop_assert_eq!(open_value(&g, &f, None, Some(&s1)), open_value(&g, &f, None, Some(&s2)));
        // The independent oracle agrees on the open formula too.
        let mask = s1.iter().fold(0u64, |m, &w| m | 1 << w);
        let direct = eval_in(&g, &f, &mut HashMap::new(), &mut HashMap::from([("Z".to_string(), mask)]));
        prop_assert_eq!(open_value(&g, &f, None, Some(&s1)), direct);
    }
}
