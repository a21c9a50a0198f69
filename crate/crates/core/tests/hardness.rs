mod common;

use ndmc_core::eval::{check_fo, check_mso, eval_naive, eval_naive_with, CheckOptions, Environment};
use ndmc_core::graph::Graph;
use ndmc_core::hardness::{
    bit_width, decolor, delabel, directed_to_undirected, directed_to_undirected_with, eq_formula, gadget_n, levels,
    sat_to_directed, weighted_variant, CnfFormula, HardnessInstance, Literal, SetEncoding, Stage,
};
use ndmc_core::logic::{metrics, Term};
use ndmc_core::random::{add_random_colors, add_random_labels, random_cnf, random_dag, random_graph, random_sentence, SentenceConfig};
use ndmc_core::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

const BUDGET: u64 = 500_000_000;
const STEP_LIMIT: usize = 12;

fn naive(inst: &HardnessInstance) -> bool {
    eval_naive(&inst.graph, &inst.sentence, BUDGET).unwrap()
}

/// `(x_1 | x_1 | x_1) & ... & (x_n | x_n | x_n)`.
fn all_positive(n: usize) -> CnfFormula {
    CnfFormula::new(n, (1..=n).map(|i| [Literal::positive(i); 3]).collect()).unwrap()
}

#[test]
fn eq_one_separates_zero_and_one() {
    let mut g = gadget_n(2);
    g.set_color("A", 0..3).unwrap();
    g.set_color("B", 0..3).unwrap();
    let f = eq_formula(1, Term::var("x"), Term::var("y"), "A", "B");
    for i in 0..2 {
        for j in 0..2 {
            let env = Environment::new().bind_vertex("x", i).bind_vertex("y", j);
            let value = eval_naive_with(&g, &f, &env, &CheckOptions::default()).unwrap().value;
            assert_eq!(value, i == j, "eq_1({i}, {j})");
        }
    }
}

#[test]
fn eq_two_separates_up_to_three() {
    let mut g = gadget_n(3);
    g.set_color("A", 0..4).unwrap();
    g.set_color("B", 0..4).unwrap();
    let f = eq_formula(2, Term::var("x"), Term::var("y"), "A", "B");
    for i in 0..4 {
        for j in 0..4 {
            let env = Environment::new().bind_vertex("x", i).bind_vertex("y", j);
            let value = eval_naive_with(&g, &f, &env, &CheckOptions::default()).unwrap().value;
            assert_eq!(value, i == j, "eq_2({i}, {j})");
        }
    }
}

#[test]
fn eq_size_grows_linearly() {
    let sizes: Vec<usize> =
        (1..=8).map(|h| metrics(&eq_formula(h, Term::var("x"), Term::var("y"), "A", "B")).size).collect();
    assert!(sizes.windows(2).all(|w| w[1] - w[0] == sizes[1] - sizes[0]));
}

#[test]
fn random_cnfs_match_sat() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let vars = r.gen_range(1..=4);
        let clauses = r.gen_range(1..=4);
        let cnf = random_cnf(&mut r, vars, clauses);
        let inst = sat_to_directed(&cnf).unwrap();
        assert_eq!(inst.metadata.metrics.q_s, 1);
        assert_eq!(inst.metadata.bit_width, bit_width(vars));
        assert_eq!(check_mso(&inst.graph, &inst.sentence).unwrap(), brute_sat(&cnf), "{cnf:?}");
    }
}

#[test]
fn weighted_sentences_match_weighted_sat() {
    let mut r = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let vars = r.gen_range(1..=3);
        let clauses = r.gen_range(1..=3);
        let cnf = random_cnf(&mut r, vars, clauses);
        let g = sat_to_directed(&cnf).unwrap().graph;
        for w in 0..=vars {
            let f = weighted_variant(&cnf, w).unwrap();
            assert!(f.is_fo());
            assert_eq!(check_fo(&g, &f).unwrap(), brute_weighted_sat(&cnf, w), "{cnf:?} weight {w}");
        }
    }
}

#[test]
fn empty_or_out_of_range_cnfs_are_rejected() {
    assert!(matches!(sat_to_directed(&CnfFormula::new(2, vec![]).unwrap()), Err(Error::InvalidCnf(_))));
    assert!(CnfFormula::new(0, vec![]).is_err());
    assert!(CnfFormula::new(1, vec![[Literal::positive(2); 3]]).is_err());
}

#[test]
fn sat_instance_levels() {
    let inst = sat_to_directed(&all_positive(3)).unwrap();
    let l = levels(&inst.graph).unwrap();
    assert!(l.iter().all(|&x| x >= 1));
    for (u, v) in inst.graph.edges() {
        assert!(l[u] > l[v]);
    }
    let cyclic = Graph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
    assert_eq!(levels(&cyclic), Err(Error::NotADag));
}

#[test]
fn full_pipeline_on_small_formulas() {
    let sat = CnfFormula::new(1, vec![[Literal::positive(1); 3]]).unwrap();
    let unsat = CnfFormula::new(1, vec![[Literal::positive(1); 3], [Literal::negative(1); 3]]).unwrap();
    for (cnf, expected) in [(sat, true), (unsat, false)] {
        let directed = sat_to_directed(&cnf).unwrap();
        let undirected = directed_to_undirected_with(&directed, SetEncoding::Fo).unwrap();
        let uncolored = decolor(&undirected).unwrap();
        let unlabeled = delabel(&uncolored).unwrap();
        assert_eq!(unlabeled.stage, Stage::Unlabeled);
        assert_eq!(unlabeled.graph.color_count(), 0);
        assert_eq!(unlabeled.graph.label_count(), 0);
        for inst in [&directed, &undirected, &uncolored, &unlabeled] {
            assert_eq!(inst.metadata.metrics.q_s, 1, "{:?}", inst.stage);
            assert_eq!(check_mso(&inst.graph, &inst.sentence).unwrap(), expected, "{:?}", inst.stage);
        }
    }
}

#[test]
fn mso_encoding_adds_set_quantifiers() {
    let directed = sat_to_directed(&all_positive(2)).unwrap();
    let mso = directed_to_undirected(&directed).unwrap();
    let fo = directed_to_undirected_with(&directed, SetEncoding::Fo).unwrap();
    assert!(mso.metadata.metrics.q_s > 1);
    assert_eq!(fo.metadata.metrics.q_s, 1);
    assert!(!mso.graph.is_directed() && !fo.graph.is_directed());
}

#[test]
fn vertex_cover_grows_slowly() {
    let mut covers = Vec::new();
    for n in [2, 4, 8, 16] {
        let directed = sat_to_directed(&all_positive(n)).unwrap();
        let undirected = directed_to_undirected_with(&directed, SetEncoding::Fo).unwrap();
        let last = delabel(&decolor(&undirected).unwrap()).unwrap();
        covers.push((n, directed.metadata.vertex_cover_size, last.metadata.vertex_cover_size, last.graph.n()));
    }
    for &(n, first, last, size) in &covers {
        println!(
            "n = {n:2}: directed cover {first}, final cover {last} on {size} vertices, final / log2 n = {:.2}",
            last as f64 / (n as f64).log2()
        );
    }
    assert!(covers.windows(2).all(|w| w[0].2 <= w[1].2 && w[0].1 <= w[1].1));
    // Doubling n adds at most a bounded number of cover vertices.
    let steps: Vec<usize> = covers.windows(2).map(|w| w[1].2 - w[0].2).collect();
    assert!(steps.iter().all(|&s| s <= STEP_LIMIT), "{steps:?}");
    assert!(covers[3].2 * 2 < covers[0].2 * 16);
}

#[test]
fn stages_must_come_in_order() {
    let directed = sat_to_directed(&all_positive(1)).unwrap();
    assert!(decolor(&directed).is_err());
    assert!(delabel(&directed).is_err());
    let undirected = directed_to_undirected(&directed).unwrap();
    assert!(directed_to_undirected(&undirected).is_err());
    assert!(HardnessInstance::new(Graph::complete(3), directed.sentence.clone(), Stage::Directed).is_err());
}

fn small_config(g: &Graph, q_v: usize, q_s: usize) -> SentenceConfig {
    SentenceConfig {
        max_vertex_quantifiers: q_v,
        max_set_quantifiers: q_s,
        ..SentenceConfig::for_graph(g)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn undirecting_preserves_truth(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = r.gen_range(1..=5);
        let mut g = random_dag(&mut r, n, 0.4);
        add_random_colors(&mut r, &mut g, 1, 0.5);
        add_random_labels(&mut r, &mut g, 1);
        let f = random_sentence(&mut r, &small_config(&g, 3, 0));
        let inst = HardnessInstance::new(g, f, Stage::Directed).unwrap();
        let expected = naive(&inst);
        for encoding in [SetEncoding::Mso, SetEncoding::Fo] {
            let out = directed_to_undirected_with(&inst, encoding).unwrap();
            prop_assert_eq!(check_mso(&out.graph, &out.sentence).unwrap(), expected, "{:?}", encoding);
        }
    }

    #[test]
    fn decolor_then_delabel_preserves_truth(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        // Resample until the decolored graph (with one apex per color) has
        // no pendant vertices, which delabeling cannot handle.
        let (inst, uncolored) = loop {
            let n = r.gen_range(3..=5);
            let mut g = random_graph(&mut r, n, 0.6);
            add_random_colors(&mut r, &mut g, 1, 0.5);
            add_random_labels(&mut r, &mut g, 1);
            let f = random_sentence(&mut r, &small_config(&g, 2, 1));
            let inst = HardnessInstance::new(g, f, Stage::Undirected).unwrap();
            let uncolored = decolor(&inst).unwrap();
            let h = &uncolored.graph;
            if (0..h.n()).all(|v| h.degree(v) > 1) {
                break (inst, uncolored);
            }
        };
        let expected = naive(&inst);
        prop_assert_eq!(naive(&uncolored), expected);
        let unlabeled = delabel(&uncolored).unwrap();
        prop_assert_eq!(check_mso(&unlabeled.graph, &unlabeled.sentence).unwrap(), expected);
    }
}
