//! Independent brute-force oracles and corpora shared by the integration
//! tests. Nothing here calls the library's evaluators or solvers.

#![allow(dead_code)]

use std::collections::HashMap;

use ndmc_core::graph::{Graph, Vertex};
use ndmc_core::hardness::CnfFormula;
use ndmc_core::logic::{Formula, Term};
use ndmc_core::random::{add_random_colors, add_random_labels, random_graph};
use rand::Rng;

/// Direct recursive evaluation over the AST. Set variables are bitmasks, so
/// graphs must have at most 63 vertices.
pub fn brute_eval(g: &Graph, f: &Formula) -> bool {
    let mut vars = HashMap::new();
    let mut sets = HashMap::new();
    eval_in(g, f, &mut vars, &mut sets)
}

pub fn eval_in(
    g: &Graph,
    f: &Formula,
    vars: &mut HashMap<String, Vertex>,
    sets: &mut HashMap<String, u64>,
) -> bool {
    let val = |t: &Term, vars: &HashMap<String, Vertex>| match t {
        Term::Var(x) => vars[x],
        Term::Label(l) => g.label(l).expect("label exists"),
    };
    let n = g.n();
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Edge(a, b) | Formula::Arc(a, b) => {
            let (u, v) = (val(a, vars), val(b, vars));
            g.out_neighbors(u).contains(v)
        }
        Formula::Eq(a, b) => val(a, vars) == val(b, vars),
        Formula::InColor(a, c) => g.color(c).expect("color exists").contains(val(a, vars)),
        Formula::InSet(a, s) => sets[s] >> val(a, vars) & 1 == 1,
        Formula::Not(a) => !eval_in(g, a, vars, sets),
        Formula::And(a, b) => eval_in(g, a, vars, sets) && eval_in(g, b, vars, sets),
        Formula::Or(a, b) => eval_in(g, a, vars, sets) || eval_in(g, b, vars, sets),
        Formula::Implies(a, b) => !eval_in(g, a, vars, sets) || eval_in(g, b, vars, sets),
        Formula::Iff(a, b) => eval_in(g, a, vars, sets) == eval_in(g, b, vars, sets),
        Formula::ExistsV(x, body) | Formula::ForallV(x, body) => {
            let exists = matches!(f, Formula::ExistsV(..));
            let saved = vars.get(x).copied();
            let mut result = !exists;
            for v in 0..n {
                vars.insert(x.clone(), v);
                if eval_in(g, body, vars, sets) == exists {
                    result = exists;
                    break;
                }
            }
            match saved {
                Some(v) => vars.insert(x.clone(), v),
                None => vars.remove(x),
            };
            result
        }
        Formula::ExistsS(x, body) | Formula::ForallS(x, body) => {
            let exists = matches!(f, Formula::ExistsS(..));
            let saved = sets.get(x).copied();
            let mut result = !exists;
            for mask in 0..(1u64 << n) {
                sets.insert(x.clone(), mask);
                if eval_in(g, body, vars, sets) == exists {
                    result = exists;
                    break;
                }
            }
            match saved {
                Some(v) => sets.insert(x.clone(), v),
                None => sets.remove(x),
            };
            result
        }
    }
}

/// Same type straight from the definition.
pub fn brute_same_type(g: &Graph, u: Vertex, v: Vertex) -> bool {
    if u == v {
        return true;
    }
    if g.colors().any(|(_, c)| c.contains(u) != c.contains(v)) {
        return false;
    }
    (0..g.n()).filter(|&z| z != u && z != v).all(|z| {
        g.adjacent(u, z) == g.adjacent(v, z) && g.adjacent(z, u) == g.adjacent(z, v)
    }) && g.adjacent(u, v) == g.adjacent(v, u)
}

/// Minimum number of classes over all set partitions whose classes are
/// pairwise same-type.
pub fn brute_min_partition(g: &Graph) -> usize {
    fn go(g: &Graph, v: usize, classes: &mut Vec<Vec<usize>>, best: &mut usize) {
        if classes.len() >= *best {
            return;
        }
        if v == g.n() {
            *best = classes.len();
            return;
        }
        for i in 0..classes.len() {
            if classes[i].iter().all(|&u| brute_same_type(g, u, v)) {
                classes[i].push(v);
                go(g, v + 1, classes, best);
                classes[i].pop();
            }
        }
        classes.push(vec![v]);
        go(g, v + 1, classes, best);
        classes.pop();
    }
    let mut best = g.n();
    go(g, 0, &mut Vec::new(), &mut best);
    best
}

pub fn brute_vertex_cover(g: &Graph) -> usize {
    let n = g.n();
    let edges: Vec<_> = g.edges().collect();
    (0..(1u32 << n))
        .filter(|&m| edges.iter().all(|&(u, v)| m >> u & 1 == 1 || m >> v & 1 == 1))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    fn colorable(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        let used = colors.iter().copied().max().map_or(0, |m| m + 1);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !g.adjacent(u, v) || colors[u] != c) {
                colors.push(c);
                if colorable(g, k, v + 1, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (1..=n).find(|&k| colorable(g, k, 0, &mut Vec::new())).unwrap()
}

pub fn brute_hamiltonian(g: &Graph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    fn extend(g: &Graph, path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let n = g.n();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.adjacent(last, path[0]);
        }
        for v in 0..n {
            if !used[v] && g.adjacent(last, v) {
                used[v] = true;
                path.push(v);
                if extend(g, path, used) {
                    return true;
                }
                path.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    extend(g, &mut vec![0], &mut used)
}

/// All matchings, by recursion over the edge list.
fn matchings(edges: &[(usize, usize)], n: usize, visit: &mut dyn FnMut(&[usize], &[bool])) {
    fn go(
        edges: &[(usize, usize)],
        i: usize,
        chosen: &mut Vec<usize>,
        covered: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[usize], &[bool]),
    ) {
        if i == edges.len() {
            visit(chosen, covered);
            return;
        }
        go(edges, i + 1, chosen, covered, visit);
        let (u, v) = edges[i];
        if !covered[u] && !covered[v] {
            covered[u] = true;
            covered[v] = true;
            chosen.push(i);
            go(edges, i + 1, chosen, covered, visit);
            chosen.pop();
            covered[u] = false;
            covered[v] = false;
        }
    }
    go(edges, 0, &mut Vec::new(), &mut vec![false; n], visit);
}

pub fn brute_max_matching(g: &Graph, subset: &[usize]) -> usize {
    let edges: Vec<_> = g
        .edges()
        .filter(|(u, v)| subset.contains(u) && subset.contains(v))
        .collect();
    let mut best = 0;
    matchings(&edges, g.n(), &mut |m, _| best = best.max(m.len()));
    best
}

/// Minimum size of a maximal matching.
pub fn brute_min_maximal_matching(g: &Graph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    let mut best = usize::MAX;
    matchings(&edges, g.n(), &mut |m, covered| {
        if edges.iter().all(|&(u, v)| covered[u] || covered[v]) {
            best = best.min(m.len());
        }
    });
    best
}

/// Minimum edge dominating set by subset enumeration (small edge counts).
pub fn brute_eds(g: &Graph) -> usize {
    let edges: Vec<_> = g.edges().collect();
    let m = edges.len();
    assert!(m <= 24, "too many edges for subset enumeration");
    let mut best = m;
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let mut hit = vec![false; g.n()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                hit[u] = true;
                hit[v] = true;
            }
        }
        if edges.iter().all(|&(u, v)| hit[u] || hit[v]) {
            best = k;
        }
    }
    best
}

pub fn brute_sat(cnf: &CnfFormula) -> bool {
    (0..1u32 << cnf.num_vars).any(|mask| {
        cnf.clauses.iter().all(|c| c.iter().any(|l| (mask >> (l.var - 1) & 1 == 1) == l.positive))
    })
}

/// Satisfiable with exactly `weight` variables true.
pub fn brute_weighted_sat(cnf: &CnfFormula, weight: usize) -> bool {
    (0..1u32 << cnf.num_vars).any(|mask| {
        mask.count_ones() as usize == weight
            && cnf.clauses.iter().all(|c| c.iter().any(|l| (mask >> (l.var - 1) & 1 == 1) == l.positive))
    })
}

/// Isomorphism of uncolored, unlabeled graphs by backtracking.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() || a.is_directed() != b.is_directed() {
        return false;
    }
    let mut da: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let (deg_a, deg_b) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    fn go(a: &Graph, b: &Graph, v: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, da: &[usize], db: &[usize]) -> bool {
        if v == a.n() {
            return true;
        }
        for w in 0..b.n() {
            if used[w] || da[v] != db[w] {
                continue;
            }
            if (0..v).all(|u| a.adjacent(u, v) == b.adjacent(map[u], w) && a.adjacent(v, u) == b.adjacent(w, map[u])) {
                used[w] = true;
                map.push(w);
                if go(a, b, v + 1, map, used, da, db) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    go(a, b, 0, &mut Vec::new(), &mut vec![false; n], &deg_a, &deg_b)
}

/// Every undirected graph on exactly `n` vertices (labeled, so `2^(n(n-1)/2)`).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
        .collect()
}

/// All graphs on at most `n` vertices.
pub fn all_graphs_up_to(n: usize) -> Vec<Graph> {
    (0..=n).flat_map(all_graphs).collect()
}

/// Random undirected graph with `n` in `lo..=hi` and a random edge density.
pub fn random_small_graph<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let p = rng.gen_range(0.1..0.9);
    random_graph(rng, n, p)
}

/// Adds up to two colors and two labels at random.
pub fn decorate<R: Rng>(rng: &mut R, g: &mut Graph) {
    let colors = rng.gen_range(0..=2);
    add_random_colors(rng, g, colors, 0.5);
    let labels = rng.gen_range(0..=2);
    add_random_labels(rng, g, labels);
}

const FREE_LABEL: &str = "free_z";
const FREE_COLOR: &str = "FREE_Z";

/// Rewrites `@free_z` to the variable `z` and `t in FREE_Z` to `t in Z`.
fn open_up(f: &Formula) -> Formula {
    let term = |t: &Term| match t {
        Term::Label(l) if l == FREE_LABEL => Term::var("z"),
        other => other.clone(),
    };
    let b = |f: &Formula| Box::new(open_up(f));
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Edge(a, c) => Formula::Edge(term(a), term(c)),
        Formula::Arc(a, c) => Formula::Arc(term(a), term(c)),
        Formula::Eq(a, c) => Formula::Eq(term(a), term(c)),
        Formula::InColor(a, c) if c == FREE_COLOR => Formula::InSet(term(a), "Z".into()),
        Formula::InColor(a, c) => Formula::InColor(term(a), c.clone()),
        Formula::InSet(a, s) => Formula::InSet(term(a), s.clone()),
        Formula::Not(a) => Formula::Not(b(a)),
        Formula::And(x, y) => Formula::And(b(x), b(y)),
        Formula::Or(x, y) => Formula::Or(b(x), b(y)),
        Formula::Implies(x, y) => Formula::Implies(b(x), b(y)),
        Formula::Iff(x, y) => Formula::Iff(b(x), b(y)),
        Formula::ExistsV(x, a) => Formula::ExistsV(x.clone(), b(a)),
        Formula::ForallV(x, a) => Formula::ForallV(x.clone(), b(a)),
        Formula::ExistsS(x, a) => Formula::ExistsS(x.clone(), b(a)),
        Formula::ForallS(x, a) => Formula::ForallS(x.clone(), b(a)),
    }
}

/// A random formula over `g` whose only free names are the vertex variable
/// `z` (if `free_var`) and the set variable `Z` (if `free_set`).
pub fn random_open_formula<R: Rng>(
    rng: &mut R,
    g: &Graph,
    free_var: bool,
    free_set: bool,
    max_vertex_quantifiers: usize,
    max_set_quantifiers: usize,
) -> Formula {
    let mut config = ndmc_core::random::SentenceConfig {
        max_vertex_quantifiers,
        max_set_quantifiers,
        ..ndmc_core::random::SentenceConfig::for_graph(g)
    };
    if free_var {
        config.labels.push(FREE_LABEL.into());
    }
    if free_set {
        config.colors.push(FREE_COLOR.into());
    }
    open_up(&ndmc_core::random::random_sentence(rng, &config))
}
