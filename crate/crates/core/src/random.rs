//! Seeded generators for graphs, sentences and CNF formulas.
//!
//! All functions take any `rand::Rng`, so results are reproducible from a
//! seeded generator such as `ChaCha8Rng`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::hardness::{CnfFormula, Literal};
use crate::logic::{Formula, Term};
use crate::partition::ClassKind;

/// `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

/// Every ordered pair becomes an arc with probability `p`.
pub fn random_digraph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::new_directed(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    g
}

/// A DAG: arcs follow a random topological order.
pub fn random_dag<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut g = Graph::new_directed(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(order[i], order[j]).expect("distinct vertices");
            }
        }
    }
    g
}

/// A graph built from `w` random classes of `1..=max_class` vertices each,
/// every class a clique or an independent set, with each pair of classes
/// fully joined with probability `p`. Its neighborhood diversity is at most
/// `w`.
pub fn random_typed_graph<R: Rng + ?Sized>(rng: &mut R, w: usize, max_class: usize, p: f64) -> Graph {
    let sizes: Vec<usize> = (0..w).map(|_| rng.gen_range(1..=max_class.max(1))).collect();
    let kinds: Vec<ClassKind> = (0..w)
        .map(|_| if rng.gen_bool(0.5) { ClassKind::Clique } else { ClassKind::Independent })
        .collect();
    let mut start = Vec::with_capacity(w);
    let mut n = 0;
    for &s in &sizes {
        start.push(n);
        n += s;
    }
    let members = |i: usize| start[i]..start[i] + sizes[i];
    let mut g = Graph::new(n);
    for i in 0..w {
        if kinds[i] == ClassKind::Clique {
            for u in members(i) {
                for v in u + 1..start[i] + sizes[i] {
                    g.add_edge(u, v).expect("distinct vertices");
                }
            }
        }
        for j in i + 1..w {
            if rng.gen_bool(p) {
                for u in members(i) {
                    for v in members(j) {
                        g.add_edge(u, v).expect("distinct vertices");
                    }
                }
            }
        }
    }
    g
}

/// Adds colors `C0, C1, ...`, each vertex joining each color with
/// probability `p`.
pub fn add_random_colors<R: Rng + ?Sized>(rng: &mut R, g: &mut Graph, count: usize, p: f64) {
    for c in 0..count {
        let members: Vec<usize> = (0..g.n()).filter(|_| rng.gen_bool(p)).collect();
        g.set_color(&format!("C{c}"), members).expect("vertices in range");
    }
}

/// Adds labels `l0, l1, ...` on random vertices. Does nothing on an empty
/// graph.
pub fn add_random_labels<R: Rng + ?Sized>(rng: &mut R, g: &mut Graph, count: usize) {
    if g.n() == 0 {
        return;
    }
    for l in 0..count {
        let v = rng.gen_range(0..g.n());
        g.set_label(&format!("l{l}"), v).expect("vertex in range");
    }
}

/// Shape of generated sentences.
#[derive(Clone, Debug, PartialEq)]
pub struct SentenceConfig {
    pub max_vertex_quantifiers: usize,
    pub max_set_quantifiers: usize,
    /// Nesting depth of connectives below each quantifier.
    pub connective_depth: usize,
    /// Use arc atoms `D` instead of edge atoms `E`.
    pub directed: bool,
    pub colors: Vec<String>,
    pub labels: Vec<String>,
}

impl Default for SentenceConfig {
    fn default() -> Self {
        SentenceConfig {
            max_vertex_quantifiers: 3,
            max_set_quantifiers: 1,
            connective_depth: 2,
            directed: false,
            colors: Vec::new(),
            labels: Vec::new(),
        }
    }
}

impl SentenceConfig {
    /// Colors and labels taken from `g`, and `directed` from its kind.
    pub fn for_graph(g: &Graph) -> Self {
        SentenceConfig {
            directed: g.is_directed(),
            colors: g.colors().map(|(c, _)| c.into()).collect(),
            labels: g.labels().map(|(l, _)| l.into()).collect(),
            ..SentenceConfig::default()
        }
    }
}

struct SentenceGen<'a, R: ?Sized> {
    rng: &'a mut R,
    config: &'a SentenceConfig,
    vertex_left: usize,
    set_left: usize,
    vars: Vec<String>,
    sets: Vec<String>,
    fresh: usize,
}

impl<R: Rng + ?Sized> SentenceGen<'_, R> {
    fn term(&mut self) -> Option<Term> {
        let total = self.vars.len() + self.config.labels.len();
        if total == 0 {
            return None;
        }
        let k = self.rng.gen_range(0..total);
        Some(match self.vars.get(k) {
            Some(x) => Term::Var(x.clone()),
            None => Term::Label(self.config.labels[k - self.vars.len()].clone()),
        })
    }

    fn atom(&mut self) -> Formula {
        let Some(a) = self.term() else {
            return if self.rng.gen_bool(0.5) { Formula::True } else { Formula::False };
        };
        let b = self.term().expect("a term exists");
        match self.rng.gen_range(0..10) {
            0..=3 if self.config.directed => Formula::arc(a, b),
            0..=3 => Formula::edge(a, b),
            4 => Formula::eq(a, b),
            5..=6 if !self.sets.is_empty() => {
                let s = self.sets.choose(self.rng).expect("nonempty").clone();
                Formula::in_set(a, &s)
            }
            7..=8 if !self.config.colors.is_empty() => {
                let c = self.config.colors.choose(self.rng).expect("nonempty").clone();
                Formula::in_color(a, &c)
            }
            _ if !self.sets.is_empty() => {
                let s = self.sets.choose(self.rng).expect("nonempty").clone();
                Formula::in_set(a, &s)
            }
            _ if self.config.directed => Formula::arc(a, b),
            _ => Formula::edge(a, b),
        }
    }

    fn quantified(&mut self) -> Formula {
        let set = self.set_left > 0 && (self.vertex_left == 0 || self.rng.gen_bool(0.35));
        let exists = self.rng.gen_bool(0.5);
        self.fresh += 1;
        if set {
            self.set_left -= 1;
            let name = format!("X{}", self.fresh);
            self.sets.push(name.clone());
            let body = self.formula(self.config.connective_depth);
            self.sets.pop();
            if exists {
                Formula::exists_set(&name, body)
            } else {
                Formula::forall_set(&name, body)
            }
        } else {
            self.vertex_left -= 1;
            let name = format!("x{}", self.fresh);
            self.vars.push(name.clone());
            let body = self.formula(self.config.connective_depth);
            self.vars.pop();
            if exists {
                Formula::exists(&name, body)
            } else {
                Formula::forall(&name, body)
            }
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        let can_quantify = self.vertex_left + self.set_left > 0;
        let no_terms = self.vars.is_empty() && self.config.labels.is_empty();
        if can_quantify && (no_terms || self.rng.gen_bool(0.4)) {
            return self.quantified();
        }
        if depth == 0 || self.rng.gen_bool(0.25) {
            return self.atom();
        }
        match self.rng.gen_range(0..5) {
            0 => Formula::not(self.formula(depth - 1)),
            1 => {
                let a = self.formula(depth - 1);
                Formula::and(a, self.formula(depth - 1))
            }
            2 => {
                let a = self.formula(depth - 1);
                Formula::or(a, self.formula(depth - 1))
            }
            3 => {
                let a = self.formula(depth - 1);
                Formula::implies(a, self.formula(depth - 1))
            }
            _ => {
                let a = self.formula(depth - 1);
                Formula::iff(a, self.formula(depth - 1))
            }
        }
    }
}

/// A random sentence within the quantifier budgets of `config`. Variables
/// are named `x1, x2, ...` and sets `X1, X2, ...`.
pub fn random_sentence<R: Rng + ?Sized>(rng: &mut R, config: &SentenceConfig) -> Formula {
    let mut gen = SentenceGen {
        rng,
        config,
        vertex_left: config.max_vertex_quantifiers,
        set_left: config.max_set_quantifiers,
        vars: Vec::new(),
        sets: Vec::new(),
        fresh: 0,
    };
    gen.formula(config.connective_depth)
}

/// A 3-CNF formula with clauses drawn uniformly (literals may repeat).
pub fn random_cnf<R: Rng + ?Sized>(rng: &mut R, num_vars: usize, num_clauses: usize) -> CnfFormula {
    let clauses = (0..num_clauses)
        .map(|_| {
            [(); 3].map(|_| Literal {
                var: rng.gen_range(1..=num_vars),
                positive: rng.gen_bool(0.5),
            })
        })
        .collect();
    CnfFormula::new(num_vars, clauses).expect("variables in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::metrics;
    use crate::partition::nd;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sentences_respect_budgets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let config = SentenceConfig {
            colors: alloc::vec!["C0".into()],
            labels: alloc::vec!["l0".into()],
            ..SentenceConfig::default()
        };
        for _ in 0..200 {
            let f = random_sentence(&mut rng, &config);
            assert!(f.is_sentence(), "{f}");
            let m = metrics(&f);
            assert!(m.q_v <= 3 && m.q_s <= 1);
        }
    }

    #[test]
    fn typed_graphs_have_small_diversity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let g = random_typed_graph(&mut rng, 4, 5, 0.5);
            assert!(nd(&g) <= 4);
        }
    }

    #[test]
    fn dags_are_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_dag(&mut rng, 6, 0.5);
            assert!(crate::hardness::levels(&g).is_ok());
        }
    }

    #[test]
    fn cnf_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_cnf(&mut rng, 4, 6);
        assert_eq!(f.clauses.len(), 6);
        assert!(f.validate().is_ok());
    }
}
