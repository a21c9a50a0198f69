//! Reference evaluator: vertex quantifiers range over all `n` vertices and
//! set quantifiers over all `2^n` subsets (by increasing size, then
//! lexicographically). Only connectives and quantifiers short-circuit.

use alloc::vec::Vec;

use super::{compile, CheckOptions, Compiled, Counters, Environment, Node, Operand, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::logic::Formula;

struct Naive<'a> {
    g: &'a Graph,
    colors: &'a [VertexSet],
    vals: Vec<Vertex>,
    sets: Vec<VertexSet>,
    counters: Counters,
}

impl Naive<'_> {
    #[inline]
    fn value(&self, t: Operand) -> Vertex {
        match t {
            Operand::Slot(s) => self.vals[s],
            Operand::Fixed(v) => v,
        }
    }

    fn eval(&mut self, node: &Node) -> Result<bool, u64> {
        self.counters.visit()?;
        Ok(match node {
            Node::Const(b) => *b,
            Node::Adj(a, b) => self.g.adjacent(self.value(*a), self.value(*b)),
            Node::Eq(a, b) => self.value(*a) == self.value(*b),
            Node::Color(a, c) => self.colors[*c].contains(self.value(*a)),
            Node::Member(a, s) => self.sets[*s].contains(self.value(*a)),
            Node::Not(a) => !self.eval(a)?,
            Node::And(a, b) => self.eval(a)? && self.eval(b)?,
            Node::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Node::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Node::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Node::Vertex(q) => {
                for v in 0..self.g.n() {
                    self.vals[q.slot] = v;
                    self.counters.per_quantifier[q.id] += 1;
                    if self.eval(&q.body)? == q.exists {
                        return Ok(q.exists);
                    }
                }
                !q.exists
            }
            Node::Set(q) => {
                let n = self.g.n();
                for k in 0..=n {
                    let mut idx: Vec<usize> = (0..k).collect();
                    loop {
                        let mut s = VertexSet::with_capacity(n);
                        idx.iter().for_each(|&v| s.insert(v));
                        self.sets[q.slot] = s;
                        self.counters.per_quantifier[q.id] += 1;
                        self.counters.set_candidates += 1;
                        if self.eval(&q.body)? == q.exists {
                            return Ok(q.exists);
                        }
                        if !next_combination(&mut idx, n) {
                            break;
                        }
                    }
                }
                !q.exists
            }
        })
    }
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

pub(crate) fn run(g: &Graph, c: &Compiled, budget: Option<u64>) -> Result<Outcome> {
    if c.forced_false {
        return Ok(Outcome {
            value: false,
            stats: Counters::new(0, None).stats(0),
        });
    }
    let mut vals = alloc::vec![0; c.vertex_slots];
    for &(slot, v) in &c.free_vertices {
        vals[slot] = v;
    }
    let mut sets = alloc::vec![VertexSet::with_capacity(g.n()); c.set_slots];
    for (slot, s) in &c.free_sets {
        sets[*slot] = s.clone();
    }
    let mut ev = Naive {
        g,
        colors: &c.colors,
        vals,
        sets,
        counters: Counters::new(c.quantifiers, budget),
    };
    let value = ev.eval(&c.root).map_err(Error::BudgetExceeded)?;
    Ok(Outcome {
        value,
        stats: ev.counters.stats(0),
    })
}

/// Exact truth value of the sentence `f` on `g`, giving up after `budget`
/// node visits.
pub fn eval_naive(g: &Graph, f: &Formula, budget: u64) -> Result<bool> {
    eval_naive_with(g, f, &Environment::new(), &CheckOptions::with_budget(budget)).map(|o| o.value)
}

/// Evaluates `f` with its free variables taken from `env`. The `prenex`,
/// `total_set_bound` and `lazy_sets` options do not apply.
pub fn eval_naive_with(g: &Graph, f: &Formula, env: &Environment, opts: &CheckOptions) -> Result<Outcome> {
    let c = compile(g, f, env, opts)?;
    run(g, &c, opts.budget)
}
