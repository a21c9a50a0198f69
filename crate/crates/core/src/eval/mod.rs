//! Sentence evaluation: a brute-force reference evaluator and a checker whose
//! work depends on the number of vertex types rather than on `n`.
//!
//! Both evaluators run on a compiled form of the formula in which variables
//! are slot indices, labels are vertices and colors index a table.

mod fast;
mod naive;

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::logic::{Formula, Term};

pub use fast::{check_fo, check_fo_with, check_mso, check_mso_with, fo_branch_bound, mso_size_candidates, representatives};
pub use naive::{eval_naive, eval_naive_with};

/// Values for the free variables of a formula.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    pub vertices: BTreeMap<String, Vertex>,
    pub sets: BTreeMap<String, VertexSet>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind_vertex(mut self, name: &str, v: Vertex) -> Self {
        self.vertices.insert(name.to_string(), v);
        self
    }

    pub fn bind_set(mut self, name: &str, s: VertexSet) -> Self {
        self.sets.insert(name.to_string(), s);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Abort with `Error::BudgetExceeded` after this many node visits.
    pub budget: Option<u64>,
    /// Treat a label or color missing from the graph as making the sentence
    /// false instead of reporting an error.
    pub missing_names_false: bool,
    /// Convert to prenex form before evaluating.
    pub prenex: bool,
    /// Size bound for set sampling uses the total number of set quantifiers
    /// instead of those nested below the current one.
    pub total_set_bound: bool,
    /// Defer per-class size choices of a set until the body inspects them.
    /// Applies to set quantifiers whose body has no further set quantifiers.
    pub lazy_sets: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: None,
            missing_names_false: false,
            prenex: false,
            total_set_bound: false,
            lazy_sets: true,
        }
    }
}

impl CheckOptions {
    pub fn with_budget(budget: u64) -> Self {
        CheckOptions {
            budget: Some(budget),
            ..Self::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckStats {
    /// Formula nodes evaluated, summed over the whole run.
    pub node_visits: u64,
    /// Largest number of times any single formula node was evaluated.
    pub branches: u64,
    /// Candidate sets materialized or branched on by set quantifiers.
    pub set_candidates: u64,
    /// Width of the starting vertex partition (0 for the naive evaluator).
    pub width: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub value: bool,
    pub stats: CheckStats,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Operand {
    Slot(usize),
    Fixed(Vertex),
}

#[derive(Clone, Debug)]
pub(crate) enum Node {
    Const(bool),
    Adj(Operand, Operand),
    Eq(Operand, Operand),
    Color(Operand, usize),
    Member(Operand, usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Vertex(Box<Quant>),
    Set(Box<Quant>),
}

#[derive(Clone, Debug)]
pub(crate) struct Quant {
    pub exists: bool,
    pub slot: usize,
    pub body: Node,
    /// Index into per-quantifier counters.
    pub id: usize,
    /// Set quantifiers strictly inside `body`.
    pub sets_below: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub root: Node,
    pub vertex_slots: usize,
    pub set_slots: usize,
    pub colors: Vec<VertexSet>,
    pub quantifiers: usize,
    pub vertex_quantifiers: usize,
    pub set_quantifiers: usize,
    /// Vertices named by labels in the formula.
    pub labeled: VertexSet,
    /// Initial slot values for free variables.
    pub free_vertices: Vec<(usize, Vertex)>,
    pub free_sets: Vec<(usize, VertexSet)>,
    /// A name was missing and the options ask for a false sentence.
    pub forced_false: bool,
}

struct Compiler<'a> {
    g: &'a Graph,
    missing_false: bool,
    forced_false: bool,
    vscope: Vec<(String, usize)>,
    sscope: Vec<(String, usize)>,
    vertex_slots: usize,
    set_slots: usize,
    color_index: BTreeMap<String, usize>,
    colors: Vec<VertexSet>,
    quantifiers: usize,
    vertex_quantifiers: usize,
    set_quantifiers: usize,
    labeled: VertexSet,
}

impl Compiler<'_> {
    fn operand(&mut self, t: &Term) -> Result<Operand> {
        match t {
            Term::Var(x) => self
                .vscope
                .iter()
                .rev()
                .find(|(name, _)| name == x)
                .map(|&(_, slot)| Operand::Slot(slot))
                .ok_or_else(|| Error::FreeVariable(x.clone())),
            Term::Label(l) => match self.g.label(l) {
                Some(v) => {
                    self.labeled.insert(v);
                    Ok(Operand::Fixed(v))
                }
                None if self.missing_false => {
                    self.forced_false = true;
                    Ok(Operand::Fixed(0))
                }
                None => Err(Error::UnknownLabel(l.clone())),
            },
        }
    }

    fn binary(&mut self, a: &Formula, b: &Formula) -> Result<(Box<Node>, Box<Node>)> {
        Ok((Box::new(self.node(a)?), Box::new(self.node(b)?)))
    }

    fn node(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::True => Node::Const(true),
            Formula::False => Node::Const(false),
            Formula::Edge(a, b) | Formula::Arc(a, b) => {
                let directed_atom = matches!(f, Formula::Arc(..));
                if directed_atom != self.g.is_directed() {
                    return Err(Error::PredicateMismatch {
                        atom: if directed_atom { "D" } else { "E" },
                        graph: if self.g.is_directed() { "directed" } else { "undirected" },
                    });
                }
                Node::Adj(self.operand(a)?, self.operand(b)?)
            }
            Formula::Eq(a, b) => Node::Eq(self.operand(a)?, self.operand(b)?),
            Formula::InColor(a, c) => {
                let t = self.operand(a)?;
                match self.color_index.get(c) {
                    Some(&i) => Node::Color(t, i),
                    None => match self.g.color(c) {
                        Some(set) => {
                            let i = self.colors.len();
                            self.colors.push(set.clone());
                            self.color_index.insert(c.clone(), i);
                            Node::Color(t, i)
                        }
                        None if self.missing_false => {
                            self.forced_false = true;
                            Node::Const(false)
                        }
                        None => return Err(Error::UnknownColor(c.clone())),
                    },
                }
            }
            Formula::InSet(a, s) => {
                let t = self.operand(a)?;
                let slot = self
                    .sscope
                    .iter()
                    .rev()
                    .find(|(name, _)| name == s)
                    .map(|&(_, slot)| slot)
                    .ok_or_else(|| Error::FreeVariable(s.clone()))?;
                Node::Member(t, slot)
            }
            Formula::Not(a) => Node::Not(Box::new(self.node(a)?)),
            Formula::And(a, b) => {
                let (a, b) = self.binary(a, b)?;
                Node::And(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = self.binary(a, b)?;
                Node::Or(a, b)
            }
            Formula::Implies(a, b) => {
                let (a, b) = self.binary(a, b)?;
                Node::Implies(a, b)
            }
            Formula::Iff(a, b) => {
                let (a, b) = self.binary(a, b)?;
                Node::Iff(a, b)
            }
            Formula::ExistsV(x, body) | Formula::ForallV(x, body) => {
                let slot = self.vertex_slots;
                self.vertex_slots += 1;
                self.vertex_quantifiers += 1;
                let id = self.quantifiers;
                self.quantifiers += 1;
                self.vscope.push((x.clone(), slot));
                let body = self.node(body);
                self.vscope.pop();
                Node::Vertex(Box::new(Quant {
                    exists: matches!(f, Formula::ExistsV(..)),
                    slot,
                    body: body?,
                    id,
                    sets_below: 0,
                }))
            }
            Formula::ExistsS(x, body) | Formula::ForallS(x, body) => {
                let slot = self.set_slots;
                self.set_slots += 1;
                let before = self.set_quantifiers;
                self.set_quantifiers += 1;
                let id = self.quantifiers;
                self.quantifiers += 1;
                self.sscope.push((x.clone(), slot));
                let body = self.node(body);
                self.sscope.pop();
                Node::Set(Box::new(Quant {
                    exists: matches!(f, Formula::ExistsS(..)),
                    slot,
                    body: body?,
                    id,
                    sets_below: self.set_quantifiers - before - 1,
                }))
            }
        })
    }
}

pub(crate) fn compile(g: &Graph, f: &Formula, env: &Environment, opts: &CheckOptions) -> Result<Compiled> {
    let mut c = Compiler {
        g,
        missing_false: opts.missing_names_false,
        forced_false: false,
        vscope: Vec::new(),
        sscope: Vec::new(),
        vertex_slots: 0,
        set_slots: 0,
        color_index: BTreeMap::new(),
        colors: Vec::new(),
        quantifiers: 0,
        vertex_quantifiers: 0,
        set_quantifiers: 0,
        labeled: VertexSet::with_capacity(g.n()),
    };
    let mut free_vertices = Vec::new();
    for (name, &v) in &env.vertices {
        g.check_vertex(v)?;
        c.vscope.push((name.clone(), c.vertex_slots));
        free_vertices.push((c.vertex_slots, v));
        c.vertex_slots += 1;
    }
    let mut free_sets = Vec::new();
    for (name, set) in &env.sets {
        if let Some(v) = set.ones().find(|&v| v >= g.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        let mut s = set.clone();
        s.grow(g.n());
        c.sscope.push((name.clone(), c.set_slots));
        free_sets.push((c.set_slots, s));
        c.set_slots += 1;
    }
    let root = c.node(f)?;
    Ok(Compiled {
        root,
        vertex_slots: c.vertex_slots,
        set_slots: c.set_slots,
        colors: c.colors,
        quantifiers: c.quantifiers,
        vertex_quantifiers: c.vertex_quantifiers,
        set_quantifiers: c.set_quantifiers,
        labeled: c.labeled,
        free_vertices,
        free_sets,
        forced_false: c.forced_false,
    })
}

/// Per-quantifier evaluation counters and the global visit budget.
#[derive(Debug)]
pub(crate) struct Counters {
    pub visits: u64,
    pub budget: Option<u64>,
    pub per_quantifier: Vec<u64>,
    pub set_candidates: u64,
}

impl Counters {
    pub fn new(quantifiers: usize, budget: Option<u64>) -> Self {
        Counters {
            visits: 0,
            budget,
            per_quantifier: alloc::vec![0; quantifiers],
            set_candidates: 0,
        }
    }

    #[inline]
    pub fn visit(&mut self) -> Result<(), u64> {
        self.visits += 1;
        match self.budget {
            Some(b) if self.visits > b => Err(b),
            _ => Ok(()),
        }
    }

    pub fn stats(&self, width: usize) -> CheckStats {
        CheckStats {
            node_visits: self.visits,
            branches: self.per_quantifier.iter().copied().max().unwrap_or(0).max(1),
            set_candidates: self.set_candidates,
            width,
        }
    }
}
