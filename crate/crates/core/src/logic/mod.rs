//! FO and MSO formulas over graphs.

mod metrics;
mod parse;
mod prenex;
mod render;

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use metrics::{metrics, SentenceMetrics};
pub use parse::{parse, parse_open};
pub use prenex::{is_prenex, to_prenex};
pub use render::render;

/// A vertex-valued term: a bound variable or a graph label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Label(String),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn label(name: &str) -> Term {
        Term::Label(name.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    /// Undirected adjacency.
    Edge(Term, Term),
    /// Arc from the first term to the second.
    Arc(Term, Term),
    Eq(Term, Term),
    InColor(Term, String),
    InSet(Term, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    ExistsV(String, Box<Formula>),
    ForallV(String, Box<Formula>),
    ExistsS(String, Box<Formula>),
    ForallS(String, Box<Formula>),
}

/// Quantifier kinds, used where a prefix is handled separately from its body.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    ExistsV,
    ForallV,
    ExistsS,
    ForallS,
}

impl Quantifier {
    pub fn dual(self) -> Quantifier {
        match self {
            Quantifier::ExistsV => Quantifier::ForallV,
            Quantifier::ForallV => Quantifier::ExistsV,
            Quantifier::ExistsS => Quantifier::ForallS,
            Quantifier::ForallS => Quantifier::ExistsS,
        }
    }

    pub fn is_set(self) -> bool {
        matches!(self, Quantifier::ExistsS | Quantifier::ForallS)
    }

    pub fn apply(self, var: String, body: Formula) -> Formula {
        let body = Box::new(body);
        match self {
            Quantifier::ExistsV => Formula::ExistsV(var, body),
            Quantifier::ForallV => Formula::ForallV(var, body),
            Quantifier::ExistsS => Formula::ExistsS(var, body),
            Quantifier::ForallS => Formula::ForallS(var, body),
        }
    }
}

impl Formula {
    pub fn edge(a: Term, b: Term) -> Formula {
        Formula::Edge(a, b)
    }

    pub fn arc(a: Term, b: Term) -> Formula {
        Formula::Arc(a, b)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn neq(a: Term, b: Term) -> Formula {
        Formula::not(Formula::Eq(a, b))
    }

    pub fn in_color(t: Term, color: &str) -> Formula {
        Formula::InColor(t, color.to_string())
    }

    pub fn in_set(t: Term, set: &str) -> Formula {
        Formula::InSet(t, set.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(x: &str, body: Formula) -> Formula {
        Formula::ExistsV(x.to_string(), Box::new(body))
    }

    pub fn forall(x: &str, body: Formula) -> Formula {
        Formula::ForallV(x.to_string(), Box::new(body))
    }

    pub fn exists_set(x: &str, body: Formula) -> Formula {
        Formula::ExistsS(x.to_string(), Box::new(body))
    }

    pub fn forall_set(x: &str, body: Formula) -> Formula {
        Formula::ForallS(x.to_string(), Box::new(body))
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn and_all<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::True)
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn or_all<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::False)
    }

    /// Splits a quantifier node into its kind, variable and body.
    pub fn as_quantifier(&self) -> Option<(Quantifier, &str, &Formula)> {
        match self {
            Formula::ExistsV(x, b) => Some((Quantifier::ExistsV, x, b)),
            Formula::ForallV(x, b) => Some((Quantifier::ForallV, x, b)),
            Formula::ExistsS(x, b) => Some((Quantifier::ExistsS, x, b)),
            Formula::ForallS(x, b) => Some((Quantifier::ForallS, x, b)),
            _ => None,
        }
    }

    pub fn is_quantifier(&self) -> bool {
        self.as_quantifier().is_some()
    }

    pub fn is_atom(&self) -> bool {
        matches!(
            self,
            Formula::True
                | Formula::False
                | Formula::Edge(..)
                | Formula::Arc(..)
                | Formula::Eq(..)
                | Formula::InColor(..)
                | Formula::InSet(..)
        )
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Not(a) => alloc::vec![a],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                alloc::vec![a, b]
            }
            Formula::ExistsV(_, b)
            | Formula::ForallV(_, b)
            | Formula::ExistsS(_, b)
            | Formula::ForallS(_, b) => alloc::vec![b],
            _ => Vec::new(),
        }
    }

    pub fn contains_quantifier(&self) -> bool {
        self.is_quantifier() || self.children().into_iter().any(Formula::contains_quantifier)
    }

    pub fn contains_set_quantifier(&self) -> bool {
        matches!(self, Formula::ExistsS(..) | Formula::ForallS(..))
            || self.children().into_iter().any(Formula::contains_set_quantifier)
    }

    /// True when no set quantifier occurs.
    pub fn is_fo(&self) -> bool {
        !self.contains_set_quantifier()
    }

    /// Free vertex variables, in sorted order.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut out, &mut BTreeSet::new());
        out
    }

    /// Free set variables (set names used in `InSet` without a binder).
    pub fn free_set_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut BTreeSet::new(), &mut out);
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty() && self.free_set_vars().is_empty()
    }

    fn collect_free<'a>(
        &'a self,
        vscope: &mut Vec<&'a str>,
        sscope: &mut Vec<&'a str>,
        vout: &mut BTreeSet<String>,
        sout: &mut BTreeSet<String>,
    ) {
        let mut term = |t: &Term, vscope: &Vec<&str>| {
            if let Term::Var(x) = t {
                if !vscope.contains(&x.as_str()) {
                    vout.insert(x.clone());
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Edge(a, b) | Formula::Arc(a, b) | Formula::Eq(a, b) => {
                term(a, vscope);
                term(b, vscope);
            }
            Formula::InColor(a, _) => term(a, vscope),
            Formula::InSet(a, s) => {
                term(a, vscope);
                if !sscope.contains(&s.as_str()) {
                    sout.insert(s.clone());
                }
            }
            Formula::ExistsV(x, b) | Formula::ForallV(x, b) => {
                vscope.push(x);
                b.collect_free(vscope, sscope, vout, sout);
                vscope.pop();
            }
            Formula::ExistsS(x, b) | Formula::ForallS(x, b) => {
                sscope.push(x);
                b.collect_free(vscope, sscope, vout, sout);
                sscope.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(vscope, sscope, vout, sout);
                }
            }
        }
    }

    /// Label names mentioned anywhere.
    pub fn labels(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_terms(&mut |t| {
            if let Term::Label(l) = t {
                out.insert(l.clone());
            }
        });
        out
    }

    /// Color names mentioned anywhere.
    pub fn colors(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::InColor(_, c) = f {
                out.insert(c.clone());
            }
        });
        out
    }

    /// Pre-order traversal of all subformulas.
    pub fn visit<F: FnMut(&Formula)>(&self, f: &mut F) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    pub fn visit_terms<F: FnMut(&Term)>(&self, f: &mut F) {
        self.visit(&mut |node| match node {
            Formula::Edge(a, b) | Formula::Arc(a, b) | Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::InColor(a, _) | Formula::InSet(a, _) => f(a),
            _ => {}
        });
    }

    /// Rebuilds the formula bottom-up, letting `f` replace any node after its
    /// children have been mapped.
    pub fn map<F: FnMut(Formula) -> Formula>(self, f: &mut F) -> Formula {
        let mapped = match self {
            Formula::Not(a) => Formula::Not(Box::new(a.map(f))),
            Formula::And(a, b) => Formula::And(Box::new(a.map(f)), Box::new(b.map(f))),
            Formula::Or(a, b) => Formula::Or(Box::new(a.map(f)), Box::new(b.map(f))),
            Formula::Implies(a, b) => Formula::Implies(Box::new(a.map(f)), Box::new(b.map(f))),
            Formula::Iff(a, b) => Formula::Iff(Box::new(a.map(f)), Box::new(b.map(f))),
            Formula::ExistsV(x, b) => Formula::ExistsV(x, Box::new(b.map(f))),
            Formula::ForallV(x, b) => Formula::ForallV(x, Box::new(b.map(f))),
            Formula::ExistsS(x, b) => Formula::ExistsS(x, Box::new(b.map(f))),
            Formula::ForallS(x, b) => Formula::ForallS(x, Box::new(b.map(f))),
            atom => atom,
        };
        f(mapped)
    }

    /// Applies `f` to every term.
    pub fn map_terms<F: FnMut(Term) -> Term>(self, f: &mut F) -> Formula {
        self.map(&mut |node| match node {
            Formula::Edge(a, b) => Formula::Edge(f(a), f(b)),
            Formula::Arc(a, b) => Formula::Arc(f(a), f(b)),
            Formula::Eq(a, b) => Formula::Eq(f(a), f(b)),
            Formula::InColor(a, c) => Formula::InColor(f(a), c),
            Formula::InSet(a, s) => Formula::InSet(f(a), s),
            other => other,
        })
    }

    /// Replaces free occurrences of vertex variable `x` by `t`. The caller
    /// guarantees `t` is not captured by a binder in `self`.
    pub fn substitute(&self, x: &str, t: &Term) -> Formula {
        match self {
            Formula::Edge(a, b) => Formula::Edge(subst_term(a, x, t), subst_term(b, x, t)),
            Formula::Arc(a, b) => Formula::Arc(subst_term(a, x, t), subst_term(b, x, t)),
            Formula::Eq(a, b) => Formula::Eq(subst_term(a, x, t), subst_term(b, x, t)),
            Formula::InColor(a, c) => Formula::InColor(subst_term(a, x, t), c.clone()),
            Formula::InSet(a, s) => Formula::InSet(subst_term(a, x, t), s.clone()),
            Formula::True | Formula::False => self.clone(),
            Formula::Not(a) => Formula::not(a.substitute(x, t)),
            Formula::And(a, b) => Formula::and(a.substitute(x, t), b.substitute(x, t)),
            Formula::Or(a, b) => Formula::or(a.substitute(x, t), b.substitute(x, t)),
            Formula::Implies(a, b) => Formula::implies(a.substitute(x, t), b.substitute(x, t)),
            Formula::Iff(a, b) => Formula::iff(a.substitute(x, t), b.substitute(x, t)),
            Formula::ExistsV(y, _) | Formula::ForallV(y, _) if y == x => self.clone(),
            Formula::ExistsV(y, b) => Formula::exists(y, b.substitute(x, t)),
            Formula::ForallV(y, b) => Formula::forall(y, b.substitute(x, t)),
            Formula::ExistsS(y, b) => Formula::exists_set(y, b.substitute(x, t)),
            Formula::ForallS(y, b) => Formula::forall_set(y, b.substitute(x, t)),
        }
    }
}

fn subst_term(term: &Term, x: &str, t: &Term) -> Term {
    match term {
        Term::Var(y) if y == x => t.clone(),
        other => other.clone(),
    }
}

impl core::fmt::Display for Term {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Term::Var(x) => f.write_str(x),
            Term::Label(l) => write!(f, "@{l}"),
        }
    }
}

impl core::fmt::Display for Formula {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        render::write_formula(f, self)
    }
}

impl core::str::FromStr for Formula {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
