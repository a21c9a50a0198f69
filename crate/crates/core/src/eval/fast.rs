//! Type-based checking.
//!
//! A vertex quantifier only needs to try the labeled vertices, the vertices
//! already bound, and one unpinned vertex per class of the current partition:
//! two unpinned vertices of the same class are swapped by an automorphism
//! fixing everything the formula can name.
//!
//! A set quantifier decides membership of every pinned vertex individually
//! and, for each class, only the number of its unpinned vertices that go into
//! the set, chosen from `mso_size_candidates`. The set itself is the smallest
//! unpinned vertices of each class up to the chosen count. Binding the set
//! refines the partition for everything below it.
//!
//! When the body of a set quantifier has no further set quantifiers, the
//! per-class and per-vertex choices are made lazily: the body runs with every
//! choice open, and the first membership test that hits an open choice aborts
//! the run, which is then repeated once per candidate value of that choice.
//! A run that finishes without touching an open choice has the same value for
//! every way of closing the remaining choices. While a class is open, its
//! unpinned vertices are still interchangeable (any two can be swapped
//! together with their membership), so one representative per open class
//! remains enough.

use alloc::vec::Vec;

use super::{compile, naive, CheckOptions, Compiled, Counters, Environment, Node, Operand, Outcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::logic::{to_prenex, Formula};
use crate::partition::{neighborhood_partition, NeighborhoodPartition};

/// Sizes worth trying for the intersection of a set with a class of
/// `class_size` interchangeable vertices: `0..=bound` and
/// `class_size - bound..=class_size`, clipped and deduplicated. All sizes
/// strictly between the two ranges behave alike.
pub fn mso_size_candidates(class_size: usize, bound: usize) -> Vec<usize> {
    if class_size <= bound.saturating_mul(2).saturating_add(1) {
        return (0..=class_size).collect();
    }
    (0..=bound).chain(class_size - bound..=class_size).collect()
}

/// `prod_{i < depth} (width + labels + i)`, saturating, and never below 1
/// since the root is evaluated once even on the empty graph.
pub fn fo_branch_bound(width: usize, labels: usize, depth: usize) -> u128 {
    (0..depth).fold(1u128, |acc, i| acc.saturating_mul((width + labels + i) as u128)).max(1)
}

/// Candidate values for a vertex quantifier: every labeled vertex of `g`,
/// every vertex in `bound`, and the smallest vertex of each class of `p`
/// that is neither labeled nor bound.
pub fn representatives(g: &Graph, p: &NeighborhoodPartition, bound: &[Vertex]) -> Vec<Vertex> {
    let labeled = g.labeled_vertices();
    let mut out: Vec<Vertex> = labeled.ones().collect();
    for &v in bound {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    for class in p.classes() {
        if let Some(&v) = class.iter().find(|&&v| !labeled.contains(v) && !bound.contains(&v)) {
            out.push(v);
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
enum Choice {
    Pinned(Vertex),
    Class(usize),
}

enum Stop {
    Budget(u64),
    Need(Choice),
}

impl From<u64> for Stop {
    fn from(b: u64) -> Self {
        Stop::Budget(b)
    }
}

struct LazySet {
    slot: usize,
    /// Vertices pinned when the quantifier was reached, with their membership
    /// once chosen.
    pinned: Vec<(Vertex, Option<bool>)>,
    /// Per class: the unpinned vertices in increasing order.
    unpinned: Vec<Vec<Vertex>>,
    /// Per class: the chosen number of unpinned members.
    sizes: Vec<Option<usize>>,
    class_of: Vec<usize>,
    /// Index of a vertex within its class's `unpinned` list, or `usize::MAX`
    /// for pinned vertices.
    position: Vec<usize>,
    bound: usize,
}

impl LazySet {
    fn member(&self, v: Vertex) -> Result<bool, Stop> {
        let pos = self.position[v];
        if pos == usize::MAX {
            let &(_, state) = self.pinned.iter().find(|(p, _)| *p == v).expect("pinned vertex is tracked");
            return state.ok_or(Stop::Need(Choice::Pinned(v)));
        }
        let c = self.class_of[v];
        match self.sizes[c] {
            Some(k) => Ok(pos < k),
            None => Err(Stop::Need(Choice::Class(c))),
        }
    }
}

struct Fast<'a> {
    g: &'a Graph,
    colors: &'a [VertexSet],
    labeled: &'a VertexSet,
    vals: Vec<Vertex>,
    sets: Vec<VertexSet>,
    bound: Vec<Vertex>,
    pin_count: Vec<u32>,
    classes: Vec<Vec<Vertex>>,
    lazy: Option<LazySet>,
    counters: Counters,
    vertex_quantifiers: usize,
    set_quantifiers: usize,
    total_set_bound: bool,
    lazy_enabled: bool,
}

impl Fast<'_> {
    #[inline]
    fn value(&self, t: Operand) -> Vertex {
        match t {
            Operand::Slot(s) => self.vals[s],
            Operand::Fixed(v) => v,
        }
    }

    #[inline]
    fn is_pinned(&self, v: Vertex) -> bool {
        self.labeled.contains(v) || self.pin_count[v] > 0
    }

    fn bind(&mut self, slot: usize, v: Vertex) {
        self.vals[slot] = v;
        self.bound.push(v);
        self.pin_count[v] += 1;
    }

    fn unbind(&mut self) {
        let v = self.bound.pop().expect("balanced bind");
        self.pin_count[v] -= 1;
    }

    fn pinned_vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.labeled.ones().collect();
        for &v in &self.bound {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out.sort_unstable();
        out
    }

    fn representatives(&self) -> Vec<Vertex> {
        let mut out = self.pinned_vertices();
        let first_free = |part: &[Vertex]| part.iter().copied().find(|&v| !self.is_pinned(v));
        match &self.lazy {
            None => out.extend(self.classes.iter().filter_map(|c| first_free(c))),
            Some(lazy) => {
                for (c, class) in self.classes.iter().enumerate() {
                    match lazy.sizes[c] {
                        Some(k) => {
                            let (inside, outside) = lazy.unpinned[c].split_at(k);
                            out.extend(first_free(inside));
                            out.extend(first_free(outside));
                        }
                        None => out.extend(first_free(class)),
                    }
                }
            }
        }
        out
    }

    fn size_bound(&self, q: &super::Quant) -> usize {
        let sets = if self.total_set_bound {
            self.set_quantifiers
        } else {
            q.sets_below
        };
        let scale = self.vertex_quantifiers.max(1);
        let bound = if sets >= usize::BITS as usize {
            usize::MAX
        } else {
            (1usize << sets).saturating_mul(scale)
        };
        bound.min(self.g.n())
    }

    fn eval(&mut self, node: &Node) -> Result<bool, Stop> {
        self.counters.visit()?;
        Ok(match node {
            Node::Const(b) => *b,
            Node::Adj(a, b) => self.g.adjacent(self.value(*a), self.value(*b)),
            Node::Eq(a, b) => self.value(*a) == self.value(*b),
            Node::Color(a, c) => self.colors[*c].contains(self.value(*a)),
            Node::Member(a, s) => {
                let v = self.value(*a);
                match &self.lazy {
                    Some(lazy) if lazy.slot == *s => lazy.member(v)?,
                    _ => self.sets[*s].contains(v),
                }
            }
            Node::Not(a) => !self.eval(a)?,
            Node::And(a, b) => self.eval(a)? && self.eval(b)?,
            Node::Or(a, b) => self.eval(a)? || self.eval(b)?,
            Node::Implies(a, b) => !self.eval(a)? || self.eval(b)?,
            Node::Iff(a, b) => self.eval(a)? == self.eval(b)?,
            Node::Vertex(q) => {
                for v in self.representatives() {
                    self.bind(q.slot, v);
                    self.counters.per_quantifier[q.id] += 1;
                    let r = self.eval(&q.body);
                    self.unbind();
                    if r? == q.exists {
                        return Ok(q.exists);
                    }
                }
                !q.exists
            }
            Node::Set(q) => {
                if self.lazy_enabled && q.sets_below == 0 {
                    self.lazy_set(q)?
                } else {
                    self.eager_set(q)?
                }
            }
        })
    }

    fn unpinned_classes(&self) -> Vec<Vec<Vertex>> {
        self.classes
            .iter()
            .map(|c| c.iter().copied().filter(|&v| !self.is_pinned(v)).collect())
            .collect()
    }

    fn eager_set(&mut self, q: &super::Quant) -> Result<bool, Stop> {
        let n = self.g.n();
        let bound = self.size_bound(q);
        let pinned = self.pinned_vertices();
        let unpinned = self.unpinned_classes();
        let candidates: Vec<Vec<usize>> = unpinned
            .iter()
            .map(|u| mso_size_candidates(u.len(), bound))
            .collect();
        // One odometer digit per pinned vertex (out, in) and per class.
        let radix: Vec<usize> = pinned
            .iter()
            .map(|_| 2)
            .chain(candidates.iter().map(Vec::len))
            .collect();
        let mut digits = alloc::vec![0usize; radix.len()];
        loop {
            let mut s = VertexSet::with_capacity(n);
            for (i, &v) in pinned.iter().enumerate() {
                if digits[i] == 1 {
                    s.insert(v);
                }
            }
            for (c, members) in unpinned.iter().enumerate() {
                let k = candidates[c][digits[pinned.len() + c]];
                members[..k].iter().for_each(|&v| s.insert(v));
            }
            let refined = refine(&self.classes, &s);
            let saved_classes = core::mem::replace(&mut self.classes, refined);
            let saved_set = core::mem::replace(&mut self.sets[q.slot], s);
            self.counters.per_quantifier[q.id] += 1;
            self.counters.set_candidates += 1;
            let r = self.eval(&q.body);
            self.classes = saved_classes;
            self.sets[q.slot] = saved_set;
            if r? == q.exists {
                return Ok(q.exists);
            }
            if !advance(&mut digits, &radix) {
                return Ok(!q.exists);
            }
        }
    }

    fn lazy_set(&mut self, q: &super::Quant) -> Result<bool, Stop> {
        let n = self.g.n();
        let mut class_of = alloc::vec![0; n];
        let mut position = alloc::vec![usize::MAX; n];
        let unpinned = self.unpinned_classes();
        for (c, class) in self.classes.iter().enumerate() {
            for &v in class {
                class_of[v] = c;
            }
        }
        for members in &unpinned {
            for (i, &v) in members.iter().enumerate() {
                position[v] = i;
            }
        }
        let state = LazySet {
            slot: q.slot,
            pinned: self.pinned_vertices().into_iter().map(|v| (v, None)).collect(),
            sizes: alloc::vec![None; unpinned.len()],
            unpinned,
            class_of,
            position,
            bound: self.size_bound(q),
        };
        let outer = self.lazy.replace(state);
        debug_assert!(outer.is_none(), "lazy sets do not nest");
        let r = self.lazy_search(q);
        self.lazy = outer;
        r
    }

    fn lazy_search(&mut self, q: &super::Quant) -> Result<bool, Stop> {
        self.counters.per_quantifier[q.id] += 1;
        self.counters.set_candidates += 1;
        let choice = match self.eval(&q.body) {
            Ok(value) => return Ok(value),
            Err(Stop::Need(choice)) => choice,
            Err(stop) => return Err(stop),
        };
        let lazy = self.lazy.as_ref().expect("lazy state is set");
        let options: Vec<usize> = match choice {
            Choice::Pinned(_) => alloc::vec![0, 1],
            Choice::Class(c) => mso_size_candidates(lazy.unpinned[c].len(), lazy.bound),
        };
        for option in options {
            self.set_choice(choice, Some(option));
            let r = self.lazy_search(q);
            self.set_choice(choice, None);
            if r? == q.exists {
                return Ok(q.exists);
            }
        }
        Ok(!q.exists)
    }

    fn set_choice(&mut self, choice: Choice, value: Option<usize>) {
        let lazy = self.lazy.as_mut().expect("lazy state is set");
        match choice {
            Choice::Pinned(v) => {
                let entry = lazy.pinned.iter_mut().find(|(p, _)| *p == v).expect("tracked");
                entry.1 = value.map(|x| x == 1);
            }
            Choice::Class(c) => lazy.sizes[c] = value,
        }
    }
}

/// Mixed-radix increment; false once every combination has been produced.
fn advance(digits: &mut [usize], radix: &[usize]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radix) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

fn refine(classes: &[Vec<Vertex>], s: &VertexSet) -> Vec<Vec<Vertex>> {
    let mut out = Vec::with_capacity(classes.len() * 2);
    for class in classes {
        let (inside, outside): (Vec<Vertex>, Vec<Vertex>) = class.iter().partition(|&&v| s.contains(v));
        if !inside.is_empty() {
            out.push(inside);
        }
        if !outside.is_empty() {
            out.push(outside);
        }
    }
    out
}

fn run(g: &Graph, c: &Compiled, opts: &CheckOptions) -> Result<Outcome> {
    if g.n() == 0 || c.forced_false {
        return naive::run(g, c, opts.budget);
    }
    let p = neighborhood_partition(g);
    let width = p.width();
    let mut classes: Vec<Vec<Vertex>> = p.classes().to_vec();
    let mut vals = alloc::vec![0; c.vertex_slots];
    let mut sets = alloc::vec![VertexSet::with_capacity(g.n()); c.set_slots];
    let mut bound = Vec::new();
    let mut pin_count = alloc::vec![0u32; g.n()];
    for &(slot, v) in &c.free_vertices {
        vals[slot] = v;
        bound.push(v);
        pin_count[v] += 1;
    }
    for (slot, s) in &c.free_sets {
        sets[*slot] = s.clone();
        classes = refine(&classes, s);
    }
    let mut fast = Fast {
        g,
        colors: &c.colors,
        labeled: &c.labeled,
        vals,
        sets,
        bound,
        pin_count,
        classes,
        lazy: None,
        counters: Counters::new(c.quantifiers, opts.budget),
        vertex_quantifiers: c.vertex_quantifiers,
        set_quantifiers: c.set_quantifiers,
        total_set_bound: opts.total_set_bound,
        lazy_enabled: opts.lazy_sets,
    };
    let value = match fast.eval(&c.root) {
        Ok(v) => v,
        Err(Stop::Budget(b)) => return Err(Error::BudgetExceeded(b)),
        Err(Stop::Need(_)) => unreachable!("open choices are resolved by their quantifier"),
    };
    Ok(Outcome {
        value,
        stats: fast.counters.stats(width),
    })
}

fn prepare(f: &Formula, opts: &CheckOptions) -> Formula {
    if opts.prenex {
        to_prenex(f)
    } else {
        f.clone()
    }
}

/// Decides an FO sentence. Sentences with set quantifiers are rejected.
pub fn check_fo(g: &Graph, f: &Formula) -> Result<bool> {
    check_fo_with(g, f, &Environment::new(), &CheckOptions::default()).map(|o| o.value)
}

pub fn check_fo_with(g: &Graph, f: &Formula, env: &Environment, opts: &CheckOptions) -> Result<Outcome> {
    if !f.is_fo() {
        return Err(Error::SetQuantifierInFo);
    }
    let f = prepare(f, opts);
    let c = compile(g, &f, env, opts)?;
    run(g, &c, opts)
}

/// Decides an MSO sentence (vertex and set quantifiers).
pub fn check_mso(g: &Graph, f: &Formula) -> Result<bool> {
    check_mso_with(g, f, &Environment::new(), &CheckOptions::default()).map(|o| o.value)
}

pub fn check_mso_with(g: &Graph, f: &Formula, env: &Environment, opts: &CheckOptions) -> Result<Outcome> {
    let f = prepare(f, opts);
    let c = compile(g, &f, env, opts)?;
    run(g, &c, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval_naive;
    use crate::logic::parse;
    use alloc::vec;

    const TWO_COLORABLE: &str = "existsS X. forall x. forall y. (E(x,y) -> !(x in X <-> y in X))";
    const DOMINATING: &str = "exists x. forall y. (x = y | E(x,y))";

    #[test]
    fn size_candidates() {
        assert_eq!(mso_size_candidates(10, 2), vec![0, 1, 2, 8, 9, 10]);
        assert_eq!(mso_size_candidates(3, 2), vec![0, 1, 2, 3]);
        assert_eq!(mso_size_candidates(5, 0), vec![0, 5]);
        assert_eq!(mso_size_candidates(0, 3), vec![0]);
        assert_eq!(mso_size_candidates(5, 2), vec![0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn representative_counts() {
        let k5 = Graph::complete(5);
        let p = neighborhood_partition(&k5);
        assert_eq!(representatives(&k5, &p, &[]), vec![0]);
        assert_eq!(representatives(&k5, &p, &[0]), vec![0, 1]);
        let mut k22 = Graph::complete_bipartite(2, 2);
        k22.set_label("a", 0).unwrap();
        let p = neighborhood_partition(&k22);
        assert_eq!(representatives(&k22, &p, &[]), vec![0, 1, 2]);
    }

    #[test]
    fn fo_examples() {
        let f = parse(DOMINATING).unwrap();
        assert!(!check_fo(&Graph::complete_bipartite(100, 100), &f).unwrap());
        assert!(check_fo(&Graph::star(50), &f).unwrap());
        assert!(check_fo(&Graph::cycle(7), &parse("forall x. x = x").unwrap()).unwrap());
        assert_eq!(
            check_fo(&Graph::path(3), &parse(TWO_COLORABLE).unwrap()),
            Err(Error::SetQuantifierInFo)
        );
    }

    #[test]
    fn mso_examples() {
        let f = parse(TWO_COLORABLE).unwrap();
        assert!(check_mso(&Graph::complete_bipartite(200, 200), &f).unwrap());
        assert!(!check_mso(&Graph::cycle(5), &f).unwrap());
        assert!(check_mso(&Graph::complete(4), &parse("existsS X. forall x. x in X").unwrap()).unwrap());
    }

    #[test]
    fn lazy_and_eager_agree() {
        let eager = CheckOptions {
            lazy_sets: false,
            ..CheckOptions::default()
        };
        let sentences = [
            TWO_COLORABLE,
            "existsS X. (exists x. x in X) & forall x. forall y. ((x in X & y in X) -> (x = y | E(x, y)))",
            "forallS X. exists x. (x in X | forall y. !(y in X))",
            "existsS X. forallS Y. forall x. (x in Y -> x in X)",
        ];
        let graphs = [Graph::cycle(5), Graph::complete_bipartite(3, 4), Graph::complete(3).join(&Graph::edgeless(4))];
        for s in sentences {
            let f = parse(s).unwrap();
            for g in &graphs {
                let lazy = check_mso(g, &f).unwrap();
                let strict = check_mso_with(g, &f, &Environment::new(), &eager).unwrap().value;
                assert_eq!(lazy, strict, "{s} on n={}", g.n());
                assert_eq!(lazy, eval_naive(g, &f, 100_000_000).unwrap(), "{s}");
            }
        }
    }

    #[test]
    fn branch_count_within_bound() {
        let f = parse("forall x. exists y. forall z. (E(x, y) & (z = x | z = y | E(z, x)))").unwrap();
        let g = Graph::complete_bipartite(30, 40);
        let out = check_fo_with(&g, &f, &Environment::new(), &CheckOptions::default()).unwrap();
        assert!(u128::from(out.stats.branches) <= fo_branch_bound(out.stats.width, 0, 3));
    }

    #[test]
    fn labels_are_pinned() {
        let mut g = Graph::star(4);
        g.set_label("leaf", 3).unwrap();
        let f = parse("exists x. (x != @leaf & !E(x, @leaf) & forall y. (y = x | !E(x, y) | E(y, @leaf)))").unwrap();
        assert_eq!(check_fo(&g, &f).unwrap(), eval_naive(&g, &f, 1_000_000).unwrap());
    }
}
