use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{HardnessInstance, Stage};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::logic::{Formula, Term};

/// Longest-path levels: sinks get 1, every other vertex one more than its
/// highest out-neighbor.
pub fn levels(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_directed() {
        return Err(Error::InvalidInstance("levels need a digraph".into()));
    }
    let n = g.n();
    let mut pending: Vec<usize> = (0..n).map(|v| g.out_neighbors(v).count_ones(..)).collect();
    let mut level = alloc::vec![0; n];
    let mut ready: Vec<Vertex> = (0..n).filter(|&v| pending[v] == 0).collect();
    let mut done = 0;
    while let Some(v) = ready.pop() {
        done += 1;
        level[v] = 1 + g.out_neighbors(v).ones().map(|w| level[w]).max().unwrap_or(0);
        for u in g.in_neighbors(v).ones() {
            pending[u] -= 1;
            if pending[u] == 0 {
                ready.push(u);
            }
        }
    }
    if done < n {
        return Err(Error::NotADag);
    }
    Ok(level)
}

/// Hands out names not used anywhere in a formula.
struct Names(BTreeSet<String>);

impl Names {
    fn of(f: &Formula) -> Self {
        let mut used = BTreeSet::new();
        f.visit(&mut |node| {
            if let Some((_, x, _)) = node.as_quantifier() {
                used.insert(x.to_string());
            }
            if let Formula::InSet(_, s) = node {
                used.insert(s.clone());
            }
        });
        f.visit_terms(&mut |t| {
            if let Term::Var(x) = t {
                used.insert(x.clone());
            }
        });
        Names(used)
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        while self.0.contains(&name) {
            name.push('\'');
        }
        self.0.insert(name.clone());
        name
    }
}

fn fresh_key(taken: impl Fn(&str) -> bool, base: &str) -> String {
    let mut name = base.to_string();
    while taken(&name) {
        name.push('\'');
    }
    name
}

/// Rewrites atoms with `atom` and guards each vertex quantifier of `f` with
/// `guard(x)`: `exists x. (guard & body)`, `forall x. (guard -> body)`.
/// Nodes produced by `atom` are not visited again.
fn rewrite(
    f: Formula,
    atom: &mut dyn FnMut(Formula) -> Formula,
    guard: Option<&dyn Fn(&str) -> Formula>,
) -> Formula {
    f.map(&mut |node| match node {
        Formula::ExistsV(x, body) => match guard {
            Some(g) => {
                let gx = g(&x);
                Formula::ExistsV(x, Box::new(Formula::and(gx, *body)))
            }
            None => Formula::ExistsV(x, body),
        },
        Formula::ForallV(x, body) => match guard {
            Some(g) => {
                let gx = g(&x);
                Formula::ForallV(x, Box::new(Formula::implies(gx, *body)))
            }
            None => Formula::ForallV(x, body),
        },
        other if other.is_atom() => atom(other),
        other => other,
    })
}

fn require_stage(inst: &HardnessInstance, stage: Stage) -> Result<()> {
    if inst.stage != stage {
        return Err(Error::InvalidInstance(format!(
            "expected a {} instance, got {}",
            stage.name(),
            inst.stage.name()
        )));
    }
    Ok(())
}

fn check_names(g: &Graph, f: &Formula) -> Result<()> {
    if let Some(l) = f.labels().into_iter().find(|l| g.label(l).is_none()) {
        return Err(Error::UnknownLabel(l));
    }
    if let Some(c) = f.colors().into_iter().find(|c| g.color(c).is_none()) {
        return Err(Error::UnknownColor(c));
    }
    Ok(())
}

/// How the path-prefix sets of the level test are quantified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SetEncoding {
    /// One set quantifier per prefix.
    #[default]
    Mso,
    /// One vertex variable per path vertex, keeping FO inputs FO.
    Fo,
}

/// Removes arc directions. A path `p_1 .. p_L` (color `P`, `p_1` labeled) is
/// added and each DAG vertex joined to the path vertex of its level; an arc
/// `D(a, b)` becomes `E(a, b)` plus "the level of `a` is at least the level
/// of `b`", which holds for exactly one orientation of each edge.
pub fn directed_to_undirected(inst: &HardnessInstance) -> Result<HardnessInstance> {
    directed_to_undirected_with(inst, SetEncoding::Mso)
}

pub fn directed_to_undirected_with(inst: &HardnessInstance, encoding: SetEncoding) -> Result<HardnessInstance> {
    require_stage(inst, Stage::Directed)?;
    let g = &inst.graph;
    check_names(g, &inst.sentence)?;
    let level = levels(g)?;
    let n = g.n();
    let top = level.iter().copied().max().unwrap_or(0).max(1);
    let path = |i: usize| n + i - 1;

    let mut h = g.underlying_undirected();
    for _ in 0..top {
        h.add_vertex();
    }
    for i in 1..top {
        h.add_edge(path(i), path(i + 1))?;
    }
    for (u, &l) in level.iter().enumerate() {
        h.add_edge(u, path(l))?;
    }
    let color = fresh_key(|c| g.color(c).is_some(), "P");
    h.set_color(&color, (1..=top).map(path))?;
    let start = fresh_key(|l| g.label(l).is_some(), "ls");
    h.set_label(&start, path(1))?;

    let mut names = Names::of(&inst.sentence);
    let level_test = LevelTest {
        color: color.clone(),
        start: Term::Label(start),
        encoding,
        x: names.fresh("px"),
        y: names.fresh("py"),
        sets: [names.fresh("Sx"), names.fresh("Sy")],
        members: [0, 1].map(|k| (0..top).map(|i| names.fresh(&format!("s{k}_{i}"))).collect()),
        z: [names.fresh("z"), names.fresh("z1"), names.fresh("z2")],
    };
    let not_on_path = |x: &str| Formula::not(Formula::in_color(Term::var(x), &color));
    let sentence = rewrite(
        inst.sentence.clone(),
        &mut |atom| match atom {
            Formula::Arc(a, b) => {
                let test = level_test.at_least(&a, &b);
                Formula::and(Formula::edge(a, b), test)
            }
            other => other,
        },
        Some(&not_on_path),
    );
    Ok(HardnessInstance::assemble(
        h,
        sentence,
        Stage::Undirected,
        Some(level),
        inst.metadata.bit_width,
    ))
}

struct LevelTest {
    color: String,
    start: Term,
    encoding: SetEncoding,
    x: String,
    y: String,
    sets: [String; 2],
    members: [Vec<String>; 2],
    z: [String; 3],
}

impl LevelTest {
    fn member(&self, t: Term, k: usize) -> Formula {
        match self.encoding {
            SetEncoding::Mso => Formula::in_set(t, &self.sets[k]),
            SetEncoding::Fo => {
                Formula::or_all(self.members[k].iter().map(|s| Formula::eq(t.clone(), Term::var(s))))
            }
        }
    }

    fn on_path(&self, t: Term) -> Formula {
        Formula::in_color(t, &self.color)
    }

    /// `exists S_k. body`, with `S_k` a set or a tuple of path vertices.
    fn bind(&self, k: usize, body: Formula) -> Formula {
        match self.encoding {
            SetEncoding::Mso => Formula::exists_set(&self.sets[k], body),
            SetEncoding::Fo => self.members[k].iter().rev().fold(body, |acc, s| {
                Formula::exists(s, Formula::and(self.on_path(Term::var(s)), acc))
            }),
        }
    }

    /// Set `k` is exactly the path prefix from the start to `t`.
    fn prefix(&self, t: Term, k: usize) -> Formula {
        let [y, z1, z2] = self.z.clone().map(|s| Term::Var(s));
        let y_name = &self.z[0];
        let inner = Formula::and_all([
            self.member(z1.clone(), k),
            self.member(z2.clone(), k),
            Formula::edge(y.clone(), z1.clone()),
            Formula::edge(y.clone(), z2.clone()),
            Formula::neq(z1.clone(), z2.clone()),
        ]);
        let interior = Formula::forall(
            y_name,
            Formula::implies(
                Formula::and_all([
                    self.member(y.clone(), k),
                    Formula::neq(y.clone(), t.clone()),
                    Formula::neq(y.clone(), self.start.clone()),
                ]),
                Formula::exists(&self.z[1], Formula::exists(&self.z[2], inner)),
            ),
        );
        let mut parts = alloc::vec![
            self.on_path(t.clone()),
            self.member(t, k),
            self.member(self.start.clone(), k),
        ];
        if self.encoding == SetEncoding::Mso {
            parts.push(Formula::forall(
                y_name,
                Formula::implies(self.member(y.clone(), k), self.on_path(y.clone())),
            ));
        }
        parts.push(interior);
        Formula::and_all(parts)
    }

    /// The level of `a` is at least the level of `b`.
    fn at_least(&self, a: &Term, b: &Term) -> Formula {
        let (x, y) = (Term::var(&self.x), Term::var(&self.y));
        let z = Term::var(&self.z[0]);
        let subset = Formula::forall(&self.z[0], Formula::implies(self.member(z.clone(), 1), self.member(z, 0)));
        let sets = self.bind(0, Formula::and(self.prefix(x.clone(), 0), self.bind(1, Formula::and(self.prefix(y.clone(), 1), subset))));
        Formula::exists(
            &self.x,
            Formula::and_all([
                Formula::edge(a.clone(), x.clone()),
                self.on_path(x),
                Formula::exists(
                    &self.y,
                    Formula::and_all([Formula::edge(b.clone(), y.clone()), self.on_path(y), sets]),
                ),
            ]),
        )
    }
}

enum ColorAs {
    Apex(String),
    Member(String),
    Empty,
}

/// Replaces each color with two or more members by a labeled apex adjacent
/// to its members, so `t in C` becomes `E(t, @apex)`. A single-member color
/// becomes a label on that member (`t in C` becomes `t = @label`) and an
/// empty one becomes `false`; an apex there would be pendant or isolated.
pub fn decolor(inst: &HardnessInstance) -> Result<HardnessInstance> {
    require_stage(inst, Stage::Undirected)?;
    let g = &inst.graph;
    check_names(g, &inst.sentence)?;
    let mut h = g.clone();
    let mut replaced = BTreeMap::new();
    let mut apex_labels = Vec::new();
    let colors: Vec<(String, Vec<Vertex>)> = g
        .colors()
        .map(|(c, set)| (c.to_string(), set.ones().collect()))
        .collect();
    for (c, members) in &colors {
        h.remove_color(c);
        let how = match members.as_slice() {
            [] => ColorAs::Empty,
            &[v] => {
                let label = fresh_key(|l| h.label(l).is_some(), &format!("color_{c}"));
                h.set_label(&label, v)?;
                ColorAs::Member(label)
            }
            _ => {
                let a = h.add_vertex();
                for &v in members {
                    h.add_edge(a, v)?;
                }
                let label = fresh_key(|l| h.label(l).is_some(), &format!("apex_{c}"));
                h.set_label(&label, a)?;
                apex_labels.push(label.clone());
                ColorAs::Apex(label)
            }
        };
        replaced.insert(c.clone(), how);
    }
    let guard = |x: &str| {
        Formula::and_all(apex_labels.iter().map(|l| Formula::neq(Term::var(x), Term::label(l))))
    };
    let sentence = rewrite(
        inst.sentence.clone(),
        &mut |atom| match atom {
            Formula::InColor(t, c) => match &replaced[&c] {
                ColorAs::Apex(l) => Formula::edge(t, Term::label(l)),
                ColorAs::Member(l) => Formula::eq(t, Term::label(l)),
                ColorAs::Empty => Formula::False,
            },
            other => other,
        },
        if apex_labels.is_empty() { None } else { Some(&guard) },
    );
    Ok(HardnessInstance::assemble(
        h,
        sentence,
        Stage::Uncolored,
        inst.metadata.levels.clone(),
        inst.metadata.bit_width,
    ))
}

/// Replaces labels by pendant leaves: the `k`-th labeled vertex (by smallest
/// label name) gets `k` leaves and the label becomes an existentially bound
/// vertex with exactly that many leaves. Vertex quantifiers skip degree-1
/// vertices.
///
/// Fails when the graph already has a degree-1 vertex, or when the vertex
/// receiving one leaf is isolated, since the leaf count would be ambiguous.
pub fn delabel(inst: &HardnessInstance) -> Result<HardnessInstance> {
    require_stage(inst, Stage::Uncolored)?;
    let g = &inst.graph;
    check_names(g, &inst.sentence)?;
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 1) {
        return Err(Error::InvalidInstance(format!("vertex {v} already has degree 1")));
    }
    let mut order: Vec<Vertex> = Vec::new();
    for (_, v) in g.labels() {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    if let Some(&first) = order.first() {
        if g.degree(first) == 0 {
            return Err(Error::InvalidInstance(format!(
                "labeled vertex {first} is isolated"
            )));
        }
    }

    let mut h = g.clone();
    for (k, &v) in order.iter().enumerate() {
        for _ in 0..=k {
            let leaf = h.add_vertex();
            h.add_edge(v, leaf)?;
        }
    }
    let names_in_graph: Vec<String> = g.labels().map(|(l, _)| l.to_string()).collect();
    for l in &names_in_graph {
        h.remove_label(l);
    }

    let mut names = Names::of(&inst.sentence);
    let bound: Vec<String> = (0..order.len()).map(|k| names.fresh(&format!("lab{}", k + 1))).collect();
    let var_of: BTreeMap<String, String> = g
        .labels()
        .map(|(l, v)| {
            let k = order.iter().position(|&w| w == v).expect("listed");
            (l.to_string(), bound[k].clone())
        })
        .collect();
    let (t, s) = (names.fresh("t"), names.fresh("s"));
    let zs: Vec<String> = (0..=order.len()).map(|i| names.fresh(&format!("z{}", i + 1))).collect();

    // Degree exactly one.
    let pendant = |x: Term| {
        Formula::exists(
            &t,
            Formula::and(
                Formula::edge(x.clone(), Term::var(&t)),
                Formula::forall(&s, Formula::implies(Formula::edge(x, Term::var(&s)), Formula::eq(Term::var(&s), Term::var(&t)))),
            ),
        )
    };
    let guard = |x: &str| Formula::not(pendant(Term::var(x)));
    let rename = |term: Term| match term {
        Term::Label(l) => Term::Var(var_of[&l].clone()),
        other => other,
    };
    let body = rewrite(
        inst.sentence.clone(),
        &mut |atom| atom.map_terms(&mut |term| rename(term)),
        if order.is_empty() { None } else { Some(&guard) },
    );

    let leaf_of = |z: &str, x: &str| {
        Formula::and(
            Formula::edge(Term::var(z), Term::var(x)),
            Formula::forall(&s, Formula::implies(Formula::edge(Term::var(z), Term::var(&s)), Formula::eq(Term::var(&s), Term::var(x)))),
        )
    };
    let at_least = |x: &str, c: usize| {
        (0..c).rev().fold(Formula::True, |acc, i| {
            let distinct = (0..i).map(|j| Formula::neq(Term::var(&zs[i]), Term::var(&zs[j])));
            let here = Formula::and_all(core::iter::once(leaf_of(&zs[i], x)).chain(distinct));
            Formula::exists(&zs[i], if acc == Formula::True { here } else { Formula::and(here, acc) })
        })
    };
    let sentence = bound.iter().enumerate().rev().fold(body, |acc, (k, x)| {
        let exact = Formula::and(at_least(x, k + 1), Formula::not(at_least(x, k + 2)));
        Formula::exists(x, Formula::and(exact, acc))
    });
    Ok(HardnessInstance::assemble(
        h,
        sentence,
        Stage::Unlabeled,
        inst.metadata.levels.clone(),
        inst.metadata.bit_width,
    ))
}
