//! Prenex normal form.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::{Formula, Quantifier, Term};

/// True when every quantifier sits in a leading chain above a
/// quantifier-free matrix.
pub fn is_prenex(f: &Formula) -> bool {
    match f.as_quantifier() {
        Some((_, _, body)) => is_prenex(body),
        None => !f.contains_quantifier(),
    }
}

/// An equivalent sentence with all quantifiers in front.
///
/// Implications and biconditionals are rewritten only where they contain a
/// quantifier (a biconditional becomes `(a & b) | (!a & !b)`, duplicating its
/// quantifiers). Later binders that reuse an earlier name get a primed fresh
/// name. Quantifier-free parts are left as they are, so a prenex input with
/// distinct bound names comes back unchanged.
pub fn to_prenex(f: &Formula) -> Formula {
    let expanded = expand(f.clone());
    let mut taken_v = BTreeSet::new();
    let mut taken_s = BTreeSet::new();
    collect_names(&expanded, &mut taken_v, &mut taken_s);
    // Free names stay as they are, so binders must avoid them.
    let mut renamer = Renamer {
        used_v: f.free_vars(),
        used_s: f.free_set_vars(),
        taken_v,
        taken_s,
    };
    let renamed = renamer.rename(&expanded, &mut BTreeMap::new(), &mut BTreeMap::new());
    let mut prefix = Vec::new();
    let matrix = pull(renamed, &mut prefix, false);
    prefix
        .into_iter()
        .rev()
        .fold(matrix, |body, (q, x)| q.apply(x, body))
}

fn expand(f: Formula) -> Formula {
    match f {
        Formula::Implies(a, b) if a.contains_quantifier() || b.contains_quantifier() => {
            Formula::or(Formula::not(expand(*a)), expand(*b))
        }
        Formula::Iff(a, b) if a.contains_quantifier() || b.contains_quantifier() => {
            let (a, b) = (expand(*a), expand(*b));
            Formula::or(
                Formula::and(a.clone(), b.clone()),
                Formula::and(Formula::not(a), Formula::not(b)),
            )
        }
        Formula::Not(a) => Formula::not(expand(*a)),
        Formula::And(a, b) => Formula::and(expand(*a), expand(*b)),
        Formula::Or(a, b) => Formula::or(expand(*a), expand(*b)),
        q if q.is_quantifier() => q.map_body(expand),
        other => other,
    }
}

impl Formula {
    fn map_body(self, f: impl FnOnce(Formula) -> Formula) -> Formula {
        match self {
            Formula::ExistsV(x, b) => Formula::ExistsV(x, alloc::boxed::Box::new(f(*b))),
            Formula::ForallV(x, b) => Formula::ForallV(x, alloc::boxed::Box::new(f(*b))),
            Formula::ExistsS(x, b) => Formula::ExistsS(x, alloc::boxed::Box::new(f(*b))),
            Formula::ForallS(x, b) => Formula::ForallS(x, alloc::boxed::Box::new(f(*b))),
            other => other,
        }
    }
}

fn collect_names(f: &Formula, vars: &mut BTreeSet<String>, sets: &mut BTreeSet<String>) {
    f.visit(&mut |node| match node {
        Formula::ExistsV(x, _) | Formula::ForallV(x, _) => {
            vars.insert(x.clone());
        }
        Formula::ExistsS(x, _) | Formula::ForallS(x, _) => {
            sets.insert(x.clone());
        }
        Formula::InSet(_, s) => {
            sets.insert(s.clone());
        }
        _ => {}
    });
    f.visit_terms(&mut |t| {
        if let Term::Var(x) = t {
            vars.insert(x.clone());
        }
    });
}

struct Renamer {
    used_v: BTreeSet<String>,
    used_s: BTreeSet<String>,
    taken_v: BTreeSet<String>,
    taken_s: BTreeSet<String>,
}

fn fresh(base: &str, used: &mut BTreeSet<String>, taken: &mut BTreeSet<String>) -> String {
    let name = if used.contains(base) {
        let mut candidate = String::from(base);
        loop {
            candidate.push('\'');
            if !taken.contains(&candidate) {
                break candidate;
            }
        }
    } else {
        String::from(base)
    };
    used.insert(name.clone());
    taken.insert(name.clone());
    name
}

impl Renamer {
    fn rename(
        &mut self,
        f: &Formula,
        vmap: &mut BTreeMap<String, String>,
        smap: &mut BTreeMap<String, String>,
    ) -> Formula {
        let term = |t: &Term, vmap: &BTreeMap<String, String>| match t {
            Term::Var(x) => Term::Var(vmap.get(x).cloned().unwrap_or_else(|| x.clone())),
            other => other.clone(),
        };
        match f {
            Formula::True | Formula::False => f.clone(),
            Formula::Edge(a, b) => Formula::Edge(term(a, vmap), term(b, vmap)),
            Formula::Arc(a, b) => Formula::Arc(term(a, vmap), term(b, vmap)),
            Formula::Eq(a, b) => Formula::Eq(term(a, vmap), term(b, vmap)),
            Formula::InColor(a, c) => Formula::InColor(term(a, vmap), c.clone()),
            Formula::InSet(a, s) => {
                Formula::InSet(term(a, vmap), smap.get(s).cloned().unwrap_or_else(|| s.clone()))
            }
            Formula::Not(a) => Formula::not(self.rename(a, vmap, smap)),
            Formula::And(a, b) => Formula::and(self.rename(a, vmap, smap), self.rename(b, vmap, smap)),
            Formula::Or(a, b) => Formula::or(self.rename(a, vmap, smap), self.rename(b, vmap, smap)),
            Formula::Implies(a, b) => {
                Formula::implies(self.rename(a, vmap, smap), self.rename(b, vmap, smap))
            }
            Formula::Iff(a, b) => Formula::iff(self.rename(a, vmap, smap), self.rename(b, vmap, smap)),
            _ => {
                let (q, x, body) = f.as_quantifier().expect("remaining variants are quantifiers");
                let (map, used, taken) = if q.is_set() {
                    (&mut *smap, &mut self.used_s, &mut self.taken_s)
                } else {
                    (&mut *vmap, &mut self.used_v, &mut self.taken_v)
                };
                let name = fresh(x, used, taken);
                let previous = map.insert(String::from(x), name.clone());
                let body = self.rename(body, vmap, smap);
                let map = if q.is_set() { smap } else { vmap };
                match previous {
                    Some(p) => map.insert(String::from(x), p),
                    None => map.remove(x),
                };
                q.apply(name, body)
            }
        }
    }
}

/// Moves quantifiers of `f` into `prefix` (outermost first) and returns the
/// matrix. `negated` tracks an odd number of enclosing negations, under which
/// quantifiers are dualized.
fn pull(f: Formula, prefix: &mut Vec<(Quantifier, String)>, negated: bool) -> Formula {
    if !f.contains_quantifier() {
        return f;
    }
    match f {
        Formula::Not(a) => Formula::not(pull(*a, prefix, !negated)),
        Formula::And(a, b) => {
            let a = pull(*a, prefix, negated);
            let b = pull(*b, prefix, negated);
            Formula::and(a, b)
        }
        Formula::Or(a, b) => {
            let a = pull(*a, prefix, negated);
            let b = pull(*b, prefix, negated);
            Formula::or(a, b)
        }
        other => {
            let (q, x, body) = match other {
                Formula::ExistsV(x, b) => (Quantifier::ExistsV, x, *b),
                Formula::ForallV(x, b) => (Quantifier::ForallV, x, *b),
                Formula::ExistsS(x, b) => (Quantifier::ExistsS, x, *b),
                Formula::ForallS(x, b) => (Quantifier::ForallS, x, *b),
                _ => unreachable!("implications with quantifiers are expanded first"),
            };
            prefix.push((if negated { q.dual() } else { q }, x));
            pull(body, prefix, negated)
        }
    }
}
