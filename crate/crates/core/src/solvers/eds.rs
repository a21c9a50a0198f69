//! Minimum edge dominating set, which has the size of a minimum maximal
//! matching.
//!
//! The matched vertices `C` of a minimum maximal matching form a vertex cover.
//! Classes inside `C` form a cover of the quotient, and every other clique
//! class has at most one vertex outside `C`. So for some quotient cover the
//! set `V''` built below satisfies `V'' ⊆ C`, and the optimum is at least
//! `|V''| - ν(G[V''])`. The candidate for each cover is a maximal matching of
//! at most that size.

use alloc::vec::Vec;

use super::{max_matching, quotient_of};
use crate::error::Result;
use crate::graph::{Graph, VertexSet};
use crate::partition::ClassKind;

pub fn eds_size(g: &Graph) -> Result<usize> {
    let (p, q) = quotient_of(g, "eds_size")?;
    let n = g.n();
    let w = q.width();
    let edges: Vec<(usize, usize)> = q.edges().collect();
    let mut best = usize::MAX;
    let mut chosen = alloc::vec![false; w];
    loop {
        if edges.iter().all(|&(i, j)| chosen[i] || chosen[j]) {
            let mut inner = VertexSet::with_capacity(n);
            for i in 0..w {
                let class = p.class(i);
                if chosen[i] {
                    class.iter().for_each(|&v| inner.insert(v));
                } else if q.node(i).kind == ClassKind::Clique {
                    class[1..].iter().for_each(|&v| inner.insert(v));
                }
            }
            best = best.min(candidate(g, &inner));
        }
        // Next subset of quotient nodes.
        let Some(i) = chosen.iter().position(|&c| !c) else {
            break;
        };
        chosen[..i].iter_mut().for_each(|c| *c = false);
        chosen[i] = true;
    }
    Ok(best)
}

/// `|M1| + |M2|`: a maximum matching inside `inner`, then a maximum bipartite
/// matching between its unmatched vertices and the rest of the graph.
fn candidate(g: &Graph, inner: &VertexSet) -> usize {
    let m1 = max_matching(g, inner);
    let free: Vec<usize> = inner.ones().filter(|&v| !m1.covers(v)).collect();
    let outside: Vec<usize> = (0..g.n()).filter(|&v| !inner.contains(v)).collect();
    let mut owner: Vec<Option<usize>> = alloc::vec![None; g.n()];
    let mut m2 = 0;
    for &u in &free {
        let mut seen = alloc::vec![false; g.n()];
        if augment(g, u, &outside, &mut owner, &mut seen) {
            m2 += 1;
        }
    }
    m1.size() + m2
}

/// Kuhn's augmenting path step for the bipartite part.
fn augment(g: &Graph, u: usize, outside: &[usize], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &v in outside {
        if g.adjacent(u, v) && !seen[v] {
            seen[v] = true;
            if owner[v].is_none_or(|o| augment(g, o, outside, owner, seen)) {
                owner[v] = Some(u);
                return true;
            }
        }
    }
    false
}
