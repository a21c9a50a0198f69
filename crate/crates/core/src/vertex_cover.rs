//! Exact minimum vertex cover by bounded search.
//!
//! The decision procedure applies the degree-0 and degree-1 rules, prunes
//! with a greedy matching lower bound, solves max-degree-2 remainders
//! (disjoint paths and cycles) directly, and otherwise branches on a
//! maximum-degree vertex: take it, or take all of its neighbors.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCoverResult {
    pub cover: VertexSet,
    pub size: usize,
}

impl VertexCoverResult {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.cover.ones().collect()
    }
}

struct Solver<'a> {
    adj: &'a [VertexSet],
}

impl Solver<'_> {
    fn degree(&self, v: Vertex, active: &VertexSet) -> usize {
        self.adj[v].intersection_count(active)
    }

    fn matching_lower_bound(&self, active: &VertexSet) -> usize {
        let mut free = active.clone();
        let mut size = 0;
        for u in active.ones() {
            if !free.contains(u) {
                continue;
            }
            if let Some(v) = self.adj[u].intersection(&free).next() {
                free.remove(u);
                free.remove(v);
                size += 1;
            }
        }
        size
    }

    /// Covers a graph of maximum degree two (paths and cycles) optimally.
    fn cover_paths_and_cycles(&self, active: &VertexSet, out: &mut Vec<Vertex>) {
        let mut seen = VertexSet::with_capacity(active.len());
        // Paths first, walked from an endpoint; what remains are cycles.
        let mut starts: Vec<Vertex> = active.ones().filter(|&v| self.degree(v, active) == 1).collect();
        starts.extend(active.ones().filter(|&v| self.degree(v, active) == 2));
        for s in starts {
            if seen.contains(s) {
                continue;
            }
            let mut walk = alloc::vec![s];
            seen.insert(s);
            let mut cur = s;
            while let Some(next) = self.adj[cur].intersection(active).find(|&x| !seen.contains(x)) {
                seen.insert(next);
                walk.push(next);
                cur = next;
            }
            let is_cycle = walk.len() >= 3 && self.adj[cur].contains(s) && self.degree(s, active) == 2;
            out.extend(walk.iter().skip(1).step_by(2));
            if is_cycle && walk.len() % 2 == 1 {
                out.push(s);
            }
        }
    }

    /// A cover of the subgraph induced by `active` with at most `k` vertices.
    fn decide(&self, mut active: VertexSet, mut k: usize) -> Option<Vec<Vertex>> {
        let mut taken = Vec::new();
        loop {
            let mut changed = false;
            let vs: Vec<Vertex> = active.ones().collect();
            for v in vs {
                if !active.contains(v) {
                    continue;
                }
                match self.degree(v, &active) {
                    0 => {
                        active.remove(v);
                        changed = true;
                    }
                    1 => {
                        let u = self.adj[v].intersection(&active).next().expect("degree one");
                        if k == 0 {
                            return None;
                        }
                        k -= 1;
                        taken.push(u);
                        active.remove(u);
                        active.remove(v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        if active.is_clear() {
            return Some(taken);
        }
        if k == 0 || self.matching_lower_bound(&active) > k {
            return None;
        }
        let (v, deg) = active
            .ones()
            .map(|v| (v, self.degree(v, &active)))
            .max_by_key(|&(v, d)| (d, core::cmp::Reverse(v)))
            .expect("nonempty");
        if deg <= 2 {
            let mut rest = Vec::new();
            self.cover_paths_and_cycles(&active, &mut rest);
            if rest.len() > k {
                return None;
            }
            taken.extend(rest);
            return Some(taken);
        }
        let mut without_v = active.clone();
        without_v.remove(v);
        if let Some(rest) = self.decide(without_v, k - 1) {
            taken.push(v);
            taken.extend(rest);
            return Some(taken);
        }
        if deg <= k {
            let mut rest_active = active;
            rest_active.remove(v);
            let nbrs: Vec<Vertex> = self.adj[v].intersection(&rest_active).collect();
            for &u in &nbrs {
                rest_active.remove(u);
            }
            if let Some(rest) = self.decide(rest_active, k - deg) {
                taken.extend(nbrs);
                taken.extend(rest);
                return Some(taken);
            }
        }
        None
    }

    fn minimum(&self, active: &VertexSet) -> Vec<Vertex> {
        let mut k = self.matching_lower_bound(active);
        loop {
            if let Some(c) = self.decide(active.clone(), k) {
                return c;
            }
            k += 1;
        }
    }
}

/// Minimum vertex cover; among minimum covers, the one whose sorted vertex
/// list is lexicographically smallest.
pub fn vertex_cover(g: &Graph) -> Result<VertexCoverResult> {
    if g.is_directed() {
        return Err(Error::DirectedUnsupported("vertex_cover"));
    }
    let n = g.n();
    let adj: Vec<VertexSet> = (0..n).map(|v| g.out_neighbors(v).clone()).collect();
    let solver = Solver { adj: &adj };
    let mut all = VertexSet::with_capacity(n);
    all.insert_range(..);
    let best = solver.minimum(&all);
    let k = best.len();

    // Fix vertices in increasing order, preferring inclusion whenever a
    // minimum cover consistent with earlier choices still exists.
    let mut witness = VertexSet::with_capacity(n);
    best.iter().for_each(|&v| witness.insert(v));
    let mut forced_in = VertexSet::with_capacity(n);
    let mut forced_out = VertexSet::with_capacity(n);
    for v in 0..n {
        if witness.contains(v) {
            forced_in.insert(v);
            continue;
        }
        let mut fixed = forced_in.clone();
        fixed.insert(v);
        for u in forced_out.ones() {
            fixed.union_with(&adj[u]);
        }
        let mut active = all.clone();
        active.difference_with(&fixed);
        active.difference_with(&forced_out);
        let committed = fixed.count_ones(..);
        let candidate = if committed <= k {
            solver.decide(active, k - committed)
        } else {
            None
        };
        match candidate {
            Some(rest) => {
                witness = fixed;
                rest.iter().for_each(|&u| witness.insert(u));
                forced_in.insert(v);
            }
            None => {
                forced_out.insert(v);
            }
        }
    }
    debug_assert_eq!(witness.count_ones(..), k);
    Ok(VertexCoverResult {
        cover: witness,
        size: k,
    })
}

/// Whether `cover` meets every edge of `g`.
pub fn is_vertex_cover(g: &Graph, cover: &VertexSet) -> bool {
    g.edges().all(|(u, v)| cover.contains(u) || cover.contains(v))
}
