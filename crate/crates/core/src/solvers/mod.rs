//! Chromatic number, Hamiltonicity and edge domination, solved on the
//! quotient graph of a neighborhood partition.
//!
//! Singleton classes are kind `Independent` in the partition; the chromatic
//! and edge-domination solvers treat them as cliques of size one, which is
//! the same thing.

mod chromatic;
mod eds;
mod hamiltonian;
mod matching;

pub use chromatic::chromatic_number;
pub use eds::eds_size;
pub use hamiltonian::{hamiltonian_cycle, ilp_feasible, ilp_feasible_with, WalkConstraintSystem};
pub use matching::{max_matching, Matching};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{neighborhood_partition, quotient_graph, NeighborhoodPartition, QuotientGraph};

fn quotient_of(g: &Graph, what: &'static str) -> Result<(NeighborhoodPartition, QuotientGraph)> {
    if g.is_directed() {
        return Err(Error::DirectedUnsupported(what));
    }
    let p = neighborhood_partition(g);
    let q = quotient_graph(g, &p)?;
    Ok((p, q))
}

/// Maximal cliques of the graph on `0..w` with adjacency `adj`
/// (Bron-Kerbosch with pivoting).
fn maximal_cliques(w: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        adj: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            out.push(r.clone());
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj(u, v)).count())
            .expect("p or x is nonempty");
        let mut p = p;
        let mut x = x;
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| adj(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| adj(u, v)).collect();
            go(r, np, nx, adj, out);
            r.pop();
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), (0..w).collect(), Vec::new(), adj, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cliques_of_a_path() {
        let adj = |a: usize, b: usize| a.abs_diff(b) == 1;
        let mut cliques = maximal_cliques(4, &adj);
        cliques.iter_mut().for_each(|c| c.sort());
        cliques.sort();
        assert_eq!(cliques, [[0, 1], [1, 2], [2, 3]]);
        assert_eq!(maximal_cliques(0, &adj), [Vec::<usize>::new()]);
    }
}
