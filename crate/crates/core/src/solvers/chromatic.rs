//! Exact chromatic number through the quotient graph.
//!
//! Every independent class can be shrunk to one vertex. What remains is a
//! multicoloring problem on the quotient: node `i` needs `d_i` distinct
//! colors (its clique size) and adjacent nodes need disjoint color sets. A
//! color is an independent set of the quotient, so the answer is the least
//! number of independent sets, with repetition, covering every node `i` at
//! least `d_i` times. Maximal independent sets suffice.
//!
//! Giving every quotient color class a single block of colors is not enough:
//! a 5-cycle with one vertex doubled into an adjacent twin pair has
//! chromatic number 3, while any such block assignment needs 4.

use alloc::vec::Vec;

use super::{maximal_cliques, quotient_of};
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::ClassKind;

pub fn chromatic_number(g: &Graph) -> Result<usize> {
    let (_, q) = quotient_of(g, "chromatic_number")?;
    let w = q.width();
    if w == 0 {
        return Ok(0);
    }
    let demand: Vec<usize> = q
        .nodes()
        .iter()
        .map(|node| match node.kind {
            ClassKind::Clique => node.size,
            ClassKind::Independent => 1,
        })
        .collect();
    let independent = maximal_cliques(w, &|a, b| a != b && !q.has_edge(a, b));
    let cliques = maximal_cliques(w, &|a, b| a != b && q.has_edge(a, b));
    let last = (0..w)
        .map(|i| independent.iter().rposition(|s| s.contains(&i)).expect("every node is in some set"))
        .collect();
    let mut search = Cover {
        sets: &independent,
        cliques: &cliques,
        last,
        remaining: demand.clone(),
        best: demand.iter().sum(),
    };
    search.run(0, 0);
    Ok(search.best)
}

struct Cover<'a> {
    sets: &'a [Vec<usize>],
    cliques: &'a [Vec<usize>],
    /// Index of the last set containing each node.
    last: Vec<usize>,
    remaining: Vec<usize>,
    best: usize,
}

impl Cover<'_> {
    fn lower_bound(&self) -> usize {
        self.cliques
            .iter()
            .map(|c| c.iter().map(|&i| self.remaining[i]).sum::<usize>())
            .max()
            .unwrap_or(0)
    }

    fn run(&mut self, j: usize, used: usize) {
        if used + self.lower_bound() >= self.best {
            return;
        }
        if self.remaining.iter().all(|&r| r == 0) {
            self.best = used;
            return;
        }
        if j == self.sets.len() {
            return;
        }
        let sets = self.sets;
        let set = &sets[j];
        let most = set.iter().map(|&i| self.remaining[i]).max().unwrap_or(0);
        let least = set
            .iter()
            .filter(|&&i| self.last[i] == j)
            .map(|&i| self.remaining[i])
            .max()
            .unwrap_or(0);
        for x in (least..=most).rev() {
            let before: Vec<usize> = set.iter().map(|&i| self.remaining[i]).collect();
            for &i in set {
                self.remaining[i] = self.remaining[i].saturating_sub(x);
            }
            self.run(j + 1, used + x);
            for (&i, r) in set.iter().zip(before) {
                self.remaining[i] = r;
            }
        }
    }
}
