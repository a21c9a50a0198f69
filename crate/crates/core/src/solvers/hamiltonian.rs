//! Hamiltonicity as a closed walk on the quotient graph.
//!
//! Merge maximal runs of consecutive same-class vertices of a Hamiltonian
//! cycle into single visits. The result is a closed walk on the quotient
//! without self-loops that visits each independent class exactly `|V_i|`
//! times (its vertices are pairwise non-adjacent) and each clique class
//! between 1 and `|V_i|` times. Conversely, such a walk expands into a
//! Hamiltonian cycle by spreading the clique vertices over the visits, each
//! visit taking at least one. With two or more classes, the walk exists iff
//! the arc multiplicities are balanced, meet the visit bounds and have a
//! connected support; a single clique class gives the trivial walk.

use alloc::vec::Vec;

use super::quotient_of;
use crate::error::Result;
use crate::graph::Graph;
use crate::partition::ClassKind;

/// Integer constraints on arc multiplicities of a closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkConstraintSystem {
    pub nodes: usize,
    /// Ordered pairs `(i, j)`, one per direction of each quotient edge.
    pub arcs: Vec<(usize, usize)>,
    /// Every multiplicity lies in `0..=max_value`.
    pub max_value: usize,
    /// Inclusive bounds on the number of visits (in-degree) of each node.
    pub visits: Vec<(usize, usize)>,
    /// Nodes with positive visits must be connected by positive arcs.
    pub connected: bool,
}

impl WalkConstraintSystem {
    pub fn from_graph(g: &Graph) -> Result<Self> {
        let (_, q) = quotient_of(g, "hamiltonian_cycle")?;
        let arcs = q.edges().flat_map(|(i, j)| [(i, j), (j, i)]).collect();
        let visits = q
            .nodes()
            .iter()
            .map(|node| match node.kind {
                ClassKind::Independent => (node.size, node.size),
                ClassKind::Clique => (1, node.size),
            })
            .collect();
        Ok(WalkConstraintSystem {
            nodes: q.width(),
            arcs,
            max_value: g.n(),
            visits,
            connected: true,
        })
    }

    /// Whether `x` (one value per arc) meets the linear constraints. The
    /// all-zero assignment stands for the trivial walk, which visits a single
    /// node once.
    pub fn satisfies_linear(&self, x: &[usize]) -> bool {
        if x.len() != self.arcs.len() || x.iter().any(|&v| v > self.max_value) {
            return false;
        }
        if x.iter().all(|&v| v == 0) {
            let fits = |i: usize| self.visits[i].0 <= 1 && 1 <= self.visits[i].1;
            let idle = |i: usize| self.visits[i].0 == 0;
            return (0..self.nodes).any(|i| fits(i) && (0..self.nodes).all(|j| j == i || idle(j)));
        }
        let (inn, out) = self.degrees(x);
        (0..self.nodes).all(|i| {
            let (lo, hi) = self.visits[i];
            inn[i] == out[i] && lo <= inn[i] && inn[i] <= hi
        })
    }

    /// Whether the nodes with positive visits are connected through arcs with
    /// positive multiplicity.
    pub fn support_connected(&self, x: &[usize]) -> bool {
        let (inn, _) = self.degrees(x);
        let active: Vec<usize> = (0..self.nodes).filter(|&i| inn[i] > 0).collect();
        let Some(&start) = active.first() else {
            return true;
        };
        let mut seen = alloc::vec![false; self.nodes];
        seen[start] = true;
        let mut stack = alloc::vec![start];
        while let Some(u) = stack.pop() {
            for (k, &(a, b)) in self.arcs.iter().enumerate() {
                if x[k] > 0 && (a == u || b == u) {
                    let other = if a == u { b } else { a };
                    if !seen[other] {
                        seen[other] = true;
                        stack.push(other);
                    }
                }
            }
        }
        active.iter().all(|&i| seen[i])
    }

    fn degrees(&self, x: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let mut inn = alloc::vec![0; self.nodes];
        let mut out = alloc::vec![0; self.nodes];
        for (&(a, b), &v) in self.arcs.iter().zip(x) {
            out[a] += v;
            inn[b] += v;
        }
        (inn, out)
    }
}

/// A solution of `system`, honoring its connectivity flag.
pub fn ilp_feasible(system: &WalkConstraintSystem) -> Option<Vec<usize>> {
    ilp_feasible_with(system, |x| !system.connected || system.support_connected(x))
}

/// Depth-first search over the multiplicities with interval propagation on
/// in- and out-degrees. Assignments meeting the linear constraints are passed
/// to `accept`; the first accepted one is returned.
pub fn ilp_feasible_with(
    system: &WalkConstraintSystem,
    mut accept: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let w = system.nodes;
    let cap: Vec<usize> = system
        .arcs
        .iter()
        .map(|&(a, b)| system.max_value.min(system.visits[a].1).min(system.visits[b].1))
        .collect();
    let mut state = Search {
        system,
        cap: &cap,
        x: alloc::vec![0; system.arcs.len()],
        inn: alloc::vec![0; w],
        out: alloc::vec![0; w],
        inn_room: alloc::vec![0; w],
        out_room: alloc::vec![0; w],
    };
    for (k, &(a, b)) in system.arcs.iter().enumerate() {
        state.out_room[a] += cap[k];
        state.inn_room[b] += cap[k];
    }
    let zero = alloc::vec![0; system.arcs.len()];
    if system.satisfies_linear(&zero) && accept(&zero) {
        return Some(zero);
    }
    if state.dfs(0, &mut accept) {
        Some(state.x)
    } else {
        None
    }
}

struct Search<'a> {
    system: &'a WalkConstraintSystem,
    cap: &'a [usize],
    x: Vec<usize>,
    inn: Vec<usize>,
    out: Vec<usize>,
    /// Largest further in-degree the unassigned arcs can add.
    inn_room: Vec<usize>,
    out_room: Vec<usize>,
}

impl Search<'_> {
    fn consistent(&self, i: usize) -> bool {
        let (lo, hi) = self.system.visits[i];
        let (inn, out) = (self.inn[i], self.out[i]);
        let (inn_max, out_max) = (inn + self.inn_room[i], out + self.out_room[i]);
        inn <= hi && out <= hi && inn_max >= lo && out_max >= lo && inn <= out_max && out <= inn_max
    }

    fn dfs(&mut self, k: usize, accept: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k == self.x.len() {
            let nonzero = self.x.iter().any(|&v| v > 0);
            return nonzero && self.system.satisfies_linear(&self.x) && accept(&self.x);
        }
        let (a, b) = self.system.arcs[k];
        self.out_room[a] -= self.cap[k];
        self.inn_room[b] -= self.cap[k];
        for v in 0..=self.cap[k] {
            self.x[k] = v;
            self.out[a] += v;
            self.inn[b] += v;
            let ok = self.consistent(a) && self.consistent(b);
            let found = ok && self.dfs(k + 1, accept);
            self.out[a] -= v;
            self.inn[b] -= v;
            if found {
                return true;
            }
            if self.out[a] + v > self.system.visits[a].1 || self.inn[b] + v > self.system.visits[b].1 {
                break;
            }
        }
        self.x[k] = 0;
        self.out_room[a] += self.cap[k];
        self.inn_room[b] += self.cap[k];
        false
    }
}

pub fn hamiltonian_cycle(g: &Graph) -> Result<bool> {
    let system = WalkConstraintSystem::from_graph(g)?;
    if g.n() < 3 {
        return Ok(false);
    }
    Ok(ilp_feasible(&system).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(hamiltonian_cycle(&Graph::cycle(4)).unwrap());
        assert!(!hamiltonian_cycle(&Graph::complete_bipartite(2, 3)).unwrap());
        let k3 = Graph::complete(3);
        assert!(!hamiltonian_cycle(&k3.join(&Graph::edgeless(4))).unwrap());
        assert!(hamiltonian_cycle(&k3.join(&Graph::edgeless(3))).unwrap());
        assert!(hamiltonian_cycle(&Graph::complete(3)).unwrap());
        assert!(!hamiltonian_cycle(&Graph::complete(2)).unwrap());
        assert!(!hamiltonian_cycle(&Graph::edgeless(4)).unwrap());
        assert!(!hamiltonian_cycle(&k3.disjoint_union(&k3)).unwrap());
    }

    #[test]
    fn k22_system() {
        let system = WalkConstraintSystem::from_graph(&Graph::complete_bipartite(2, 2)).unwrap();
        assert_eq!(system.arcs.len(), 2);
        assert_eq!(ilp_feasible(&system), Some(alloc::vec![2, 2]));
        let system = WalkConstraintSystem::from_graph(&Graph::complete_bipartite(2, 3)).unwrap();
        assert_eq!(ilp_feasible(&system), None);
    }

    #[test]
    fn single_node_system() {
        let system = WalkConstraintSystem {
            nodes: 1,
            arcs: Vec::new(),
            max_value: 1,
            visits: alloc::vec![(1, 1)],
            connected: true,
        };
        assert_eq!(ilp_feasible(&system), Some(Vec::new()));
        let system = WalkConstraintSystem { visits: alloc::vec![(2, 2)], ..system };
        assert_eq!(ilp_feasible(&system), None);
    }
}
