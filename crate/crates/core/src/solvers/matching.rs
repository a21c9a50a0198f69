use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::graph::{Graph, Vertex, VertexSet};

/// A set of pairwise disjoint edges, each stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matching {
    pub edges: Vec<(Vertex, Vertex)>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn covers(&self, v: Vertex) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }

    fn from_mates(mate: &[Option<usize>], ids: &[Vertex]) -> Self {
        let mut edges: Vec<_> = (0..mate.len())
            .filter_map(|i| mate[i].filter(|&j| i < j).map(|j| (ids[i].min(ids[j]), ids[i].max(ids[j]))))
            .collect();
        edges.sort_unstable();
        Matching { edges }
    }
}

/// Maximum matching of the subgraph induced by `subset` (Edmonds' blossom
/// algorithm). Arc directions of digraphs are ignored.
pub fn max_matching(g: &Graph, subset: &VertexSet) -> Matching {
    let ids: Vec<Vertex> = subset.ones().filter(|&v| v < g.n()).collect();
    let k = ids.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && (g.adjacent(ids[i], ids[j]) || g.adjacent(ids[j], ids[i])))
                .collect()
        })
        .collect();
    let mate = Blossom::new(&adj).solve();
    Matching::from_mates(&mate, &ids)
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<Option<usize>>,
    parent: Vec<Option<usize>>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let k = adj.len();
        Blossom {
            adj,
            mate: alloc::vec![None; k],
            parent: alloc::vec![None; k],
            base: (0..k).collect(),
            in_tree: alloc::vec![false; k],
            in_blossom: alloc::vec![false; k],
            queue: VecDeque::new(),
        }
    }

    fn solve(mut self) -> Vec<Option<usize>> {
        let k = self.adj.len();
        // Greedy start; augmenting paths finish the job.
        for v in 0..k {
            if self.mate[v].is_none() {
                if let Some(&u) = self.adj[v].iter().find(|&&u| self.mate[u].is_none()) {
                    self.mate[v] = Some(u);
                    self.mate[u] = Some(v);
                }
            }
        }
        for root in 0..k {
            if self.mate[root].is_none() {
                if let Some(end) = self.find_path(root) {
                    self.augment(end);
                }
            }
        }
        self.mate
    }

    fn augment(&mut self, mut v: usize) {
        loop {
            let pv = self.parent[v].expect("on the alternating path");
            let next = self.mate[pv];
            self.mate[v] = Some(pv);
            self.mate[pv] = Some(v);
            match next {
                Some(n) => v = n,
                None => break,
            }
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = alloc::vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            match self.mate[a] {
                Some(m) => a = self.parent[m].expect("matched tree vertex has a parent"),
                None => break,
            }
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b].expect("b is below the root")].expect("tree parent");
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v].expect("inner path vertex is matched");
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = Some(child);
            child = m;
            v = self.parent[m].expect("tree parent");
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let k = self.adj.len();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = None);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == Some(to) {
                    continue;
                }
                let to_is_outer = to == root || self.mate[to].is_some_and(|m| self.parent[m].is_some());
                if to_is_outer {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..k {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to].is_none() {
                    self.parent[to] = Some(v);
                    match self.mate[to] {
                        None => return Some(to),
                        Some(m) => {
                            self.in_tree[m] = true;
                            self.queue.push_back(m);
                        }
                    }
                }
            }
        }
        None
    }
}
