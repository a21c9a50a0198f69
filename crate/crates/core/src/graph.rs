//! Finite colored, labeled graphs and digraphs.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use fixedbitset::FixedBitSet as VertexSet;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A graph or digraph on vertices `0..n` with named color classes (arbitrary,
/// possibly overlapping vertex subsets) and named labels (each naming one
/// vertex).
///
/// Adjacency never contains self-loops. For undirected graphs the stored
/// adjacency is symmetric and in-neighborhoods alias out-neighborhoods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Vec<VertexSet>,
    inc: Vec<VertexSet>,
    colors: BTreeMap<String, VertexSet>,
    labels: BTreeMap<String, Vertex>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self::with_direction(n, false)
    }

    pub fn new_directed(n: usize) -> Self {
        Self::with_direction(n, true)
    }

    fn with_direction(n: usize, directed: bool) -> Self {
        let row = VertexSet::with_capacity(n);
        Graph {
            directed,
            out: alloc::vec![row.clone(); n],
            inc: if directed {
                alloc::vec![row; n]
            } else {
                Vec::new()
            },
            colors: BTreeMap::new(),
            labels: BTreeMap::new(),
        }
    }

    /// Builds an undirected graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a digraph from an arc list.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut g = Graph::new_directed(n);
        for &(u, v) in arcs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.out.len()
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Adds the edge `{u, v}`, or the arc `u -> v` for digraphs.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.out[u].insert(v);
        if self.directed {
            self.inc[v].insert(u);
        } else {
            self.out[v].insert(u);
        }
        Ok(())
    }

    /// Appends a fresh isolated vertex and returns it.
    pub fn add_vertex(&mut self) -> Vertex {
        let n = self.n() + 1;
        for row in self.out.iter_mut().chain(self.inc.iter_mut()) {
            row.grow(n);
        }
        for set in self.colors.values_mut() {
            set.grow(n);
        }
        self.out.push(VertexSet::with_capacity(n));
        if self.directed {
            self.inc.push(VertexSet::with_capacity(n));
        }
        n - 1
    }

    /// Edge test for undirected graphs, arc test `u -> v` for digraphs.
    #[inline]
    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.out[u].contains(v)
    }

    #[inline]
    pub fn out_neighbors(&self, v: Vertex) -> &VertexSet {
        &self.out[v]
    }

    #[inline]
    pub fn in_neighbors(&self, v: Vertex) -> &VertexSet {
        if self.directed {
            &self.inc[v]
        } else {
            &self.out[v]
        }
    }

    /// Number of incident edges (undirected) or arcs in either direction.
    pub fn degree(&self, v: Vertex) -> usize {
        if self.directed {
            self.out[v].union_count(&self.inc[v])
        } else {
            self.out[v].count_ones(..)
        }
    }

    /// Edges `(u, v)` with `u < v` for undirected graphs, all arcs otherwise.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let directed = self.directed;
        self.out.iter().enumerate().flat_map(move |(u, row)| {
            row.ones()
                .filter(move |&v| directed || u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    pub fn add_to_color(&mut self, name: &str, v: Vertex) -> Result<()> {
        self.check_vertex(v)?;
        let n = self.n();
        self.colors
            .entry(name.to_string())
            .or_insert_with(|| VertexSet::with_capacity(n))
            .insert(v);
        Ok(())
    }

    /// Declares a color class (replacing any previous one with the same name).
    pub fn set_color<I: IntoIterator<Item = Vertex>>(&mut self, name: &str, members: I) -> Result<()> {
        let mut set = VertexSet::with_capacity(self.n());
        for v in members {
            self.check_vertex(v)?;
            set.insert(v);
        }
        self.colors.insert(name.to_string(), set);
        Ok(())
    }

    pub fn color(&self, name: &str) -> Option<&VertexSet> {
        self.colors.get(name)
    }

    pub fn colors(&self) -> impl Iterator<Item = (&str, &VertexSet)> {
        self.colors.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn color_count(&self) -> usize {
        self.colors.len()
    }

    pub fn remove_color(&mut self, name: &str) -> Option<VertexSet> {
        self.colors.remove(name)
    }

    pub fn set_label(&mut self, name: &str, v: Vertex) -> Result<()> {
        self.check_vertex(v)?;
        self.labels.insert(name.to_string(), v);
        Ok(())
    }

    pub fn label(&self, name: &str) -> Option<Vertex> {
        self.labels.get(name).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = (&str, Vertex)> {
        self.labels.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn remove_label(&mut self, name: &str) -> Option<Vertex> {
        self.labels.remove(name)
    }

    /// The set of labeled vertices.
    pub fn labeled_vertices(&self) -> VertexSet {
        let mut set = VertexSet::with_capacity(self.n());
        for &v in self.labels.values() {
            set.insert(v);
        }
        set
    }

    /// The undirected graph with an edge wherever there is an arc in either
    /// direction. Colors and labels are kept.
    pub fn underlying_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.out[u].insert(v);
            g.out[v].insert(u);
        }
        g.colors = self.colors.clone();
        g.labels = self.labels.clone();
        g
    }

    /// The subgraph induced by `keep`, with vertices renumbered in increasing
    /// order. Colors are restricted; labels on removed vertices are dropped.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let map: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.n())
                .map(|v| {
                    if keep.contains(v) {
                        next += 1;
                        Some(next - 1)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let m = map.iter().flatten().count();
        let mut g = Graph::with_direction(m, self.directed);
        for (u, v) in self.edges() {
            if let (Some(a), Some(b)) = (map[u], map[v]) {
                g.add_edge(a, b).expect("induced edge in range");
            }
        }
        for (name, set) in &self.colors {
            let members: Vec<usize> = set.ones().filter_map(|v| map[v]).collect();
            g.set_color(name, members).expect("induced color in range");
        }
        for (name, &v) in &self.labels {
            if let Some(a) = map[v] {
                g.labels.insert(name.clone(), a);
            }
        }
        g
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut g = Graph::with_direction(self.n(), self.directed);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation in range");
        }
        for (name, set) in &self.colors {
            g.set_color(name, set.ones().map(|v| perm[v]))
                .expect("permutation in range");
        }
        for (name, &v) in &self.labels {
            g.labels.insert(name.clone(), perm[v]);
        }
        g
    }

    // Families used throughout tests and benchmarks.

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.out[u].insert(v);
                g.out[v].insert(u);
            }
        }
        g
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).expect("path edge");
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0).expect("cycle edge");
        }
        g
    }

    /// `K_{a,b}` with the left side `0..a` and the right side `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.out[u].insert(v);
                g.out[v].insert(u);
            }
        }
        g
    }

    /// `K_{1,k}` with center 0.
    pub fn star(k: usize) -> Graph {
        Graph::complete_bipartite(1, k)
    }

    /// Disjoint union of two undirected graphs plus all edges between them.
    /// Vertices of `other` are shifted by `self.n()`. Colors and labels are
    /// not carried over.
    pub fn join(&self, other: &Graph) -> Graph {
        let a = self.n();
        let mut g = Graph::new(a + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("join edge");
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v).expect("join edge");
        }
        for u in 0..a {
            for v in 0..other.n() {
                g.add_edge(u, a + v).expect("join edge");
            }
        }
        g
    }

    /// Disjoint union of two graphs of the same direction. Colors and labels
    /// are not carried over.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        assert_eq!(self.directed, other.directed);
        let a = self.n();
        let mut g = Graph::with_direction(a + other.n(), self.directed);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("union edge");
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v).expect("union edge");
        }
        g
    }
}

/// Collects a vertex set into a sorted vector.
pub fn to_vec(set: &VertexSet) -> Vec<Vertex> {
    set.ones().collect()
}

/// Builds a vertex set over `0..n` from a list of members.
pub fn set_of(n: usize, members: &[Vertex]) -> VertexSet {
    let mut s = VertexSet::with_capacity(n);
    for &v in members {
        s.insert(v);
    }
    s
}
