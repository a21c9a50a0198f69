//! Vertex types, neighborhood partitions and the quotient graph.
//!
//! Two vertices have the same type when they lie in exactly the same color
//! classes and have the same neighbors apart from each other. Same-type is an
//! equivalence relation, so a partition into type classes can be built by
//! comparing each vertex against one member of every class seen so far; that
//! greedy pass already yields the minimum width.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// Whether a class induces a clique or an independent set.
///
/// Singleton classes are always reported as `Independent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Clique,
    Independent,
}

/// `a \ {u, v} == b \ {u, v}`.
fn eq_except(a: &VertexSet, b: &VertexSet, u: Vertex, v: Vertex) -> bool {
    let mut diff = a.symmetric_difference_count(b);
    if a.contains(u) != b.contains(u) {
        diff -= 1;
    }
    if u != v && a.contains(v) != b.contains(v) {
        diff -= 1;
    }
    diff == 0
}

fn same_colors(g: &Graph, u: Vertex, v: Vertex) -> bool {
    g.colors().all(|(_, set)| set.contains(u) == set.contains(v))
}

fn same_type_unchecked(g: &Graph, u: Vertex, v: Vertex) -> bool {
    if u == v {
        return true;
    }
    if !same_colors(g, u, v) {
        return false;
    }
    if !eq_except(g.out_neighbors(u), g.out_neighbors(v), u, v) {
        return false;
    }
    if g.is_directed() {
        // Arcs between the pair must go both ways or not at all, otherwise
        // swapping the two vertices would not be an automorphism.
        g.adjacent(u, v) == g.adjacent(v, u)
            && eq_except(g.in_neighbors(u), g.in_neighbors(v), u, v)
    } else {
        true
    }
}

/// Whether `u` and `v` have the same type in `g`.
///
/// For digraphs both the in- and out-neighborhoods must agree (each with the
/// other endpoint removed), and any arc between `u` and `v` must be matched by
/// the reverse arc.
pub fn same_type(g: &Graph, u: Vertex, v: Vertex) -> Result<bool> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    Ok(same_type_unchecked(g, u, v))
}

/// A partition of the vertex set into same-type classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodPartition {
    classes: Vec<Vec<Vertex>>,
    kinds: Vec<ClassKind>,
    class_of: Vec<usize>,
}

impl NeighborhoodPartition {
    /// Builds a partition from explicit classes, checking that they cover
    /// `0..n` exactly, that every class is a single type, and deriving the
    /// class kinds. Classes are reordered by their smallest vertex.
    pub fn from_classes(g: &Graph, classes: Vec<Vec<Vertex>>) -> Result<Self> {
        let p = Self::assemble(g.n(), classes, |class| kind_in(g, class))?;
        p.validate(g)?;
        Ok(p)
    }

    fn assemble<F>(n: usize, mut classes: Vec<Vec<Vertex>>, mut kind: F) -> Result<Self>
    where
        F: FnMut(&[Vertex]) -> ClassKind,
    {
        classes.retain(|c| !c.is_empty());
        for c in &mut classes {
            c.sort_unstable();
        }
        classes.sort_unstable_by_key(|c| c[0]);
        let mut class_of = alloc::vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for &v in c {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if class_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in two classes"
                    )));
                }
                class_of[v] = i;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} is not in any class"
            )));
        }
        let kinds = classes.iter().map(|c| kind(c)).collect();
        Ok(NeighborhoodPartition {
            classes,
            kinds,
            class_of,
        })
    }

    /// Checks this partition against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.class_of.len() != g.n() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} vertices, graph has {}",
                self.class_of.len(),
                g.n()
            )));
        }
        for (i, class) in self.classes.iter().enumerate() {
            let first = class[0];
            if let Some(&bad) = class[1..]
                .iter()
                .find(|&&v| !same_type_unchecked(g, first, v))
            {
                return Err(Error::InvalidPartition(format!(
                    "vertices {first} and {bad} in class {i} have different types"
                )));
            }
            if self.kinds[i] != kind_in(g, class) {
                return Err(Error::InvalidPartition(format!(
                    "class {i} has the wrong kind"
                )));
            }
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.classes.len()
    }

    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn classes(&self) -> &[Vec<Vertex>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[Vertex] {
        &self.classes[i]
    }

    pub fn kind(&self, i: usize) -> ClassKind {
        self.kinds[i]
    }

    pub fn class_of(&self, v: Vertex) -> usize {
        self.class_of[v]
    }
}

fn kind_in(g: &Graph, class: &[Vertex]) -> ClassKind {
    if class.len() >= 2 && g.adjacent(class[0], class[1]) {
        ClassKind::Clique
    } else {
        ClassKind::Independent
    }
}

/// Minimum-width neighborhood partition.
///
/// Vertices are processed in order `0..n`; each joins the first class whose
/// members share its type, or opens a new singleton class.
pub fn neighborhood_partition(g: &Graph) -> NeighborhoodPartition {
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in 0..g.n() {
        match classes
            .iter_mut()
            .find(|c| same_type_unchecked(g, c[0], v))
        {
            Some(c) => c.push(v),
            None => classes.push(alloc::vec![v]),
        }
    }
    NeighborhoodPartition::assemble(g.n(), classes, |c| kind_in(g, c))
        .expect("greedy classes cover every vertex once")
}

/// Neighborhood diversity: the width of a minimum neighborhood partition.
pub fn nd(g: &Graph) -> usize {
    neighborhood_partition(g).width()
}

/// The partition behind `nd(G) <= 2^k + k`: one singleton per cover vertex,
/// and one class per distinct type among the remaining (pairwise
/// non-adjacent) vertices.
pub fn partition_from_vertex_cover(g: &Graph, cover: &VertexSet) -> Result<NeighborhoodPartition> {
    for v in cover.ones() {
        g.check_vertex(v)?;
    }
    if let Some((u, v)) = g
        .edges()
        .find(|&(u, v)| !cover.contains(u) && !cover.contains(v))
    {
        return Err(Error::NotACover(u, v));
    }
    let mut classes: Vec<Vec<Vertex>> = cover.ones().map(|v| alloc::vec![v]).collect();
    let singletons = classes.len();
    for v in (0..g.n()).filter(|&v| !cover.contains(v)) {
        match classes[singletons..]
            .iter_mut()
            .find(|c| same_type_unchecked(g, c[0], v))
        {
            Some(c) => c.push(v),
            None => classes.push(alloc::vec![v]),
        }
    }
    NeighborhoodPartition::assemble(g.n(), classes, |c| kind_in(g, c))
}

/// Splits every class into its members inside and outside `s`, dropping empty
/// parts. Parts of a clique stay cliques; singletons become `Independent`.
pub fn refine_with_set(p: &NeighborhoodPartition, s: &VertexSet) -> NeighborhoodPartition {
    let mut classes = Vec::with_capacity(p.width() * 2);
    let mut kinds = Vec::with_capacity(p.width() * 2);
    for (class, &kind) in p.classes.iter().zip(&p.kinds) {
        let (inside, outside): (Vec<Vertex>, Vec<Vertex>) =
            class.iter().partition(|&&v| s.contains(v));
        for part in [inside, outside] {
            if !part.is_empty() {
                kinds.push(if part.len() >= 2 { kind } else { ClassKind::Independent });
                classes.push(part);
            }
        }
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_unstable_by_key(|&i| classes[i][0]);
    let classes: Vec<Vec<Vertex>> = order.iter().map(|&i| core::mem::take(&mut classes[i])).collect();
    let kinds: Vec<ClassKind> = order.iter().map(|&i| kinds[i]).collect();
    let mut class_of = alloc::vec![0; p.n()];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    NeighborhoodPartition {
        classes,
        kinds,
        class_of,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuotientNode {
    pub kind: ClassKind,
    pub size: usize,
}

/// One node per partition class; an edge wherever the two classes are fully
/// joined. Clique nodes carry their internal edges implicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGraph {
    nodes: Vec<QuotientNode>,
    adj: Vec<Vec<bool>>,
}

impl QuotientGraph {
    pub fn width(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[QuotientNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> QuotientNode {
        self.nodes[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    /// Edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.width();
        (0..w).flat_map(move |i| (i + 1..w).filter(move |&j| self.adj[i][j]).map(move |j| (i, j)))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().enumerate().filter(|(_, &e)| e).map(|(j, _)| j)
    }
}

pub fn quotient_graph(g: &Graph, p: &NeighborhoodPartition) -> Result<QuotientGraph> {
    if g.is_directed() {
        return Err(Error::DirectedUnsupported("quotient_graph"));
    }
    p.validate(g)?;
    let w = p.width();
    let nodes = (0..w)
        .map(|i| QuotientNode {
            kind: p.kind(i),
            size: p.class(i).len(),
        })
        .collect();
    let mut adj = alloc::vec![alloc::vec![false; w]; w];
    for i in 0..w {
        for j in i + 1..w {
            let e = g.adjacent(p.class(i)[0], p.class(j)[0]);
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    Ok(QuotientGraph { nodes, adj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::set_of;
    use alloc::vec;

    #[test]
    fn same_type_examples() {
        let k3 = Graph::complete(3);
        assert!(same_type(&k3, 0, 1).unwrap());
        let p4 = Graph::path(4);
        assert!(!same_type(&p4, 0, 3).unwrap());
        let k22 = Graph::complete_bipartite(2, 2);
        assert!(same_type(&k22, 0, 1).unwrap());
        assert!(same_type(&k3, 0, 3).is_err());
    }

    #[test]
    fn colors_separate_types() {
        let mut g = Graph::complete(3);
        g.set_color("red", [0]).unwrap();
        assert!(!same_type(&g, 0, 1).unwrap());
        assert!(same_type(&g, 1, 2).unwrap());
        assert_eq!(nd(&g), 2);
    }

    #[test]
    fn one_way_arc_breaks_type() {
        let g = Graph::from_arcs(2, &[(0, 1)]).unwrap();
        assert!(!same_type(&g, 0, 1).unwrap());
        let h = Graph::from_arcs(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(same_type(&h, 0, 1).unwrap());
    }

    #[test]
    fn partition_widths() {
        assert_eq!(nd(&Graph::complete(5)), 1);
        assert_eq!(nd(&Graph::complete_bipartite(3, 3)), 2);
        assert_eq!(nd(&Graph::cycle(5)), 5);
        assert_eq!(nd(&Graph::star(4)), 2);
        assert_eq!(nd(&Graph::path(4)), 4);
        assert_eq!(nd(&Graph::new(0)), 0);
    }

    #[test]
    fn kinds() {
        let p = neighborhood_partition(&Graph::complete(4));
        assert_eq!(p.kind(0), ClassKind::Clique);
        let p = neighborhood_partition(&Graph::complete_bipartite(2, 3));
        assert_eq!(p.classes(), &[vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(p.kind(0), ClassKind::Independent);
        let p = neighborhood_partition(&Graph::path(2));
        // P2 = K2, a clique class of two
        assert_eq!(p.width(), 1);
        assert_eq!(p.kind(0), ClassKind::Clique);
    }

    #[test]
    fn from_vertex_cover() {
        let star = Graph::star(4);
        let p = partition_from_vertex_cover(&star, &set_of(5, &[0])).unwrap();
        assert_eq!(p.width(), 2);
        let k3 = Graph::complete(3);
        let p = partition_from_vertex_cover(&k3, &set_of(3, &[0, 1])).unwrap();
        assert_eq!(p.width(), 3);
        p.validate(&k3).unwrap();
        let c5 = Graph::cycle(5);
        let all = set_of(5, &[0, 1, 2, 3, 4]);
        assert_eq!(partition_from_vertex_cover(&c5, &all).unwrap().width(), 5);
        assert_eq!(
            partition_from_vertex_cover(&c5, &set_of(5, &[0, 2])),
            Err(Error::NotACover(3, 4))
        );
    }

    #[test]
    fn refine() {
        let k4 = Graph::complete(4);
        let p = neighborhood_partition(&k4);
        let r = refine_with_set(&p, &set_of(4, &[0, 1]));
        assert_eq!(r.width(), 2);
        r.validate(&k4).unwrap();
        assert_eq!(refine_with_set(&p, &VertexSet::with_capacity(4)), p);
        let k22 = Graph::complete_bipartite(2, 2);
        let p = neighborhood_partition(&k22);
        let r = refine_with_set(&p, &set_of(4, &[0]));
        assert_eq!(r.width(), 3);
        assert_eq!(r.kind(0), ClassKind::Independent);
    }

    #[test]
    fn quotients() {
        let k22 = Graph::complete_bipartite(2, 2);
        let q = quotient_graph(&k22, &neighborhood_partition(&k22)).unwrap();
        assert_eq!(q.width(), 2);
        assert!(q.has_edge(0, 1));
        assert_eq!(q.node(0), QuotientNode { kind: ClassKind::Independent, size: 2 });

        let k5 = Graph::complete(5);
        let q = quotient_graph(&k5, &neighborhood_partition(&k5)).unwrap();
        assert_eq!(q.nodes(), &[QuotientNode { kind: ClassKind::Clique, size: 5 }]);
        assert_eq!(q.edges().count(), 0);

        let j = Graph::complete(3).join(&Graph::edgeless(4));
        let q = quotient_graph(&j, &neighborhood_partition(&j)).unwrap();
        assert_eq!(q.nodes()[0], QuotientNode { kind: ClassKind::Clique, size: 3 });
        assert_eq!(q.nodes()[1], QuotientNode { kind: ClassKind::Independent, size: 4 });
        assert!(q.has_edge(0, 1));
    }

    #[test]
    fn quotient_rejects_bad_partition() {
        let p4 = Graph::path(4);
        let bad = NeighborhoodPartition::from_classes(&p4, vec![vec![0, 3], vec![1, 2]]);
        assert!(matches!(bad, Err(Error::InvalidPartition(_))));
        let other = neighborhood_partition(&Graph::complete(4));
        assert!(quotient_graph(&p4, &other).is_err());
    }
}
