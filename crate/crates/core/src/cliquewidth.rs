//! Cliquewidth expressions built from a neighborhood partition.
//!
//! Class `i` (0-based) is built under label `i + 1`; label `w + 1` is a
//! scratch label used to grow clique classes one vertex at a time. After all
//! classes exist, one `Join` per quotient edge adds the inter-class edges.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{ClassKind, NeighborhoodPartition};

pub type CwLabel = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    /// Adds a fresh vertex carrying the label.
    Introduce(CwLabel),
    /// Adds every edge between a vertex labeled `a` and one labeled `b`.
    Join(CwLabel, CwLabel),
    /// Relabels every vertex labeled `from` to `to`.
    Rename(CwLabel, CwLabel),
    /// Builds both scripts independently and adds their disjoint union.
    Union(Box<CliquewidthScript>, Box<CliquewidthScript>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquewidthScript {
    pub instructions: Vec<Instruction>,
    pub label_budget: usize,
}

impl CliquewidthScript {
    /// Executes the script. Vertices are numbered in introduction order.
    pub fn replay(&self) -> Graph {
        let mut g = Graph::new(0);
        let mut labels = Vec::new();
        self.run(&mut g, &mut labels);
        g
    }

    fn run(&self, g: &mut Graph, labels: &mut Vec<CwLabel>) {
        for ins in &self.instructions {
            match ins {
                Instruction::Introduce(l) => {
                    g.add_vertex();
                    labels.push(*l);
                }
                Instruction::Join(a, b) => {
                    for u in 0..labels.len() {
                        for v in 0..labels.len() {
                            if u != v && labels[u] == *a && labels[v] == *b {
                                g.add_edge(u, v).expect("replay edge in range");
                            }
                        }
                    }
                }
                Instruction::Rename(from, to) => {
                    for l in labels.iter_mut().filter(|l| **l == *from) {
                        *l = *to;
                    }
                }
                Instruction::Union(left, right) => {
                    for part in [left, right] {
                        let mut sub = Graph::new(0);
                        let mut sub_labels = Vec::new();
                        part.run(&mut sub, &mut sub_labels);
                        *g = g.disjoint_union(&sub);
                        labels.extend(sub_labels);
                    }
                }
            }
        }
    }

    /// Distinct labels mentioned anywhere in the script.
    pub fn labels_used(&self) -> usize {
        let mut seen = BTreeSet::new();
        self.collect_labels(&mut seen);
        seen.len()
    }

    fn collect_labels(&self, seen: &mut BTreeSet<CwLabel>) {
        for ins in &self.instructions {
            match ins {
                Instruction::Introduce(l) => {
                    seen.insert(*l);
                }
                Instruction::Join(a, b) | Instruction::Rename(a, b) => {
                    seen.insert(*a);
                    seen.insert(*b);
                }
                Instruction::Union(l, r) => {
                    l.collect_labels(seen);
                    r.collect_labels(seen);
                }
            }
        }
    }

    pub fn count_introduce(&self) -> usize {
        self.instructions
            .iter()
            .map(|ins| match ins {
                Instruction::Introduce(_) => 1,
                Instruction::Union(l, r) => l.count_introduce() + r.count_introduce(),
                _ => 0,
            })
            .sum()
    }

    pub fn count_joins(&self) -> usize {
        self.instructions
            .iter()
            .map(|ins| match ins {
                Instruction::Join(..) => 1,
                Instruction::Union(l, r) => l.count_joins() + r.count_joins(),
                _ => 0,
            })
            .sum()
    }
}

/// A script with label budget `width + 1` whose replay is isomorphic to `g`.
/// Replayed vertex `k` is the `k`-th vertex when the classes of `p` are
/// listed in order.
pub fn cliquewidth_expression(g: &Graph, p: &NeighborhoodPartition) -> Result<CliquewidthScript> {
    if g.is_directed() {
        return Err(Error::DirectedUnsupported("cliquewidth_expression"));
    }
    p.validate(g)?;
    let w = p.width();
    let scratch = w + 1;
    let mut instructions = Vec::new();
    for (i, class) in p.classes().iter().enumerate() {
        let label = i + 1;
        match p.kind(i) {
            ClassKind::Independent => {
                instructions.extend(class.iter().map(|_| Instruction::Introduce(label)));
            }
            ClassKind::Clique => {
                instructions.push(Instruction::Introduce(label));
                for _ in 1..class.len() {
                    instructions.push(Instruction::Introduce(scratch));
                    instructions.push(Instruction::Join(label, scratch));
                    instructions.push(Instruction::Rename(scratch, label));
                }
            }
        }
    }
    for i in 0..w {
        for j in i + 1..w {
            if g.adjacent(p.class(i)[0], p.class(j)[0]) {
                instructions.push(Instruction::Join(i + 1, j + 1));
            }
        }
    }
    Ok(CliquewidthScript {
        instructions,
        label_budget: w + 1,
    })
}
