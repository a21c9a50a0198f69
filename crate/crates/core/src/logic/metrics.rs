use super::Formula;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SentenceMetrics {
    /// Number of vertex quantifiers.
    pub q_v: usize,
    /// Number of set quantifiers.
    pub q_s: usize,
    /// Quantifier nesting depth.
    pub depth: usize,
    /// Node count (atoms, connectives and quantifiers).
    pub size: usize,
    /// Labels in the paired graph; distinct labels mentioned by the formula
    /// until `with_graph` is applied.
    pub label_count: usize,
}

impl SentenceMetrics {
    pub fn with_graph(mut self, g: &Graph) -> Self {
        self.label_count = g.label_count();
        self
    }
}

pub fn metrics(f: &Formula) -> SentenceMetrics {
    let mut m = SentenceMetrics {
        depth: depth(f),
        label_count: f.labels().len(),
        ..SentenceMetrics::default()
    };
    f.visit(&mut |node| {
        m.size += 1;
        match node {
            Formula::ExistsV(..) | Formula::ForallV(..) => m.q_v += 1,
            Formula::ExistsS(..) | Formula::ForallS(..) => m.q_s += 1,
            _ => {}
        }
    });
    m
}

fn depth(f: &Formula) -> usize {
    let below = f.children().into_iter().map(depth).max().unwrap_or(0);
    below + usize::from(f.is_quantifier())
}
