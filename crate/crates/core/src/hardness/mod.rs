//! SAT-based lower-bound instances.
//!
//! A 3-CNF formula becomes a colored DAG with a vertex cover of size
//! `O(log n)` plus an MSO sentence with a single set quantifier that holds
//! exactly when the formula is satisfiable. Three further stages remove arc
//! directions, colors and labels while preserving truth.
//!
//! Each stage adds gadget vertices. The rewritten sentences guard every
//! vertex quantifier so that it ranges over the vertices of the previous
//! stage only; set quantifiers are left unrestricted since membership is only
//! ever tested on guarded variables.

mod cnf;
mod formulas;
mod transform;

use alloc::string::String;
use alloc::vec::Vec;

pub use cnf::{CnfFormula, Literal};
pub use formulas::{eq_formula, gadget_n, h_n, tow};
pub use transform::{
    decolor, delabel, directed_to_undirected, directed_to_undirected_with, levels, SetEncoding,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::logic::{metrics, Formula, SentenceMetrics, Term};
use crate::vertex_cover::vertex_cover;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stage {
    Directed,
    Undirected,
    Uncolored,
    Unlabeled,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Directed => "directed",
            Stage::Undirected => "undirected",
            Stage::Uncolored => "uncolored",
            Stage::Unlabeled => "unlabeled",
        }
    }
}

impl core::str::FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "directed" => Ok(Stage::Directed),
            "undirected" => Ok(Stage::Undirected),
            "uncolored" => Ok(Stage::Uncolored),
            "unlabeled" => Ok(Stage::Unlabeled),
            other => Err(Error::InvalidInstance(alloc::format!("unknown stage `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceMetadata {
    /// Minimum vertex cover of the underlying undirected graph.
    pub vertex_cover_size: usize,
    pub metrics: SentenceMetrics,
    /// Longest-path levels of the DAG vertices, once computed.
    pub levels: Option<Vec<usize>>,
    /// Bits used to encode variable indices (0 for synthetic instances).
    pub bit_width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessInstance {
    pub graph: Graph,
    pub sentence: Formula,
    pub stage: Stage,
    pub metadata: InstanceMetadata,
}

impl HardnessInstance {
    /// Wraps an arbitrary graph and sentence as an instance of `stage`, e.g.
    /// to feed synthetic inputs to the transformations.
    pub fn new(graph: Graph, sentence: Formula, stage: Stage) -> Result<Self> {
        let ok = match stage {
            Stage::Directed => graph.is_directed(),
            Stage::Undirected => !graph.is_directed(),
            Stage::Uncolored => !graph.is_directed() && graph.color_count() == 0,
            Stage::Unlabeled => {
                !graph.is_directed() && graph.color_count() == 0 && graph.label_count() == 0
            }
        };
        if !ok {
            return Err(Error::InvalidInstance(alloc::format!(
                "graph does not fit the {} stage",
                stage.name()
            )));
        }
        Ok(Self::assemble(graph, sentence, stage, None, 0))
    }

    fn assemble(graph: Graph, sentence: Formula, stage: Stage, levels: Option<Vec<usize>>, bit_width: usize) -> Self {
        let cover = vertex_cover(&graph.underlying_undirected()).expect("undirected input").size;
        let metrics = metrics(&sentence).with_graph(&graph);
        HardnessInstance {
            graph,
            sentence,
            stage,
            metadata: InstanceMetadata {
                vertex_cover_size: cover,
                metrics,
                levels,
                bit_width,
            },
        }
    }
}

pub const COPY_COLORS: [&str; 6] = ["N1", "N2", "N3", "N4", "N5", "N6"];
pub const VARIABLE_COLOR: &str = "V1";
pub const CLAUSE_COLOR: &str = "M";

/// `ceil(log2(n + 1))`: bits needed for the indices `1..=n`.
pub fn bit_width(n: usize) -> usize {
    (usize::BITS - n.leading_zeros()) as usize
}

/// Vertex layout of the directed instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub bits: usize,
    pub vars: usize,
    pub clauses: usize,
}

impl Layout {
    /// Vertex `j` of copy `c` (both 0-based) of the bit gadget.
    pub fn copy_vertex(&self, c: usize, j: usize) -> usize {
        c * (self.bits + 1) + j
    }

    /// The vertex of variable `i` (1-based).
    pub fn variable(&self, i: usize) -> usize {
        6 * (self.bits + 1) + i - 1
    }

    /// The vertex of clause `k` (0-based).
    pub fn clause(&self, k: usize) -> usize {
        6 * (self.bits + 1) + self.vars + k
    }

    pub fn n(&self) -> usize {
        6 * (self.bits + 1) + self.vars + self.clauses
    }
}

/// The colored DAG and one-set-quantifier sentence for `cnf`.
///
/// Six copies of the bit gadget `N(b)` with `b = bit_width(n)`; variable
/// vertex `v_i` points at the copy-1 vertices of the set bits of `i`; the
/// clause vertex points, for its literal in position `p`, at the bits of the
/// variable inside copy `2p + 1` (positive) or `2p + 2` (negative).
pub fn sat_to_directed(cnf: &CnfFormula) -> Result<HardnessInstance> {
    cnf.validate()?;
    if cnf.clauses.is_empty() {
        return Err(Error::InvalidCnf("at least one clause is required".into()));
    }
    let layout = Layout {
        bits: bit_width(cnf.num_vars),
        vars: cnf.num_vars,
        clauses: cnf.clauses.len(),
    };
    let b = layout.bits;
    let mut g = Graph::new_directed(layout.n());
    let gadget = gadget_n(b);
    for c in 0..6 {
        for (u, v) in gadget.edges() {
            g.add_edge(layout.copy_vertex(c, u), layout.copy_vertex(c, v))?;
        }
        g.set_color(COPY_COLORS[c], (0..=b).map(|j| layout.copy_vertex(c, j)))?;
    }
    for i in 1..=cnf.num_vars {
        for j in (0..b).filter(|&j| i >> j & 1 == 1) {
            g.add_edge(layout.variable(i), layout.copy_vertex(0, j))?;
        }
    }
    g.set_color(VARIABLE_COLOR, (1..=cnf.num_vars).map(|i| layout.variable(i)))?;
    for (k, clause) in cnf.clauses.iter().enumerate() {
        for (p, lit) in clause.iter().enumerate() {
            let copy = 2 * p + usize::from(!lit.positive);
            for j in (0..b).filter(|&j| lit.var >> j & 1 == 1) {
                g.add_edge(layout.clause(k), layout.copy_vertex(copy, j))?;
            }
        }
    }
    g.set_color(CLAUSE_COLOR, (0..cnf.clauses.len()).map(|k| layout.clause(k)))?;
    let sentence = Formula::exists_set("S", clause_body(cnf.num_vars, &|y| Formula::in_set(y, "S")));
    Ok(HardnessInstance::assemble(g, sentence, Stage::Directed, None, b))
}

/// `forall x. (x in M -> exists y. (y in V1 & ((member(y) & (eq over copies
/// 1, 3, 5)) | (!member(y) & (eq over copies 2, 4, 6)))))`.
fn clause_body(num_vars: usize, member: &dyn Fn(Term) -> Formula) -> Formula {
    let h = h_n(num_vars);
    let x = || Term::var("x");
    let y = || Term::var("y");
    let eqs = |copies: [usize; 3]| {
        Formula::or_all(copies.iter().map(|&c| eq_formula(h, x(), y(), COPY_COLORS[c], COPY_COLORS[0])))
    };
    let choice = Formula::or(
        Formula::and(member(y()), eqs([0, 2, 4])),
        Formula::and(Formula::not(member(y())), eqs([1, 3, 5])),
    );
    Formula::forall(
        "x",
        Formula::implies(
            Formula::in_color(x(), CLAUSE_COLOR),
            Formula::exists("y", Formula::and(Formula::in_color(y(), VARIABLE_COLOR), choice)),
        ),
    )
}

/// The FO sentence for the weighted problem: some `weight` distinct
/// variables, set to true with all others false, satisfy `cnf`. It is checked
/// against the graph of `sat_to_directed(cnf)`.
pub fn weighted_variant(cnf: &CnfFormula, weight: usize) -> Result<Formula> {
    cnf.validate()?;
    if weight > cnf.num_vars {
        return Err(Error::InvalidInstance(alloc::format!(
            "weight {weight} exceeds the {} variables",
            cnf.num_vars
        )));
    }
    let names: Vec<String> = (1..=weight).map(|i| alloc::format!("s{i}")).collect();
    let member = |t: Term| Formula::or_all(names.iter().map(|s| Formula::eq(t.clone(), Term::Var(s.clone()))));
    let mut f = clause_body(cnf.num_vars, &member);
    for (i, s) in names.iter().enumerate().rev() {
        let guard = Formula::and_all(
            core::iter::once(Formula::in_color(Term::Var(s.clone()), VARIABLE_COLOR)).chain(
                names[..i]
                    .iter()
                    .map(|t| Formula::neq(Term::Var(s.clone()), Term::Var(t.clone()))),
            ),
        );
        f = Formula::exists(s, Formula::and(guard, f));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{check_fo, check_mso};

    fn lit(var: usize, positive: bool) -> Literal {
        Literal { var, positive }
    }

    #[test]
    fn bit_widths() {
        assert_eq!(bit_width(1), 1);
        assert_eq!(bit_width(2), 2);
        assert_eq!(bit_width(3), 2);
        assert_eq!(bit_width(4), 3);
        assert_eq!(bit_width(16), 5);
    }

    #[test]
    fn directed_instances_decide_satisfiability() {
        let sat = CnfFormula::new(2, alloc::vec![[lit(1, true); 3]]).unwrap();
        let inst = sat_to_directed(&sat).unwrap();
        assert_eq!(inst.metadata.metrics.q_s, 1);
        assert!(inst.graph.is_directed());
        assert_eq!(inst.graph.label_count(), 0);
        assert!(check_mso(&inst.graph, &inst.sentence).unwrap());

        let unsat = CnfFormula::new(2, alloc::vec![[lit(1, true); 3], [lit(1, false); 3]]).unwrap();
        let inst = sat_to_directed(&unsat).unwrap();
        assert!(!check_mso(&inst.graph, &inst.sentence).unwrap());
    }

    #[test]
    fn rejects_bad_variables() {
        assert!(matches!(
            CnfFormula::new(2, alloc::vec![[lit(0, true), lit(1, true), lit(1, true)]]),
            Err(Error::InvalidCnf(_))
        ));
        assert!(CnfFormula::new(2, alloc::vec![[lit(3, true); 3]]).is_err());
    }

    #[test]
    fn weighted_examples() {
        let cnf = CnfFormula::new(2, alloc::vec![[lit(1, true), lit(2, true), lit(2, true)]]).unwrap();
        let g = sat_to_directed(&cnf).unwrap().graph;
        let f = weighted_variant(&cnf, 1).unwrap();
        assert!(f.is_fo());
        assert!(check_fo(&g, &f).unwrap());
        assert!(!check_fo(&g, &weighted_variant(&cnf, 0).unwrap()).unwrap());
        assert!(weighted_variant(&cnf, 3).is_err());

        let unsat = CnfFormula::new(1, alloc::vec![[lit(1, false); 3], [lit(1, true); 3]]).unwrap();
        let g = sat_to_directed(&unsat).unwrap().graph;
        for w in 0..=1 {
            assert!(!check_fo(&g, &weighted_variant(&unsat, w).unwrap()).unwrap());
        }
    }
}
