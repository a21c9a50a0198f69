//! Scaling benchmarks.
//!
//! A suite is a list of runs, each a graph family, a size, an engine and a
//! sentence. Built-in suites are looked up by name; anything else is read as
//! a suite file:
//!
//! ```text
//! # sentence applies to the runs below it
//! sentence exists x. exists y. E(x, y)
//! run complete-bipartite 50 fast
//! run cycle 9 naive
//! ```

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ndmc_core::eval::CheckOptions;
use ndmc_core::graph::Graph;
use ndmc_core::logic::Formula;
use ndmc_core::partition::nd;
use ndmc_core::random::random_typed_graph;
use ndmc_core::Error;

use crate::error::{CliError, Result};
use crate::{check, Engine};

pub const SUITES: [&str; 3] = ["fo-scaling", "mso-scaling", "typed-scaling"];

const PATH3: &str = "exists x. exists y. exists z. (E(x, y) & E(y, z) & !E(x, z) & x != z)";
const TWO_COLORABLE: &str = "existsS X. forall x. forall y. (E(x, y) -> !(x in X <-> y in X))";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    CompleteBipartite,
    Cycle,
    Path,
    Edgeless,
    Star,
    /// Seeded random graph with `size` classes of up to 20 vertices.
    Typed,
}

impl Family {
    fn parse(word: &str) -> Option<Self> {
        Some(match word {
            "complete" => Family::Complete,
            "complete-bipartite" => Family::CompleteBipartite,
            "cycle" => Family::Cycle,
            "path" => Family::Path,
            "edgeless" => Family::Edgeless,
            "star" => Family::Star,
            "typed" => Family::Typed,
            _ => return None,
        })
    }

    fn name(self, size: usize) -> String {
        match self {
            Family::Complete => format!("K_{size}"),
            Family::CompleteBipartite => format!("K_{size},{size}"),
            Family::Cycle => format!("C_{size}"),
            Family::Path => format!("P_{size}"),
            Family::Edgeless => format!("I_{size}"),
            Family::Star => format!("K_1,{size}"),
            Family::Typed => format!("typed w={size}"),
        }
    }

    fn build(self, size: usize, rng: &mut ChaCha8Rng) -> Graph {
        match self {
            Family::Complete => Graph::complete(size),
            Family::CompleteBipartite => Graph::complete_bipartite(size, size),
            Family::Cycle => Graph::cycle(size),
            Family::Path => Graph::path(size),
            Family::Edgeless => Graph::edgeless(size),
            Family::Star => Graph::star(size),
            Family::Typed => random_typed_graph(rng, size, 20, 0.5),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub family: Family,
    pub size: usize,
    pub engine: Engine,
    pub sentence: Formula,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub name: String,
    pub runs: Vec<Run>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub nd: usize,
    pub engine: &'static str,
    /// `true`, `false`, or `budget` when the visit budget ran out.
    pub value: String,
    pub time_ms: f64,
    pub branches: u64,
}

fn runs(family: Family, sizes: &[usize], engine: Engine, sentence: &str) -> Vec<Run> {
    let sentence = crate::codec::parse_formula(sentence).expect("built-in sentence parses");
    sizes
        .iter()
        .map(|&size| Run {
            family,
            size,
            engine,
            sentence: sentence.clone(),
        })
        .collect()
}

pub fn builtin(name: &str) -> Option<Suite> {
    let runs = match name {
        "fo-scaling" => runs(Family::CompleteBipartite, &[50, 100, 200], Engine::Fast, PATH3),
        "mso-scaling" => {
            let mut r = runs(Family::CompleteBipartite, &[2, 4, 6], Engine::Naive, TWO_COLORABLE);
            r.extend(runs(Family::CompleteBipartite, &[2, 4, 6, 200, 1000], Engine::Fast, TWO_COLORABLE));
            r
        }
        "typed-scaling" => runs(Family::Typed, &[2, 3, 4, 5, 6], Engine::Fast, PATH3),
        _ => return None,
    };
    Some(Suite {
        name: name.to_string(),
        runs,
    })
}

fn suite_error(line: usize, message: impl Into<String>) -> CliError {
    CliError::Format {
        path: String::new(),
        line,
        message: message.into(),
    }
}

pub fn parse_suite(name: &str, text: &str) -> Result<Suite> {
    let mut sentence: Option<Formula> = None;
    let mut runs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("sentence ") {
            sentence = Some(crate::codec::parse_formula(rest).map_err(|e| suite_error(line, e.to_string()))?);
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let ["run", family, size, engine] = words.as_slice() else {
            return Err(suite_error(line, "expected `sentence <formula>` or `run <family> <size> <engine>`"));
        };
        let family = Family::parse(family).ok_or_else(|| suite_error(line, format!("unknown family `{family}`")))?;
        let size = size
            .parse()
            .map_err(|_| suite_error(line, format!("expected a size, found `{size}`")))?;
        let engine = match *engine {
            "naive" => Engine::Naive,
            "fast" => Engine::Fast,
            other => return Err(suite_error(line, format!("unknown engine `{other}`"))),
        };
        let sentence = sentence
            .clone()
            .ok_or_else(|| suite_error(line, "`run` before any `sentence` line"))?;
        runs.push(Run {
            family,
            size,
            engine,
            sentence,
        });
    }
    if runs.is_empty() {
        return Err(CliError::Usage(format!("suite `{name}` has no runs")));
    }
    Ok(Suite {
        name: name.to_string(),
        runs,
    })
}

pub fn run_suite(suite: &Suite, seed: u64, budget: Option<u64>) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(suite.runs.len());
    for run in &suite.runs {
        let g = run.family.build(run.size, &mut rng);
        let opts = CheckOptions {
            budget,
            ..CheckOptions::default()
        };
        let start = Instant::now();
        let outcome = check(&g, &run.sentence, run.engine, &opts);
        let time_ms = start.elapsed().as_secs_f64() * 1e3;
        let (value, branches) = match outcome {
            Ok(out) => (out.value.to_string(), out.stats.branches),
            Err(Error::BudgetExceeded(_)) => ("budget".to_string(), 0),
            Err(e) => return Err(e.into()),
        };
        rows.push(Row {
            family: run.family.name(run.size),
            n: g.n(),
            nd: nd(&g),
            engine: run.engine.name(),
            value,
            time_ms,
            branches,
        });
    }
    Ok(rows)
}
