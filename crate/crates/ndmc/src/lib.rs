//! File formats, reports, benchmarks and the `ndmc` command line on top of
//! `ndmc-core`.
//!
//! Exit codes of the binary: 0 when the checked property holds (or the
//! command simply succeeded), 1 when it does not hold, 2 on any error.

pub mod bench;
pub mod cli;
pub mod codec;
pub mod error;
pub mod report;

use ndmc_core::eval::{check_fo_with, check_mso_with, eval_naive_with, CheckOptions, Environment, Outcome};
use ndmc_core::graph::Graph;
use ndmc_core::logic::Formula;

pub use error::{CliError, Result};
pub use report::RunReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Brute-force evaluation over all vertices and subsets.
    Naive,
    /// Type-based evaluation on the neighborhood partition.
    Fast,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Naive => "naive",
            Engine::Fast => "fast",
        }
    }
}

/// Checks a sentence with the chosen engine; the fast engine picks the FO
/// checker when the sentence has no set quantifiers.
pub fn check(g: &Graph, f: &Formula, engine: Engine, opts: &CheckOptions) -> ndmc_core::Result<Outcome> {
    let env = Environment::new();
    match engine {
        Engine::Naive => eval_naive_with(g, f, &env, opts),
        Engine::Fast if f.is_fo() => check_fo_with(g, f, &env, opts),
        Engine::Fast => check_mso_with(g, f, &env, opts),
    }
}
