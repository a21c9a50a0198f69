//! Exact FO and MSO model checking on colored, labeled graphs and digraphs,
//! parameterized by neighborhood diversity.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; file formats, the command-line front end and
//! timing live in the companion `ndmc` crate.
//!
//! Layout:
//! - [`graph`] and [`partition`]: the graph model, vertex types, neighborhood
//!   partitions and the quotient graph.
//! - [`vertex_cover`] and [`cliquewidth`]: exact vertex cover and the
//!   cliquewidth expression emitter.
//! - [`logic`]: formulas, parsing, rendering, prenex form and metrics.
//! - [`eval`]: the brute-force oracle and the type-based fast checkers.
//! - [`solvers`]: chromatic number, Hamiltonicity and edge domination on the
//!   quotient graph.
//! - [`hardness`]: SAT-based instance generation and its transformations.
//! - [`random`]: seeded generators for graphs and sentences used by test
//!   corpora and benchmarks.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cliquewidth;
pub mod error;
pub mod eval;
pub mod graph;
pub mod hardness;
pub mod logic;
pub mod partition;
pub mod random;
pub mod solvers;
pub mod vertex_cover;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use logic::{Formula, Term};
pub use partition::{ClassKind, NeighborhoodPartition, QuotientGraph};
