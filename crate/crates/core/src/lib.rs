//! Coloring of signed graphs in which a vertex pair may carry both a
//! positive and a negative edge.
//!
//! The crate covers the data model and switching ([`graph`]), exact
//! coloring and list-coloring solvers ([`solve`]), constructions relating
//! simple and signed graphs ([`reduce`]), good matchings ([`matching`]),
//! the choosability engine ([`choose`]), bad-list diagnostics ([`analyze`])
//! and the text/JSON file formats ([`format`]).

pub mod analyze;
pub mod choose;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod graph;
pub mod matching;
pub mod reduce;
pub mod solve;

pub use error::{Error, Result};
pub use graph::{PairKind, Sign, SignedGraph, SwitchSet};
pub use reduce::{PartitionedExpansion, SimpleGraph};
pub use solve::{Coloring, Color, ListAssignment, ListMode, Palette, SolveResult, Verdict};
