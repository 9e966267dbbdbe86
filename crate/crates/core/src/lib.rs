//! Poset dimension through centered colorings of cover graphs.
//!
//! Given a finite poset of height `h` and a `2h`-centered coloring of its
//! cover graph, [`realizer::partition_inc`] splits the incomparable pairs into
//! reversible classes keyed by signature fingerprints and left/right vectors,
//! and [`realizer::build_realizer_from_partition`] turns the classes into a
//! realizer. Every structural property the construction depends on is checked at
//! runtime. The [`oracle`] module holds exact brute-force ground truth for
//! small instances.

pub mod coloring;
pub mod error;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod poset;
pub mod realizer;
pub mod reversal;

pub use coloring::{Coloring, EliminationForest, ForestMode};
pub use error::{Error, Result};
pub use graph::Graph;
pub use poset::{LinearExtension, Poset};
