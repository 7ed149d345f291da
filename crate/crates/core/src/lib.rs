//! Maximum-cardinality minimal separators.
//!
//! The crate bundles exact oracles, a fixed-parameter solver built on the
//! recursive `find_sep` procedure, a dynamic program over tree decompositions,
//! and four constructive graph reductions with checkable certificates.

pub mod error;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod reductions;
pub mod td;

pub use error::{Error, Result};
pub use fpt::{solve, SolveReport, Threshold};
pub use graph::{Cut, Format, Graph, Separator, VertexSet};
pub use td::TreeDecomposition;
