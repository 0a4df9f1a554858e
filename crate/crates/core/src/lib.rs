//! Zero-suppressed decision diagrams and a symbolic solver for
//! combinatorial reconfiguration problems.
//!
//! The [`zdd`] module holds the diagram kernel, [`builders`] compiles graph
//! classes into families, [`ops`] implements the one-move operators and
//! [`search`] runs layered breadth-first search on top of them. [`io`] and
//! [`cli`] hold the file formats and the command-line driver; [`oracle`]
//! has brute-force reference implementations for testing.

pub mod builders;
pub mod cli;
pub mod graph;
pub mod io;
pub mod ops;
pub mod oracle;
pub mod search;
pub mod zdd;

pub use builders::{build_family, Extremal, ObjectClass, ObjectKind};
pub use graph::{Graph, GraphError};
pub use ops::{ElementSet, Model, NeighborMap, StepContext};
pub use search::{solve, Outcome, Problem, ReconfInstance, ReconfResult, SearchError, SearchLimits, Variant};
pub use zdd::{scientific, NodeRef, Objective, ZddError, ZddStore};
