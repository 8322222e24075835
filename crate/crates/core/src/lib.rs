//! Solvers for k-in-a-tree: given a graph and a set of terminals, is there an
//! induced tree containing every terminal?
//!
//! Besides an exhaustive baseline the crate has dynamic programs over tree
//! decompositions and cluster / co-cluster modulators (built on weighted
//! partition sets with rank-based reduction), a kernel for the feedback edge
//! number, and generators for several gadget constructions.

pub mod cluster;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod kernel;
pub mod oracle;
pub mod partition;
pub mod solve;
pub mod structure;
pub mod tw;

pub use error::{Error, Result};
pub use graph::{
    connected_components, extract_witness, validate_solution, Answer, Graph, Instance, SolveOutcome,
};
pub use solve::{feedback_edge_number, solve, AutoPolicy, Method, SolveOptions, SolveReport};
