//! Structural parameters: feedback edge sets, tree decompositions and
//! cluster / co-cluster modulators.

mod decomposition;
mod fes;
mod modulator;

pub use decomposition::{
    build_tree_decomposition, make_nice, validate_td, NiceDecomposition, NiceKind, NiceNode,
    TreeDecomposition,
};
pub use fes::{feedback_edge_set, FeedbackEdgeSet, TreeClass};
pub use modulator::{
    cluster_modulator, cocluster_modulator, cocluster_parts, is_cluster_graph,
    maximal_cliques_of_cluster, smallest_cluster_modulator, smallest_cocluster_modulator,
};
