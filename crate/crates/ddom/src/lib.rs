//! Single- and double-vertex dominator analysis for single-sink DAGs.
//!
//! A vertex pair {v, w} is a double dominator of u when every path from u
//! to the root passes through v or through w (and neither vertex alone
//! suffices, nor does any single vertex separate u from the root "between"
//! them). Although a graph can have Θ(n²) such pairs, they compress into a
//! linear-size structure: a chain of segments, each holding two ordered
//! sides L and R, where every vertex carries a contiguous window into the
//! opposite side. A pair {v, w} is a double dominator exactly when v and w
//! sit in the same segment on different sides and one's index falls in the
//! other's window. This crate builds that structure in linear time and
//! answers pair queries in O(1).
//!
//! Entry points:
//! - [`graph::parse_dag`] / [`aiger::parse_aiger_ascii`] — read a graph.
//! - [`domtree::compute_dominator_tree`] — classic single-vertex dominators.
//! - [`chain::dominator_chain`] — the double-dominator chain for a source.
//! - [`query::MatchingVector`], [`chain::DominatorChain::is_double_dominator`]
//!   and friends — queries over the chain.
//! - [`oracle`] — brute-force reference implementations and random graph
//!   generation, used to validate everything else.

pub mod aiger;
pub mod chain;
pub mod domtree;
mod error;
pub mod flow;
pub mod graph;
pub mod oracle;
pub mod query;
pub mod stats;

pub use chain::{
    dominator_chain, dominator_chain_with_tree, segment_chain, ChainEntry, ClusterSpan,
    DominatorChain, SegmentChain, Side, Slot,
};
pub use domtree::{compute_dominator_tree, DominatorTree};
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Path, VertexId, VertexKind, NO_VERTEX};
pub use query::{chain_from_pair_set, pair, MatchingVector, PairSet};
pub use stats::{compute_stats, Stats};
