//! Circuit-style dominator statistics.
//!
//! For every output of the graph, the output's cone is extracted and the
//! dominator chain of each primary input in that cone is computed with
//! the output as the root. Per cone, each single dominator and each
//! dominator pair is counted once no matter how many inputs it
//! dominates; the per-cone counts are then summed over all outputs.
//! Single dominators are non-trivial only (never the input itself or
//! the output). A pair is *useful* when it dominates at least three
//! primary inputs of its cone.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::dominator_chain_with_tree;
use crate::domtree::compute_dominator_tree;
use crate::error::Result;
use crate::graph::{extract_cone, Graph, VertexId, VertexKind};
use crate::query::PairSet;

/// Aggregated dominator statistics for one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub inputs: usize,
    pub outputs: usize,
    pub gates: usize,
    pub one_doms: usize,
    pub two_doms: usize,
    pub useful_two_doms: usize,
}

/// Is `v` a primary input: declared as one, or without fanin (and not
/// an artificial vertex)?
fn is_primary_input(g: &Graph, v: VertexId) -> bool {
    match g.kind(v) {
        VertexKind::Input => true,
        VertexKind::Virtual => false,
        _ => g.fanin(v).is_empty(),
    }
}

/// The graph's outputs: the fanin of an artificial root (a merged
/// multi-output circuit), or the root itself.
fn outputs(g: &Graph) -> Vec<VertexId> {
    if g.kind(g.root()) == VertexKind::Virtual {
        let mut outs: Vec<VertexId> = g.fanin(g.root()).to_vec();
        outs.sort_unstable();
        outs.dedup();
        outs
    } else {
        vec![g.root()]
    }
}

/// Compute [`Stats`] for a graph, per the per-cone counting rules.
pub fn compute_stats(g: &Graph) -> Result<Stats> {
    let outs = outputs(g);
    let inputs = g.vertices().filter(|&v| is_primary_input(g, v)).count();
    let gates = g
        .vertices()
        .filter(|&v| !is_primary_input(g, v) && g.kind(v) != VertexKind::Virtual)
        .count();

    let mut one_doms = 0usize;
    let mut two_doms = 0usize;
    let mut useful = 0usize;
    for &out in &outs {
        let cone = extract_cone(g, out)?;
        let tree = compute_dominator_tree(&cone);
        let mut singles: BTreeSet<VertexId> = BTreeSet::new();
        let mut dominated_inputs: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for u in cone.vertices() {
            if u == cone.root() || !is_primary_input(&cone, u) {
                continue;
            }
            let chain = dominator_chain_with_tree(&cone, &tree, u)?;
            singles.extend(&chain.single[1..chain.single.len() - 1]);
            for p in chain.pairs() {
                *dominated_inputs.entry(p).or_insert(0) += 1;
            }
        }
        let pairs: PairSet = dominated_inputs.keys().copied().collect();
        one_doms += singles.len();
        two_doms += pairs.len();
        useful += dominated_inputs.values().filter(|&&c| c >= 3).count();
    }
    Ok(Stats {
        inputs,
        outputs: outs.len(),
        gates,
        one_doms,
        two_doms,
        useful_two_doms: useful,
    })
}
