//! Vertex-disjoint path search via max-flow with unit vertex capacities.
//!
//! Each graph vertex v is split into an in-node (2v) and an out-node
//! (2v+1) joined by a capacity-1 arc; every edge becomes a capacity-1 arc
//! between the matching out/in nodes. Max flow from out(src) to in(sink)
//! then equals the maximum number of internally vertex-disjoint src→sink
//! paths (Menger), and residual arcs let a later augmentation reroute the
//! paths found earlier. The terminals get no internal arc at all, which
//! both exempts them from the unit capacity and prevents any path from
//! passing *through* a terminal.
//!
//! Everything is deterministic: arcs are laid out in vertex/fanout
//! declaration order and the augmenting DFS scans adjacency in that
//! order, so identical graphs yield identical paths.
//!
//! The network is built only over the region forward-reachable from the
//! source without expanding past the sink. Any simple src→sink path
//! visits the sink exactly once, at the end, so its prefix stays inside
//! that region; restricting to it preserves the max flow while keeping
//! each call proportional to the region actually between the endpoints
//! rather than to the whole graph.

use crate::error::{Error, Result};
use crate::graph::{Graph, Path, VertexId};

/// Reusable buffers for repeated path searches over one graph. The two
/// graph-sized tables (`member`, `local`) are allocated once and restored
/// after every search; everything else is rebuilt per call, sized by the
/// region the search actually touches. The chain builder runs one search
/// per chain segment, so this keeps the total across a whole chain linear
/// in the graph rather than linear per segment.
pub(crate) struct FlowScratch {
    member: Vec<bool>,
    local: Vec<u32>,
    /// Region vertices, ascending.
    ids: Vec<VertexId>,
    stack: Vec<VertexId>,
    /// Arc targets / residual capacities; arc 2i+1 is the reverse of 2i.
    arc_to: Vec<u32>,
    arc_cap: Vec<u8>,
    /// Arc indices grouped by owning node (offset + flat array),
    /// insertion order within each node.
    adj_off: Vec<u32>,
    adj: Vec<u32>,
    cursor: Vec<u32>,
    visited: Vec<bool>,
    dfs: Vec<(u32, u32)>, // (node, position in adj)
    used: Vec<u8>,
}

impl FlowScratch {
    pub(crate) fn new(n: usize) -> FlowScratch {
        FlowScratch {
            member: vec![false; n],
            local: vec![u32::MAX; n],
            ids: Vec::new(),
            stack: Vec::new(),
            arc_to: Vec::new(),
            arc_cap: Vec::new(),
            adj_off: Vec::new(),
            adj: Vec::new(),
            cursor: Vec::new(),
            visited: Vec::new(),
            dfs: Vec::new(),
            used: Vec::new(),
        }
    }

    fn restore(&mut self) {
        for &v in &self.ids {
            self.member[v] = false;
            self.local[v] = u32::MAX;
        }
    }
}

/// Find up to `k` (≤ 3) pairwise vertex-disjoint paths from `src` to
/// `sink` — disjoint in their non-terminal vertices. Returns as many as
/// exist, capped at `k`; by max-flow/min-cut, if fewer than `k` come back
/// then no larger disjoint family exists.
pub fn find_disjoint_paths(
    g: &Graph,
    src: VertexId,
    sink: VertexId,
    k: usize,
) -> Result<Vec<Path>> {
    let mut ws = FlowScratch::new(g.vertex_count());
    find_disjoint_paths_in(g, src, sink, k, &mut ws)
}

/// [`find_disjoint_paths`] against caller-owned scratch.
pub(crate) fn find_disjoint_paths_in(
    g: &Graph,
    src: VertexId,
    sink: VertexId,
    k: usize,
    ws: &mut FlowScratch,
) -> Result<Vec<Path>> {
    assert!(k <= 3, "engine supports at most three paths");
    if src == sink {
        return Err(Error::SourceIsSink);
    }
    debug_assert!(ws.member.len() >= g.vertex_count());

    // Collect the region reachable from src, treating sink as a wall.
    ws.ids.clear();
    ws.stack.clear();
    ws.member[src] = true;
    ws.ids.push(src);
    ws.stack.push(src);
    while let Some(v) = ws.stack.pop() {
        if v == sink {
            continue;
        }
        for &w in g.fanout(v) {
            if !ws.member[w] {
                ws.member[w] = true;
                ws.ids.push(w);
                ws.stack.push(w);
            }
        }
    }
    if !ws.member[sink] {
        let err = Error::Unreachable(g.name(src).to_string(), g.name(sink).to_string());
        ws.restore();
        return Err(err);
    }
    // Compact ids in discovery order. The numbering does not affect the
    // paths found: the augmenting search and the decomposition scan
    // adjacency per node, and each node's arc order (internal arc first,
    // then edges in fanout order) is independent of the numbering.
    for (i, &v) in ws.ids.iter().enumerate() {
        ws.local[v] = i as u32;
    }
    let m = ws.ids.len();
    let nodes = 2 * m;

    // Lay out the arcs: internal arcs first, then one arc per edge, both
    // in ascending vertex order. Arc 2i+1 is the zero-capacity reverse of
    // arc 2i; the owner of arc j (the node whose adjacency it belongs to)
    // is therefore always arc_to[j ^ 1].
    ws.arc_to.clear();
    ws.arc_cap.clear();
    let add = |arc_to: &mut Vec<u32>, arc_cap: &mut Vec<u8>, from: u32, to: u32| {
        arc_to.push(to);
        arc_cap.push(1);
        arc_to.push(from);
        arc_cap.push(0);
    };
    for (lv, &v) in ws.ids.iter().enumerate() {
        if v != src && v != sink {
            add(&mut ws.arc_to, &mut ws.arc_cap, 2 * lv as u32, 2 * lv as u32 + 1);
        }
    }
    for (lv, &v) in ws.ids.iter().enumerate() {
        if v == sink {
            continue; // edges past the sink cannot be on a src→sink path
        }
        for &w in g.fanout(v) {
            add(
                &mut ws.arc_to,
                &mut ws.arc_cap,
                2 * lv as u32 + 1,
                2 * ws.local[w],
            );
        }
    }
    let arcs = ws.arc_to.len();

    // Group arc indices by owner with a counting sort; ascending arc
    // index within each node preserves insertion order.
    ws.adj_off.clear();
    ws.adj_off.resize(nodes + 1, 0);
    for j in 0..arcs {
        ws.adj_off[ws.arc_to[j ^ 1] as usize + 1] += 1;
    }
    for i in 0..nodes {
        ws.adj_off[i + 1] += ws.adj_off[i];
    }
    ws.cursor.clear();
    ws.cursor.extend_from_slice(&ws.adj_off[..nodes]);
    ws.adj.clear();
    ws.adj.resize(arcs, 0);
    for j in 0..arcs {
        let owner = ws.arc_to[j ^ 1] as usize;
        ws.adj[ws.cursor[owner] as usize] = j as u32;
        ws.cursor[owner] += 1;
    }

    let source = 2 * ws.local[src] as usize + 1;
    let target = 2 * ws.local[sink] as usize;

    // One DFS augmentation per unit of flow, ≤ k rounds, each O(region).
    let mut flow = 0usize;
    ws.visited.clear();
    ws.visited.resize(nodes, false);
    for _ in 0..k {
        ws.visited.iter_mut().for_each(|x| *x = false);
        ws.visited[source] = true;
        ws.dfs.clear();
        ws.dfs.push((source as u32, ws.adj_off[source]));
        let mut reached = false;
        'dfs: while let Some(&mut (node, ref mut next)) = ws.dfs.last_mut() {
            let end = ws.adj_off[node as usize + 1];
            while *next < end {
                let ai = ws.adj[*next as usize] as usize;
                *next += 1;
                let to = ws.arc_to[ai];
                if ws.arc_cap[ai] == 0 || ws.visited[to as usize] {
                    continue;
                }
                if to as usize == target {
                    ws.arc_cap[ai] -= 1;
                    ws.arc_cap[ai ^ 1] += 1;
                    reached = true;
                    break 'dfs;
                }
                ws.visited[to as usize] = true;
                let frame = (to, ws.adj_off[to as usize]);
                ws.dfs.push(frame);
                continue 'dfs;
            }
            ws.dfs.pop();
        }
        if !reached {
            break;
        }
        // The arcs taken are recorded implicitly by the stack: the frame
        // holding (node, next) took adj[next - 1] to reach the frame
        // above it. The final arc into the target was applied above.
        for w in ws.dfs.windows(2) {
            let (_, next) = w[0];
            let ai = ws.adj[next as usize - 1] as usize;
            ws.arc_cap[ai] -= 1;
            ws.arc_cap[ai ^ 1] += 1;
        }
        flow += 1;
    }
    debug_assert!(flow > 0, "sink is in the reachable region");

    // Decompose: repeatedly walk positive-flow forward arcs from the
    // source, consuming them. A DAG admits no flow cycles, so this
    // recovers exactly `flow` simple paths.
    ws.used.clear();
    ws.used.resize(arcs, 0);
    for j in (0..arcs).step_by(2) {
        ws.used[j] = 1 - ws.arc_cap[j];
    }
    let mut paths = Vec::with_capacity(flow);
    for _ in 0..flow {
        let mut vertices = vec![src];
        let mut node = source;
        while node != target {
            let span = ws.adj_off[node] as usize..ws.adj_off[node + 1] as usize;
            let ai = ws.adj[span]
                .iter()
                .map(|&i| i as usize)
                .find(|&i| i % 2 == 0 && ws.used[i] > 0)
                .expect("flow conservation");
            ws.used[ai] -= 1;
            node = ws.arc_to[ai] as usize;
            if node % 2 == 0 {
                // entered in-node of a vertex
                vertices.push(ws.ids[node / 2]);
                if node != target {
                    // step through the internal arc
                    let span = ws.adj_off[node] as usize..ws.adj_off[node + 1] as usize;
                    let internal = ws.adj[span]
                        .iter()
                        .map(|&i| i as usize)
                        .find(|&i| i % 2 == 0 && ws.used[i] > 0)
                        .expect("internal arc carries the through-flow");
                    ws.used[internal] -= 1;
                    node = ws.arc_to[internal] as usize;
                }
            }
        }
        paths.push(Path::new(g, vertices).expect("flow paths follow real edges"));
    }
    ws.restore();
    Ok(paths)
}
