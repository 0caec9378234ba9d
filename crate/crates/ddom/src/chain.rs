//! Construction of the dominator chain: the linear-size structure holding
//! every double-vertex dominator of a source vertex.
//!
//! The outer loop walks the single-dominator chain (u = s0, s1, …, root)
//! and treats each consecutive pair (s_i, s_{i+1}) as an independent
//! *segment*; a dominator pair never straddles a segment boundary, because
//! the boundary vertex alone already separates source from root. Within a
//! segment the construction is:
//!
//! 1. Find two vertex-disjoint s_i→s_{i+1} paths (three disjoint paths
//!    prove the segment has no pairs at all and short-circuit to empty;
//!    so does a path with no internal vertices, since every pair needs
//!    one member on each path).
//! 2. Sweep each path against the other (`assign_min_max`): walking one
//!    path from source to sink while flooding the off-path region tells
//!    us, for every path vertex, how far along the *other* path a detour
//!    can reach around it. A vertex bypassed by a detour within its own
//!    path ("non-prime") can never be a pair member.
//! 3. Keep the vertices whose resulting partner window is non-empty after
//!    snapping the window endpoints onto prime vertices
//!    (`construct_vector`), then rewrite windows from path positions to
//!    positions in the kept list (`convert_min_max`).
//! 4. Group the two sides into complementary clusters by alternating
//!    window-max expansion (`build_clusters`).
//!
//! The result supports O(1) pair membership tests: {v, w} is a pair iff
//! v and w sit in the same segment on different sides and one's index
//! falls inside the other's window.
//!
//! Cost is linear in the edges explored: each sweep marks every off-path
//! vertex at most once. When every vertex of the graph reaches the root
//! (true for circuit cones and all generated test graphs), exploration
//! stays inside the segment and a whole-chain construction is O(|E|);
//! regions that cannot reach the root may be re-scanned by later
//! segments.

use crate::domtree::{compute_dominator_tree, DominatorTree};
use crate::error::{Error, Result};
use crate::flow::{find_disjoint_paths_in, FlowScratch};
use crate::graph::{Graph, Path, VertexId};

/// Which side of a segment a chain vertex sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// One vertex of a segment side, with its partner window: the 1-based
/// inclusive range of positions in the *opposite* side whose vertices
/// pair with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainEntry {
    pub vertex: VertexId,
    pub min: usize,
    pub max: usize,
}

/// A complementary cluster pair: 1-based inclusive ranges into the left
/// and right side of a segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterSpan {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

/// All double-vertex dominators of `source` with respect to `sink`,
/// for one segment of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SegmentChain {
    pub source: VertexId,
    pub sink: VertexId,
    pub left: Vec<ChainEntry>,
    pub right: Vec<ChainEntry>,
    pub clusters: Vec<ClusterSpan>,
}

impl SegmentChain {
    fn empty(source: VertexId, sink: VertexId) -> SegmentChain {
        SegmentChain {
            source,
            sink,
            left: Vec::new(),
            right: Vec::new(),
            clusters: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// Number of dominator pairs in this segment.
    pub fn pair_count(&self) -> usize {
        self.left.iter().map(|e| e.max - e.min + 1).sum()
    }
}

/// Per-vertex lookup record: where a vertex sits in its chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slot {
    pub segment: usize,
    pub side: Side,
    /// 1-based position within its side.
    pub index: usize,
    /// 1-based window over the opposite side.
    pub min: usize,
    pub max: usize,
}

/// The full dominator chain of a source vertex: its single-vertex
/// dominator chain and one [`SegmentChain`] per consecutive chain pair,
/// plus a per-vertex slot table for O(1) queries.
#[derive(Debug, Clone, PartialEq)]
pub struct DominatorChain {
    pub source: VertexId,
    pub root: VertexId,
    /// (u = s0, s1, …, sm = root).
    pub single: Vec<VertexId>,
    /// `segments[i]` covers (`single[i]`, `single[i+1]`).
    pub segments: Vec<SegmentChain>,
    pub(crate) slots: Vec<Option<Slot>>,
}

/// Reusable graph-sized scratch for the sweeps.
struct Scratch {
    pos_own: Vec<usize>, // 1-based position on the currently swept path
    pos_opp: Vec<usize>,
    marked: Vec<bool>,
    touched: Vec<VertexId>,
    dfs: Vec<(VertexId, usize)>,
    flow: FlowScratch,
}

impl Scratch {
    fn new(n: usize) -> Scratch {
        Scratch {
            pos_own: vec![0; n],
            pos_opp: vec![0; n],
            marked: vec![false; n],
            touched: Vec::new(),
            dfs: Vec::new(),
            flow: FlowScratch::new(n),
        }
    }

    fn clear_marks(&mut self) {
        for &v in &self.touched {
            self.marked[v] = false;
        }
        self.touched.clear();
    }
}

/// Results of one directional sweep: everything is indexed by 1-based
/// path position. `min_own[i]`: highest opposite position reachable by a
/// detour from a strict ancestor of own vertex i (or |opp| when i is not
/// prime). `prime_own`: for primes, the next prime position (sentinel
/// |own| after the last); for non-primes, the nearest prime ancestor.
/// `max_opp[j]`: lowest own position from which a detour reaches past
/// opposite vertex j.
struct SweepOut {
    min_own: Vec<usize>,
    prime_own: Vec<usize>,
    max_opp: Vec<usize>,
}

/// Flood the off-path region from `x`, updating the farthest own/opposite
/// path positions reachable. Marks persist for the whole directional
/// sweep, which makes the total sweep cost linear. Reaching the segment
/// sink means "everything is reachable" and aborts the flood.
#[allow(clippy::too_many_arguments)]
fn find_reachable(
    g: &Graph,
    x: VertexId,
    sink: VertexId,
    s: &mut Scratch,
    n_own: usize,
    n_opp: usize,
    new_own: &mut usize,
    new_opp: &mut usize,
) {
    s.dfs.clear();
    s.dfs.push((x, 0));
    while let Some(&mut (v, ref mut next)) = s.dfs.last_mut() {
        let fanout = g.fanout(v);
        if *next >= fanout.len() {
            s.dfs.pop();
            continue;
        }
        let y = fanout[*next];
        *next += 1;
        if s.marked[y] {
            continue;
        }
        s.marked[y] = true;
        s.touched.push(y);
        if y == sink {
            *new_own = n_own;
            *new_opp = n_opp;
            return;
        }
        if s.pos_own[y] != 0 {
            if s.pos_own[y] > *new_own {
                *new_own = s.pos_own[y];
            }
            continue;
        }
        if s.pos_opp[y] != 0 {
            if s.pos_opp[y] > *new_opp {
                *new_opp = s.pos_opp[y];
            }
            continue;
        }
        s.dfs.push((y, 0));
    }
}

/// One directional sweep over `own` against `opp`. Expects `pos_own` /
/// `pos_opp` to hold the paths' 1-based positions and marks to be clear.
fn assign_min_max(g: &Graph, own: &Path, opp: &Path, s: &mut Scratch) -> SweepOut {
    let n_own = own.len();
    let n_opp = opp.len();
    let mut out = SweepOut {
        min_own: vec![0; n_own + 1],
        prime_own: vec![0; n_own + 1],
        max_opp: vec![0; n_opp + 1],
    };
    let mut reached_own = 0usize;
    let mut reached_opp = 1usize;
    let mut new_own = reached_own;
    let mut new_opp = reached_opp;
    let mut last_prime = 0usize;
    for i in 1..n_own {
        if reached_own > i {
            // A detour from an ancestor reaches past i: not prime, can
            // never be a pair member. Record the nearest prime ancestor
            // so window endpoints landing here can be snapped later.
            out.min_own[i] = n_opp;
            out.prime_own[i] = last_prime;
        } else {
            out.min_own[i] = reached_opp;
            out.prime_own[last_prime] = i;
            last_prime = i;
        }
        find_reachable(
            g,
            own.vertices()[i - 1],
            own.sink(),
            s,
            n_own,
            n_opp,
            &mut new_own,
            &mut new_opp,
        );
        if reached_own < new_own {
            reached_own = new_own;
        }
        if reached_opp < new_opp {
            for j in reached_opp..new_opp {
                out.max_opp[j] = i;
            }
            reached_opp = new_opp;
        }
    }
    out.prime_own[last_prime] = n_own;
    out
}

/// Filter one path down to the vertices with a non-empty partner window,
/// snapping window endpoints onto prime opposite vertices. Returns the
/// emitted entries (windows still in opposite *path positions*) and the
/// path-position → 1-based chain-index table for this side.
fn construct_vector(
    own: &Path,
    min_own: &[usize],
    max_own: &[usize],
    opp_sweep: &SweepOut,
    n_opp: usize,
) -> (Vec<ChainEntry>, Vec<usize>) {
    let n_own = own.len();
    let mut entries = Vec::new();
    let mut index = vec![0usize; n_own + 1];
    for i in 2..n_own {
        let mut mn = min_own[i];
        if mn == n_opp {
            continue; // not prime
        }
        let mut mx = max_own[i];
        // If the opposite vertex at an endpoint is not prime it cannot be
        // a partner; move min forward to the nearest prime descendant and
        // max back to the nearest prime ancestor.
        if opp_sweep.min_own[mn] == n_own {
            mn = opp_sweep.prime_own[opp_sweep.prime_own[mn]];
        }
        if opp_sweep.min_own[mx] == n_own {
            mx = opp_sweep.prime_own[mx];
        }
        if mn <= mx {
            entries.push(ChainEntry {
                vertex: own.vertices()[i - 1],
                min: mn,
                max: mx,
            });
            index[i] = entries.len();
        }
    }
    (entries, index)
}

/// Rewrite windows from opposite path positions to opposite chain
/// indices. Every emitted window endpoint refers to an emitted opposite
/// vertex (window symmetry), so the index table has an entry for it.
fn convert_min_max(entries: &mut [ChainEntry], opp_index: &[usize]) {
    for e in entries {
        debug_assert_ne!(opp_index[e.min], 0, "window endpoint not emitted");
        debug_assert_ne!(opp_index[e.max], 0, "window endpoint not emitted");
        e.min = opp_index[e.min];
        e.max = opp_index[e.max];
    }
}

/// Group both sides into complementary cluster spans by alternating
/// window-max expansion: starting from the first uncovered left vertex,
/// its window extends the right span, whose last vertex's window extends
/// the left span, until a fixed point.
fn build_clusters(left: &[ChainEntry], right: &[ChainEntry]) -> Vec<ClusterSpan> {
    let mut spans = Vec::new();
    let mut bl = 1usize;
    let mut br = 1usize;
    while bl <= left.len() {
        let mut el = bl;
        let mut er = 0usize;
        loop {
            let er_new = left[el - 1].max;
            if er_new == er {
                break;
            }
            er = er_new;
            let el_new = right[er - 1].max;
            if el_new == el {
                break;
            }
            el = el_new;
        }
        spans.push(ClusterSpan {
            left: (bl, el),
            right: (br, er),
        });
        bl = el + 1;
        br = er + 1;
    }
    spans
}

/// Build the segment between `src` and `sink` (which must be single-
/// dominator-adjacent for meaningful results). Standalone entry point;
/// the chain builder uses the shared-scratch variant.
pub fn segment_chain(g: &Graph, src: VertexId, sink: VertexId) -> Result<SegmentChain> {
    let ranks = topo_ranks(g);
    let mut scratch = Scratch::new(g.vertex_count());
    segment_chain_inner(g, src, sink, &ranks, &mut scratch)
}

fn topo_ranks(g: &Graph) -> Vec<usize> {
    let mut ranks = vec![0usize; g.vertex_count()];
    for (i, v) in g.topological_order().into_iter().enumerate() {
        ranks[v] = i;
    }
    ranks
}

fn segment_chain_inner(
    g: &Graph,
    src: VertexId,
    sink: VertexId,
    ranks: &[usize],
    s: &mut Scratch,
) -> Result<SegmentChain> {
    let paths = find_disjoint_paths_in(g, src, sink, 3, &mut s.flow)?;
    // Three disjoint paths: no pair can cover all of them. One path, or a
    // path without internal vertices: a pair needs one member strictly
    // inside each of two disjoint paths.
    if paths.len() != 2
        || paths[0].internals().is_empty()
        || paths[1].internals().is_empty()
    {
        return Ok(SegmentChain::empty(src, sink));
    }
    // The side whose first internal vertex comes earlier in topological
    // order becomes L; deterministic and independent of path search order.
    let (pl, pr) = if ranks[paths[0].internals()[0]] <= ranks[paths[1].internals()[0]] {
        (&paths[0], &paths[1])
    } else {
        (&paths[1], &paths[0])
    };

    for (k, &v) in pl.vertices().iter().enumerate() {
        s.pos_own[v] = k + 1;
    }
    for (k, &v) in pr.vertices().iter().enumerate() {
        s.pos_opp[v] = k + 1;
    }

    // Sweep L against R, then R against L with fresh marks. Each sweep
    // produces the min fields of its own path and the max fields of the
    // opposite path.
    let sweep_l = assign_min_max(g, pl, pr, s);
    s.clear_marks();
    std::mem::swap(&mut s.pos_own, &mut s.pos_opp);
    let sweep_r = assign_min_max(g, pr, pl, s);
    s.clear_marks();

    let (mut left, left_index) =
        construct_vector(pl, &sweep_l.min_own, &sweep_r.max_opp, &sweep_r, pr.len());
    let (mut right, right_index) =
        construct_vector(pr, &sweep_r.min_own, &sweep_l.max_opp, &sweep_l, pl.len());
    convert_min_max(&mut left, &right_index);
    convert_min_max(&mut right, &left_index);
    debug_assert_eq!(left.is_empty(), right.is_empty());
    let clusters = build_clusters(&left, &right);

    for &v in pl.vertices().iter().chain(pr.vertices()) {
        s.pos_own[v] = 0;
        s.pos_opp[v] = 0;
    }

    Ok(SegmentChain {
        source: src,
        sink,
        left,
        right,
        clusters,
    })
}

/// Compute the full dominator chain of `u`, building the dominator tree
/// internally. See [`dominator_chain_with_tree`] to reuse a tree.
pub fn dominator_chain(g: &Graph, u: VertexId) -> Result<DominatorChain> {
    let tree = compute_dominator_tree(g);
    dominator_chain_with_tree(g, &tree, u)
}

/// Compute the full dominator chain of `u` using a precomputed dominator
/// tree for the same graph.
pub fn dominator_chain_with_tree(
    g: &Graph,
    tree: &DominatorTree,
    u: VertexId,
) -> Result<DominatorChain> {
    assert_eq!(tree.root(), g.root(), "tree built for a different graph");
    if u == g.root() {
        return Err(Error::SourceIsRoot);
    }
    let single = tree.single_dominator_chain(g, u)?;
    let ranks = topo_ranks(g);
    let mut scratch = Scratch::new(g.vertex_count());
    let mut segments = Vec::with_capacity(single.len() - 1);
    let mut slots: Vec<Option<Slot>> = vec![None; g.vertex_count()];
    for (k, pair) in single.windows(2).enumerate() {
        let seg = segment_chain_inner(g, pair[0], pair[1], &ranks, &mut scratch)?;
        for (side, entries) in [(Side::Left, &seg.left), (Side::Right, &seg.right)] {
            for (idx0, e) in entries.iter().enumerate() {
                debug_assert!(slots[e.vertex].is_none(), "vertex in two segments");
                slots[e.vertex] = Some(Slot {
                    segment: k,
                    side,
                    index: idx0 + 1,
                    min: e.min,
                    max: e.max,
                });
            }
        }
        segments.push(seg);
    }
    Ok(DominatorChain {
        source: u,
        root: g.root(),
        single,
        segments,
        slots,
    })
}
