//! Query and enumeration layer over [`DominatorChain`]: O(1) membership
//! tests, matching vectors, cluster listings, the immediate pair, full
//! enumeration, and reconstruction of a chain from an explicit pair set.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{ChainEntry, ClusterSpan, DominatorChain, SegmentChain, Side, Slot};
use crate::error::{Error, Result};
use crate::graph::{VertexId, NO_VERTEX};

/// Unordered dominator pairs, stored with the smaller id first.
pub type PairSet = BTreeSet<(VertexId, VertexId)>;

/// Normalize an unordered pair for storage in a [`PairSet`].
pub fn pair(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The ordered partner list of one vertex: every `w` such that
/// {vertex, w} is a dominator pair, listed source-side first (the pair
/// with the earlier partner is dominated by the pairs after it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingVector {
    pub vertex: VertexId,
    pub partners: Vec<VertexId>,
}

impl DominatorChain {
    /// The slot of `v`, if `v` is a member of any dominator pair.
    pub fn slot(&self, v: VertexId) -> Option<Slot> {
        self.slots.get(v).copied().flatten()
    }

    /// O(1), loop-free membership test: is {v, w} a double-vertex
    /// dominator of the chain's source?
    pub fn is_double_dominator(&self, v: VertexId, w: VertexId) -> bool {
        if v == w {
            return false;
        }
        let (Some(a), Some(b)) = (self.slot(v), self.slot(w)) else {
            return false;
        };
        a.segment == b.segment
            && a.side != b.side
            && a.min <= b.index
            && b.index <= a.max
    }

    /// All partners of `v`, in window order.
    pub fn matching_vector(&self, v: VertexId) -> Option<MatchingVector> {
        let s = self.slot(v)?;
        let seg = &self.segments[s.segment];
        let opposite = match s.side {
            Side::Left => &seg.right,
            Side::Right => &seg.left,
        };
        let partners = opposite[s.min - 1..s.max]
            .iter()
            .map(|e| e.vertex)
            .collect();
        Some(MatchingVector {
            vertex: v,
            partners,
        })
    }

    /// Every dominator pair, normalized.
    pub fn pairs(&self) -> PairSet {
        let mut out = PairSet::new();
        for seg in &self.segments {
            for e in &seg.left {
                for opp in &seg.right[e.min - 1..e.max] {
                    out.insert(pair(e.vertex, opp.vertex));
                }
            }
        }
        out
    }

    /// Total number of dominator pairs, without enumerating them.
    pub fn pair_count(&self) -> usize {
        self.segments.iter().map(|s| s.pair_count()).sum()
    }

    /// The unique pair dominated by every other pair: the first pair of
    /// the segment closest to the source. `None` when there are no pairs.
    pub fn immediate_double_dominator(&self) -> Option<(VertexId, VertexId)> {
        let seg = self.segments.iter().find(|s| !s.is_empty())?;
        debug_assert_eq!(seg.left[0].min, 1, "first pair must match first entries");
        Some(pair(seg.left[0].vertex, seg.right[0].vertex))
    }

    /// Complementary cluster pairs across all segments, in chain order,
    /// as (left members, right members) vertex lists.
    pub fn cluster_members(&self) -> Vec<(Vec<VertexId>, Vec<VertexId>)> {
        let mut out = Vec::new();
        for seg in &self.segments {
            for c in &seg.clusters {
                let lv = seg.left[c.left.0 - 1..c.left.1]
                    .iter()
                    .map(|e| e.vertex)
                    .collect();
                let rv = seg.right[c.right.0 - 1..c.right.1]
                    .iter()
                    .map(|e| e.vertex)
                    .collect();
                out.push((lv, rv));
            }
        }
        out
    }

    /// Check every structural law the chain is supposed to satisfy.
    /// Returns a description of the first violation found.
    pub fn validate_structure(&self) -> std::result::Result<(), String> {
        let mut slotted = 0usize;
        for (k, seg) in self.segments.iter().enumerate() {
            if seg.left.is_empty() != seg.right.is_empty() {
                return Err(format!("segment {k}: one side empty, the other not"));
            }
            if seg.left.is_empty() {
                if !seg.clusters.is_empty() {
                    return Err(format!("segment {k}: clusters in an empty segment"));
                }
                continue;
            }
            for (side, own, opp) in [
                ("left", &seg.left, &seg.right),
                ("right", &seg.right, &seg.left),
            ] {
                for (i, e) in own.iter().enumerate() {
                    if e.min < 1 || e.min > e.max || e.max > opp.len() {
                        return Err(format!(
                            "segment {k} {side} entry {i}: window ({}, {}) out of range",
                            e.min, e.max
                        ));
                    }
                    if i > 0 && (e.min < own[i - 1].min || e.max < own[i - 1].max) {
                        return Err(format!(
                            "segment {k} {side} entry {i}: window not nondecreasing"
                        ));
                    }
                }
                // Overlapping windows must meet as a suffix of the earlier
                // one equal to a prefix of the later one; with interval
                // windows this is exactly "no strict nesting".
                for i in 0..own.len() {
                    for j in i + 1..own.len() {
                        let (a, b) = (&own[i], &own[j]);
                        if b.min <= a.max && a.min < b.min && b.max < a.max {
                            return Err(format!(
                                "segment {k} {side}: window {j} strictly inside window {i}"
                            ));
                        }
                    }
                }
            }
            for (i, e) in seg.left.iter().enumerate() {
                for (j, o) in seg.right.iter().enumerate() {
                    let fwd = e.min <= j + 1 && j + 1 <= e.max;
                    let bwd = o.min <= i + 1 && i + 1 <= o.max;
                    if fwd != bwd {
                        return Err(format!(
                            "segment {k}: window symmetry broken at left {i}, right {j}"
                        ));
                    }
                }
            }
            if seg.left[0].min != 1 || seg.right[0].min != 1 {
                return Err(format!("segment {k}: first entries do not pair"));
            }
            let (mut nl, mut nr) = (1usize, 1usize);
            for (c, span) in seg.clusters.iter().enumerate() {
                if span.left.0 != nl || span.right.0 != nr {
                    return Err(format!("segment {k} cluster {c}: ranges not contiguous"));
                }
                if span.left.1 < span.left.0 || span.right.1 < span.right.0 {
                    return Err(format!("segment {k} cluster {c}: empty range"));
                }
                for e in &seg.left[span.left.0 - 1..span.left.1] {
                    if e.min < span.right.0 || e.max > span.right.1 {
                        return Err(format!(
                            "segment {k} cluster {c}: left window escapes the cluster"
                        ));
                    }
                }
                for e in &seg.right[span.right.0 - 1..span.right.1] {
                    if e.min < span.left.0 || e.max > span.left.1 {
                        return Err(format!(
                            "segment {k} cluster {c}: right window escapes the cluster"
                        ));
                    }
                }
                nl = span.left.1 + 1;
                nr = span.right.1 + 1;
            }
            if nl != seg.left.len() + 1 || nr != seg.right.len() + 1 {
                return Err(format!("segment {k}: clusters do not cover both sides"));
            }
            for (side, entries) in [(Side::Left, &seg.left), (Side::Right, &seg.right)] {
                for (i, e) in entries.iter().enumerate() {
                    let expected = Slot {
                        segment: k,
                        side,
                        index: i + 1,
                        min: e.min,
                        max: e.max,
                    };
                    if self.slot(e.vertex) != Some(expected) {
                        return Err(format!(
                            "segment {k}: slot table disagrees for entry {i}"
                        ));
                    }
                    slotted += 1;
                }
            }
        }
        if self.slots.iter().flatten().count() != slotted {
            return Err("slot table has entries outside any segment".into());
        }
        Ok(())
    }
}

/// Rebuild a chain from an explicit pair set, with no graph context:
/// the result has one segment, no single-dominator chain, and `source`
/// and `root` set to [`NO_VERTEX`].
///
/// Vertices sharing a pair must sit on opposite sides, so each connected
/// component of the pair relation splits into two clusters; the side
/// holding the component's smallest vertex becomes the left one, and of
/// the two mirror-image orderings the one with the lexicographically
/// smaller left vertex sequence is kept. Components are laid out in
/// order of their smallest vertex. Pair sets admitting no such layout —
/// a vertex paired with itself, components that do not split into two
/// sides, or partner lists that cannot be made contiguous — are
/// rejected as inconsistent.
pub fn chain_from_pair_set(pairs: &PairSet) -> Result<DominatorChain> {
    let mut adj: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for &(a, b) in pairs {
        if a == b {
            return Err(Error::InconsistentPairSet(
                "a vertex cannot pair with itself".into(),
            ));
        }
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut clusters = Vec::new();
    // BTreeMap iteration visits components in order of smallest member.
    let mut color: BTreeMap<VertexId, bool> = BTreeMap::new();
    for (&start, _) in &adj {
        if color.contains_key(&start) {
            continue;
        }
        let mut xs = Vec::new(); // side of the smallest member
        let mut ys = Vec::new();
        color.insert(start, false);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            let side = color[&v];
            if side {
                ys.push(v);
            } else {
                xs.push(v);
            }
            for &w in &adj[&v] {
                match color.get(&w) {
                    None => {
                        color.insert(w, !side);
                        queue.push(w);
                    }
                    Some(&c) if c == side => {
                        return Err(Error::InconsistentPairSet(format!(
                            "vertices {v} and {w} pair with each other's side"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let (ox, oy) = order_component(&adj, &xs, &ys)?;
        let lbase = left.len();
        let rbase = right.len();
        for &v in &ox {
            let (mn, mx) = window_of(&adj[&v], &oy);
            left.push(ChainEntry {
                vertex: v,
                min: rbase + mn,
                max: rbase + mx,
            });
        }
        for &v in &oy {
            let (mn, mx) = window_of(&adj[&v], &ox);
            right.push(ChainEntry {
                vertex: v,
                min: lbase + mn,
                max: lbase + mx,
            });
        }
        clusters.push(ClusterSpan {
            left: (lbase + 1, left.len()),
            right: (rbase + 1, right.len()),
        });
    }

    let mut slots: Vec<Option<Slot>> = Vec::new();
    if let Some(&max_id) = adj.keys().next_back() {
        slots = vec![None; max_id + 1];
    }
    for (side, entries) in [(Side::Left, &left), (Side::Right, &right)] {
        for (i, e) in entries.iter().enumerate() {
            slots[e.vertex] = Some(Slot {
                segment: 0,
                side,
                index: i + 1,
                min: e.min,
                max: e.max,
            });
        }
    }
    let segments = if left.is_empty() {
        Vec::new()
    } else {
        vec![SegmentChain {
            source: NO_VERTEX,
            sink: NO_VERTEX,
            left,
            right,
            clusters,
        }]
    };
    let chain = DominatorChain {
        source: NO_VERTEX,
        root: NO_VERTEX,
        single: Vec::new(),
        segments,
        slots,
    };
    if chain.pairs() != *pairs {
        return Err(Error::InconsistentPairSet(
            "no ordering reproduces the given pairs".into(),
        ));
    }
    if let Err(e) = chain.validate_structure() {
        return Err(Error::InconsistentPairSet(e));
    }
    Ok(chain)
}

/// 1-based (min, max) positions of `set` members within `order`.
fn window_of(set: &BTreeSet<VertexId>, order: &[VertexId]) -> (usize, usize) {
    let mut mn = usize::MAX;
    let mut mx = 0usize;
    for (i, v) in order.iter().enumerate() {
        if set.contains(v) {
            mn = mn.min(i + 1);
            mx = mx.max(i + 1);
        }
    }
    (mn, mx)
}

/// Find the vertex order of one component's two sides such that every
/// partner list occupies a contiguous, staircase-ordered window.
///
/// Vertices with identical partner sets are interchangeable units (kept
/// in id order). Placing the true first unit fixes everything else:
/// units are placed in order of first activation by the opposite side,
/// and units activated together must have nested partner sets — the
/// smaller set sits closer to the activation point. Each unit is tried
/// as the first one; among the orderings that reproduce the pair set
/// (there are at most the two mirror images), the lexicographically
/// smallest left sequence wins.
fn order_component(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    xs: &[VertexId],
    ys: &[VertexId],
) -> Result<(Vec<VertexId>, Vec<VertexId>)> {
    // Group both sides into units of identical partner sets.
    let mut x_units: Vec<(Vec<VertexId>, &BTreeSet<VertexId>)> = Vec::new();
    let mut y_units: Vec<(Vec<VertexId>, &BTreeSet<VertexId>)> = Vec::new();
    let mut unit_of: BTreeMap<VertexId, (bool, usize)> = BTreeMap::new();
    for (side_y, verts, units) in [(false, xs, &mut x_units), (true, ys, &mut y_units)] {
        let mut by_set: BTreeMap<&BTreeSet<VertexId>, Vec<VertexId>> = BTreeMap::new();
        let mut sorted = verts.to_vec();
        sorted.sort_unstable();
        for &v in &sorted {
            by_set.entry(&adj[&v]).or_default().push(v);
        }
        for (set, members) in by_set {
            for &m in &members {
                unit_of.insert(m, (side_y, units.len()));
            }
            units.push((members, set));
        }
    }

    let mut best: Option<(Vec<VertexId>, Vec<VertexId>)> = None;
    for anchor in 0..x_units.len() {
        let Some((ox_units, oy_units)) = peel(&x_units, &y_units, &unit_of, anchor) else {
            continue;
        };
        let ox: Vec<VertexId> = ox_units
            .iter()
            .flat_map(|&u| x_units[u].0.iter().copied())
            .collect();
        let oy: Vec<VertexId> = oy_units
            .iter()
            .flat_map(|&u| y_units[u].0.iter().copied())
            .collect();
        if !layout_valid(adj, &ox, &oy) {
            continue;
        }
        if best.as_ref().map_or(true, |(bx, _)| ox < *bx) {
            best = Some((ox, oy));
        }
    }
    best.ok_or_else(|| {
        Error::InconsistentPairSet(
            "partner lists cannot be laid out as contiguous windows".into(),
        )
    })
}

/// Place units by first activation starting from the given left unit.
/// Returns unit orderings, or None when units activated together are not
/// nested (no layout starting at this anchor exists).
fn peel(
    x_units: &[(Vec<VertexId>, &BTreeSet<VertexId>)],
    y_units: &[(Vec<VertexId>, &BTreeSet<VertexId>)],
    unit_of: &BTreeMap<VertexId, (bool, usize)>,
    anchor: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut ox = vec![anchor];
    let mut oy = Vec::new();
    let mut x_placed = vec![false; x_units.len()];
    let mut y_placed = vec![false; y_units.len()];
    x_placed[anchor] = true;
    let (mut ix, mut iy) = (0usize, 0usize);
    while ix < ox.len() || iy < oy.len() {
        if ix < ox.len() {
            let set = x_units[ox[ix]].1;
            ix += 1;
            append_batch(set, unit_of, y_units, &mut y_placed, &mut oy)?;
        }
        if iy < oy.len() {
            let set = y_units[oy[iy]].1;
            iy += 1;
            append_batch(set, unit_of, x_units, &mut x_placed, &mut ox)?;
        }
    }
    Some((ox, oy))
}

/// Append the not-yet-placed units holding the members of `set`,
/// smallest partner set first; the batch must form a ⊆-chain.
fn append_batch(
    set: &BTreeSet<VertexId>,
    unit_of: &BTreeMap<VertexId, (bool, usize)>,
    units: &[(Vec<VertexId>, &BTreeSet<VertexId>)],
    placed: &mut [bool],
    order: &mut Vec<usize>,
) -> Option<()> {
    let mut batch: Vec<usize> = Vec::new();
    for v in set {
        let (_, u) = unit_of[v];
        if !placed[u] && !batch.contains(&u) {
            batch.push(u);
        }
    }
    batch.sort_by_key(|&u| (units[u].1.len(), units[u].0[0]));
    for w in batch.windows(2) {
        if !units[w[0]].1.is_subset(units[w[1]].1) {
            return None;
        }
    }
    for u in batch {
        placed[u] = true;
        order.push(u);
    }
    Some(())
}

/// Do the orders make every partner list a contiguous interval?
/// (Together with the final pair-set comparison this certifies the
/// layout; staircase order is established by the peel.)
fn layout_valid(
    adj: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    ox: &[VertexId],
    oy: &[VertexId],
) -> bool {
    for (own, opp) in [(ox, oy), (oy, ox)] {
        for v in own {
            let set = &adj[v];
            let (mn, mx) = window_of(set, opp);
            if mx - mn + 1 != set.len() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::dominator_chain;
    use crate::graph::parse_dag;

    fn ladder() -> crate::graph::Graph {
        parse_dag(
            "v u\nv a1\nv a2\nv b1\nv b2\nv r\n\
             e u a1\ne u b1\ne a1 a2\ne b1 b2\ne a1 b2\ne a2 r\ne b2 r\nroot r\n",
        )
        .unwrap()
    }

    #[test]
    fn membership_queries_on_ladder() {
        let g = ladder();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        for (v, w) in [("a1", "b1"), ("a1", "b2"), ("a2", "b2")] {
            assert!(c.is_double_dominator(id(v), id(w)), "{v},{w}");
            assert!(c.is_double_dominator(id(w), id(v)), "{w},{v}");
        }
        assert!(!c.is_double_dominator(id("a2"), id("b1")));
        assert!(!c.is_double_dominator(id("a1"), id("a2")));
        assert!(!c.is_double_dominator(id("a1"), id("a1")));
        assert!(!c.is_double_dominator(id("a1"), id("u")));
        assert!(!c.is_double_dominator(id("a1"), g.root()));
        assert!(!c.is_double_dominator(id("a1"), 999));
    }

    #[test]
    fn matching_vectors_on_ladder() {
        let g = ladder();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        let mv = |n: &str| c.matching_vector(id(n)).unwrap().partners;
        assert_eq!(mv("a1"), vec![id("b1"), id("b2")]);
        assert_eq!(mv("a2"), vec![id("b2")]);
        assert_eq!(mv("b1"), vec![id("a1")]);
        assert_eq!(mv("b2"), vec![id("a1"), id("a2")]);
        assert!(c.matching_vector(id("u")).is_none());
    }

    #[test]
    fn enumeration_and_counts() {
        let g = ladder();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        let expect: PairSet = [
            pair(id("a1"), id("b1")),
            pair(id("a1"), id("b2")),
            pair(id("a2"), id("b2")),
        ]
        .into_iter()
        .collect();
        assert_eq!(c.pairs(), expect);
        assert_eq!(c.pair_count(), 3);
        assert_eq!(
            c.immediate_double_dominator(),
            Some(pair(id("a1"), id("b1")))
        );
        assert!(c.validate_structure().is_ok());
    }

    #[test]
    fn immediate_pair_none_without_pairs() {
        let g = parse_dag("v u\nv a\nv r\ne u a\ne a r\nroot r\n").unwrap();
        let c = dominator_chain(&g, g.lookup("u").unwrap()).unwrap();
        assert_eq!(c.pair_count(), 0);
        assert_eq!(c.immediate_double_dominator(), None);
        assert!(c.pairs().is_empty());
        assert!(c.validate_structure().is_ok());
    }

    #[test]
    fn immediate_pair_comes_from_first_segment() {
        let g = parse_dag(
            "v u\nv a\nv b\nv m\nv c\nv d\nv r\n\
             e u a\ne u b\ne a m\ne b m\ne m c\ne m d\ne c r\ne d r\nroot r\n",
        )
        .unwrap();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        assert_eq!(c.immediate_double_dominator(), Some(pair(id("a"), id("b"))));
        assert_eq!(c.pair_count(), 2);
    }

    #[test]
    fn cluster_members_on_skip_graph() {
        let g = parse_dag(
            "v u\nv a1\nv a2\nv a3\nv b\nv r\n\
             e u a1\ne a1 a2\ne a2 a3\ne a3 r\ne u b\ne b r\ne a1 a3\nroot r\n",
        )
        .unwrap();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        assert_eq!(
            c.cluster_members(),
            vec![(vec![id("a1"), id("a3")], vec![id("b")])]
        );
    }

    #[test]
    fn reconstructs_interval_example() {
        // {{0,1},{2,3},{0,3}} → left (0,2), right (1,3), windows
        // 0:(1,2), 2:(2,2), 1:(1,1), 3:(1,2).
        let pairs: PairSet = [(0, 1), (2, 3), (0, 3)].into_iter().collect();
        let c = chain_from_pair_set(&pairs).unwrap();
        assert_eq!(c.segments.len(), 1);
        let seg = &c.segments[0];
        let l: Vec<_> = seg.left.iter().map(|e| e.vertex).collect();
        let r: Vec<_> = seg.right.iter().map(|e| e.vertex).collect();
        assert_eq!(l, vec![0, 2]);
        assert_eq!(r, vec![1, 3]);
        assert_eq!((seg.left[0].min, seg.left[0].max), (1, 2));
        assert_eq!((seg.left[1].min, seg.left[1].max), (2, 2));
        assert_eq!((seg.right[0].min, seg.right[0].max), (1, 1));
        assert_eq!((seg.right[1].min, seg.right[1].max), (1, 2));
        assert_eq!(c.pairs(), pairs);
        assert!(c.validate_structure().is_ok());
    }

    #[test]
    fn reconstructs_two_component_twelve_pair_chain() {
        // Two components: ids 0..=6 with windows spanning (1,3)…(2,4),
        // and ids 7..=10 forming a 2×2 block. Expected layout:
        // left (0,4,6,7,9), right (1,2,3,5,8,10), two cluster spans.
        let pairs: PairSet = [
            (0, 1),
            (0, 2),
            (0, 3),
            (4, 2),
            (4, 3),
            (6, 2),
            (6, 3),
            (6, 5),
            (7, 8),
            (9, 8),
            (7, 10),
            (9, 10),
        ]
        .into_iter()
        .map(|(a, b)| pair(a, b))
        .collect();
        let c = chain_from_pair_set(&pairs).unwrap();
        let seg = &c.segments[0];
        let l: Vec<_> = seg.left.iter().map(|e| e.vertex).collect();
        let r: Vec<_> = seg.right.iter().map(|e| e.vertex).collect();
        assert_eq!(l, vec![0, 4, 6, 7, 9]);
        assert_eq!(r, vec![1, 2, 3, 5, 8, 10]);
        let win = |side: &[ChainEntry], i: usize| (side[i].min, side[i].max);
        assert_eq!(win(&seg.left, 0), (1, 3));
        assert_eq!(win(&seg.left, 1), (2, 3));
        assert_eq!(win(&seg.left, 2), (2, 4));
        assert_eq!(win(&seg.left, 3), (5, 6));
        assert_eq!(win(&seg.left, 4), (5, 6));
        assert_eq!(win(&seg.right, 0), (1, 1));
        assert_eq!(win(&seg.right, 1), (1, 3));
        assert_eq!(win(&seg.right, 2), (1, 3));
        assert_eq!(win(&seg.right, 3), (3, 3));
        assert_eq!(win(&seg.right, 4), (4, 5));
        assert_eq!(win(&seg.right, 5), (4, 5));
        assert_eq!(
            seg.clusters,
            vec![
                ClusterSpan {
                    left: (1, 3),
                    right: (1, 4)
                },
                ClusterSpan {
                    left: (4, 5),
                    right: (5, 6)
                },
            ]
        );
        // Matching vectors read straight off the reconstruction.
        assert_eq!(c.matching_vector(0).unwrap().partners, vec![1, 2, 3]);
        assert_eq!(c.matching_vector(6).unwrap().partners, vec![2, 3, 5]);
        assert_eq!(c.pairs(), pairs);
        assert!(c.validate_structure().is_ok());
    }

    #[test]
    fn reconstruction_round_trips_a_real_chain() {
        let g = ladder();
        let id = |n: &str| g.lookup(n).unwrap();
        let c = dominator_chain(&g, id("u")).unwrap();
        let rebuilt = chain_from_pair_set(&c.pairs()).unwrap();
        assert_eq!(rebuilt.pairs(), c.pairs());
        let seg = &rebuilt.segments[0];
        let l: Vec<_> = seg.left.iter().map(|e| e.vertex).collect();
        assert_eq!(l, vec![id("a1"), id("a2")]);
        assert_eq!((seg.left[0].min, seg.left[0].max), (1, 2));
        assert!(rebuilt.is_double_dominator(id("a1"), id("b2")));
        assert!(!rebuilt.is_double_dominator(id("a2"), id("b1")));
    }

    #[test]
    fn rejects_inconsistent_pair_sets() {
        // Mutually paired triple: no two-sided split exists.
        let triangle: PairSet = [(0, 1), (1, 2), (0, 2)].into_iter().collect();
        assert!(matches!(
            chain_from_pair_set(&triangle),
            Err(Error::InconsistentPairSet(_))
        ));
        // Three pairwise-overlapping partner sets: {3,4} for 1, {4,5}
        // for 2, {3,5} for 0 — no order makes all three contiguous.
        let claw: PairSet = [(0, 3), (1, 3), (1, 4), (2, 4), (0, 5), (2, 5)]
            .into_iter()
            .collect();
        assert!(matches!(
            chain_from_pair_set(&claw),
            Err(Error::InconsistentPairSet(_))
        ));
        let selfpair: PairSet = [(1, 1)].into_iter().collect();
        assert!(matches!(
            chain_from_pair_set(&selfpair),
            Err(Error::InconsistentPairSet(_))
        ));
    }

    #[test]
    fn empty_pair_set_reconstructs_empty_chain() {
        let c = chain_from_pair_set(&PairSet::new()).unwrap();
        assert_eq!(c.pair_count(), 0);
        assert!(c.segments.is_empty());
        assert_eq!(c.immediate_double_dominator(), None);
        assert!(c.validate_structure().is_ok());
    }
}
