//! Brute-force reference semantics for dominator questions, plus a seeded
//! random-DAG generator. Everything here favors clarity over speed (plain
//! DFS per query, intended scale ≲ 60 vertices); the fast structures in
//! [`crate::chain`] are validated against these functions.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphBuilder, VertexId, VertexKind};
use crate::query::{pair, PairSet};

/// True iff some path a→b avoids every vertex in `excluded` (endpoints
/// included: an excluded endpoint means no such path).
pub fn reaches_excluding(g: &Graph, a: VertexId, b: VertexId, excluded: &[VertexId]) -> bool {
    if excluded.contains(&a) || excluded.contains(&b) {
        return false;
    }
    if a == b {
        return true;
    }
    let mut seen = vec![false; g.vertex_count()];
    for &x in excluded {
        seen[x] = true;
    }
    seen[a] = true;
    let mut stack = vec![a];
    while let Some(v) = stack.pop() {
        for &w in g.fanout(v) {
            if w == b {
                return true;
            }
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Set-dominance: every path from a vertex of `b` to `sink` contains a
/// vertex of `a`. Vertices of `b` that are themselves in `a` are covered
/// at the path's first vertex.
pub fn oracle_dominates(
    g: &Graph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    sink: VertexId,
) -> bool {
    let excl: Vec<VertexId> = a.iter().copied().collect();
    b.iter()
        .all(|&v| a.contains(&v) || !reaches_excluding(g, v, sink, &excl))
}

/// Minimal-cover check used by dominator definitions: `a` dominates `b`
/// and no proper subset of `a` does.
pub fn oracle_is_dominator(
    g: &Graph,
    a: &BTreeSet<VertexId>,
    b: &BTreeSet<VertexId>,
    sink: VertexId,
) -> bool {
    if !oracle_dominates(g, a, b, sink) {
        return false;
    }
    a.iter().all(|&x| {
        let mut smaller = a.clone();
        smaller.remove(&x);
        !oracle_dominates(g, &smaller, b, sink)
    })
}

/// All single-vertex dominators of `u` with respect to the root,
/// excluding the trivial ones (`u` itself and the root).
pub fn oracle_single(g: &Graph, u: VertexId) -> BTreeSet<VertexId> {
    let root = g.root();
    g.vertices()
        .filter(|&v| v != u && v != root && !reaches_excluding(g, u, root, &[v]))
        .collect()
}

/// All double-vertex dominators of `u`: unordered pairs {v, w} with
/// v, w ∉ {u, root}, v ≠ w, such that removing both disconnects u from
/// the root while removing either alone does not.
pub fn oracle_double(g: &Graph, u: VertexId) -> PairSet {
    let root = g.root();
    let singles = oracle_single(g, u);

    // A pair member must lie on some u→root path: a vertex off every such
    // path blocks nothing, so a pair containing it dominates iff its other
    // member alone does — which the minimality condition excludes.
    let mut fwd = vec![false; g.vertex_count()];
    fwd[u] = true;
    let mut stack = vec![u];
    while let Some(v) = stack.pop() {
        for &w in g.fanout(v) {
            if !fwd[w] {
                fwd[w] = true;
                stack.push(w);
            }
        }
    }
    let mut back = vec![false; g.vertex_count()];
    back[root] = true;
    stack.push(root);
    while let Some(v) = stack.pop() {
        for &p in g.fanin(v) {
            if !back[p] {
                back[p] = true;
                stack.push(p);
            }
        }
    }
    let candidates: Vec<VertexId> = g
        .vertices()
        .filter(|&v| v != u && v != root && fwd[v] && back[v] && !singles.contains(&v))
        .collect();

    let mut out = PairSet::new();
    for (i, &v) in candidates.iter().enumerate() {
        for &w in &candidates[i + 1..] {
            if !reaches_excluding(g, u, root, &[v, w]) {
                out.insert(pair(v, w));
            }
        }
    }
    out
}

/// Per-pair dominance table over a pair set: `dominates(i, x)` answers
/// "does `pairs[i]` dominate vertex x" in O(1) after one reverse sweep per
/// pair (x reaches root avoiding the pair iff x is marked in that sweep).
pub struct PairDominance {
    pairs: Vec<(VertexId, VertexId)>,
    reach_root: Vec<Vec<bool>>,
}

impl PairDominance {
    pub fn new(g: &Graph, pairs: &PairSet) -> PairDominance {
        let pairs: Vec<(VertexId, VertexId)> = pairs.iter().copied().collect();
        let mut reach_root = Vec::with_capacity(pairs.len());
        for &(a, b) in &pairs {
            let mut ok = vec![false; g.vertex_count()];
            if g.root() != a && g.root() != b {
                ok[g.root()] = true;
                let mut stack = vec![g.root()];
                while let Some(v) = stack.pop() {
                    for &p in g.fanin(v) {
                        if !ok[p] && p != a && p != b {
                            ok[p] = true;
                            stack.push(p);
                        }
                    }
                }
            }
            reach_root.push(ok);
        }
        PairDominance { pairs, reach_root }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, i: usize) -> (VertexId, VertexId) {
        self.pairs[i]
    }

    /// Does pair i dominate vertex x?
    pub fn dominates_vertex(&self, i: usize, x: VertexId) -> bool {
        let (a, b) = self.pairs[i];
        x == a || x == b || !self.reach_root[i][x]
    }

    /// Does pair i dominate pair j (as vertex sets)?
    pub fn dominates_pair(&self, i: usize, j: usize) -> bool {
        let (a, b) = self.pairs[j];
        self.dominates_vertex(i, a) && self.dominates_vertex(i, b)
    }
}

/// Check the partial-order laws (antisymmetry, transitivity, reflexivity)
/// and the shared-vertex / swap laws on a brute-force pair set. Returns a
/// description of the first violation found.
pub fn check_dominator_laws(
    g: &Graph,
    u: VertexId,
    pairs: &PairSet,
) -> std::result::Result<(), String> {
    let d = PairDominance::new(g, pairs);
    let n = d.len();
    let name = |v: VertexId| g.name(v).to_string();
    let pname = |i: usize| {
        let (a, b) = d.pair(i);
        format!("{{{},{}}}", name(a), name(b))
    };

    // Reflexivity: every pair dominates itself.
    for i in 0..n {
        if !d.dominates_pair(i, i) {
            return Err(format!("reflexivity fails for {}", pname(i)));
        }
    }
    // Antisymmetry: distinct pairs never dominate each other both ways.
    for i in 0..n {
        for j in 0..n {
            if i != j && d.dominates_pair(i, j) && d.dominates_pair(j, i) {
                return Err(format!(
                    "antisymmetry fails for {} and {}",
                    pname(i),
                    pname(j)
                ));
            }
        }
    }
    // Transitivity.
    for i in 0..n {
        for j in 0..n {
            if !d.dominates_pair(i, j) {
                continue;
            }
            for k in 0..n {
                if d.dominates_pair(j, k) && !d.dominates_pair(i, k) {
                    return Err(format!(
                        "transitivity fails: {} dom {} dom {} but not {} dom {}",
                        pname(i),
                        pname(j),
                        pname(k),
                        pname(i),
                        pname(k)
                    ));
                }
            }
        }
    }
    // Shared-vertex law: pairs {v1,v2} and {v2,v3} — one of them dominates
    // the other's non-common vertex.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a1, a2) = d.pair(i);
            let (b1, b2) = d.pair(j);
            let common: Vec<VertexId> = [a1, a2]
                .iter()
                .copied()
                .filter(|v| *v == b1 || *v == b2)
                .collect();
            if common.len() != 1 {
                continue;
            }
            let v1 = if a1 == common[0] { a2 } else { a1 };
            let v3 = if b1 == common[0] { b2 } else { b1 };
            if !d.dominates_vertex(i, v3) && !d.dominates_vertex(j, v1) {
                return Err(format!(
                    "shared-vertex law fails for {} and {}",
                    pname(i),
                    pname(j)
                ));
            }
        }
    }
    // Swap law and cross-dominance on disjoint, non-comparable pairs:
    // whenever {v3,v4} does not dominate v1 and {v1,v2} does not dominate
    // v4, both recombinations are dominator pairs, {v3,v4} dominates v2,
    // and {v1,v2} dominates v3. Checked over all ordered assignments.
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a1, a2) = d.pair(i);
            let (b1, b2) = d.pair(j);
            if a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2 {
                continue;
            }
            for (v1, v2) in [(a1, a2), (a2, a1)] {
                for (v3, v4) in [(b1, b2), (b2, b1)] {
                    if d.dominates_vertex(j, v1) || d.dominates_vertex(i, v4) {
                        continue;
                    }
                    if !pairs.contains(&pair(v1, v4)) || !pairs.contains(&pair(v2, v3)) {
                        return Err(format!(
                            "swap law fails for {} and {} (missing {{{},{}}} or {{{},{}}})",
                            pname(i),
                            pname(j),
                            name(v1),
                            name(v4),
                            name(v2),
                            name(v3)
                        ));
                    }
                    if !d.dominates_vertex(j, v2) || !d.dominates_vertex(i, v3) {
                        return Err(format!(
                            "cross-dominance fails for {} and {}",
                            pname(i),
                            pname(j)
                        ));
                    }
                }
            }
        }
    }
    let _ = u;
    Ok(())
}

/// Find the unique pair dominated by every other pair. `Ok(None)` for an
/// empty set; an error if zero or several such pairs exist (the structure
/// theory says exactly one must).
pub fn oracle_immediate(
    g: &Graph,
    pairs: &PairSet,
) -> std::result::Result<Option<(VertexId, VertexId)>, String> {
    if pairs.is_empty() {
        return Ok(None);
    }
    let d = PairDominance::new(g, pairs);
    let n = d.len();
    let mut found = Vec::new();
    for i in 0..n {
        if (0..n).all(|j| j == i || d.dominates_pair(j, i)) {
            found.push(d.pair(i));
        }
    }
    match found.len() {
        1 => Ok(Some(found[0])),
        0 => Err("no pair is dominated by all others".into()),
        _ => Err(format!(
            "{} pairs are dominated by all others",
            found.len()
        )),
    }
}

/// Check that no pair straddles a single-dominator boundary: with the
/// chain elements (u, s1, …, root) in order, both members of every pair
/// fall strictly between the same consecutive elements.
pub fn check_segment_locality(
    g: &Graph,
    chain: &[VertexId],
    pairs: &PairSet,
) -> std::result::Result<(), String> {
    // segment(x) = index of the last chain element that reaches x; x must
    // then reach the next element. Pair members are never chain elements.
    let segment_of = |x: VertexId| -> std::result::Result<usize, String> {
        let mut seg = None;
        for (i, &s) in chain.iter().enumerate() {
            if reaches_excluding(g, s, x, &[]) {
                seg = Some(i);
            }
        }
        let i = seg.ok_or_else(|| format!("{} not reachable from chain", g.name(x)))?;
        if i + 1 >= chain.len() || !reaches_excluding(g, x, chain[i + 1], &[]) {
            return Err(format!("{} does not reach next chain element", g.name(x)));
        }
        Ok(i)
    };
    for &(v, w) in pairs.iter() {
        if chain.contains(&v) || chain.contains(&w) {
            return Err(format!(
                "pair {{{},{}}} contains a chain element",
                g.name(v),
                g.name(w)
            ));
        }
        let sv = segment_of(v)?;
        let sw = segment_of(w)?;
        if sv != sw {
            return Err(format!(
                "pair {{{},{}}} straddles segments {} and {}",
                g.name(v),
                g.name(w),
                sv,
                sw
            ));
        }
    }
    Ok(())
}

/// Seeded, reproducible layered DAG. Vertices are named `v0..v{n-1}` with
/// ids in topological order; the root `v{n-1}` sits alone in the last
/// layer. Consecutive layers connect with probability `edge_density`;
/// every non-root vertex additionally gets at least one forward edge, so
/// all vertices reach the root. A sprinkle of layer-skipping edges keeps
/// the structure from being strictly level-by-level. Identical arguments
/// produce identical graphs. Generation cost is linear in the output, so
/// this also backs the large timing runs.
pub fn random_dag(n: usize, edge_density: f64, seed: u64) -> Graph {
    assert!(n >= 2, "need at least source and root");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    for i in 0..n {
        let kind = if i == n - 1 {
            VertexKind::Output
        } else {
            VertexKind::Gate
        };
        b.add_vertex(&format!("v{i}"), kind).unwrap();
    }

    // Contiguous layers over 0..n-1; the root is its own final layer.
    let max_width = ((n as f64).sqrt().ceil() as usize).clamp(1, 7);
    let mut layer_start = Vec::new(); // first vertex id of each layer
    let mut at = 0usize;
    while at < n - 1 {
        layer_start.push(at);
        at += rng.gen_range(1..=max_width.min(n - 1 - at));
    }
    layer_start.push(n - 1); // root layer
    layer_start.push(n); // sentinel
    let layer_count = layer_start.len() - 1;
    let layer_range = |l: usize| layer_start[l]..layer_start[l + 1];

    let mut has_out = vec![false; n];
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut present: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for l in 0..layer_count - 1 {
        for v in layer_range(l) {
            for w in layer_range(l + 1) {
                if rng.gen_bool(edge_density) {
                    present.insert((v, w));
                    edges.push((v, w));
                    has_out[v] = true;
                }
            }
            // Occasional skip edge into a random later layer.
            if l + 2 < layer_count && rng.gen_bool(edge_density * 0.3) {
                let target_layer = rng.gen_range(l + 2..layer_count);
                let r = layer_range(target_layer);
                let w = rng.gen_range(r.start..r.end);
                if present.insert((v, w)) {
                    edges.push((v, w));
                    has_out[v] = true;
                }
            }
        }
    }
    // Guarantee progress toward the root: every non-root vertex needs a
    // forward edge; induction from the highest id down gives reachability.
    for l in 0..layer_count - 1 {
        for v in layer_range(l) {
            if !has_out[v] {
                let r = layer_range(l + 1);
                let w = rng.gen_range(r.start..r.end);
                present.insert((v, w));
                edges.push((v, w));
                has_out[v] = true;
            }
        }
    }
    edges.sort_unstable();
    for (v, w) in edges {
        b.add_edge(v, w).unwrap();
    }
    b.build(n - 1).unwrap()
}
