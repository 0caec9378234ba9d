//! Immediate single-vertex dominators with respect to the root.
//!
//! Dominance here runs along paths *toward* the root (every u→root path
//! passes through idom(u)), so this is the classical dominator-tree
//! computation on the edge-reversed graph with the root as entry: DFS
//! follows fanin lists, predecessor scans follow fanout lists.
//!
//! The implementation is semi-NCA: one DFS, a semidominator pass with
//! path-compressed eval, then an NCA pass that intersects parent and
//! semidominator. Near-linear in practice and considerably simpler than
//! the full Lengauer–Tarjan linking scheme. All traversals are iterative;
//! recursion on 100k-vertex graphs would overflow the stack.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const NONE: usize = usize::MAX;

/// Immediate-dominator tree. Vertices that cannot reach the root have no
/// entry (`idom` is `None` for them and for the root itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorTree {
    idom: Vec<Option<VertexId>>,
    root: VertexId,
}

impl DominatorTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    /// The immediate dominator of `v`, or `None` for the root and for
    /// vertices with no path to the root.
    pub fn idom(&self, v: VertexId) -> Option<VertexId> {
        self.idom[v]
    }

    pub fn reaches_root(&self, v: VertexId) -> bool {
        v == self.root || self.idom[v].is_some()
    }

    /// The idom-parent path (u = s0, s1, …, sm = root), u first.
    pub fn single_dominator_chain(&self, g: &Graph, u: VertexId) -> Result<Vec<VertexId>> {
        if !self.reaches_root(u) {
            return Err(Error::Unreachable(
                g.name(u).to_string(),
                g.name(self.root).to_string(),
            ));
        }
        let mut chain = vec![u];
        let mut v = u;
        while let Some(d) = self.idom[v] {
            chain.push(d);
            v = d;
        }
        Ok(chain)
    }
}

pub fn compute_dominator_tree(g: &Graph) -> DominatorTree {
    let n = g.vertex_count();
    let root = g.root();

    // True DFS from root over reversed edges (fanin lists), iterative.
    // pre[v]: preorder number; verts[i]: vertex with preorder i;
    // parent[i]: preorder number of the DFS-tree parent.
    let mut pre = vec![NONE; n];
    let mut verts = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    pre[root] = 0;
    verts.push(root);
    parent.push(NONE);
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        let fanin = g.fanin(v);
        if *next < fanin.len() {
            let w = fanin[*next];
            *next += 1;
            if pre[w] == NONE {
                pre[w] = verts.len();
                parent.push(pre[v]);
                verts.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    let m = verts.len();

    // Semidominator pass in reverse preorder. In the reversed graph the
    // predecessors of w are g.fanout(w). label/ancestor implement the
    // path-compressed eval of simple Lengauer–Tarjan; the compression
    // itself is an explicit loop for stack safety.
    let mut semi: Vec<usize> = (0..m).collect();
    let mut label: Vec<usize> = (0..m).collect();
    let mut ancestor = vec![NONE; m];
    let mut chain: Vec<usize> = Vec::new();
    for i in (1..m).rev() {
        let w = verts[i];
        let mut best = NONE;
        for &p in g.fanout(w) {
            if pre[p] == NONE {
                continue; // predecessor never reaches root
            }
            let j = pre[p];
            let cand = if j < i {
                j
            } else {
                // eval(j): minimum semi label along the forest path.
                if ancestor[j] != NONE {
                    chain.clear();
                    let mut x = j;
                    while ancestor[ancestor[x]] != NONE {
                        chain.push(x);
                        x = ancestor[x];
                    }
                    for &x in chain.iter().rev() {
                        let a = ancestor[x];
                        if semi[label[a]] < semi[label[x]] {
                            label[x] = label[a];
                        }
                        ancestor[x] = ancestor[a];
                    }
                }
                semi[label[j]]
            };
            if best == NONE || cand < best {
                best = cand;
            }
        }
        // The DFS parent is itself a predecessor, so best is set.
        semi[i] = best;
        ancestor[i] = parent[i];
    }

    // NCA pass: idom(w) is the nearest common ancestor of parent(w) and
    // the semidominator; processing in preorder lets finished idoms be
    // reused immediately.
    let mut idom_pre = vec![0usize; m];
    for i in 1..m {
        let mut c = parent[i];
        while c > semi[i] {
            c = idom_pre[c];
        }
        idom_pre[i] = c;
    }

    let mut idom = vec![None; n];
    for i in 1..m {
        idom[verts[i]] = Some(verts[idom_pre[i]]);
    }
    DominatorTree { idom, root }
}
