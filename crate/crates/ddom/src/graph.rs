//! Core graph representation: a directed acyclic graph with a designated
//! root (single sink used as the reference point for dominator queries).
//!
//! Vertices are dense `usize` ids internally; every vertex also carries a
//! user-facing name. All public entry points that accept names resolve them
//! through the graph's name table, and everything downstream works on ids.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Dense vertex identifier. Ids are assigned in declaration order.
pub type VertexId = usize;

/// Sentinel for "no vertex", used where a chain carries no graph
/// context (see [`crate::query::chain_from_pair_set`]).
pub const NO_VERTEX: VertexId = usize::MAX;

/// Role of a vertex, mostly relevant for circuit-style inputs and for
/// reporting. Analysis itself only cares about the edge structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// A source-side vertex (no fanin expected, e.g. a circuit input).
    Input,
    /// An ordinary internal vertex.
    Gate,
    /// A declared output.
    Output,
    /// A vertex synthesized by a transformation (merged source, fake
    /// source, virtual root); never present in user input.
    Virtual,
}

/// A directed acyclic graph with named vertices and a designated root.
///
/// `fanout(v)` and `fanin(v)` list neighbors in insertion order; that order
/// is part of the graph's identity for reproducibility (traversals and
/// path searches follow it deterministically). Adjacency is stored in
/// compressed (offset + flat array) form: the graph is immutable once
/// built, and the traversal-heavy algorithms benefit from the locality.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    fanout_off: Vec<usize>,
    fanout_dat: Vec<VertexId>,
    fanin_off: Vec<usize>,
    fanin_dat: Vec<VertexId>,
    kind: Vec<VertexKind>,
    names: Vec<String>,
    by_name: HashMap<String, VertexId>,
    root: VertexId,
    edge_count: usize,
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn fanout(&self, v: VertexId) -> &[VertexId] {
        &self.fanout_dat[self.fanout_off[v]..self.fanout_off[v + 1]]
    }

    pub fn fanin(&self, v: VertexId) -> &[VertexId] {
        &self.fanin_dat[self.fanin_off[v]..self.fanin_off[v + 1]]
    }

    pub fn kind(&self, v: VertexId) -> VertexKind {
        self.kind[v]
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    /// Resolve a vertex name to its id.
    pub fn lookup(&self, name: &str) -> Result<VertexId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.names.len()
    }

    pub fn has_edge(&self, src: VertexId, dst: VertexId) -> bool {
        self.fanout(src).contains(&dst)
    }

    /// Kahn topological order, deterministic: among ready vertices the
    /// smallest id goes first. Every graph built through [`GraphBuilder`]
    /// is acyclic, so this always covers all vertices.
    pub fn topological_order(&self) -> Vec<VertexId> {
        use std::cmp::Reverse;
        use std::collections::BinaryHeap;

        let n = self.vertex_count();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.fanin(v).len()).collect();
        let mut ready: BinaryHeap<Reverse<VertexId>> = (0..n)
            .filter(|&v| indeg[v] == 0)
            .map(Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in self.fanout(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(Reverse(w));
                }
            }
        }
        debug_assert_eq!(order.len(), n);
        order
    }

    /// Serialize to the plain-text `.dag` format. Vertices appear in id
    /// order, edges in (source id, fanout position) order, root last.
    /// `parse_dag(to_dag_text(g))` reproduces `g` exactly.
    pub fn to_dag_text(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            let kind = match self.kind[v] {
                VertexKind::Input => "input",
                VertexKind::Gate | VertexKind::Virtual => "gate",
                VertexKind::Output => "output",
            };
            out.push_str(&format!("v {} {}\n", self.names[v], kind));
        }
        for v in self.vertices() {
            for &w in self.fanout(v) {
                out.push_str(&format!("e {} {}\n", self.names[v], self.names[w]));
            }
        }
        out.push_str(&format!("root {}\n", self.names[self.root]));
        out
    }
}

/// Incremental graph constructor. Detects duplicate names, duplicate
/// edges, and (at build time) cycles.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    fanout: Vec<Vec<VertexId>>,
    fanin: Vec<Vec<VertexId>>,
    kind: Vec<VertexKind>,
    names: Vec<String>,
    by_name: HashMap<String, VertexId>,
    edge_count: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str, kind: VertexKind) -> Result<VertexId> {
        if self.by_name.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.by_name.insert(name.to_string(), id);
        self.kind.push(kind);
        self.fanout.push(Vec::new());
        self.fanin.push(Vec::new());
        Ok(id)
    }

    pub fn lookup(&self, name: &str) -> Result<VertexId> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn add_edge(&mut self, src: VertexId, dst: VertexId) -> Result<()> {
        if src >= self.names.len() {
            return Err(Error::UnknownVertex(format!("#{src}")));
        }
        if dst >= self.names.len() {
            return Err(Error::UnknownVertex(format!("#{dst}")));
        }
        if src == dst {
            // A self-loop is the smallest cycle; report it as one.
            return Err(Error::Cycle);
        }
        if self.fanout[src].contains(&dst) {
            return Err(Error::DuplicateEdge(
                self.names[src].clone(),
                self.names[dst].clone(),
            ));
        }
        self.fanout[src].push(dst);
        self.fanin[dst].push(src);
        self.edge_count += 1;
        Ok(())
    }

    /// Finish construction. Verifies acyclicity; `root` is the designated
    /// sink for dominator analysis (it need not have empty fanout, though
    /// in practice it usually does).
    pub fn build(self, root: VertexId) -> Result<Graph> {
        if root >= self.names.len() {
            return Err(Error::UnknownVertex(format!("#{root}")));
        }
        // Kahn pass purely for cycle detection.
        let n = self.names.len();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.fanin[v].len()).collect();
        let mut stack: Vec<VertexId> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0usize;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.fanout[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if seen != n {
            return Err(Error::Cycle);
        }
        let (fanout_off, fanout_dat) = flatten(&self.fanout, self.edge_count);
        let (fanin_off, fanin_dat) = flatten(&self.fanin, self.edge_count);
        Ok(Graph {
            fanout_off,
            fanout_dat,
            fanin_off,
            fanin_dat,
            kind: self.kind,
            names: self.names,
            by_name: self.by_name,
            root,
            edge_count: self.edge_count,
        })
    }
}

fn flatten(lists: &[Vec<VertexId>], total: usize) -> (Vec<usize>, Vec<VertexId>) {
    let mut off = Vec::with_capacity(lists.len() + 1);
    let mut dat = Vec::with_capacity(total);
    off.push(0);
    for l in lists {
        dat.extend_from_slice(l);
        off.push(dat.len());
    }
    (off, dat)
}

/// A simple directed path through a graph, stored as the full vertex
/// sequence including both endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<VertexId>,
}

impl Path {
    /// Wrap a vertex sequence, checking that every hop is an actual edge
    /// and no vertex repeats.
    pub fn new(g: &Graph, vertices: Vec<VertexId>) -> Result<Path> {
        if vertices.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::Cycle);
            }
        }
        for pair in vertices.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                return Err(Error::UnknownVertex(format!(
                    "no edge {} -> {}",
                    g.name(pair[0]),
                    g.name(pair[1])
                )));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn sink(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    /// Vertices strictly between source and sink.
    pub fn internals(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Parse the plain-text graph format:
///
/// ```text
/// # comment
/// v NAME [input|gate|output]     (kind defaults to gate)
/// e SRC DST
/// root NAME
/// ```
///
/// Blank lines and `#` comments are ignored. Exactly one `root` line is
/// required. Errors carry the offending line number.
pub fn parse_dag(text: &str) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    let mut root: Option<VertexId> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap();
        match tag {
            "v" => {
                let name = parts.next().ok_or(Error::Parse {
                    line: lineno,
                    message: "v: missing vertex name".into(),
                })?;
                let kind = match parts.next() {
                    None => VertexKind::Gate,
                    Some("input") => VertexKind::Input,
                    Some("gate") => VertexKind::Gate,
                    Some("output") => VertexKind::Output,
                    Some(other) => {
                        return Err(Error::Parse {
                            line: lineno,
                            message: format!("v: unknown kind '{other}'"),
                        })
                    }
                };
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "v: trailing tokens".into(),
                    });
                }
                b.add_vertex(name, kind).map_err(|e| match e {
                    Error::DuplicateVertex(n) => Error::Parse {
                        line: lineno,
                        message: format!("duplicate vertex: {n}"),
                    },
                    other => other,
                })?;
            }
            "e" => {
                let src = parts.next().ok_or(Error::Parse {
                    line: lineno,
                    message: "e: missing source".into(),
                })?;
                let dst = parts.next().ok_or(Error::Parse {
                    line: lineno,
                    message: "e: missing destination".into(),
                })?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "e: trailing tokens".into(),
                    });
                }
                // Vertices must be declared before use.
                let s = b.lookup(src).map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("unknown vertex: {src}"),
                })?;
                let d = b.lookup(dst).map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("unknown vertex: {dst}"),
                })?;
                b.add_edge(s, d).map_err(|e| match e {
                    Error::DuplicateEdge(a, z) => Error::Parse {
                        line: lineno,
                        message: format!("duplicate edge: {a} -> {z}"),
                    },
                    Error::Cycle => Error::Parse {
                        line: lineno,
                        message: "self-loop".into(),
                    },
                    other => other,
                })?;
            }
            "root" => {
                let name = parts.next().ok_or(Error::Parse {
                    line: lineno,
                    message: "root: missing vertex name".into(),
                })?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "root: trailing tokens".into(),
                    });
                }
                if root.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        message: "duplicate root declaration".into(),
                    });
                }
                root = Some(b.lookup(name).map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("unknown vertex: {name}"),
                })?);
            }
            other => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("unknown directive '{other}'"),
                })
            }
        }
    }

    b.build(root.ok_or(Error::MissingRoot)?)
}

/// Replace a set of source vertices by a single merged vertex whose fanout
/// is the deduplicated union of the originals' fanouts. The original
/// vertices stay in the graph; the merged vertex is appended with kind
/// [`VertexKind::Virtual`]. Returns the new graph and the merged vertex id.
pub fn merge_sources(g: &Graph, sources: &BTreeSet<VertexId>) -> Result<(Graph, VertexId)> {
    if sources.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if sources.contains(&g.root()) {
        return Err(Error::RootInSet);
    }
    let mut union: Vec<VertexId> = Vec::new();
    let mut seen = BTreeSet::new();
    for &s in sources {
        if s >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{s}")));
        }
        for &w in g.fanout(s) {
            if !sources.contains(&w) && seen.insert(w) {
                union.push(w);
            }
        }
    }
    clone_with_extra_vertex(g, &union)
}

/// Add a synthetic source whose fanout is exactly the given vertex set.
/// Used to ask for dominators of a *set*: dominators of the fake source
/// are precisely the vertex sets every member must pass through.
pub fn add_fake_source(g: &Graph, targets: &BTreeSet<VertexId>) -> Result<(Graph, VertexId)> {
    if targets.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if targets.contains(&g.root()) {
        return Err(Error::RootInSet);
    }
    for &t in targets {
        if t >= g.vertex_count() {
            return Err(Error::UnknownVertex(format!("#{t}")));
        }
    }
    let fanout: Vec<VertexId> = targets.iter().copied().collect();
    clone_with_extra_vertex(g, &fanout)
}

fn clone_with_extra_vertex(g: &Graph, fanout: &[VertexId]) -> Result<(Graph, VertexId)> {
    let mut b = GraphBuilder::new();
    for v in g.vertices() {
        b.add_vertex(g.name(v), g.kind(v))?;
    }
    // Pick a name that is not already taken.
    let mut name = "merged".to_string();
    let mut counter = 0usize;
    while b.lookup(&name).is_ok() {
        counter += 1;
        name = format!("merged_{counter}");
    }
    let nv = b.add_vertex(&name, VertexKind::Virtual)?;
    for v in g.vertices() {
        for &w in g.fanout(v) {
            b.add_edge(v, w)?;
        }
    }
    for &w in fanout {
        b.add_edge(nv, w)?;
    }
    let g2 = b.build(g.root())?;
    Ok((g2, nv))
}

/// Extract the cone of a vertex: the subgraph induced by everything that
/// can reach `out`, plus `out` itself, with `out` as the new root.
/// Vertex ids are reassigned in ascending original-id order.
pub fn extract_cone(g: &Graph, out: VertexId) -> Result<Graph> {
    if out >= g.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{out}")));
    }
    // Reverse reachability from `out`, iterative.
    let mut keep = vec![false; g.vertex_count()];
    keep[out] = true;
    let mut stack = vec![out];
    while let Some(v) = stack.pop() {
        for &p in g.fanin(v) {
            if !keep[p] {
                keep[p] = true;
                stack.push(p);
            }
        }
    }
    let mut b = GraphBuilder::new();
    let mut remap: HashMap<VertexId, VertexId> = HashMap::new();
    for v in g.vertices().filter(|&v| keep[v]) {
        let nv = b.add_vertex(g.name(v), g.kind(v))?;
        remap.insert(v, nv);
    }
    for v in g.vertices().filter(|&v| keep[v]) {
        for &w in g.fanout(v) {
            if keep[w] {
                b.add_edge(remap[&v], remap[&w])?;
            }
        }
    }
    b.build(remap[&out])
}
