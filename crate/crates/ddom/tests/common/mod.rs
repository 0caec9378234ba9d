//! Fixture graphs shared by the integration test crates.
#![allow(dead_code)] // each test crate uses its own subset

use ddom::graph::parse_dag;
use ddom::{Graph, VertexId};

/// u fans out to a and b, which reconverge at the root.
pub const DIAMOND: &str = "v u\nv a\nv b\nv r\ne u a\ne u b\ne a r\ne b r\nroot r\n";

/// Two two-vertex rails with one cross edge; three dominator pairs.
pub const LADDER: &str = "v u\nv a1\nv a2\nv b1\nv b2\nv r\n\
e u a1\ne u b1\ne a1 a2\ne b1 b2\ne a1 b2\ne a2 r\ne b2 r\nroot r\n";

/// A three-vertex rail with a skip edge bypassing its middle vertex,
/// against a single-vertex rail.
pub const SKIP: &str = "v u\nv a1\nv a2\nv a3\nv b\nv r\n\
e u a1\ne a1 a2\ne a2 a3\ne a3 r\ne u b\ne b r\ne a1 a3\nroot r\n";

/// Two diamonds in series through the middle vertex m.
pub const SERIES_DIAMOND: &str = "v u\nv a\nv b\nv m\nv c\nv d\nv r\n\
e u a\ne u b\ne a m\ne b m\ne m c\ne m d\ne c r\ne d r\nroot r\n";

/// Three parallel two-edge routes; no pair covers all of them.
pub const TRIPLE_FAN: &str = "v u\nv a\nv b\nv c\nv r\n\
e u a\ne u b\ne u c\ne a r\ne b r\ne c r\nroot r\n";

/// A bare three-vertex chain: only single-vertex dominators.
pub const CHAIN3: &str = "v u\nv a\nv r\ne u a\ne a r\nroot r\n";

/// A reconvergent two-sided graph exercising set dominance: left and
/// right halves meet at n and p before the root.
pub const TWO_SIDED: &str = "v b\nv e\nv g\nv j\nv k\nv m\nv l\nv h\nv n\nv p\nv f\n\
e b e\ne b g\ne e j\ne e k\ne g m\ne g l\ne m k\ne l h\ne j n\ne k n\ne h p\ne n f\ne p f\n\
root f\n";

pub fn parse(text: &str) -> Graph {
    parse_dag(text).expect("fixture must parse")
}

pub fn id(g: &Graph, name: &str) -> VertexId {
    g.lookup(name).unwrap_or_else(|_| panic!("no vertex named {name}"))
}
