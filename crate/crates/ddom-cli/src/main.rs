//! `ddom` — command-line front end for double-vertex dominator analysis.
//!
//! Subcommands: `chain` (full dominator chain of a source vertex),
//! `query` (single pair membership test), `stats` (circuit-style
//! dominator counts), `verify` (randomized or single-graph equivalence
//! against the brute-force oracle), `idom` (immediate single-vertex
//! dominators). Results go to standard output, diagnostics to standard
//! error.
//!
//! Exit codes are part of the contract: 0 success (for `query`: answer
//! is true), 1 `query` answered false, 2 parse/usage/input errors,
//! 3 unknown vertex name, 4 `verify` found a mismatch.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ddom::graph::parse_dag;
use ddom::oracle::{
    check_dominator_laws, oracle_double, oracle_immediate, oracle_single, random_dag,
};
use ddom::{
    chain_from_pair_set, compute_dominator_tree, compute_stats, dominator_chain,
    dominator_chain_with_tree, pair, DominatorChain, Graph, PairSet, SegmentChain, VertexId,
};

#[derive(Parser)]
#[command(
    name = "ddom",
    version,
    about = "Double-vertex dominator analysis for single-sink DAGs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the full dominator chain of a source vertex
    Chain(ChainArgs),
    /// Test whether {V, W} is a double-vertex dominator of the source
    Query(QueryArgs),
    /// Dominator statistics over all output cones of a circuit
    Stats(StatsArgs),
    /// Check the analysis against the brute-force oracle
    Verify(VerifyArgs),
    /// Print the immediate dominator of every vertex that reaches the root
    Idom(IdomArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct ChainArgs {
    /// Graph file (.dag text or ASCII AIGER)
    #[arg(long, required_unless_present = "pairs", conflicts_with = "pairs")]
    graph: Option<PathBuf>,
    /// Source vertex name
    #[arg(long, required_unless_present = "pairs", conflicts_with = "pairs")]
    source: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Reconstruct a chain from a pair list ("V W" per line) instead of
    /// analyzing a graph
    #[arg(long, hide = true)]
    pairs: Option<PathBuf>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    source: String,
    /// First member of the candidate pair
    v: String,
    /// Second member of the candidate pair
    w: String,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of seeded random DAGs to generate and check
    #[arg(long, conflicts_with = "graph")]
    random: Option<usize>,
    /// Vertex budget for the random DAGs
    #[arg(long, default_value_t = 40)]
    max_vertices: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Check one graph from a file instead of random ones
    #[arg(long, required_unless_present = "random")]
    graph: Option<PathBuf>,
    /// Restrict the file-based check to one source vertex
    #[arg(long, requires = "graph")]
    source: Option<String>,
    /// Report a fabricated mismatch for the first instance (exercises
    /// the failure path of the harness)
    #[arg(long, hide = true)]
    inject_mismatch: bool,
}

#[derive(Args)]
struct IdomArgs {
    #[arg(long)]
    graph: PathBuf,
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Chain(a) => cmd_chain(a),
        Cmd::Query(a) => cmd_query(a),
        Cmd::Stats(a) => cmd_stats(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Idom(a) => cmd_idom(a),
    };
    std::process::exit(code);
}

/// Exit code for a library error: unknown vertex names are their own
/// contract (3); everything else that makes the request unanswerable —
/// parse errors, malformed structure, a root used as source — is 2.
fn exit_code(e: &ddom::Error) -> i32 {
    match e {
        ddom::Error::UnknownVertex(_) => 3,
        _ => 2,
    }
}

/// Load a graph file, auto-detecting the format: ASCII AIGER files start
/// with their "aag" header, everything else is .dag text.
fn load_graph(path: &Path) -> Result<Graph, i32> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("ddom: {}: {e}", path.display());
            return Err(2);
        }
    };
    let parsed = if text.trim_start().starts_with("aag") {
        ddom::aiger::parse_aiger_ascii(&text)
    } else {
        parse_dag(&text)
    };
    parsed.map_err(|e| {
        eprintln!("ddom: {}: {e}", path.display());
        exit_code(&e)
    })
}

fn lookup(g: &Graph, name: &str) -> Result<VertexId, i32> {
    g.lookup(name).map_err(|e| {
        eprintln!("ddom: {e}");
        exit_code(&e)
    })
}

fn cmd_chain(a: ChainArgs) -> i32 {
    let (chain, names, reconstructed) = if let Some(pairs_file) = &a.pairs {
        match load_pair_chain(pairs_file) {
            Ok((chain, names)) => (chain, names, true),
            Err(code) => return code,
        }
    } else {
        let g = match load_graph(a.graph.as_deref().unwrap()) {
            Ok(g) => g,
            Err(code) => return code,
        };
        let src = match lookup(&g, a.source.as_deref().unwrap()) {
            Ok(v) => v,
            Err(code) => return code,
        };
        let chain = match dominator_chain(&g, src) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("ddom: {e}");
                return exit_code(&e);
            }
        };
        let names = g.vertices().map(|v| g.name(v).to_string()).collect();
        (chain, names, false)
    };
    match a.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&chain_value(&chain, &names, reconstructed))
                .expect("serializable")
        ),
        Format::Text => print_chain_text(&chain, &names, reconstructed),
    }
    0
}

/// Read a pair list ("V W" per line, `#` comments), name the vertices in
/// sorted order, and reconstruct the chain they describe.
fn load_pair_chain(path: &Path) -> Result<(DominatorChain, Vec<String>), i32> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("ddom: {}: {e}", path.display());
            return Err(2);
        }
    };
    let mut raw: Vec<(String, String)> = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(v), Some(w), None) => {
                names.insert(v.to_string());
                names.insert(w.to_string());
                raw.push((v.to_string(), w.to_string()));
            }
            _ => {
                eprintln!(
                    "ddom: {}:{}: expected two vertex names per line",
                    path.display(),
                    idx + 1
                );
                return Err(2);
            }
        }
    }
    let names: Vec<String> = names.into_iter().collect();
    let id: BTreeMap<&str, VertexId> = names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let pairs: PairSet = raw
        .iter()
        .map(|(v, w)| pair(id[v.as_str()], id[w.as_str()]))
        .collect();
    match chain_from_pair_set(&pairs) {
        Ok(chain) => Ok((chain, names)),
        Err(e) => {
            eprintln!("ddom: {}: {e}", path.display());
            Err(2)
        }
    }
}

/// JSON for a chain. Maps are key-sorted (the serializer's canonical
/// order), so parsing the output and re-serializing it is byte-identical.
fn chain_value(chain: &DominatorChain, names: &[String], reconstructed: bool) -> Value {
    let name = |v: VertexId| names[v].clone();
    let endpoint = |v: VertexId| {
        if reconstructed {
            Value::Null
        } else {
            Value::String(name(v))
        }
    };
    let segments: Vec<Value> = chain.segments.iter().map(|s| segment_value(s, &name)).collect();
    json!({
        "source": endpoint(chain.source),
        "root": endpoint(chain.root),
        "single_chain": chain.single.iter().map(|&v| name(v)).collect::<Vec<_>>(),
        "segments": segments,
        "pair_count": chain.pair_count(),
    })
}

fn segment_value(seg: &SegmentChain, name: &dyn Fn(VertexId) -> String) -> Value {
    let mut windows = serde_json::Map::new();
    for e in seg.left.iter().chain(seg.right.iter()) {
        windows.insert(name(e.vertex), json!({"min": e.min, "max": e.max}));
    }
    let side = |entries: &[ddom::ChainEntry], span: (usize, usize)| -> Vec<String> {
        entries[span.0 - 1..span.1].iter().map(|e| name(e.vertex)).collect()
    };
    let clusters: Vec<Value> = seg
        .clusters
        .iter()
        .map(|c| json!({"l": side(&seg.left, c.left), "r": side(&seg.right, c.right)}))
        .collect();
    json!({
        "left": seg.left.iter().map(|e| name(e.vertex)).collect::<Vec<_>>(),
        "right": seg.right.iter().map(|e| name(e.vertex)).collect::<Vec<_>>(),
        "windows": windows,
        "clusters": clusters,
    })
}

fn print_chain_text(chain: &DominatorChain, names: &[String], reconstructed: bool) {
    let name = |v: VertexId| names[v].as_str();
    if reconstructed {
        println!("reconstructed from a pair set (no graph context)");
    } else {
        println!("source: {}", name(chain.source));
        println!("root: {}", name(chain.root));
        let joined: Vec<&str> = chain.single.iter().map(|&v| name(v)).collect();
        println!("single chain: {}", joined.join(" -> "));
    }
    for (i, seg) in chain.segments.iter().enumerate() {
        if reconstructed {
            println!("segment {}:", i + 1);
        } else {
            println!(
                "segment {} ({} .. {}):",
                i + 1,
                name(seg.source),
                name(seg.sink)
            );
        }
        if seg.is_empty() {
            println!("  no pairs");
            continue;
        }
        let fmt = |entries: &[ddom::ChainEntry]| -> String {
            let parts: Vec<String> = entries
                .iter()
                .map(|e| format!("{}[{},{}]", name(e.vertex), e.min, e.max))
                .collect();
            parts.join(" ")
        };
        println!("  L: {}", fmt(&seg.left));
        println!("  R: {}", fmt(&seg.right));
        for c in &seg.clusters {
            let l: Vec<&str> = seg.left[c.left.0 - 1..c.left.1]
                .iter()
                .map(|e| name(e.vertex))
                .collect();
            let r: Vec<&str> = seg.right[c.right.0 - 1..c.right.1]
                .iter()
                .map(|e| name(e.vertex))
                .collect();
            println!("  cluster: {{{}}} x {{{}}}", l.join(" "), r.join(" "));
        }
    }
    println!("pairs: {}", chain.pair_count());
}

fn cmd_query(a: QueryArgs) -> i32 {
    let g = match load_graph(&a.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let (src, v, w) = match (lookup(&g, &a.source), lookup(&g, &a.v), lookup(&g, &a.w)) {
        (Ok(s), Ok(v), Ok(w)) => (s, v, w),
        (s, v, w) => return s.err().or(v.err()).or(w.err()).unwrap(),
    };
    let chain = match dominator_chain(&g, src) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("ddom: {e}");
            return exit_code(&e);
        }
    };
    let answer = chain.is_double_dominator(v, w);
    println!("{answer}");
    if answer {
        0
    } else {
        1
    }
}

fn cmd_stats(a: StatsArgs) -> i32 {
    let g = match load_graph(&a.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let s = match compute_stats(&g) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("ddom: {e}");
            return exit_code(&e);
        }
    };
    println!("inputs  outputs  gates  1-doms  2-doms  useful-2-doms");
    println!(
        "{:>6}  {:>7}  {:>5}  {:>6}  {:>6}  {:>13}",
        s.inputs, s.outputs, s.gates, s.one_doms, s.two_doms, s.useful_two_doms
    );
    0
}

fn cmd_idom(a: IdomArgs) -> i32 {
    let g = match load_graph(&a.graph) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let tree = compute_dominator_tree(&g);
    for v in g.vertices() {
        if v == g.root() || !tree.reaches_root(v) {
            continue;
        }
        let d = tree.idom(v).expect("v reaches the root");
        println!("{}: {}", g.name(v), g.name(d));
    }
    0
}

struct Mismatch {
    reason: String,
    source: VertexId,
}

fn cmd_verify(a: VerifyArgs) -> i32 {
    let graphs: Vec<Graph> = if let Some(n) = a.random {
        if a.max_vertices < 5 {
            eprintln!("ddom: --max-vertices must be at least 5");
            return 2;
        }
        (0..n)
            .map(|i| {
                let nv = 5 + (i * 7) % (a.max_vertices - 4);
                let density = [0.1, 0.2, 0.3, 0.4, 0.5][i % 5];
                random_dag(nv, density, a.seed.wrapping_mul(1000).wrapping_add(i as u64))
            })
            .collect()
    } else {
        match load_graph(a.graph.as_deref().unwrap()) {
            Ok(g) => vec![g],
            Err(code) => return code,
        }
    };
    let mut instances = 0usize;
    let mut inject = a.inject_mismatch;
    for g in &graphs {
        let tree = compute_dominator_tree(g);
        let sources: Vec<VertexId> = match &a.source {
            Some(name) => match lookup(g, name) {
                Ok(v) => vec![v],
                Err(code) => return code,
            },
            None => g
                .vertices()
                .filter(|&v| v != g.root() && tree.reaches_root(v))
                .collect(),
        };
        for u in sources {
            instances += 1;
            let fail = match check_instance(g, &tree, u, &mut inject) {
                Ok(()) => continue,
                Err(f) => f,
            };
            println!("verify: FAIL — {}", fail.reason);
            println!("source: {}", g.name(fail.source));
            println!("counterexample graph (.dag):");
            print!("{}", g.to_dag_text());
            return 4;
        }
    }
    println!(
        "verify: {} graphs, {} sources checked — analysis matches the oracle",
        graphs.len(),
        instances
    );
    0
}

fn check_instance(
    g: &Graph,
    tree: &ddom::DominatorTree,
    u: VertexId,
    inject: &mut bool,
) -> Result<(), Mismatch> {
    let fail = |reason: String| Mismatch { reason, source: u };
    if *inject {
        *inject = false;
        return Err(fail("injected mismatch (test flag)".into()));
    }
    let chain = dominator_chain_with_tree(g, tree, u)
        .map_err(|e| fail(format!("chain construction failed: {e}")))?;
    let singles: BTreeSet<VertexId> = chain.single[1..chain.single.len() - 1]
        .iter()
        .copied()
        .collect();
    if singles != oracle_single(g, u) {
        return Err(fail("single dominator chain disagrees with oracle".into()));
    }
    let pairs = chain.pairs();
    if pairs != oracle_double(g, u) {
        return Err(fail("double dominator set disagrees with oracle".into()));
    }
    let immediate = oracle_immediate(g, &pairs)
        .map_err(|e| fail(format!("immediate pair law violated: {e}")))?;
    if immediate != chain.immediate_double_dominator() {
        return Err(fail("immediate pair disagrees with oracle".into()));
    }
    check_dominator_laws(g, u, &pairs)
        .map_err(|e| fail(format!("dominance law violated: {e}")))?;
    chain
        .validate_structure()
        .map_err(|e| fail(format!("chain structure invalid: {e}")))?;
    Ok(())
}
