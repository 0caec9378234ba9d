//! Reader for the ASCII AIGER circuit format (`aag` header).
//!
//! Only the combinational structure matters for dominator analysis, so
//! this reader keeps the AND-graph connectivity and **drops all inverter
//! (negation) markers**: literal 2k and literal 2k+1 both map to variable
//! k. Dominator questions are about which vertices every path must pass
//! through, and inversion does not change the paths. Latches are rejected
//! (sequential circuits have no single-sink DAG semantics here), and the
//! constant literals 0/1 are rejected as well since a constant input is
//! not a path-carrying vertex.
//!
//! Variables are named `n<var>`. With a single output the output variable
//! becomes the root; multiple outputs get a synthetic root named `out`
//! fed by every output variable.

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, VertexKind};

fn parse_literal(tok: &str, max_var: u64, lineno: usize) -> Result<u64> {
    let lit: u64 = tok.parse().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("invalid literal '{tok}'"),
    })?;
    if lit < 2 {
        return Err(Error::Parse {
            line: lineno,
            message: "constant literal (0/1) is not supported".into(),
        });
    }
    if lit > 2 * max_var + 1 {
        return Err(Error::Parse {
            line: lineno,
            message: format!("literal {lit} out of range"),
        });
    }
    Ok(lit / 2) // drop the negation bit
}

/// Parse an ASCII AIGER (`aag`) file into a [`Graph`].
pub fn parse_aiger_ascii(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate();

    let (_, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 6 || fields[0] != "aag" {
        return Err(Error::Parse {
            line: 1,
            message: "expected header 'aag M I L O A'".into(),
        });
    }
    let nums: Vec<u64> = fields[1..]
        .iter()
        .map(|t| {
            t.parse().map_err(|_| Error::Parse {
                line: 1,
                message: format!("invalid header field '{t}'"),
            })
        })
        .collect::<Result<_>>()?;
    let (max_var, n_in, n_latch, n_out, n_and) =
        (nums[0], nums[1] as usize, nums[2], nums[3] as usize, nums[4] as usize);
    if n_latch != 0 {
        return Err(Error::Parse {
            line: 1,
            message: "latches are not supported (combinational circuits only)".into(),
        });
    }

    let mut declared_inputs: Vec<u64> = Vec::with_capacity(n_in);
    for _ in 0..n_in {
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "unexpected end of file in input section".into(),
        })?;
        let lineno = idx + 1;
        let lit: u64 = line.trim().parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid input literal '{}'", line.trim()),
        })?;
        if lit % 2 == 1 {
            return Err(Error::Parse {
                line: lineno,
                message: "input declaration must be an even literal".into(),
            });
        }
        declared_inputs.push(parse_literal(line.trim(), max_var, lineno)?);
    }

    let mut outputs: Vec<u64> = Vec::with_capacity(n_out);
    for _ in 0..n_out {
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "unexpected end of file in output section".into(),
        })?;
        outputs.push(parse_literal(line.trim(), max_var, idx + 1)?);
    }

    // (lhs var, rhs vars) per AND gate.
    let mut ands: Vec<(usize, u64, Vec<u64>)> = Vec::with_capacity(n_and);
    for _ in 0..n_and {
        let (idx, line) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "unexpected end of file in AND section".into(),
        })?;
        let lineno = idx + 1;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: "AND line must be 'lhs rhs0 rhs1'".into(),
            });
        }
        let lhs_lit: u64 = toks[0].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid literal '{}'", toks[0]),
        })?;
        if lhs_lit % 2 == 1 {
            return Err(Error::Parse {
                line: lineno,
                message: "AND output must be an even literal".into(),
            });
        }
        let lhs = parse_literal(toks[0], max_var, lineno)?;
        let r0 = parse_literal(toks[1], max_var, lineno)?;
        let r1 = parse_literal(toks[2], max_var, lineno)?;
        // AND(x, !x) style gates reference the same variable twice; keep
        // one edge (the graph rejects duplicates).
        let rhs = if r0 == r1 { vec![r0] } else { vec![r0, r1] };
        ands.push((lineno, lhs, rhs));
    }
    // Remaining lines are the symbol table / comment section; ignored.

    // Classify variables: AND lhs -> gate; declared input -> input;
    // anything referenced but never defined -> input as well.
    let mut is_and = vec![false; (max_var + 1) as usize];
    for &(lineno, lhs, _) in &ands {
        if is_and[lhs as usize] {
            return Err(Error::Parse {
                line: lineno,
                message: format!("variable {lhs} defined by two AND gates"),
            });
        }
        is_and[lhs as usize] = true;
    }
    for &v in &declared_inputs {
        if is_and[v as usize] {
            return Err(Error::Parse {
                line: 1,
                message: format!("variable {v} is both an input and an AND output"),
            });
        }
    }

    let mut b = GraphBuilder::new();
    let mut ids = vec![usize::MAX; (max_var + 1) as usize];
    for var in 1..=max_var {
        let kind = if is_and[var as usize] {
            VertexKind::Gate
        } else {
            VertexKind::Input
        };
        ids[var as usize] = b.add_vertex(&format!("n{var}"), kind)?;
    }
    for &(lineno, lhs, ref rhs) in &ands {
        for &r in rhs {
            // Edges run toward the output: fanin feeds the gate.
            b.add_edge(ids[r as usize], ids[lhs as usize])
                .map_err(|e| match e {
                    Error::DuplicateEdge(a, z) => Error::Parse {
                        line: lineno,
                        message: format!("duplicate edge: {a} -> {z}"),
                    },
                    Error::Cycle => Error::Parse {
                        line: lineno,
                        message: "gate feeds itself".into(),
                    },
                    other => other,
                })?;
        }
    }

    match n_out {
        0 => Err(Error::MissingRoot),
        1 => b.build(ids[outputs[0] as usize]),
        _ => {
            let root = b.add_vertex("out", VertexKind::Virtual)?;
            let mut seen = std::collections::BTreeSet::new();
            for &o in &outputs {
                if seen.insert(o) {
                    b.add_edge(ids[o as usize], root)?;
                }
            }
            b.build(root)
        }
    }
}
