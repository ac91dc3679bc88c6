use std::fmt::Write;

use super::{Circuit, Lit, Node, NodeId};
use crate::error::{Error, Result};

/// Writes the c2d-style `.nnf` text of the reachable part of `circuit`.
///
/// ⊤ is written as `A 0` and ⊥ as `O 0 0`; the root is the last line.
pub fn export_nnf(circuit: &Circuit) -> String {
    let c = circuit.compacted();
    let size = c.size();
    let mut out = String::new();
    writeln!(
        out,
        "nnf {} {} {}",
        size.node_count,
        size.edge_count,
        c.var_count()
    )
    .unwrap();
    for node in c.nodes() {
        match node {
            Node::True => out.push_str("A 0\n"),
            Node::False => out.push_str("O 0 0\n"),
            Node::Lit(l) => writeln!(out, "L {}", l.to_dimacs()).unwrap(),
            Node::And(ch) => {
                write!(out, "A {}", ch.len()).unwrap();
                for x in ch.iter() {
                    write!(out, " {x}").unwrap();
                }
                out.push('\n');
            }
            Node::Or(ch) => {
                write!(out, "O 0 {}", ch.len()).unwrap();
                for x in ch.iter() {
                    write!(out, " {x}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{tok}`")))
}

pub fn import_nnf(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("nnf") {
        return Err(Error::parse(
            hline,
            "expected header `nnf <nodes> <edges> <vars>`",
        ));
    }
    let node_count: usize = num(tok.next(), hline, "node count")?;
    let edge_count: usize = num(tok.next(), hline, "edge count")?;
    let var_count: usize = num(tok.next(), hline, "variable count")?;
    if tok.next().is_some() {
        return Err(Error::parse(hline, "trailing tokens in header"));
    }

    let mut nodes = Vec::with_capacity(node_count);
    let mut edges = 0usize;
    let mut last_line = hline;
    for (ln, line) in lines {
        if line.is_empty() {
            continue;
        }
        last_line = ln;
        if nodes.len() == node_count {
            return Err(Error::parse(
                ln,
                format!("more than {node_count} node lines"),
            ));
        }
        let mut tok = line.split_whitespace();
        let kind = tok.next().unwrap();
        let mut children =
            |count: usize, tok: &mut std::str::SplitWhitespace| -> Result<Box<[NodeId]>> {
                let mut out = Vec::with_capacity(count);
                for _ in 0..count {
                    let c: u32 = num(tok.next(), ln, "child index")?;
                    if c as usize >= nodes.len() {
                        return Err(Error::parse(
                            ln,
                            format!("child {c} does not precede this node"),
                        ));
                    }
                    out.push(NodeId(c));
                }
                edges += count;
                Ok(out.into_boxed_slice())
            };
        let node = match kind {
            "L" => {
                let lit: i64 = num(tok.next(), ln, "literal")?;
                let lit = Lit::from_dimacs(lit)
                    .filter(|l| (l.var as usize) < var_count)
                    .ok_or_else(|| Error::parse(ln, format!("literal {lit} out of range")))?;
                Node::Lit(lit)
            }
            "A" => {
                let c: usize = num(tok.next(), ln, "child count")?;
                Node::And(children(c, &mut tok)?)
            }
            "O" => {
                let _decision: u64 = num(tok.next(), ln, "decision variable")?;
                let c: usize = num(tok.next(), ln, "child count")?;
                Node::Or(children(c, &mut tok)?)
            }
            other => return Err(Error::parse(ln, format!("unknown node kind `{other}`"))),
        };
        if tok.next().is_some() {
            return Err(Error::parse(ln, "trailing tokens"));
        }
        nodes.push(node);
    }
    if nodes.len() != node_count {
        return Err(Error::parse(
            last_line,
            format!("header promises {node_count} nodes, found {}", nodes.len()),
        ));
    }
    if edges != edge_count {
        return Err(Error::parse(
            hline,
            format!("header promises {edge_count} edges, found {edges}"),
        ));
    }
    if nodes.is_empty() {
        return Err(Error::parse(hline, "circuit has no nodes"));
    }
    let root = NodeId(nodes.len() as u32 - 1);
    Circuit::from_nodes(nodes, root, var_count)
}
