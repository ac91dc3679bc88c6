use std::fmt::Write;

use super::{Circuit, Lit, Node};

/// Graphviz rendering of the reachable part of `circuit`.
///
/// `var_label` names a variable (0-based); literal nodes are drawn as the
/// label or its negation. Node numbering follows the compacted node table.
pub fn export_dot(circuit: &Circuit, var_label: impl Fn(u32) -> String) -> String {
    let c = circuit.compacted();
    let mut out = String::from("digraph nnf {\n  rankdir=TB;\n");
    for (i, node) in c.nodes().iter().enumerate() {
        let (label, shape) = match node {
            Node::True => ("⊤".to_string(), "box"),
            Node::False => ("⊥".to_string(), "box"),
            Node::Lit(Lit {
                var,
                positive: true,
            }) => (var_label(*var), "box"),
            Node::Lit(Lit {
                var,
                positive: false,
            }) => (format!("¬{}", var_label(*var)), "box"),
            Node::And(_) => ("∧".to_string(), "circle"),
            Node::Or(_) => ("∨".to_string(), "circle"),
        };
        writeln!(out, "  n{i} [label=\"{label}\", shape={shape}];").unwrap();
    }
    for (i, node) in c.nodes().iter().enumerate() {
        for ch in node.children() {
            writeln!(out, "  n{i} -> n{ch};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::CircuitBuilder;

    #[test]
    fn labels_and_edges() {
        let mut b = CircuitBuilder::new();
        let x = b.lit(Lit::pos(0));
        let y = b.lit(Lit::neg(1));
        let root = b.and(vec![x, y]);
        let c = b.finish(root, 2).unwrap();
        let dot = export_dot(&c, |v| format!("x{}", v + 1));
        assert!(dot.contains("n0 [label=\"x1\""));
        assert!(dot.contains("n1 [label=\"¬x2\""));
        assert!(dot.contains("n2 [label=\"∧\""));
        assert!(dot.contains("n2 -> n0;"));
        assert!(dot.contains("n2 -> n1;"));
    }
}
