use std::collections::BTreeSet;

use serde::Serialize;

use super::partition::Partition;
use super::rectangle::{validate_cover, CoverReport, Rectangle, RectangleCover};
use crate::circuit::{check_decomposable, Circuit, CircuitBuilder, Lit, Node, NodeId};
use crate::error::{Error, Result};
use crate::guard::SweepGuard;
use crate::oracle::sweep;

#[derive(Debug, Clone)]
pub struct ExtractedCover {
    pub cover: RectangleCover,
    pub report: CoverReport,
    /// Nodes of the input circuit.
    pub node_count: usize,
    /// Nodes after binarising ANDs and smoothing.
    pub normalized_node_count: usize,
    pub within_node_count: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtractionSummary {
    pub rectangles: usize,
    pub node_count: usize,
    pub normalized_node_count: usize,
    pub within_node_count: bool,
    pub valid: bool,
    pub all_balanced: bool,
}

impl ExtractedCover {
    pub fn summary(&self) -> ExtractionSummary {
        ExtractionSummary {
            rectangles: self.cover.len(),
            node_count: self.node_count,
            normalized_node_count: self.normalized_node_count,
            within_node_count: self.within_node_count,
            valid: self.report.valid,
            all_balanced: self.report.all_balanced(),
        }
    }
}

/// Builder that tracks the variable mask below every node it creates.
struct Normalizer {
    b: CircuitBuilder,
    vars: Vec<u64>,
}

impl Normalizer {
    fn mk(&mut self, node: Node) -> NodeId {
        let mask = node.children().iter().fold(
            match &node {
                Node::Lit(l) => 1u64 << l.var,
                _ => 0,
            },
            |acc, c| acc | self.vars[c.index()],
        );
        let id = self.b.intern(node);
        if id.index() == self.vars.len() {
            self.vars.push(mask);
        }
        id
    }

    fn and2(&mut self, children: Vec<NodeId>) -> NodeId {
        let mut it = children.into_iter();
        let Some(first) = it.next() else {
            return self.mk(Node::True);
        };
        it.fold(first, |acc, c| self.mk(Node::And(vec![acc, c].into())))
    }

    /// `node ∧ ⋀_{x ∈ missing} (x ∨ ¬x)`.
    fn pad(&mut self, node: NodeId, missing: u64) -> NodeId {
        let mut parts = vec![node];
        for v in (0..64).filter(|v| missing >> v & 1 == 1) {
            let p = self.mk(Node::Lit(Lit::pos(v)));
            let n = self.mk(Node::Lit(Lit::neg(v)));
            parts.push(self.mk(Node::Or(vec![p, n].into())));
        }
        self.and2(parts)
    }
}

/// Rewrites a decomposable circuit so that every AND has two children,
/// every OR child mentions exactly the OR's variables and the root mentions
/// all variables. The function is unchanged.
fn normalize(circuit: &Circuit) -> Result<Circuit> {
    let m = circuit.var_count();
    let mut norm = Normalizer {
        b: CircuitBuilder::new(),
        vars: Vec::new(),
    };
    let mut map = vec![NodeId(0); circuit.nodes().len()];
    let f = norm.mk(Node::False);
    for (i, node) in circuit
        .nodes()
        .iter()
        .enumerate()
        .take(circuit.root().index() + 1)
    {
        map[i] = match node {
            Node::True | Node::False | Node::Lit(_) => norm.mk(node.clone()),
            Node::And(c) => {
                let kids: Vec<NodeId> = c.iter().map(|c| map[c.index()]).collect();
                if kids.contains(&f) {
                    f
                } else {
                    let kids: Vec<NodeId> = kids
                        .into_iter()
                        .filter(|k| *norm.b.node(*k) != Node::True)
                        .collect();
                    norm.and2(kids)
                }
            }
            Node::Or(c) => {
                let kids: Vec<NodeId> = c
                    .iter()
                    .map(|c| map[c.index()])
                    .filter(|&k| k != f)
                    .collect();
                let all = kids.iter().fold(0, |acc, k| acc | norm.vars[k.index()]);
                let kids: Vec<NodeId> = kids
                    .into_iter()
                    .map(|k| norm.pad(k, all & !norm.vars[k.index()]))
                    .collect();
                match kids.len() {
                    0 => f,
                    1 => kids[0],
                    _ => norm.mk(Node::Or(kids.into())),
                }
            }
        };
    }
    let mut root = map[circuit.root().index()];
    if root != f {
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        root = norm.pad(root, full & !norm.vars[root.index()]);
    }
    norm.b.finish(root, m)
}

fn var_masks(c: &Circuit) -> Vec<u64> {
    let mut vars = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let own = match node {
            Node::Lit(l) => 1u64 << l.var,
            _ => 0,
        };
        vars.push(
            node.children()
                .iter()
                .fold(own, |acc, c| acc | vars[c.index()]),
        );
    }
    vars
}

/// Nodes from which `v` is reachable, `v` included.
fn ancestors(c: &Circuit, v: usize) -> Vec<bool> {
    let mut anc = vec![false; c.nodes().len()];
    anc[v] = true;
    for u in v + 1..c.nodes().len() {
        anc[u] = c.nodes()[u].children().iter().any(|k| anc[k.index()]);
    }
    anc
}

/// Evaluates the circuit with `v` replaced by ⊤ and every OR above `v`
/// restricted to the children that lead to `v`: the models whose
/// certificates pass through `v`, outside the variables of `v`.
fn eval_through(c: &Circuit, v: usize, anc: &[bool], word: u64, buf: &mut Vec<bool>) -> bool {
    buf.clear();
    for (u, node) in c.nodes().iter().enumerate() {
        let val = if u == v {
            true
        } else {
            match node {
                Node::True => true,
                Node::False => false,
                Node::Lit(l) => l.eval(word >> l.var & 1 == 1),
                Node::And(k) => k.iter().all(|k| buf[k.index()]),
                Node::Or(k) if anc[u] => k.iter().any(|k| anc[k.index()] && buf[k.index()]),
                Node::Or(k) => k.iter().any(|k| buf[k.index()]),
            }
        };
        buf.push(val);
    }
    buf[c.root().index()]
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// A balanced rectangle cover of `Mod(circuit)` read off a decomposable
/// circuit, validated against an exhaustive sweep.
///
/// The circuit is binarised and smoothed first. Walking down from the root,
/// into the larger child of each AND and every child of each OR, the walk
/// stops at the first node mentioning at most two thirds of the variables.
/// Each stop node `v` contributes `Mod(C_v) × {models through v}`.
pub fn extract_rectangle_cover(circuit: &Circuit, guard: SweepGuard) -> Result<ExtractedCover> {
    let m = circuit.var_count();
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "a balanced partition needs at least 2 variables, circuit has {m}"
        )));
    }
    guard.check(m)?;
    let dec = check_decomposable(circuit);
    if let Some(first) = dec.violations.first() {
        return Err(Error::NotDecomposable {
            count: dec.violations.len(),
            first: first.node,
        });
    }
    let target = sweep(circuit, guard)?;
    let node_count = circuit.size().node_count;
    let norm = normalize(circuit)?;
    let vars = var_masks(&norm);

    let mut stops = BTreeSet::new();
    let root = norm.root().index();
    if norm.nodes()[root] != Node::False {
        let mut seen = vec![false; norm.nodes().len()];
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            if std::mem::replace(&mut seen[u], true) {
                continue;
            }
            if 3 * vars[u].count_ones() as usize <= 2 * m {
                stops.insert(u);
                continue;
            }
            match &norm.nodes()[u] {
                Node::And(k) => {
                    let best = k
                        .iter()
                        .copied()
                        .rev()
                        .max_by_key(|k| vars[k.index()].count_ones())
                        .expect("binary AND");
                    stack.push(best.index());
                }
                Node::Or(k) => stack.extend(k.iter().map(|k| k.index())),
                _ => unreachable!("leaves mention at most one variable"),
            }
        }
    }

    let full = (1u64 << m) - 1;
    let mut rects = BTreeSet::new();
    let mut buf = Vec::new();
    for &v in &stops {
        let x1 = vars[v];
        let r1: Vec<u64> = submasks(x1)
            .filter(|&w| {
                norm.eval_word_with(w, &mut buf);
                buf[v]
            })
            .collect();
        let anc = ancestors(&norm, v);
        let r2: Vec<u64> = submasks(full & !x1)
            .filter(|&w| eval_through(&norm, v, &anc, w, &mut buf))
            .collect();
        if r1.is_empty() || r2.is_empty() {
            continue;
        }
        rects.insert(Rectangle::new(Partition::new(m, x1)?, r1, r2)?);
    }
    let cover = RectangleCover {
        rectangles: rects.into_iter().collect(),
    };
    let report = validate_cover(&cover, &target)?;
    if !report.valid {
        let (word, kind) = match (report.missing.first(), report.extra.first()) {
            (Some(&w), _) => (w, "model not covered"),
            (None, Some(&w)) => (w, "non-model covered"),
            (None, None) => unreachable!(),
        };
        return Err(Error::CoverValidation(format!("{kind}: {word:#x}")));
    }
    if let Some(k) = report.balanced.iter().position(|&b| !b) {
        return Err(Error::CoverValidation(format!(
            "rectangle {k} is not balanced"
        )));
    }
    Ok(ExtractedCover {
        within_node_count: cover.len() <= node_count,
        cover,
        report,
        node_count,
        normalized_node_count: norm.size().node_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::build_lin_circuit;
    use crate::oracle::truth_table_equiv;

    #[test]
    fn submasks_cover_every_subset() {
        let all: Vec<u64> = submasks(0b1010).collect();
        assert_eq!(all, vec![0, 0b10, 0b1000, 0b1010]);
        assert_eq!(submasks(0).collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn normalisation_keeps_the_function() {
        let lin = build_lin_circuit(4).unwrap().circuit;
        let norm = normalize(&lin).unwrap();
        assert!(truth_table_equiv(&lin, &norm, SweepGuard::default())
            .unwrap()
            .is_equivalent());
        assert!(check_decomposable(&norm).is_decomposable());
        let vars = var_masks(&norm);
        for (i, node) in norm.nodes().iter().enumerate() {
            match node {
                Node::And(k) => assert_eq!(k.len(), 2),
                Node::Or(k) => assert!(k.iter().all(|k| vars[k.index()] == vars[i])),
                _ => {}
            }
        }
        assert_eq!(vars[norm.root().index()], (1 << 6) - 1);
    }

    #[test]
    fn lin3_cover() {
        let lin = build_lin_circuit(3).unwrap().circuit;
        let out = extract_rectangle_cover(&lin, SweepGuard::default()).unwrap();
        assert!(out.report.valid && out.report.all_balanced());
        assert!(!out.cover.is_empty());
    }

    #[test]
    fn unsatisfiable_circuit_has_empty_cover() {
        let c = Circuit::constant(false, 3);
        let out = extract_rectangle_cover(&c, SweepGuard::default()).unwrap();
        assert!(out.cover.is_empty() && out.report.valid);
    }

    #[test]
    fn tautology_is_padded() {
        let c = Circuit::constant(true, 3);
        let out = extract_rectangle_cover(&c, SweepGuard::default()).unwrap();
        assert!(out.report.valid);
        assert_eq!(
            out.cover
                .rectangles
                .iter()
                .map(Rectangle::size)
                .sum::<usize>(),
            8
        );
    }
}
