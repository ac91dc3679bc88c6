//! NNF circuits stored as hash-consed DAGs.
//!
//! Nodes live in a single table in topological order: every child index is
//! smaller than the index of its parent, so a forward pass over the table is
//! a bottom-up pass over the circuit. Zero-ary conjunctions and disjunctions
//! are accepted by the builder and normalised to [`Node::True`] and
//! [`Node::False`].

use std::fmt;
use std::hash::BuildHasher;

use fixedbitset::FixedBitSet;
use hashbrown::{DefaultHashBuilder, HashTable};
use serde::Serialize;

use crate::assignment::Assignment;
use crate::error::{Error, Result};

mod condition;
mod count;
mod dot;
mod nnf;
mod structure;

pub use condition::condition;
pub use count::{count_models, count_models_verified, enumerate_models, enumerate_words};
pub use dot::export_dot;
pub use nnf::{export_nnf, import_nnf};
pub use structure::{
    check_decomposable, check_deterministic, vars_below, AndViolation, DecomposabilityReport,
    DeterminismReport, OrViolation, VarSupport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A literal over a 0-based variable index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    pub var: u32,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: u32) -> Self {
        Lit {
            var,
            positive: true,
        }
    }

    pub fn neg(var: u32) -> Self {
        Lit {
            var,
            positive: false,
        }
    }

    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }

    /// 1-based signed form used by DIMACS and `.nnf`.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }

    pub fn from_dimacs(lit: i64) -> Option<Self> {
        if lit == 0 || lit.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        let var = (lit.unsigned_abs() - 1) as u32;
        Some(Lit {
            var,
            positive: lit > 0,
        })
    }

    pub fn eval(self, value: bool) -> bool {
        value == self.positive
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    True,
    False,
    Lit(Lit),
    And(Box<[NodeId]>),
    Or(Box<[NodeId]>),
}

impl Node {
    pub fn children(&self) -> &[NodeId] {
        match self {
            Node::And(c) | Node::Or(c) => c,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children().is_empty()
    }

    fn normalised(self) -> Node {
        match self {
            Node::And(c) if c.is_empty() => Node::True,
            Node::Or(c) if c.is_empty() => Node::False,
            other => other,
        }
    }
}

/// Node and edge counts over the nodes reachable from the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SizeReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub true_count: usize,
    pub false_count: usize,
    pub literal_count: usize,
    pub and_count: usize,
    pub or_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    nodes: Vec<Node>,
    root: NodeId,
    var_count: usize,
}

impl Circuit {
    /// Validates a raw node table.
    ///
    /// Children must precede their parents and literals must stay below
    /// `var_count`. Zero-ary AND/OR nodes are rewritten to constants.
    pub fn from_nodes(nodes: Vec<Node>, root: NodeId, var_count: usize) -> Result<Self> {
        if root.index() >= nodes.len() {
            return Err(Error::InvalidCircuit(format!(
                "root {root} out of range for {} node(s)",
                nodes.len()
            )));
        }
        let mut out = Vec::with_capacity(nodes.len());
        for (i, node) in nodes.into_iter().enumerate() {
            match &node {
                Node::Lit(l) if l.var as usize >= var_count => {
                    return Err(Error::InvalidCircuit(format!(
                        "node {i} mentions variable {} but var_count is {var_count}",
                        l.var + 1
                    )));
                }
                Node::And(c) | Node::Or(c) => {
                    if let Some(bad) = c.iter().find(|c| c.index() >= i) {
                        return Err(Error::InvalidCircuit(format!(
                            "node {i} has child {bad} that does not precede it"
                        )));
                    }
                }
                _ => {}
            }
            out.push(node.normalised());
        }
        Ok(Circuit {
            nodes: out,
            root,
            var_count,
        })
    }

    /// The single-node circuit ⊤ over `var_count` variables.
    pub fn constant(value: bool, var_count: usize) -> Self {
        let node = if value { Node::True } else { Node::False };
        Circuit {
            nodes: vec![node],
            root: NodeId(0),
            var_count,
        }
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Marks nodes reachable from the root. Everything else is dead.
    pub fn reachable(&self) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.nodes.len());
        seen.insert(self.root.index());
        for i in (0..=self.root.index()).rev() {
            if seen.contains(i) {
                for c in self.nodes[i].children() {
                    seen.insert(c.index());
                }
            }
        }
        seen
    }

    /// Variables mentioned by reachable literal leaves, ascending.
    pub fn mentioned_vars(&self) -> Vec<u32> {
        let live = self.reachable();
        let mut vars = FixedBitSet::with_capacity(self.var_count);
        for i in live.ones() {
            if let Node::Lit(l) = self.nodes[i] {
                vars.insert(l.var as usize);
            }
        }
        vars.ones().map(|v| v as u32).collect()
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<bool> {
        let live = self.reachable();
        let mut val = vec![false; self.root.index() + 1];
        for i in live.ones() {
            val[i] = match &self.nodes[i] {
                Node::True => true,
                Node::False => false,
                Node::Lit(l) => l.eval(a.get(l.var).ok_or(Error::MissingVariable(l.var))?),
                Node::And(c) => c.iter().all(|c| val[c.index()]),
                Node::Or(c) => c.iter().any(|c| val[c.index()]),
            };
        }
        Ok(val[self.root.index()])
    }

    /// Evaluates under the total assignment packed in `word`.
    ///
    /// Variables at index 64 and above read as 0; callers sweeping a truth
    /// table check `var_count` first.
    pub fn eval_word(&self, word: u64) -> bool {
        let mut buf = Vec::new();
        self.eval_word_with(word, &mut buf)
    }

    pub fn eval_word_with(&self, word: u64, buf: &mut Vec<bool>) -> bool {
        buf.clear();
        buf.reserve(self.root.index() + 1);
        for node in &self.nodes[..=self.root.index()] {
            let v = match node {
                Node::True => true,
                Node::False => false,
                Node::Lit(l) => l.var < 64 && l.eval(word >> l.var & 1 == 1),
                Node::And(c) => c.iter().all(|c| buf[c.index()]),
                Node::Or(c) => c.iter().any(|c| buf[c.index()]),
            };
            buf.push(v);
        }
        buf[self.root.index()]
    }

    pub fn size(&self) -> SizeReport {
        let mut r = SizeReport::default();
        for i in self.reachable().ones() {
            let node = &self.nodes[i];
            r.node_count += 1;
            r.edge_count += node.children().len();
            match node {
                Node::True => r.true_count += 1,
                Node::False => r.false_count += 1,
                Node::Lit(_) => r.literal_count += 1,
                Node::And(_) => r.and_count += 1,
                Node::Or(_) => r.or_count += 1,
            }
        }
        r
    }

    /// Copy holding only the reachable nodes, renumbered in table order.
    pub fn compacted(&self) -> Circuit {
        let live = self.reachable();
        let mut remap = vec![u32::MAX; self.nodes.len()];
        let mut nodes = Vec::with_capacity(live.count_ones(..));
        for i in live.ones() {
            remap[i] = nodes.len() as u32;
            let node = match &self.nodes[i] {
                Node::And(c) => Node::And(c.iter().map(|c| NodeId(remap[c.index()])).collect()),
                Node::Or(c) => Node::Or(c.iter().map(|c| NodeId(remap[c.index()])).collect()),
                leaf => leaf.clone(),
            };
            nodes.push(node);
        }
        Circuit {
            root: NodeId(remap[self.root.index()]),
            nodes,
            var_count: self.var_count,
        }
    }
}

/// Hash-consing node factory.
///
/// Structurally equal nodes, keyed by kind, payload and ordered child list,
/// are created once.
pub struct CircuitBuilder {
    nodes: Vec<Node>,
    table: HashTable<NodeId>,
    hasher: DefaultHashBuilder,
}

impl Default for CircuitBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl CircuitBuilder {
    pub fn new() -> Self {
        CircuitBuilder {
            nodes: Vec::new(),
            table: HashTable::new(),
            hasher: DefaultHashBuilder::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn intern(&mut self, node: Node) -> NodeId {
        let node = node.normalised();
        for c in node.children() {
            assert!(c.index() < self.nodes.len(), "child {c} does not exist yet");
        }
        let hash = self.hasher.hash_one(&node);
        let nodes = &self.nodes;
        if let Some(id) = self.table.find(hash, |id| nodes[id.index()] == node) {
            return *id;
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(node);
        let (nodes, hasher) = (&self.nodes, &self.hasher);
        self.table
            .insert_unique(hash, id, |id| hasher.hash_one(&nodes[id.index()]));
        id
    }

    pub fn constant(&mut self, value: bool) -> NodeId {
        self.intern(if value { Node::True } else { Node::False })
    }

    pub fn lit(&mut self, lit: Lit) -> NodeId {
        self.intern(Node::Lit(lit))
    }

    pub fn and(&mut self, children: Vec<NodeId>) -> NodeId {
        self.intern(Node::And(children.into_boxed_slice()))
    }

    pub fn or(&mut self, children: Vec<NodeId>) -> NodeId {
        self.intern(Node::Or(children.into_boxed_slice()))
    }

    /// Finishes the circuit, dropping nodes the root cannot reach.
    pub fn finish(self, root: NodeId, var_count: usize) -> Result<Circuit> {
        Ok(Circuit::from_nodes(self.nodes, root, var_count)?.compacted())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and_x1_not_x2() -> Circuit {
        let mut b = CircuitBuilder::new();
        let x1 = b.lit(Lit::pos(0));
        let nx2 = b.lit(Lit::neg(1));
        let root = b.and(vec![x1, nx2]);
        b.finish(root, 2).unwrap()
    }

    #[test]
    fn builder_shares_equal_nodes() {
        let mut b = CircuitBuilder::new();
        let x = b.lit(Lit::pos(0));
        let y = b.lit(Lit::pos(0));
        assert_eq!(x, y);
        let a1 = b.and(vec![x]);
        let a2 = b.and(vec![x]);
        assert_eq!(a1, a2);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn empty_gates_are_constants() {
        let mut b = CircuitBuilder::new();
        let t = b.and(vec![]);
        let f = b.or(vec![]);
        assert_eq!(b.node(t), &Node::True);
        assert_eq!(b.node(f), &Node::False);
        assert_eq!(t, b.constant(true));
    }

    #[test]
    fn constant_evaluates_without_scope() {
        let c = Circuit::constant(true, 3);
        assert!(c.evaluate(&Assignment::new()).unwrap());
        assert!(c.evaluate(&Assignment::from_word(3, 0b101)).unwrap());
    }

    #[test]
    fn evaluate_reports_missing_variable() {
        let c = and_x1_not_x2();
        let a = Assignment::from_pairs([(0, true)]).unwrap();
        assert!(matches!(c.evaluate(&a), Err(Error::MissingVariable(1))));
    }

    #[test]
    fn evaluate_matches_word_evaluation() {
        let c = and_x1_not_x2();
        for w in 0..4u64 {
            let a = Assignment::from_word(2, w);
            assert_eq!(c.evaluate(&a).unwrap(), c.eval_word(w));
        }
        assert!(c.eval_word(0b01));
        assert!(!c.eval_word(0b11));
    }

    #[test]
    fn size_of_single_literal() {
        let mut b = CircuitBuilder::new();
        let x = b.lit(Lit::pos(0));
        let c = b.finish(x, 1).unwrap();
        let s = c.size();
        assert_eq!((s.node_count, s.edge_count, s.literal_count), (1, 0, 1));
    }

    #[test]
    fn finish_drops_dead_nodes() {
        let mut b = CircuitBuilder::new();
        let _dead = b.lit(Lit::pos(5));
        let x = b.lit(Lit::pos(0));
        let c = b.finish(x, 6).unwrap();
        assert_eq!(c.nodes().len(), 1);
        assert_eq!(c.root(), NodeId(0));
    }

    #[test]
    fn from_nodes_rejects_forward_edges_and_bad_literals() {
        let bad_edge = vec![Node::And(vec![NodeId(1)].into()), Node::True];
        assert!(Circuit::from_nodes(bad_edge, NodeId(1), 0).is_err());
        let bad_lit = vec![Node::Lit(Lit::pos(2))];
        assert!(Circuit::from_nodes(bad_lit, NodeId(0), 2).is_err());
    }

    #[test]
    fn dimacs_literals() {
        assert_eq!(Lit::pos(0).to_dimacs(), 1);
        assert_eq!(Lit::neg(4).to_dimacs(), -5);
        assert_eq!(Lit::from_dimacs(-5), Some(Lit::neg(4)));
        assert_eq!(Lit::from_dimacs(0), None);
    }
}
