use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{Circuit, Node, NodeId};
use crate::assignment::Assignment;
use crate::error::Result;
use crate::guard::SweepGuard;

/// Variables below every node, with equal sets stored once.
#[derive(Debug, Clone)]
pub struct VarSupport {
    set_of: Vec<u32>,
    sets: Vec<FixedBitSet>,
    sizes: Vec<usize>,
}

impl VarSupport {
    pub fn get(&self, node: NodeId) -> &FixedBitSet {
        &self.sets[self.set_of[node.index()] as usize]
    }

    pub fn len_of(&self, node: NodeId) -> usize {
        self.sizes[self.set_of[node.index()] as usize]
    }

    pub fn vars(&self, node: NodeId) -> Vec<u32> {
        self.get(node).ones().map(|v| v as u32).collect()
    }

    /// Number of distinct variable sets across the circuit.
    pub fn distinct_sets(&self) -> usize {
        self.sets.len()
    }
}

pub fn vars_below(circuit: &Circuit) -> VarSupport {
    let width = circuit.var_count();
    let mut interned: HashMap<FixedBitSet, u32> = HashMap::new();
    let mut sets = Vec::new();
    let mut set_of = Vec::with_capacity(circuit.nodes().len());

    let mut intern = |set: FixedBitSet, sets: &mut Vec<FixedBitSet>| -> u32 {
        if let Some(&id) = interned.get(&set) {
            return id;
        }
        let id = sets.len() as u32;
        sets.push(set.clone());
        interned.insert(set, id);
        id
    };

    for node in circuit.nodes() {
        let id = match node {
            Node::True | Node::False => intern(FixedBitSet::with_capacity(width), &mut sets),
            Node::Lit(l) => {
                let mut s = FixedBitSet::with_capacity(width);
                s.insert(l.var as usize);
                intern(s, &mut sets)
            }
            Node::And(c) | Node::Or(c) => {
                let first = set_of[c[0].index()];
                if c.iter().all(|c| set_of[c.index()] == first) {
                    first
                } else {
                    let mut s = FixedBitSet::with_capacity(width);
                    for c in c.iter() {
                        s.union_with(&sets[set_of[c.index()] as usize]);
                    }
                    intern(s, &mut sets)
                }
            }
        };
        set_of.push(id);
    }
    let sizes = sets.iter().map(|s| s.count_ones(..)).collect();
    VarSupport {
        set_of,
        sets,
        sizes,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AndViolation {
    pub node: NodeId,
    pub left: NodeId,
    pub right: NodeId,
    /// Shared variables, 0-based.
    pub shared: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecomposabilityReport {
    pub and_nodes_checked: usize,
    pub violations: Vec<AndViolation>,
}

impl DecomposabilityReport {
    pub fn is_decomposable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Lists every pair of AND children (by position) whose variable sets meet.
pub fn check_decomposable(circuit: &Circuit) -> DecomposabilityReport {
    let support = vars_below(circuit);
    check_decomposable_with(circuit, &support)
}

pub(crate) fn check_decomposable_with(
    circuit: &Circuit,
    support: &VarSupport,
) -> DecomposabilityReport {
    let mut report = DecomposabilityReport::default();
    let mut seen = FixedBitSet::with_capacity(circuit.var_count());
    for i in circuit.reachable().ones() {
        let Node::And(children) = &circuit.nodes()[i] else {
            continue;
        };
        report.and_nodes_checked += 1;
        seen.clear();
        let mut clash = false;
        for c in children.iter() {
            let s = support.get(*c);
            if !seen.is_disjoint(s) {
                clash = true;
                break;
            }
            seen.union_with(s);
        }
        if !clash {
            continue;
        }
        for (a, left) in children.iter().enumerate() {
            for right in &children[a + 1..] {
                let mut shared = support.get(*left).clone();
                shared.intersect_with(support.get(*right));
                if shared.count_ones(..) > 0 {
                    report.violations.push(AndViolation {
                        node: NodeId(i as u32),
                        left: *left,
                        right: *right,
                        shared: shared.ones().map(|v| v as u32).collect(),
                    });
                }
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrViolation {
    pub node: NodeId,
    pub left: NodeId,
    pub right: NodeId,
    /// An assignment to the OR node's variables satisfying both children.
    #[serde(skip)]
    pub witness: Assignment,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DeterminismReport {
    pub or_nodes_checked: usize,
    pub violations: Vec<OrViolation>,
}

impl DeterminismReport {
    pub fn is_deterministic(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks that no two children of an OR node share a model.
///
/// Each OR node is swept over its own variables; a node with more variables
/// than the guard allows aborts the whole check.
pub fn check_deterministic(circuit: &Circuit, guard: SweepGuard) -> Result<DeterminismReport> {
    let support = vars_below(circuit);
    let live = circuit.reachable();
    let or_nodes: Vec<usize> = live
        .ones()
        .filter(|&i| matches!(circuit.nodes()[i], Node::Or(_)))
        .collect();
    for &i in &or_nodes {
        guard.check(support.len_of(NodeId(i as u32)))?;
    }

    let mut report = DeterminismReport::default();
    let mut val = vec![false; circuit.nodes().len()];
    let mut local_of = vec![u32::MAX; circuit.var_count()];
    for &i in &or_nodes {
        report.or_nodes_checked += 1;
        let Node::Or(children) = &circuit.nodes()[i] else {
            unreachable!()
        };
        let vars = support.vars(NodeId(i as u32));
        for (k, v) in vars.iter().enumerate() {
            local_of[*v as usize] = k as u32;
        }
        let below = sub_dag(circuit, NodeId(i as u32));
        let mut found: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for w in 0..1u64 << vars.len() {
            for &j in &below {
                val[j] = match &circuit.nodes()[j] {
                    Node::True => true,
                    Node::False => false,
                    Node::Lit(l) => l.eval(w >> local_of[l.var as usize] & 1 == 1),
                    Node::And(c) => c.iter().all(|c| val[c.index()]),
                    Node::Or(c) => c.iter().any(|c| val[c.index()]),
                };
            }
            let sat: Vec<usize> = (0..children.len())
                .filter(|&k| val[children[k].index()])
                .collect();
            for (a, &x) in sat.iter().enumerate() {
                for &y in &sat[a + 1..] {
                    found.entry((x, y)).or_insert(w);
                }
            }
        }
        for ((x, y), w) in found {
            let witness = Assignment::from_pairs(
                vars.iter().enumerate().map(|(k, v)| (*v, w >> k & 1 == 1)),
            )?;
            report.violations.push(OrViolation {
                node: NodeId(i as u32),
                left: children[x],
                right: children[y],
                witness,
            });
        }
    }
    Ok(report)
}

/// Nodes strictly below `top`, ascending.
pub(crate) fn sub_dag(circuit: &Circuit, top: NodeId) -> Vec<usize> {
    let mut mark = FixedBitSet::with_capacity(top.index() + 1);
    for c in circuit.node(top).children() {
        mark.insert(c.index());
    }
    for i in (0..top.index()).rev() {
        if mark.contains(i) {
            for c in circuit.nodes()[i].children() {
                mark.insert(c.index());
            }
        }
    }
    mark.ones().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{CircuitBuilder, Lit};

    fn build(f: impl FnOnce(&mut CircuitBuilder) -> NodeId, vars: usize) -> Circuit {
        let mut b = CircuitBuilder::new();
        let root = f(&mut b);
        b.finish(root, vars).unwrap()
    }

    #[test]
    fn vars_of_literal_and_conjunction() {
        let c = build(
            |b| {
                let x = b.lit(Lit::pos(0));
                let y = b.lit(Lit::pos(1));
                b.and(vec![x, y])
            },
            2,
        );
        let s = vars_below(&c);
        assert_eq!(s.vars(NodeId(0)), vec![0]);
        assert_eq!(s.vars(c.root()), vec![0, 1]);
    }

    #[test]
    fn self_overlap_is_flagged() {
        // AND(x1, x1) keeps both child slots even though they share a node.
        let c = build(
            |b| {
                let x = b.lit(Lit::pos(0));
                b.and(vec![x, x])
            },
            1,
        );
        let r = check_decomposable(&c);
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].shared, vec![0]);
        assert_eq!(r.violations[0].node, c.root());
    }

    #[test]
    fn disjoint_conjunction_passes() {
        let c = build(
            |b| {
                let x = b.lit(Lit::pos(0));
                let y = b.lit(Lit::neg(1));
                b.and(vec![x, y])
            },
            2,
        );
        assert!(check_decomposable(&c).is_decomposable());
    }

    #[test]
    fn excluded_middle_is_deterministic() {
        let c = build(
            |b| {
                let x = b.lit(Lit::pos(0));
                let nx = b.lit(Lit::neg(0));
                b.or(vec![x, nx])
            },
            1,
        );
        let r = check_deterministic(&c, SweepGuard::default()).unwrap();
        assert!(r.is_deterministic());
        assert_eq!(r.or_nodes_checked, 1);
    }

    #[test]
    fn duplicate_disjunct_is_flagged() {
        let c = build(
            |b| {
                let x = b.lit(Lit::pos(0));
                b.or(vec![x, x])
            },
            1,
        );
        let r = check_deterministic(&c, SweepGuard::default()).unwrap();
        assert_eq!(r.violations.len(), 1);
        let v = &r.violations[0];
        assert_eq!(v.node, c.root());
        assert_eq!(v.witness.get(0), Some(true));
    }

    #[test]
    fn determinism_guard_refuses() {
        let c = build(
            |b| {
                let lits: Vec<_> = (0..5).map(|v| b.lit(Lit::pos(v))).collect();
                b.or(lits)
            },
            5,
        );
        let err = check_deterministic(&c, SweepGuard::new(4).unwrap()).unwrap_err();
        assert!(matches!(
            err,
            crate::Error::GuardExceeded { bits: 5, limit: 4 }
        ));
    }
}
