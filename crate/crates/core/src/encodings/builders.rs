use std::collections::HashMap;

use itertools::Itertools;
use serde::Serialize;

use super::pairs::{PairMode, PairVarMap};
use crate::circuit::{check_decomposable, Circuit, CircuitBuilder, NodeId};
use crate::error::{Error, Result};

/// Gates introduced by a construction, counted before hash-consing merges
/// structurally equal ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct GateTally {
    /// One `C_S` per subset `S`.
    pub subset_gates: u64,
    /// One `C_{i,S}` per subset `S` and candidate `i ∉ S`.
    pub choice_gates: u64,
}

/// A built circuit together with its variable map.
#[derive(Debug, Clone)]
pub struct OrderCircuit {
    pub circuit: Circuit,
    pub pairs: PairVarMap,
    pub gates: GateTally,
}

/// DNNF for `lin_n` over the unordered pair variables.
///
/// `C_S` says "the candidates in `S` are the top `|S|` in some order and the
/// rest is linearly ordered". `C_S` is the disjunction over the next
/// candidate `i ∉ S` of `C_{i,S}`, the conjunction of `i ≺ j` for the other
/// `j ∉ S` with `C_{S ∪ {i}}`. `C_{[n]} = ⊤` and the root is `C_∅`.
pub fn build_lin_circuit(n: usize) -> Result<OrderCircuit> {
    if n == 0 {
        return Err(Error::InvalidArgument("lin_n needs n ≥ 1".into()));
    }
    if n > 24 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} needs 2^{n} subset gates"
        )));
    }
    let pairs = PairVarMap::unordered(n);
    let full = (1u32 << n) - 1;
    let mut b = CircuitBuilder::new();
    let mut gate: Vec<NodeId> = vec![NodeId(u32::MAX); 1 << n];
    let mut gates = GateTally::default();

    // Every proper superset of S is numerically larger than S.
    gate[full as usize] = b.constant(true);
    gates.subset_gates += 1;
    for s in (0..full).rev() {
        let outside: Vec<usize> = (1..=n).filter(|c| s >> (c - 1) & 1 == 0).collect();
        let mut choices = Vec::with_capacity(outside.len());
        for &i in &outside {
            let mut conj: Vec<NodeId> = outside
                .iter()
                .filter(|&&j| j != i)
                .map(|&j| b.lit(pairs.literal(i, j)))
                .collect();
            conj.push(gate[(s | 1 << (i - 1)) as usize]);
            choices.push(b.and(conj));
            gates.choice_gates += 1;
        }
        gate[s as usize] = b.or(choices);
        gates.subset_gates += 1;
    }
    finish(b, gate[0], pairs, gates)
}

/// DNNF for `lintop_{n,k}` over the ordered pair variables.
///
/// Like [`build_lin_circuit`] but stops at `|S| = k`: there `C_S` forces
/// `¬x_{i,j}` for every ordered pair outside `S`. Choosing `i` next sets
/// `x_{i,j}` and `¬x_{j,i}` for every other `j ∉ S`.
pub fn build_lintop_circuit(n: usize, k: usize) -> Result<OrderCircuit> {
    if k == 0 || n <= k {
        return Err(Error::InvalidArgument(format!(
            "lintop needs n > k ≥ 1, got n={n}, k={k}"
        )));
    }
    if n > 64 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} exceeds 64 candidates"
        )));
    }
    let pairs = PairVarMap::new(n, PairMode::Ordered);
    let mut b = CircuitBuilder::new();
    let mut gate: HashMap<u64, NodeId> = HashMap::new();
    let mut gates = GateTally::default();
    let mask = |set: &[usize]| set.iter().fold(0u64, |m, c| m | 1 << (c - 1));

    for size in (0..=k).rev() {
        for set in (1..=n).combinations(size) {
            let s = mask(&set);
            let outside: Vec<usize> = (1..=n).filter(|c| s >> (c - 1) & 1 == 0).collect();
            let node = if size == k {
                let lits = outside
                    .iter()
                    .flat_map(|&i| {
                        outside
                            .iter()
                            .filter(move |&&j| j != i)
                            .map(move |&j| (i, j))
                    })
                    .map(|(i, j)| b.lit(pairs.literal(i, j).negate()))
                    .collect();
                b.and(lits)
            } else {
                let mut choices = Vec::with_capacity(outside.len());
                for &i in &outside {
                    let mut conj = Vec::with_capacity(2 * outside.len() - 1);
                    for &j in outside.iter().filter(|&&j| j != i) {
                        conj.push(b.lit(pairs.literal(i, j)));
                        conj.push(b.lit(pairs.literal(j, i).negate()));
                    }
                    conj.push(gate[&(s | 1 << (i - 1))]);
                    choices.push(b.and(conj));
                    gates.choice_gates += 1;
                }
                b.or(choices)
            };
            gate.insert(s, node);
            gates.subset_gates += 1;
        }
    }
    finish(b, gate[&0], pairs, gates)
}

fn finish(
    b: CircuitBuilder,
    root: NodeId,
    pairs: PairVarMap,
    gates: GateTally,
) -> Result<OrderCircuit> {
    let circuit = b.finish(root, pairs.len())?;
    let report = check_decomposable(&circuit);
    if let Some(v) = report.violations.first() {
        return Err(Error::NotDecomposable {
            count: report.violations.len(),
            first: v.node,
        });
    }
    Ok(OrderCircuit {
        circuit,
        pairs,
        gates,
    })
}
