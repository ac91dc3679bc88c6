use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::structure::{check_decomposable_with, vars_below, VarSupport};
use super::{check_deterministic, Circuit, Node, NodeId};
use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::guard::SweepGuard;

fn require_decomposable(circuit: &Circuit, support: &VarSupport) -> Result<()> {
    let report = check_decomposable_with(circuit, support);
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::NotDecomposable {
            count: report.violations.len(),
            first: v.node,
        }),
    }
}

/// Counts models over all `var_count` variables.
///
/// The circuit must be decomposable; determinism is the caller's claim.
/// Children of an OR node that miss some of the node's variables are scaled
/// by `2^missing`, so the circuit need not be smooth.
pub fn count_models(circuit: &Circuit) -> Result<BigUint> {
    let support = vars_below(circuit);
    require_decomposable(circuit, &support)?;

    let live = circuit.reachable();
    let mut counts: Vec<BigUint> = vec![BigUint::zero(); circuit.root().index() + 1];
    for i in live.ones() {
        let id = NodeId(i as u32);
        counts[i] = match circuit.node(id) {
            Node::True | Node::Lit(_) => BigUint::one(),
            Node::False => BigUint::zero(),
            Node::And(c) => c
                .iter()
                .fold(BigUint::one(), |acc, c| acc * &counts[c.index()]),
            Node::Or(c) => {
                let here = support.len_of(id);
                c.iter().fold(BigUint::zero(), |acc, c| {
                    acc + (&counts[c.index()] << (here - support.len_of(*c)))
                })
            }
        };
    }
    let root = circuit.root();
    let free = circuit.var_count() - support.len_of(root);
    Ok(std::mem::take(&mut counts[root.index()]) << free)
}

/// [`count_models`] after an exhaustive determinism check.
pub fn count_models_verified(circuit: &Circuit, guard: SweepGuard) -> Result<BigUint> {
    let report = check_deterministic(circuit, guard)?;
    if let Some(v) = report.violations.first() {
        return Err(Error::NotDeterministic {
            node: v.node,
            left: v.left,
            right: v.right,
        });
    }
    count_models(circuit)
}

/// All models as words (bit `v` is variable `v`), ascending and
/// duplicate-free whether or not the circuit is deterministic.
pub fn enumerate_words(circuit: &Circuit) -> Result<Vec<u64>> {
    if circuit.var_count() > 64 {
        return Err(Error::TooManyVariables(circuit.var_count()));
    }
    let support = vars_below(circuit);
    require_decomposable(circuit, &support)?;

    let live = circuit.reachable();
    let mut models: Vec<Vec<u64>> = vec![Vec::new(); circuit.root().index() + 1];
    for i in live.ones() {
        let id = NodeId(i as u32);
        let mut here = match circuit.node(id) {
            Node::True => vec![0],
            Node::False => vec![],
            Node::Lit(l) => vec![if l.positive { 1u64 << l.var } else { 0 }],
            Node::And(c) => c.iter().fold(vec![0u64], |acc, c| {
                let mut out = Vec::with_capacity(acc.len() * models[c.index()].len());
                for a in &acc {
                    for b in &models[c.index()] {
                        out.push(a | b);
                    }
                }
                out
            }),
            Node::Or(c) => {
                let mut out = Vec::new();
                for c in c.iter() {
                    let mut missing = support.get(id).clone();
                    missing.difference_with(support.get(*c));
                    let missing: Vec<usize> = missing.ones().collect();
                    expand(&models[c.index()], &missing, &mut out);
                }
                out
            }
        };
        here.sort_unstable();
        here.dedup();
        models[i] = here;
    }
    let root = circuit.root();
    let mut free = vec![true; circuit.var_count()];
    for v in support.get(root).ones() {
        free[v] = false;
    }
    let free: Vec<usize> = (0..circuit.var_count()).filter(|&v| free[v]).collect();
    let mut out = Vec::new();
    expand(&models[root.index()], &free, &mut out);
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn expand(base: &[u64], free: &[usize], out: &mut Vec<u64>) {
    for &m in base {
        for bits in 0..1u64 << free.len() {
            let mut w = m;
            for (k, v) in free.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    w |= 1 << v;
                }
            }
            out.push(w);
        }
    }
}

/// Iterator over the models of a decomposable circuit, in ascending word
/// order.
pub fn enumerate_models(circuit: &Circuit) -> Result<impl Iterator<Item = Assignment>> {
    let var_count = circuit.var_count();
    let words = enumerate_words(circuit)?;
    Ok(words
        .into_iter()
        .map(move |w| Assignment::from_word(var_count, w)))
}
