use super::{Circuit, CircuitBuilder, Node, NodeId};
use crate::assignment::Assignment;

/// Instantiates the variables of `partial` and simplifies.
///
/// Constants are propagated through AND/OR nodes and single-child gates
/// collapse onto their child. The result keeps the original `var_count` but
/// mentions no variable from `partial`'s scope.
pub fn condition(circuit: &Circuit, partial: &Assignment) -> Circuit {
    let live = circuit.reachable();
    let mut b = CircuitBuilder::new();
    let t = b.constant(true);
    let f = b.constant(false);
    let mut map: Vec<NodeId> = vec![f; circuit.root().index() + 1];
    for i in live.ones() {
        map[i] = match &circuit.nodes()[i] {
            Node::True => t,
            Node::False => f,
            Node::Lit(l) => match partial.get(l.var) {
                Some(v) => b.constant(l.eval(v)),
                None => b.lit(*l),
            },
            Node::And(c) => {
                let mapped: Vec<NodeId> = c.iter().map(|c| map[c.index()]).collect();
                if mapped.contains(&f) {
                    f
                } else {
                    gate(
                        &mut b,
                        mapped.into_iter().filter(|&c| c != t).collect(),
                        true,
                    )
                }
            }
            Node::Or(c) => {
                let mapped: Vec<NodeId> = c.iter().map(|c| map[c.index()]).collect();
                if mapped.contains(&t) {
                    t
                } else {
                    gate(
                        &mut b,
                        mapped.into_iter().filter(|&c| c != f).collect(),
                        false,
                    )
                }
            }
        };
    }
    b.finish(map[circuit.root().index()], circuit.var_count())
        .expect("conditioning preserves circuit validity")
}

fn gate(b: &mut CircuitBuilder, children: Vec<NodeId>, conjunction: bool) -> NodeId {
    match children.len() {
        1 => children[0],
        _ if conjunction => b.and(children),
        _ => b.or(children),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Lit;

    #[test]
    fn conditioning_true_is_true() {
        let c = Circuit::constant(true, 2);
        let a = Assignment::from_pairs([(0, false)]).unwrap();
        let r = condition(&c, &a);
        assert_eq!(r.node(r.root()), &Node::True);
    }

    #[test]
    fn conditioning_removes_variables() {
        let mut b = CircuitBuilder::new();
        let x = b.lit(Lit::pos(0));
        let y = b.lit(Lit::neg(1));
        let z = b.lit(Lit::pos(2));
        let xy = b.and(vec![x, y]);
        let root = b.or(vec![xy, z]);
        let c = b.finish(root, 3).unwrap();

        let a = Assignment::from_pairs([(0, true)]).unwrap();
        let r = condition(&c, &a);
        assert!(!r.mentioned_vars().contains(&0));
        for w in 0..8u64 {
            let expect = c.eval_word(w | 1);
            assert_eq!(r.eval_word(w), expect, "word {w:03b}");
        }

        let a = Assignment::from_pairs([(0, false), (2, false)]).unwrap();
        let r = condition(&c, &a);
        assert_eq!(r.node(r.root()), &Node::False);
    }
}
