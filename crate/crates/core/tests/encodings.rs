use orderdnnf::circuit::{count_models, enumerate_words};
use orderdnnf::encodings::*;
use orderdnnf::oracle::{mod_lin, mod_lintop, sweep, truth_table_equiv};
use orderdnnf::SweepGuard;

#[test]
fn lin_models_are_the_encoded_orders() {
    for n in 1..=6 {
        let c = build_lin_circuit(n).unwrap().circuit;
        let mut orders: Vec<u64> = all_linear_orders(n)
            .map(|o| order_to_assignment(&o).to_word().unwrap())
            .collect();
        orders.sort_unstable();
        assert_eq!(enumerate_words(&c).unwrap(), orders, "n={n}");
        assert_eq!(
            mod_lin(n, SweepGuard::default()).unwrap().words(),
            &orders[..]
        );
    }
}

#[test]
fn lin_one_is_true_over_no_variables() {
    let c = build_lin_circuit(1).unwrap().circuit;
    assert_eq!(c.var_count(), 0);
    assert_eq!(count_models(&c).unwrap(), 1u32.into());
}

#[test]
fn cnf_agrees_with_circuit() {
    for n in 1..=5 {
        let c = build_lin_circuit(n).unwrap().circuit;
        let cnf = encode_lin_cnf(n);
        assert!(truth_table_equiv(&c, &cnf, SweepGuard::default())
            .unwrap()
            .is_equivalent());
    }
    let two = encode_lin_cnf(2);
    assert_eq!(two.clause_count(), 0);
    assert_eq!(sweep(&two, SweepGuard::default()).unwrap().len(), 2);
}

#[test]
fn lintop_models_are_the_topk_image() {
    let built = build_lintop_circuit(4, 2).unwrap();
    assert_eq!(built.pairs.len(), 12);
    let words = enumerate_words(&built.circuit).unwrap();
    assert_eq!(words.len(), 12);
    assert_eq!(mod_lintop(4, 2).unwrap().words(), &words[..]);
}

#[test]
fn gate_tallies() {
    for n in 1..=8 {
        let g = build_lin_circuit(n).unwrap().gates;
        assert_eq!(g.subset_gates, 1 << n);
        assert_eq!(g.choice_gates, n as u64 * (1 << (n - 1)));
    }
    let g = build_lintop_circuit(6, 2).unwrap().gates;
    assert_eq!(g.subset_gates, 1 + 6 + 15);
    // Σ_{s<k} C(n,s)(n−s) = 6 + 6·5
    assert_eq!(g.choice_gates, 36);
}
