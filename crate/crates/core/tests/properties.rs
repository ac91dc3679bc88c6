use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orderdnnf::circuit::{
    check_decomposable, check_deterministic, condition, count_models, enumerate_words, export_nnf,
    import_nnf,
};
use orderdnnf::encodings::{assignment_to_order, order_to_assignment, LinearOrder, PairVarMap};
use orderdnnf::oracle::{is_linear_order_assignment, sweep, truth_table_equiv, ModelSet};
use orderdnnf::rectangles::{read_cover, write_cover, Partition, Rectangle, RectangleCover};
use orderdnnf::{Assignment, Circuit, CircuitBuilder, Lit, NodeId, SweepGuard};

/// Random decision-DNNF over the variables of `vars`: decomposable ANDs
/// split the scope, ORs branch on a variable, and branches may drop
/// variables so the result is generally not smooth.
fn gen(b: &mut CircuitBuilder, rng: &mut ChaCha8Rng, vars: &[u32], depth: u32) -> NodeId {
    if vars.is_empty() || depth == 0 {
        return match (vars.first(), rng.gen_range(0..4)) {
            (Some(&v), 0) => b.lit(Lit::neg(v)),
            (Some(&v), _) => b.lit(Lit::pos(v)),
            (None, 0) => b.constant(false),
            (None, _) => b.constant(true),
        };
    }
    let mut vars = vars.to_vec();
    vars.shuffle(rng);
    if vars.len() >= 2 && rng.gen_bool(0.4) {
        let cut = rng.gen_range(1..vars.len());
        let left = gen(b, rng, &vars[..cut], depth - 1);
        let right = gen(b, rng, &vars[cut..], depth - 1);
        return b.and(vec![left, right]);
    }
    let x = vars[0];
    let rest = &vars[1..];
    let branch = |b: &mut CircuitBuilder, rng: &mut ChaCha8Rng, lit: Lit| {
        let keep = rng.gen_range(0..=rest.len());
        let sub = gen(b, rng, &rest[..keep], depth - 1);
        let l = b.lit(lit);
        b.and(vec![l, sub])
    };
    let hi = branch(b, rng, Lit::pos(x));
    let lo = branch(b, rng, Lit::neg(x));
    b.or(vec![hi, lo])
}

fn random_circuit(seed: u64, m: usize) -> Circuit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = CircuitBuilder::new();
    let vars: Vec<u32> = (0..m as u32).collect();
    let root = gen(&mut b, &mut rng, &vars, 6);
    b.finish(root, m).unwrap()
}

fn guard() -> SweepGuard {
    SweepGuard::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_circuits_are_decision_dnnf(seed in any::<u64>(), m in 1usize..8) {
        let c = random_circuit(seed, m);
        prop_assert!(check_decomposable(&c).is_decomposable());
        prop_assert!(check_deterministic(&c, guard()).unwrap().is_deterministic());
    }

    #[test]
    fn count_matches_sweep(seed in any::<u64>(), m in 1usize..10) {
        let c = random_circuit(seed, m);
        let models = sweep(&c, guard()).unwrap();
        prop_assert_eq!(count_models(&c).unwrap(), BigUint::from(models.len()));
    }

    #[test]
    fn enumeration_matches_sweep(seed in any::<u64>(), m in 1usize..10) {
        let c = random_circuit(seed, m);
        let models = sweep(&c, guard()).unwrap();
        prop_assert_eq!(enumerate_words(&c).unwrap(), models.words().to_vec());
    }

    #[test]
    fn conditioning_overwrites_bits(seed in any::<u64>(), m in 1usize..9, fix in any::<u64>(), vals in any::<u64>()) {
        let c = random_circuit(seed, m);
        let full = (1u64 << m) - 1;
        let (fix, vals) = (fix & full, vals & full);
        let partial = Assignment::from_pairs(
            (0..m as u32).filter(|v| fix >> v & 1 == 1).map(|v| (v, vals >> v & 1 == 1)),
        ).unwrap();
        let cond = condition(&c, &partial);
        prop_assert!(cond.mentioned_vars().iter().all(|v| fix >> v & 1 == 0));
        for w in 0..1u64 << m {
            let forced = (w & !fix) | (vals & fix);
            prop_assert_eq!(cond.eval_word(w), c.eval_word(forced));
        }
    }

    #[test]
    fn conditioning_composes(seed in any::<u64>(), m in 2usize..9, split in any::<u64>(), vals in any::<u64>()) {
        let c = random_circuit(seed, m);
        let part = |keep: bool| Assignment::from_pairs(
            (0..m as u32).filter(|v| (split >> v & 1 == 1) == keep).map(|v| (v, vals >> v & 1 == 1)),
        ).unwrap();
        let (a, b) = (part(true), part(false));
        let stepwise = condition(&condition(&c, &a), &b);
        let joint = condition(&c, &a.union(&b).unwrap());
        prop_assert!(truth_table_equiv(&stepwise, &joint, guard()).unwrap().is_equivalent());
    }

    #[test]
    fn nnf_round_trip(seed in any::<u64>(), m in 1usize..9) {
        let c = random_circuit(seed, m);
        let text = export_nnf(&c);
        let back = import_nnf(&text).unwrap();
        prop_assert!(truth_table_equiv(&c, &back, guard()).unwrap().is_equivalent());
        prop_assert_eq!(export_nnf(&back), text);
    }

    #[test]
    fn order_codec_round_trip(perm in (1usize..9).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let n = perm.len();
        let order = LinearOrder::new(perm).unwrap();
        let a = order_to_assignment(&order);
        prop_assert!(is_linear_order_assignment(&a, n).unwrap());
        prop_assert_eq!(assignment_to_order(&a, n).unwrap(), order);
    }

    #[test]
    fn model_set_text_round_trip(n in 2usize..6, words in prop::collection::vec(any::<u64>(), 0..40)) {
        let pairs = PairVarMap::unordered(n);
        let m = pairs.len();
        let set = ModelSet::new(m, words.into_iter().map(|w| w & ((1 << m) - 1))).unwrap();
        let text = set.to_text(&pairs).unwrap();
        let (back_pairs, back) = ModelSet::from_text(&text).unwrap();
        prop_assert_eq!(back_pairs, pairs);
        prop_assert_eq!(back, set);
    }

    #[test]
    fn cover_text_round_trip(m in 2usize..10, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rects = (0..rng.gen_range(0..5))
            .map(|_| {
                let p = Partition::new(m, rng.gen_range(0..1u64 << m)).unwrap();
                let r1: Vec<u64> = (0..rng.gen_range(0..6)).map(|_| rng.gen::<u64>() & p.x1()).collect();
                let r2: Vec<u64> = (0..rng.gen_range(0..6)).map(|_| rng.gen::<u64>() & p.x2()).collect();
                Rectangle::new(p, r1, r2).unwrap()
            })
            .collect();
        let cover = RectangleCover { rectangles: rects };
        let (vars, back) = read_cover(&write_cover(&cover, m)).unwrap();
        prop_assert_eq!(vars, m);
        prop_assert_eq!(back, cover);
    }

    #[test]
    fn assignment_word_round_trip(m in 0usize..64, word in any::<u64>()) {
        let word = if m == 64 { word } else { word & ((1u64 << m) - 1) };
        prop_assert_eq!(Assignment::from_word(m, word).to_word().unwrap(), word);
    }
}
