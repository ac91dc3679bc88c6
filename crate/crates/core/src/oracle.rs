//! Brute-force ground truth.
//!
//! Everything here works by sweeping truth tables or enumerating orders. The
//! pair numbering is recomputed locally instead of going through
//! [`PairVarMap`], and nothing calls the circuit counter, so the checks stay
//! independent of the code they check.

use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::assignment::Assignment;
use crate::circuit::Circuit;
use crate::encodings::{all_topk_orders, topk_to_assignment, CnfFormula, PairMode, PairVarMap};
use crate::error::{Error, Result};
use crate::guard::SweepGuard;

/// Something with a truth table over `0..var_count` that can be read one
/// packed assignment at a time.
pub trait TruthTable: Sync {
    fn var_count(&self) -> usize;
    fn eval_word(&self, word: u64) -> bool;
}

impl TruthTable for Circuit {
    fn var_count(&self) -> usize {
        Circuit::var_count(self)
    }

    fn eval_word(&self, word: u64) -> bool {
        Circuit::eval_word(self, word)
    }
}

impl TruthTable for CnfFormula {
    fn var_count(&self) -> usize {
        CnfFormula::var_count(self)
    }

    fn eval_word(&self, word: u64) -> bool {
        CnfFormula::eval_word(self, word)
    }
}

impl TruthTable for ModelSet {
    fn var_count(&self) -> usize {
        self.var_count
    }

    fn eval_word(&self, word: u64) -> bool {
        self.contains(word)
    }
}

/// A set of total assignments stored as sorted, distinct words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ModelSet {
    var_count: usize,
    words: Vec<u64>,
}

impl ModelSet {
    pub fn new(var_count: usize, words: impl IntoIterator<Item = u64>) -> Result<Self> {
        if var_count > 64 {
            return Err(Error::TooManyVariables(var_count));
        }
        let mut words: Vec<u64> = words.into_iter().collect();
        if let Some(bad) = words
            .iter()
            .find(|&&w| var_count < 64 && w >> var_count != 0)
        {
            return Err(Error::InvalidArgument(format!(
                "word {bad:#x} does not fit in {var_count} variables"
            )));
        }
        words.sort_unstable();
        words.dedup();
        Ok(ModelSet { var_count, words })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: u64) -> bool {
        self.words.binary_search(&word).is_ok()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn assignments(&self) -> impl Iterator<Item = Assignment> + '_ {
        self.words
            .iter()
            .map(|&w| Assignment::from_word(self.var_count, w))
    }

    /// Words in `self` but not in `other`.
    pub fn difference(&self, other: &ModelSet) -> Vec<u64> {
        self.words
            .iter()
            .copied()
            .filter(|&w| !other.contains(w))
            .collect()
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words.iter().all(|&w| other.contains(w))
    }

    pub fn is_disjoint(&self, other: &ModelSet) -> bool {
        self.words.iter().all(|&w| !other.contains(w))
    }

    /// Text form: a header naming `n` and the pair map, then one
    /// zero-padded hexadecimal word per line in ascending order.
    pub fn to_text(&self, pairs: &PairVarMap) -> Result<String> {
        if pairs.len() != self.var_count {
            return Err(Error::ScopeMismatch(format!(
                "pair map has {} variables, model set {}",
                pairs.len(),
                self.var_count
            )));
        }
        let width = self.var_count.div_ceil(4).max(1);
        let mut out = String::new();
        writeln!(
            out,
            "modelset n {} mode {} vars {} models {}",
            pairs.n(),
            pairs.mode(),
            self.var_count,
            self.words.len()
        )
        .unwrap();
        for (v, (i, j)) in pairs.pairs().iter().enumerate() {
            writeln!(out, "pair {} {} {}", v + 1, i, j).unwrap();
        }
        for w in &self.words {
            writeln!(out, "{w:0width$x}").unwrap();
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<(PairVarMap, ModelSet)> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let tok: Vec<&str> = header.split_whitespace().collect();
        let bad_header = || {
            Error::parse(
                ln,
                "expected `modelset n <n> mode <mode> vars <m> models <c>`",
            )
        };
        if tok.len() != 9
            || tok[0] != "modelset"
            || tok[1] != "n"
            || tok[3] != "mode"
            || tok[5] != "vars"
            || tok[7] != "models"
        {
            return Err(bad_header());
        }
        let n: usize = tok[2].parse().map_err(|_| bad_header())?;
        let mode = match tok[4] {
            "unordered" => PairMode::Unordered,
            "ordered" => PairMode::Ordered,
            _ => return Err(bad_header()),
        };
        let vars: usize = tok[6].parse().map_err(|_| bad_header())?;
        let count: usize = tok[8].parse().map_err(|_| bad_header())?;
        let pairs = PairVarMap::new(n, mode);
        if pairs.len() != vars {
            return Err(Error::parse(
                ln,
                format!(
                    "n = {n} in {mode} mode has {} variables, not {vars}",
                    pairs.len()
                ),
            ));
        }
        let mut words = Vec::with_capacity(count);
        let mut seen_pairs = 0;
        for (ln, line) in lines.filter(|(_, l)| !l.is_empty()) {
            if let Some(rest) = line.strip_prefix("pair ") {
                let t: Vec<usize> = rest
                    .split_whitespace()
                    .map(|x| x.parse().map_err(|_| Error::parse(ln, "bad pair line")))
                    .collect::<Result<_>>()?;
                if t.len() != 3 || !words.is_empty() || pairs.index(t[1], t[2]) != Some(t[0] as u32)
                {
                    return Err(Error::parse(ln, "pair line disagrees with the pair map"));
                }
                seen_pairs += 1;
                continue;
            }
            let w = u64::from_str_radix(line, 16)
                .map_err(|_| Error::parse(ln, format!("bad word `{line}`")))?;
            if words.last().is_some_and(|&last| last >= w) {
                return Err(Error::parse(ln, "words must be strictly ascending"));
            }
            words.push(w);
        }
        if seen_pairs != vars {
            return Err(Error::parse(
                ln,
                format!("expected {vars} pair lines, found {seen_pairs}"),
            ));
        }
        if words.len() != count {
            return Err(Error::parse(
                ln,
                format!("header promises {count} models, found {}", words.len()),
            ));
        }
        let set = ModelSet::new(vars, words)?;
        Ok((pairs, set))
    }
}

/// Every satisfying word of `f`, by exhaustive sweep.
pub fn sweep(f: &dyn TruthTable, guard: SweepGuard) -> Result<ModelSet> {
    let m = f.var_count();
    guard.check(m)?;
    let words: Vec<u64> = (0..1u64 << m)
        .into_par_iter()
        .filter(|&w| f.eval_word(w))
        .collect();
    Ok(ModelSet {
        var_count: m,
        words,
    })
}

/// 0-based bit of `x_{i,j}`, `i < j`, among the unordered pairs of `1..=n`.
fn pair_bit(n: usize, i: usize, j: usize) -> usize {
    (i - 1) * (2 * n - i) / 2 + (j - i - 1)
}

/// Does the word encode a transitive relation? Completeness and
/// irreflexivity hold by construction of the encoding.
pub fn is_linear_order_word(word: u64, n: usize) -> bool {
    let prec = |i: usize, j: usize| {
        if i < j {
            word >> pair_bit(n, i, j) & 1 == 1
        } else {
            word >> pair_bit(n, j, i) & 1 == 0
        }
    };
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            if !prec(i, j) {
                continue;
            }
            for k in (1..=n).filter(|&k| k != i && k != j) {
                if prec(j, k) && !prec(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_linear_order_assignment(a: &Assignment, n: usize) -> Result<bool> {
    let m = n * n.saturating_sub(1) / 2;
    if m > 64 {
        return Err(Error::TooManyVariables(m));
    }
    let mut word = 0u64;
    for v in 0..m as u32 {
        if a.get(v).ok_or(Error::MissingVariable(v))? {
            word |= 1 << v;
        }
    }
    Ok(is_linear_order_word(word, n))
}

/// `Mod(lin_n)` by sweeping all `2^{n(n-1)/2}` assignments.
pub fn mod_lin(n: usize, guard: SweepGuard) -> Result<ModelSet> {
    let m = n * n.saturating_sub(1) / 2;
    guard.check(m)?;
    let words: Vec<u64> = (0..1u64 << m)
        .into_par_iter()
        .filter(|&w| is_linear_order_word(w, n))
        .collect();
    Ok(ModelSet {
        var_count: m,
        words,
    })
}

/// `Mod(lintop_{n,k})` as the image of every top-k order.
pub fn mod_lintop(n: usize, k: usize) -> Result<ModelSet> {
    let m = n * n.saturating_sub(1);
    if m > 64 {
        return Err(Error::TooManyVariables(m));
    }
    let words = all_topk_orders(n, k)
        .map(|t| topk_to_assignment(&t).to_word())
        .collect::<Result<Vec<u64>>>()?;
    ModelSet::new(m, words)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub word: u64,
    pub left: bool,
    pub right: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub var_count: usize,
    pub disagreements: u64,
    /// At most [`EquivalenceReport::MAX_COUNTEREXAMPLES`], ascending.
    pub counterexamples: Vec<Counterexample>,
}

impl EquivalenceReport {
    pub const MAX_COUNTEREXAMPLES: usize = 10;

    pub fn is_equivalent(&self) -> bool {
        self.disagreements == 0
    }
}

/// Compares two truth tables over their shared scope by full sweep.
pub fn truth_table_equiv(
    left: &dyn TruthTable,
    right: &dyn TruthTable,
    guard: SweepGuard,
) -> Result<EquivalenceReport> {
    let m = left.var_count();
    if right.var_count() != m {
        return Err(Error::ScopeMismatch(format!(
            "{m} variables vs {} variables",
            right.var_count()
        )));
    }
    guard.check(m)?;
    let differ: Vec<u64> = (0..1u64 << m)
        .into_par_iter()
        .filter(|&w| left.eval_word(w) != right.eval_word(w))
        .collect();
    let counterexamples = differ
        .iter()
        .take(EquivalenceReport::MAX_COUNTEREXAMPLES)
        .map(|&w| Counterexample {
            word: w,
            left: left.eval_word(w),
            right: right.eval_word(w),
        })
        .collect();
    Ok(EquivalenceReport {
        var_count: m,
        disagreements: differ.len() as u64,
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitivity_examples() {
        let a = Assignment::from_word(3, 0b111);
        assert!(is_linear_order_assignment(&a, 3).unwrap());
        // x12 = 1, x23 = 1, x13 = 0
        let a = Assignment::from_word(3, 0b101);
        assert!(!is_linear_order_assignment(&a, 3).unwrap());
        let partial = Assignment::from_pairs([(0, true)]).unwrap();
        assert!(is_linear_order_assignment(&partial, 3).is_err());
    }

    #[test]
    fn n4_sweep_counts_24() {
        assert_eq!(
            (0..64u64).filter(|&w| is_linear_order_word(w, 4)).count(),
            24
        );
    }

    #[test]
    fn mod_lin_sizes() {
        let g = SweepGuard::default();
        assert_eq!(mod_lin(1, g).unwrap().len(), 1);
        assert_eq!(mod_lin(2, g).unwrap().len(), 2);
        assert_eq!(mod_lin(5, g).unwrap().len(), 120);
        assert_eq!(mod_lin(6, g).unwrap().len(), 720);
    }

    #[test]
    fn mod_lin_respects_guard() {
        let g = SweepGuard::new(5).unwrap();
        assert!(mod_lin(3, g).is_ok());
        assert!(matches!(
            mod_lin(4, g),
            Err(Error::GuardExceeded { bits: 6, limit: 5 })
        ));
    }

    #[test]
    fn lintop_image_sizes() {
        assert_eq!(mod_lintop(3, 1).unwrap().len(), 3);
        assert_eq!(mod_lintop(4, 2).unwrap().len(), 12);
    }

    #[test]
    fn equivalence_against_constant() {
        let lin3 = mod_lin(3, SweepGuard::default()).unwrap();
        let top = Circuit::constant(true, 3);
        let r = truth_table_equiv(&lin3, &top, SweepGuard::default()).unwrap();
        assert_eq!(r.disagreements, 2);
        let words: Vec<u64> = r.counterexamples.iter().map(|c| c.word).collect();
        assert_eq!(words, vec![0b010, 0b101]);
        assert!(truth_table_equiv(&lin3, &lin3, SweepGuard::default())
            .unwrap()
            .is_equivalent());
        let other = Circuit::constant(true, 4);
        assert!(matches!(
            truth_table_equiv(&lin3, &other, SweepGuard::default()),
            Err(Error::ScopeMismatch(_))
        ));
    }

    #[test]
    fn model_set_text_round_trip() {
        let pairs = PairVarMap::unordered(3);
        let set = mod_lin(3, SweepGuard::default()).unwrap();
        let text = set.to_text(&pairs).unwrap();
        assert!(text.starts_with("modelset n 3 mode unordered vars 3 models 6\npair 1 1 2\n"));
        let (p2, s2) = ModelSet::from_text(&text).unwrap();
        assert_eq!(p2, pairs);
        assert_eq!(s2, set);
    }

    #[test]
    fn model_set_text_errors() {
        assert!(matches!(
            ModelSet::from_text("garbage"),
            Err(Error::Parse { line: 1, .. })
        ));
        let text = "modelset n 2 mode unordered vars 1 models 2\npair 1 1 2\n1\n0\n";
        assert!(matches!(
            ModelSet::from_text(text),
            Err(Error::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn model_set_rejects_wide_words() {
        assert!(ModelSet::new(2, [4]).is_err());
        assert_eq!(ModelSet::new(2, [3, 1, 3]).unwrap().words(), &[1, 3]);
    }
}
