use std::collections::BTreeSet;

use itertools::Itertools;

use super::pairs::{PairMode, PairVarMap};
use crate::assignment::Assignment;
use crate::error::{Error, Result};

/// A linear order on `1..=n`, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearOrder {
    perm: Vec<usize>,
}

impl LinearOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n + 1];
        for &c in &perm {
            if c == 0 || c > n || std::mem::replace(&mut seen[c], true) {
                return Err(Error::InvalidArgument(format!(
                    "{perm:?} is not a permutation of 1..={n}"
                )));
            }
        }
        Ok(LinearOrder { perm })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// `position()[c]` is the 0-based rank of candidate `c`; index 0 unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.n() + 1];
        for (r, &c) in self.perm.iter().enumerate() {
            pos[c] = r;
        }
        pos
    }

    pub fn prefers(&self, i: usize, j: usize) -> bool {
        let pos = self.positions();
        pos[i] < pos[j]
    }
}

/// A size-k top set `K` with a linear order on it; the other candidates are
/// unranked.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TopKOrder {
    n: usize,
    ranking: Vec<usize>,
}

impl TopKOrder {
    /// `ranking` lists `K` from most to least preferred.
    pub fn new(n: usize, ranking: Vec<usize>) -> Result<Self> {
        let set: BTreeSet<usize> = ranking.iter().copied().collect();
        if set.len() != ranking.len() || ranking.iter().any(|&c| c == 0 || c > n) {
            return Err(Error::InvalidArgument(format!(
                "{ranking:?} is not a ranking of distinct candidates from 1..={n}"
            )));
        }
        Ok(TopKOrder { n, ranking })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.ranking.len()
    }

    pub fn k_set(&self) -> BTreeSet<usize> {
        self.ranking.iter().copied().collect()
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }
}

/// `x_{i,j} = 1` iff `i` precedes `j`, over the unordered pair map.
pub fn order_to_assignment(order: &LinearOrder) -> Assignment {
    let pairs = PairVarMap::unordered(order.n());
    let pos = order.positions();
    let mut a = Assignment::new();
    for (v, &(i, j)) in pairs.pairs().iter().enumerate() {
        a.set(v as u32, pos[i] < pos[j]);
    }
    a
}

/// Inverse of [`order_to_assignment`].
///
/// Fails with the lexicographically first cyclic triple when the assignment
/// is not transitive.
pub fn assignment_to_order(a: &Assignment, n: usize) -> Result<LinearOrder> {
    let pairs = PairVarMap::unordered(n);
    let mut beats = vec![vec![false; n + 1]; n + 1];
    for (v, &(i, j)) in pairs.pairs().iter().enumerate() {
        let x = a.get(v as u32).ok_or(Error::MissingVariable(v as u32))?;
        beats[i][j] = x;
        beats[j][i] = !x;
    }
    for (i, j, k) in (1..=n).tuple_combinations() {
        if beats[i][j] == beats[j][k] && beats[j][k] == beats[k][i] {
            return Err(Error::Intransitive(i, j, k));
        }
    }
    // In a transitive tournament the number of wins ranks the candidates.
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.sort_by_key(|&c| std::cmp::Reverse(beats[c].iter().filter(|&&b| b).count()));
    LinearOrder::new(perm)
}

/// Total assignment over the ordered pair map for a top-k order.
pub fn topk_to_assignment(t: &TopKOrder) -> Assignment {
    let pairs = PairVarMap::new(t.n(), PairMode::Ordered);
    let mut rank = vec![None; t.n() + 1];
    for (r, &c) in t.ranking().iter().enumerate() {
        rank[c] = Some(r);
    }
    let mut a = Assignment::new();
    for (v, &(i, j)) in pairs.pairs().iter().enumerate() {
        let value = match (rank[i], rank[j]) {
            (Some(ri), Some(rj)) => ri < rj,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => false,
        };
        a.set(v as u32, value);
    }
    a
}

/// All `n!` linear orders in lexicographic order of their rankings.
pub fn all_linear_orders(n: usize) -> impl Iterator<Item = LinearOrder> {
    (1..=n).permutations(n).map(|perm| LinearOrder { perm })
}

/// All `n!/(n-k)!` top-k orders.
pub fn all_topk_orders(n: usize, k: usize) -> impl Iterator<Item = TopKOrder> {
    (1..=n)
        .permutations(k)
        .map(move |ranking| TopKOrder { n, ranking })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(a: &Assignment) -> u64 {
        a.to_word().unwrap()
    }

    #[test]
    fn identity_order_sets_everything() {
        let o = LinearOrder::new(vec![1, 2, 3]).unwrap();
        // x12, x13, x23
        assert_eq!(word(&order_to_assignment(&o)), 0b111);
    }

    #[test]
    fn order_three_one_two() {
        let o = LinearOrder::new(vec![3, 1, 2]).unwrap();
        // x12 = 1, x13 = 0, x23 = 0
        assert_eq!(word(&order_to_assignment(&o)), 0b001);
    }

    #[test]
    fn three_cycle_is_rejected() {
        // x12 = 1, x13 = 0, x23 = 1: 1 ≺ 2 ≺ 3 ≺ 1
        let a = Assignment::from_word(3, 0b101);
        assert!(matches!(
            assignment_to_order(&a, 3),
            Err(Error::Intransitive(1, 2, 3))
        ));
    }

    #[test]
    fn round_trip_n5() {
        let mut count = 0;
        for o in all_linear_orders(5) {
            let a = order_to_assignment(&o);
            assert_eq!(assignment_to_order(&a, 5).unwrap(), o);
            count += 1;
        }
        assert_eq!(count, 120);
    }

    #[test]
    fn bad_permutations() {
        assert!(LinearOrder::new(vec![1, 1]).is_err());
        assert!(LinearOrder::new(vec![0, 1]).is_err());
        assert!(LinearOrder::new(vec![2, 3]).is_err());
        assert!(TopKOrder::new(3, vec![4]).is_err());
        assert!(TopKOrder::new(3, vec![2, 2]).is_err());
    }

    #[test]
    fn topk_table_cases() {
        let m = PairVarMap::ordered(3);
        let t = TopKOrder::new(3, vec![1, 2]).unwrap();
        let a = topk_to_assignment(&t);
        let get = |i, j| a.get(m.var(i, j).unwrap()).unwrap();
        assert!(get(1, 2) && !get(2, 1));
        assert!(get(1, 3) && !get(3, 1));
        assert!(get(2, 3) && !get(3, 2));

        let t = TopKOrder::new(3, vec![3]).unwrap();
        let a = topk_to_assignment(&t);
        let get = |i, j| a.get(m.var(i, j).unwrap()).unwrap();
        assert!(get(3, 1) && get(3, 2));
        assert!(!get(1, 2) && !get(1, 3) && !get(2, 1) && !get(2, 3));
    }

    #[test]
    fn counts_of_orders() {
        assert_eq!(all_linear_orders(4).count(), 24);
        assert_eq!(all_topk_orders(4, 2).count(), 12);
        assert_eq!(all_topk_orders(5, 2).count(), 20);
    }
}
