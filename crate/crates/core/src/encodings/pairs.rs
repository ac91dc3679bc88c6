use std::fmt;

use serde::Serialize;

use crate::circuit::Lit;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    /// Pairs `i < j`; `x_{j,i}` stands for `¬x_{i,j}`.
    Unordered,
    /// Pairs `i ≠ j`, each its own variable.
    Ordered,
}

impl fmt::Display for PairMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairMode::Unordered => "unordered",
            PairMode::Ordered => "ordered",
        })
    }
}

/// Bijection between admissible candidate pairs and variables.
///
/// Candidates are `1..=n`. Variables are numbered by the lexicographic rank
/// of their pair: [`PairVarMap::index`] is that rank (1-based, as written in
/// DIMACS and `.nnf` files) and [`PairVarMap::var`] is the 0-based variable
/// used everywhere in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairVarMap {
    n: usize,
    mode: PairMode,
    pairs: Vec<(usize, usize)>,
}

impl PairVarMap {
    pub fn new(n: usize, mode: PairMode) -> Self {
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let admissible = match mode {
                    PairMode::Unordered => i < j,
                    PairMode::Ordered => i != j,
                };
                if admissible {
                    pairs.push((i, j));
                }
            }
        }
        PairVarMap { n, mode, pairs }
    }

    pub fn unordered(n: usize) -> Self {
        Self::new(n, PairMode::Unordered)
    }

    pub fn ordered(n: usize) -> Self {
        Self::new(n, PairMode::Ordered)
    }

    /// Recovers `n` from a variable count, if some `n` produces exactly that
    /// many pairs in `mode`.
    pub fn from_var_count(var_count: usize, mode: PairMode) -> Result<Self> {
        let per = |n: usize| match mode {
            PairMode::Unordered => n * n.saturating_sub(1) / 2,
            PairMode::Ordered => n * n.saturating_sub(1),
        };
        let mut n = 1;
        while per(n) < var_count {
            n += 1;
        }
        if per(n) != var_count {
            return Err(Error::InvalidArgument(format!(
                "{var_count} variables is not a {mode} pair count"
            )));
        }
        Ok(Self::new(n, mode))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> PairMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// 1-based rank of `(i, j)`, or `None` if the pair is not admissible.
    pub fn index(&self, i: usize, j: usize) -> Option<u32> {
        self.var(i, j).map(|v| v + 1)
    }

    pub fn var(&self, i: usize, j: usize) -> Option<u32> {
        let n = self.n;
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return None;
        }
        let rank = match self.mode {
            PairMode::Unordered if i < j => (i - 1) * (2 * n - i) / 2 + (j - i - 1),
            PairMode::Unordered => return None,
            PairMode::Ordered => (i - 1) * (n - 1) + if j < i { j - 1 } else { j - 2 },
        };
        Some(rank as u32)
    }

    pub fn pair(&self, var: u32) -> (usize, usize) {
        self.pairs[var as usize]
    }

    /// Pairs in variable order.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The literal standing for "`i` is preferred to `j`".
    ///
    /// In unordered mode `x_{i,j}` with `i > j` is the negation of
    /// `x_{j,i}`.
    pub fn literal(&self, i: usize, j: usize) -> Lit {
        match (self.mode, self.var(i, j)) {
            (_, Some(v)) => Lit::pos(v),
            (PairMode::Unordered, None) => Lit::neg(
                self.var(j, i)
                    .unwrap_or_else(|| panic!("no variable for pair ({i}, {j})")),
            ),
            (PairMode::Ordered, None) => panic!("no variable for pair ({i}, {j})"),
        }
    }

    pub fn label(&self, var: u32) -> String {
        let (i, j) = self.pair(var);
        format!("x_{{{i},{j}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unordered_ranks_are_lexicographic() {
        let m = PairVarMap::unordered(4);
        assert_eq!(m.len(), 6);
        let expect = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for (k, &(i, j)) in expect.iter().enumerate() {
            assert_eq!(m.index(i, j), Some(k as u32 + 1));
            assert_eq!(m.pair(k as u32), (i, j));
        }
        assert_eq!(m.index(2, 1), None);
        assert_eq!(m.literal(2, 1), Lit::neg(0));
    }

    #[test]
    fn ordered_ranks_are_lexicographic() {
        let m = PairVarMap::ordered(3);
        let expect = [(1, 2), (1, 3), (2, 1), (2, 3), (3, 1), (3, 2)];
        for (k, &(i, j)) in expect.iter().enumerate() {
            assert_eq!(m.index(i, j), Some(k as u32 + 1));
        }
        assert_eq!(m.var(2, 2), None);
        assert_eq!(m.literal(3, 1), Lit::pos(4));
    }

    #[test]
    fn formula_matches_table() {
        for n in 1..9 {
            for mode in [PairMode::Unordered, PairMode::Ordered] {
                let m = PairVarMap::new(n, mode);
                for (v, &(i, j)) in m.pairs().iter().enumerate() {
                    assert_eq!(m.var(i, j), Some(v as u32));
                }
            }
        }
    }

    #[test]
    fn n_from_var_count() {
        assert_eq!(
            PairVarMap::from_var_count(6, PairMode::Unordered)
                .unwrap()
                .n(),
            4
        );
        assert_eq!(
            PairVarMap::from_var_count(12, PairMode::Ordered)
                .unwrap()
                .n(),
            4
        );
        assert_eq!(
            PairVarMap::from_var_count(0, PairMode::Unordered)
                .unwrap()
                .n(),
            1
        );
        assert!(PairVarMap::from_var_count(5, PairMode::Unordered).is_err());
    }

    #[test]
    fn labels() {
        let m = PairVarMap::unordered(3);
        assert_eq!(m.label(2), "x_{2,3}");
    }
}
