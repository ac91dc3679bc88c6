use std::collections::BTreeSet;
use std::fmt::Write;

use super::pairs::PairVarMap;
use crate::circuit::Lit;

/// A CNF as a set of clauses; each clause is sorted by variable and free of
/// complementary literals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    var_count: usize,
    clauses: BTreeSet<Vec<Lit>>,
    raw_clause_count: usize,
}

impl CnfFormula {
    pub fn new(var_count: usize) -> Self {
        CnfFormula {
            var_count,
            clauses: BTreeSet::new(),
            raw_clause_count: 0,
        }
    }

    /// Adds a clause. Returns `false` when the clause was a duplicate or a
    /// tautology and was dropped.
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> bool {
        self.raw_clause_count += 1;
        let mut clause: Vec<Lit> = lits.into_iter().collect();
        clause.sort();
        clause.dedup();
        if clause.windows(2).any(|w| w[0].var == w[1].var) {
            return false;
        }
        assert!(
            clause.iter().all(|l| (l.var as usize) < self.var_count),
            "clause mentions a variable outside the formula"
        );
        self.clauses.insert(clause)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> impl Iterator<Item = &[Lit]> {
        self.clauses.iter().map(|c| c.as_slice())
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Clauses offered to [`CnfFormula::add_clause`], duplicates included.
    pub fn raw_clause_count(&self) -> usize {
        self.raw_clause_count
    }

    pub fn eval_word(&self, word: u64) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(word >> l.var & 1 == 1)))
    }

    /// DIMACS text. The pair map is written as comments before the problem
    /// line; clauses come out in lexicographic order.
    pub fn to_dimacs(&self, pairs: &PairVarMap) -> String {
        let mut out = String::new();
        writeln!(out, "c lin_{} transitivity encoding", pairs.n()).unwrap();
        for (v, (i, j)) in pairs.pairs().iter().enumerate() {
            writeln!(out, "c var {} x_{},{}", v + 1, i, j).unwrap();
        }
        writeln!(out, "c raw clauses {}", self.raw_clause_count).unwrap();
        writeln!(out, "p cnf {} {}", self.var_count, self.clauses.len()).unwrap();
        for clause in &self.clauses {
            for l in clause {
                write!(out, "{} ", l.to_dimacs()).unwrap();
            }
            out.push_str("0\n");
        }
        out
    }
}

/// The transitivity CNF: `¬x_{i,j} ∨ ¬x_{j,k} ∨ x_{i,k}` for every ordered
/// triple of distinct candidates, deduplicated.
pub fn encode_lin_cnf(n: usize) -> CnfFormula {
    let pairs = PairVarMap::unordered(n);
    let mut cnf = CnfFormula::new(pairs.len());
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                cnf.add_clause([
                    pairs.literal(i, j).negate(),
                    pairs.literal(j, k).negate(),
                    pairs.literal(i, k),
                ]);
            }
        }
    }
    cnf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lin3_has_two_clauses() {
        let cnf = encode_lin_cnf(3);
        assert_eq!(cnf.raw_clause_count(), 6);
        let clauses: Vec<Vec<i64>> = cnf
            .clauses()
            .map(|c| c.iter().map(|l| l.to_dimacs()).collect())
            .collect();
        assert_eq!(clauses, vec![vec![-1, 2, -3], vec![1, -2, 3]]);
    }

    #[test]
    fn lin3_models() {
        let cnf = encode_lin_cnf(3);
        let models: Vec<u64> = (0..8).filter(|&w| cnf.eval_word(w)).collect();
        // Everything except the two 3-cycles 0b101 and 0b010.
        assert_eq!(models, vec![0b000, 0b001, 0b011, 0b100, 0b110, 0b111]);
    }

    #[test]
    fn lin2_is_empty() {
        let cnf = encode_lin_cnf(2);
        assert_eq!(cnf.clause_count(), 0);
        assert_eq!((0..2).filter(|&w| cnf.eval_word(w)).count(), 2);
    }

    #[test]
    fn tautologies_are_dropped() {
        let mut cnf = CnfFormula::new(2);
        assert!(!cnf.add_clause([Lit::pos(0), Lit::neg(0)]));
        assert!(cnf.add_clause([Lit::pos(1), Lit::pos(0)]));
        assert!(!cnf.add_clause([Lit::pos(0), Lit::pos(1)]));
        assert_eq!(cnf.clause_count(), 1);
        assert_eq!(cnf.raw_clause_count(), 3);
    }

    #[test]
    fn dimacs_text() {
        let text = encode_lin_cnf(3).to_dimacs(&PairVarMap::unordered(3));
        assert!(text.contains("p cnf 3 2\n-1 2 -3 0\n1 -2 3 0\n"));
    }
}
