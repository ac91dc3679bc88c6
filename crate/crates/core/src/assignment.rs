use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A partial or total map from variables to truth values.
///
/// Variables are dense `u32` indices. `values` is only meaningful on
/// `scope`; bits outside the scope are kept cleared.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Assignment {
    scope: FixedBitSet,
    values: FixedBitSet,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Total assignment over `0..var_count` read off the low bits of `word`.
    pub fn from_word(var_count: usize, word: u64) -> Self {
        assert!(var_count <= 64, "from_word supports at most 64 variables");
        let mut a = Assignment::new();
        for v in 0..var_count {
            a.set(v as u32, word >> v & 1 == 1);
        }
        a
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, bool)>) -> Result<Self> {
        let mut a = Assignment::new();
        for (v, b) in pairs {
            if let Some(old) = a.get(v) {
                if old != b {
                    return Err(Error::Conflict(v));
                }
            }
            a.set(v, b);
        }
        Ok(a)
    }

    pub fn set(&mut self, var: u32, value: bool) {
        let v = var as usize;
        if v >= self.scope.len() {
            self.scope.grow(v + 1);
            self.values.grow(v + 1);
        }
        self.scope.insert(v);
        self.values.set(v, value);
    }

    pub fn get(&self, var: u32) -> Option<bool> {
        let v = var as usize;
        if v < self.scope.len() && self.scope.contains(v) {
            Some(self.values.contains(v))
        } else {
            None
        }
    }

    pub fn contains(&self, var: u32) -> bool {
        self.get(var).is_some()
    }

    pub fn len(&self) -> usize {
        self.scope.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn scope(&self) -> impl Iterator<Item = u32> + '_ {
        self.scope.ones().map(|v| v as u32)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.scope
            .ones()
            .map(|v| (v as u32, self.values.contains(v)))
    }

    /// Union of two assignments; they must agree where their scopes overlap.
    pub fn union(&self, other: &Assignment) -> Result<Assignment> {
        let mut out = self.clone();
        for (v, b) in other.iter() {
            match out.get(v) {
                Some(old) if old != b => return Err(Error::Conflict(v)),
                _ => out.set(v, b),
            }
        }
        Ok(out)
    }

    pub fn restrict(&self, keep: impl Fn(u32) -> bool) -> Assignment {
        let mut out = Assignment::new();
        for (v, b) in self.iter().filter(|(v, _)| keep(*v)) {
            out.set(v, b);
        }
        out
    }

    /// Packs the assignment into a word, bit `v` holding variable `v`.
    /// Variables outside the scope read as 0.
    pub fn to_word(&self) -> Result<u64> {
        let mut w = 0u64;
        for (v, b) in self.iter() {
            if v >= 64 {
                return Err(Error::TooManyVariables(v as usize + 1));
            }
            if b {
                w |= 1 << v;
            }
        }
        Ok(w)
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.iter().map(|(v, b)| (v, b as u8)))
            .finish()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (v, b)) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={}", v + 1, b as u8)?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_requires_agreement() {
        let a = Assignment::from_pairs([(0, true), (1, false)]).unwrap();
        let b = Assignment::from_pairs([(1, false), (2, true)]).unwrap();
        let c = Assignment::from_pairs([(1, true)]).unwrap();
        let ab = a.union(&b).unwrap();
        assert_eq!(ab.len(), 3);
        assert_eq!(ab.to_word().unwrap(), 0b101);
        assert!(matches!(a.union(&c), Err(Error::Conflict(1))));
    }

    #[test]
    fn from_pairs_rejects_conflicts() {
        assert!(Assignment::from_pairs([(3, true), (3, false)]).is_err());
        assert!(Assignment::from_pairs([(3, true), (3, true)]).is_ok());
    }

    #[test]
    fn word_round_trip() {
        let a = Assignment::from_word(5, 0b10110);
        assert_eq!(a.len(), 5);
        assert_eq!(a.get(0), Some(false));
        assert_eq!(a.get(1), Some(true));
        assert_eq!(a.get(5), None);
        assert_eq!(a.to_word().unwrap(), 0b10110);
    }

    #[test]
    fn restrict_drops_variables() {
        let a = Assignment::from_word(4, 0b1111);
        let r = a.restrict(|v| v % 2 == 0);
        assert_eq!(r.scope().collect::<Vec<_>>(), vec![0, 2]);
    }
}
