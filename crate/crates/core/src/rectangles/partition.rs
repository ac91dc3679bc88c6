use crate::error::{Error, Result};

/// A split `(X1, X2)` of the variables `0..var_count`, stored as the mask
/// of `X1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    var_count: usize,
    x1: u64,
}

fn full_mask(var_count: usize) -> u64 {
    if var_count == 64 {
        u64::MAX
    } else {
        (1u64 << var_count) - 1
    }
}

impl Partition {
    pub fn new(var_count: usize, x1: u64) -> Result<Self> {
        if var_count > 64 {
            return Err(Error::TooManyVariables(var_count));
        }
        if x1 & !full_mask(var_count) != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {x1:#x} has variables outside 0..{var_count}"
            )));
        }
        Ok(Partition { var_count, x1 })
    }

    pub fn from_vars(var_count: usize, x1: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut mask = 0u64;
        for v in x1 {
            if v as usize >= var_count {
                return Err(Error::InvalidArgument(format!(
                    "variable {} out of range",
                    v + 1
                )));
            }
            mask |= 1 << v;
        }
        Self::new(var_count, mask)
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn x1(&self) -> u64 {
        self.x1
    }

    pub fn x2(&self) -> u64 {
        full_mask(self.var_count) & !self.x1
    }

    pub fn x1_len(&self) -> usize {
        self.x1.count_ones() as usize
    }

    pub fn x2_len(&self) -> usize {
        self.var_count - self.x1_len()
    }

    /// `|X|/3 ≤ min(|X1|, |X2|)`.
    pub fn is_balanced(&self) -> bool {
        3 * self.x1_len().min(self.x2_len()) >= self.var_count
    }

    pub fn swapped(&self) -> Partition {
        Partition {
            var_count: self.var_count,
            x1: self.x2(),
        }
    }
}

/// Balanced partitions of `0..var_count` with variable 0 in `X1`, so each
/// unordered split appears once. Masks ascend.
pub fn balanced_partitions(var_count: usize) -> impl Iterator<Item = Partition> {
    assert!(var_count <= 40, "enumerating 2^{var_count} partitions");
    let total = if var_count == 0 { 0 } else { 1u64 << var_count };
    (0..total)
        .filter(|m| m & 1 == 1)
        .map(move |x1| Partition { var_count, x1 })
        .filter(Partition::is_balanced)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn balance_predicate() {
        let p = Partition::from_vars(6, [0, 1]).unwrap();
        assert!(p.is_balanced());
        let p = Partition::from_vars(6, [0]).unwrap();
        assert!(!p.is_balanced());
        let p = Partition::from_vars(3, [1]).unwrap();
        assert!(p.is_balanced());
        assert_eq!(p.x2(), 0b101);
    }

    #[test]
    fn canonical_enumeration() {
        // |X| = 3: {0}, {0,1}, {0,2}.
        let ps: Vec<u64> = balanced_partitions(3).map(|p| p.x1()).collect();
        assert_eq!(ps, vec![0b001, 0b011, 0b101]);
        // |X| = 6: sizes 2..=4 with variable 0 fixed: 5 + 10 + 10 = 25.
        assert_eq!(balanced_partitions(6).count(), 25);
        assert_eq!(balanced_partitions(10).count(), 336);
    }

    #[test]
    fn out_of_range_masks() {
        assert!(Partition::new(3, 0b1000).is_err());
        assert!(Partition::from_vars(3, [3]).is_err());
    }
}
