use crate::error::{Error, Result};

/// Upper bound on exhaustive sweeps, expressed as a power of two.
///
/// Exceeding the guard is always an error; nothing in this crate falls back
/// to sampling when a sweep is too large.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepGuard {
    max_bits: u32,
}

impl SweepGuard {
    pub const DEFAULT_BITS: u32 = 22;
    /// Largest guard a caller may configure.
    pub const CEILING_BITS: u32 = 30;

    pub fn new(max_bits: u32) -> Result<Self> {
        if max_bits > Self::CEILING_BITS {
            return Err(Error::InvalidArgument(format!(
                "sweep guard 2^{max_bits} is above the hard ceiling 2^{}",
                Self::CEILING_BITS
            )));
        }
        Ok(SweepGuard { max_bits })
    }

    pub fn max_bits(&self) -> u32 {
        self.max_bits
    }

    /// Fails unless a sweep over `bits` free variables is allowed.
    pub fn check(&self, bits: usize) -> Result<()> {
        if bits > self.max_bits as usize {
            Err(Error::GuardExceeded {
                bits: bits as u32,
                limit: self.max_bits,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for SweepGuard {
    fn default() -> Self {
        SweepGuard {
            max_bits: Self::DEFAULT_BITS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_allows_22_bits() {
        let g = SweepGuard::default();
        assert!(g.check(22).is_ok());
        assert!(matches!(
            g.check(23),
            Err(Error::GuardExceeded {
                bits: 23,
                limit: 22
            })
        ));
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(SweepGuard::new(30).is_ok());
        assert!(SweepGuard::new(31).is_err());
    }
}
