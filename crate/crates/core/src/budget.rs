use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{Error, Result};

/// Shared work counter for enumerations and searches.
///
/// One unit is roughly one candidate vector examined or one element scanned.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: AtomicU64,
}

impl Budget {
    pub const DEFAULT_LIMIT: u64 = 200_000_000;

    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: AtomicU64::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self, units: u64) -> Result<()> {
        let before = self.used.fetch_add(units, Ordering::Relaxed);
        if before.saturating_add(units) > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    /// Fails up front when a scan of `units` cannot fit.
    pub fn reserve(&self, units: u64) -> Result<()> {
        if self.used().saturating_add(units) > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Budget::DEFAULT_LIMIT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charges_until_limit() {
        let b = Budget::new(10);
        assert!(b.charge(4).is_ok());
        assert!(b.reserve(6).is_ok());
        assert!(b.reserve(7).is_err());
        assert!(b.charge(6).is_ok());
        assert_eq!(b.charge(1), Err(Error::BudgetExceeded(10)));
        assert!(Budget::unlimited().charge(u64::MAX).is_ok());
    }
}
