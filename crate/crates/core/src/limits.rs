//! Size guards for the exponential and pseudo-polynomial solvers.

use crate::error::{Error, Result};

/// Environment variable overriding [`Limits::exhaustive_items`].
pub const GUARD_ENV: &str = "FAIRSHARE_GUARD_LIMIT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Max item count for partition searches (MMS, ℓ-out-of-d, pessimistic, WMMS).
    pub exhaustive_items: usize,
    /// Max total value `v(M)` for the value-indexed knapsack tables.
    pub knapsack_total: u64,
    /// Max number of allocations enumerated by the WMMS search.
    pub allocations: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            exhaustive_items: 16,
            knapsack_total: 1_000_000,
            allocations: 20_000_000,
        }
    }
}

impl Limits {
    /// Defaults, with the item guard taken from `FAIRSHARE_GUARD_LIMIT` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(n) = std::env::var(GUARD_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.exhaustive_items = n;
        }
        limits
    }

    pub(crate) fn check_items(&self, m: usize) -> Result<()> {
        guard("exhaustive_items", m as u128, self.exhaustive_items as u128)
    }

    pub(crate) fn check_knapsack(&self, total: u64) -> Result<()> {
        guard("knapsack_total", total as u128, self.knapsack_total as u128)
    }
}

pub(crate) fn guard(name: &'static str, actual: u128, limit: u128) -> Result<()> {
    if actual > limit {
        Err(Error::Guard {
            guard: name,
            actual,
            limit,
        })
    } else {
        Ok(())
    }
}
