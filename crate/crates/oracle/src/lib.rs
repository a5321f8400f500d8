//! Brute-force reference implementations of the fairshare solvers.
//!
//! Everything here is exponential and deliberately simple. None of it reuses
//! the solvers it checks; only the data types and the game engine are shared.

mod game;
mod partition;
mod simplex;

pub use game::game_tree_oracle;
pub use partition::{mms_brute, pessimistic_brute, wmms_brute};

use fairshare::{Error, Rat, Result, Valuation, Value};

pub const APS_MAX_ITEMS: usize = 12;
pub const PARTITION_MAX_ITEMS: usize = 10;
pub const PARTITION_MAX_AGENTS: usize = 4;
pub const GAME_MAX_ITEMS: usize = 6;

pub(crate) fn guard(name: &'static str, actual: usize, limit: usize) -> Result<()> {
    if actual > limit {
        Err(Error::Guard {
            guard: name,
            actual: actual as u128,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

/// Subset values of every bundle, indexed by bitmask.
pub(crate) fn subset_values(v: &Valuation) -> Vec<Value> {
    let m = v.len();
    (0..1usize << m)
        .map(|mask| (0..m).filter(|&j| mask >> j & 1 == 1).map(|j| v.value(j)).sum())
        .collect()
}

/// Largest `z` for which some distribution over bundles worth at least `z`
/// uses every item with probability at most `b`.
pub fn aps_brute(v: &Valuation, b: &Rat) -> Result<Value> {
    let m = v.len();
    guard("oracle_aps_items", m, APS_MAX_ITEMS)?;
    let values = subset_values(v);
    let mut candidates = values.clone();
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    candidates.dedup();
    for z in candidates {
        let columns: Vec<usize> = (0..values.len()).filter(|&s| values[s] >= z).collect();
        if simplex::distribution_exists(m, &columns, b) {
            return Ok(z);
        }
    }
    unreachable!("z = 0 is always feasible through the empty bundle")
}
