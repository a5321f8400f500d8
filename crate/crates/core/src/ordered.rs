//! Reduction to ordered instances, where every agent ranks items the same way.
//!
//! Each agent's row is sorted independently; an allocation of the sorted
//! instance is mapped back with a choosing sequence that never leaves an agent
//! worse off than in the sorted instance.

use crate::error::Result;
use crate::instance::{Agent, Allocation, Instance, Valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedReduction {
    ordered: Instance,
    /// `permutations[i][r]` is the original item that agent `i` ranks `r`-th.
    permutations: Vec<Vec<usize>>,
}

impl OrderedReduction {
    pub fn ordered_instance(&self) -> &Instance {
        &self.ordered
    }

    pub fn permutation(&self, agent: usize) -> &[usize] {
        &self.permutations[agent]
    }
}

/// Sorts every agent's values non-increasing (ties by item index).
pub fn ordered_version(inst: &Instance) -> OrderedReduction {
    let mut permutations = Vec::with_capacity(inst.n());
    let agents = inst
        .agents()
        .iter()
        .map(|a| {
            let perm = a.valuation.ranking();
            let values = perm.iter().map(|&j| a.valuation.value(j)).collect();
            permutations.push(perm);
            Agent {
                name: a.name.clone(),
                entitlement: a.entitlement.clone(),
                valuation: Valuation::new(values),
            }
        })
        .collect();
    let ordered = Instance::new(agents, None).expect("sorting rows keeps the instance valid");
    OrderedReduction {
        ordered,
        permutations,
    }
}

/// Maps an allocation of the ordered instance back to the original items.
///
/// Ranks are processed in order; whoever holds rank `r` in `ordered_alloc`
/// picks her favourite item that is still available.
pub fn lift_allocation(
    inst: &Instance,
    red: &OrderedReduction,
    ordered_alloc: &Allocation,
) -> Result<Allocation> {
    let (n, m) = (inst.n(), inst.m());
    ordered_alloc.validate(n, m, true)?;
    let mut owner = vec![0; m];
    for (i, bundle) in ordered_alloc.bundles().iter().enumerate() {
        for &r in bundle {
            owner[r] = i;
        }
    }
    let mut taken = vec![false; m];
    let mut bundles = vec![Vec::new(); n];
    for &i in &owner {
        let pick = red.permutations[i]
            .iter()
            .copied()
            .find(|&j| !taken[j])
            .expect("one free item per remaining rank");
        taken[pick] = true;
        bundles[i].push(pick);
    }
    Ok(Allocation::new(bundles))
}
