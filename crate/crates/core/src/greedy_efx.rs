//! Greedy-EFX for equal entitlements: hand out items from the most to the
//! least valuable, each to an agent nobody envies, and rotate bundles along
//! envy cycles whenever one appears.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance, Valuation};
use crate::ordered::{lift_allocation, ordered_version};
use crate::scalar::Value;

/// Which unenvied agent receives the next item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arbitration {
    /// The unenvied agent holding the most items, then the lowest index.
    #[default]
    MostItems,
    /// The lowest-indexed unenvied agent.
    LowestIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub item: usize,
    pub to: usize,
    /// Envy cycles rotated right after this placement; agent `c[k]` takes the
    /// bundle of `c[k+1]`.
    pub rotations: Vec<Vec<usize>>,
}

/// `graph[i]` lists the agents whose bundle `i` strictly prefers to her own.
pub fn envy_graph(bundles: &[Vec<usize>], vals: &[Valuation]) -> Vec<Vec<usize>> {
    let own: Vec<Value> = (0..bundles.len()).map(|i| vals[i].of(&bundles[i])).collect();
    (0..bundles.len())
        .map(|i| {
            (0..bundles.len())
                .filter(|&j| j != i && vals[i].of(&bundles[j]) > own[i])
                .collect()
        })
        .collect()
}

/// The first cycle found by depth-first search from agents in index order.
pub fn find_envy_cycle(graph: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = graph.len();
    let mut done = vec![false; n];
    for start in 0..n {
        if done[start] {
            continue;
        }
        let mut path = vec![start];
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut next = vec![0usize; n];
        while let Some(&u) = path.last() {
            if let Some(&w) = graph[u].get(next[u]) {
                next[u] += 1;
                if on_path[w] {
                    let from = path.iter().position(|&x| x == w).expect("on path");
                    return Some(path[from..].to_vec());
                }
                if !done[w] {
                    on_path[w] = true;
                    path.push(w);
                }
            } else {
                done[u] = true;
                on_path[u] = false;
                path.pop();
            }
        }
    }
    None
}

fn rotate(bundles: &mut [Vec<usize>], cycle: &[usize]) {
    let first = std::mem::take(&mut bundles[cycle[0]]);
    for k in 0..cycle.len() - 1 {
        bundles[cycle[k]] = std::mem::take(&mut bundles[cycle[k + 1]]);
    }
    bundles[*cycle.last().expect("non-empty cycle")] = first;
}

fn resolve(bundles: &mut [Vec<usize>], vals: &[Valuation]) -> Vec<Vec<usize>> {
    let mut rotations = Vec::new();
    while let Some(cycle) = find_envy_cycle(&envy_graph(bundles, vals)) {
        rotate(bundles, &cycle);
        rotations.push(cycle);
    }
    rotations
}

/// Rotates bundles along envy cycles until the envy graph is acyclic.
pub fn resolve_envy_cycles(alloc: &Allocation, vals: &[Valuation]) -> (Allocation, Vec<Vec<usize>>) {
    let mut bundles = alloc.bundles().to_vec();
    let rotations = resolve(&mut bundles, vals);
    (Allocation::new(bundles), rotations)
}

/// Greedy-EFX on an ordered instance with the default arbitration.
pub fn greedy_efx(ordered: &Instance) -> Result<(Allocation, Vec<Placement>)> {
    greedy_efx_with(ordered, Arbitration::default())
}

pub fn greedy_efx_with(
    ordered: &Instance,
    arbitration: Arbitration,
) -> Result<(Allocation, Vec<Placement>)> {
    if let Some(i) = (0..ordered.n()).find(|&i| !ordered.valuation(i).is_non_increasing()) {
        return Err(Error::Mismatch(format!(
            "agent {i}'s values are not non-increasing in item order"
        )));
    }
    let vals = ordered.valuations();
    let n = ordered.n();
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut trace = Vec::with_capacity(ordered.m());
    for item in 0..ordered.m() {
        let graph = envy_graph(&bundles, &vals);
        let mut envied = vec![false; n];
        for targets in &graph {
            for &j in targets {
                envied[j] = true;
            }
        }
        let free = (0..n).filter(|&i| !envied[i]);
        let to = match arbitration {
            Arbitration::LowestIndex => free.min(),
            Arbitration::MostItems => free.min_by_key(|&i| (std::cmp::Reverse(bundles[i].len()), i)),
        }
        .expect("an acyclic envy graph has an unenvied agent");
        bundles[to].push(item);
        let rotations = resolve(&mut bundles, &vals);
        trace.push(Placement { item, to, rotations });
    }
    Ok((Allocation::new(bundles), trace))
}

/// Bundles after each placement, rebuilt from a trace, items in placement order.
pub fn replay_trace(n: usize, trace: &[Placement]) -> Vec<Vec<Vec<usize>>> {
    let mut bundles: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut out = Vec::with_capacity(trace.len());
    for step in trace {
        bundles[step.to].push(step.item);
        for cycle in &step.rotations {
            rotate(&mut bundles, cycle);
        }
        out.push(bundles.clone());
    }
    out
}

/// Greedy-EFX on any equal-entitlement instance, through the ordered reduction.
pub fn greedy_efx_full(inst: &Instance) -> Result<Allocation> {
    if !inst.has_equal_entitlements() {
        return Err(Error::Mismatch(
            "greedy-efx needs equal entitlements".into(),
        ));
    }
    let red = ordered_version(inst);
    let (ordered_alloc, _) = greedy_efx(red.ordered_instance())?;
    lift_allocation(inst, &red, &ordered_alloc)
}
