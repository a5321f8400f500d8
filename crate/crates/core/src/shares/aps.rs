//! AnyPrice share with price and bundle certificates.

use std::cell::Cell;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{rat_sum, Allocation, Valuation};
use crate::knapsack::{cheapest_reaching, max_affordable};
use crate::limits::Limits;
use crate::lp::PackingLp;
use crate::scalar::{floor_value, is_valid_entitlement, serde_rat, serde_rat_vec, Rat, Value};

use super::tps;

/// Prices under which no affordable set is worth more than `value_bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PriceCertificate {
    #[serde(with = "serde_rat_vec")]
    pub prices: Vec<Rat>,
    #[serde(with = "serde_rat")]
    pub budget: Rat,
    pub value_bound: Value,
}

/// A distribution over sets, each worth at least `value_floor`, in which no
/// item is covered with more than the entitlement's weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleWitness {
    pub sets: Vec<Vec<usize>>,
    #[serde(with = "serde_rat_vec")]
    pub weights: Vec<Rat>,
    pub value_floor: Value,
}

impl BundleWitness {
    pub fn support(&self) -> usize {
        self.sets.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApsCertificate {
    pub value: Value,
    pub upper: PriceCertificate,
    pub lower: BundleWitness,
}

thread_local! {
    static CALLS: Cell<u64> = const { Cell::new(0) };
}

/// How many times [`aps_exact`] has run on the current thread.
pub fn aps_exact_calls() -> u64 {
    CALLS.with(Cell::get)
}

enum Probe {
    /// The bundle LP reaches weight 1 with sets worth at least the target.
    Reached(BundleWitness),
    /// Prices summing to 1 under which every set worth the target costs more than `b`.
    Blocked(Vec<Rat>),
}

/// Exact AnyPrice share of an integer valuation, with both certificates.
///
/// Binary search over integer targets `t`. For each `t` the bundle LP
/// `max Σλ  s.t.  Σ_{S∋j} λ_S ≤ b` over sets with `v(S) ≥ t` is solved by
/// column generation; its pricing problem is a knapsack over value levels.
/// Its dual is the price LP `min Σp  s.t.  p(S) ≥ b`, so the final duals give
/// the blocking prices whenever the optimum stays below 1.
pub fn aps_exact(v: &Valuation, b: &Rat) -> Result<ApsCertificate> {
    CALLS.with(|c| c.set(c.get() + 1));
    if !is_valid_entitlement(b) {
        return Err(Error::Argument(format!("entitlement {b} is not in (0, 1]")));
    }
    Limits::from_env().check_knapsack(v.total())?;

    let mut lo: Value = 0;
    let mut witness = BundleWitness {
        sets: vec![Vec::new()],
        weights: vec![Rat::one()],
        value_floor: 0,
    };
    let mut hi = floor_value(&tps(v, b)).min(v.total());
    let mut blocking: Option<Vec<Rat>> = None;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match probe(v, b, mid) {
            Probe::Reached(w) => {
                lo = mid;
                witness = w;
            }
            Probe::Blocked(prices) => {
                hi = mid - 1;
                if hi == lo {
                    blocking = Some(prices);
                }
            }
        }
    }
    let prices = match blocking {
        Some(p) => p,
        None => match probe(v, b, lo + 1) {
            Probe::Blocked(p) => p,
            Probe::Reached(_) => unreachable!("the share never exceeds the truncated proportional share"),
        },
    };
    Ok(ApsCertificate {
        value: lo,
        upper: PriceCertificate {
            prices,
            budget: b.clone(),
            value_bound: lo,
        },
        lower: witness,
    })
}

fn probe(v: &Valuation, b: &Rat, target: Value) -> Probe {
    let values = v.values();
    let m = values.len();
    if target > v.total() {
        return Probe::Blocked(vec![Rat::zero(); m]);
    }
    let mut lp = PackingLp::new(vec![b.clone(); m]);
    let mut sets: Vec<Vec<usize>> = Vec::new();
    loop {
        let (price, set) = cheapest_reaching(values, lp.duals(), target)
            .expect("target is reachable when it does not exceed v(M)");
        if price >= Rat::one() {
            let total = rat_sum(lp.duals());
            let prices = lp.duals().iter().map(|q| q / &total).collect();
            return Probe::Blocked(prices);
        }
        let mut column = vec![Rat::zero(); m];
        for &j in &set {
            column[j] = Rat::one();
        }
        lp.add_column(Rat::one(), &column);
        sets.push(set);
        lp.solve().expect("bundles of positive value are bounded by the coverage rows");
        if *lp.objective() >= Rat::one() {
            let total = lp.objective().clone();
            let (sets, weights) = lp
                .primal()
                .into_iter()
                .zip(sets)
                .filter(|(x, _)| x.is_positive())
                .map(|(x, s)| (s, x / &total))
                .unzip();
            return Probe::Reached(BundleWitness {
                sets,
                weights,
                value_floor: target,
            });
        }
    }
}

/// Prices are non-negative, sum to at most 1, and nothing affordable beats the bound.
pub fn check_price_certificate(cert: &PriceCertificate, v: &Valuation) -> bool {
    if cert.prices.len() != v.len() || cert.prices.iter().any(Signed::is_negative) {
        return false;
    }
    if rat_sum(&cert.prices) > Rat::one() {
        return false;
    }
    max_affordable(v.values(), &cert.prices, &cert.budget).0 <= cert.value_bound
}

/// Weights are positive and sum to 1, every set is worth at least the floor,
/// and every item is covered with total weight at most `b`.
pub fn check_bundle_witness(wit: &BundleWitness, v: &Valuation, b: &Rat) -> bool {
    if wit.sets.len() != wit.weights.len() || !wit.weights.iter().all(Signed::is_positive) {
        return false;
    }
    if !rat_sum(&wit.weights).is_one() {
        return false;
    }
    let mut coverage = vec![Rat::zero(); v.len()];
    for (set, w) in wit.sets.iter().zip(&wit.weights) {
        let mut seen = vec![false; v.len()];
        for &j in set {
            if j >= v.len() || seen[j] {
                return false;
            }
            seen[j] = true;
            coverage[j] += w;
        }
        if v.of(set) < wit.value_floor {
            return false;
        }
    }
    coverage.iter().all(|c| c <= b)
}

/// Splits the items between two agents so that each gets her AnyPrice share.
///
/// One of the sets in the first agent's bundle witness always leaves the
/// second agent enough in its complement.
pub fn two_agent_aps_allocation(
    v1: &Valuation,
    v2: &Valuation,
    b1: &Rat,
    b2: &Rat,
) -> Result<Allocation> {
    if b1 + b2 != Rat::one() {
        return Err(Error::Argument(format!("entitlements {b1} and {b2} do not sum to 1")));
    }
    if v1.len() != v2.len() {
        return Err(Error::Argument("valuations cover different items".into()));
    }
    let first = aps_exact(v1, b1)?;
    let need = aps_exact(v2, b2)?.value;
    let m = v1.len();
    for set in &first.lower.sets {
        let rest: Vec<usize> = (0..m).filter(|j| !set.contains(j)).collect();
        if v2.of(&rest) >= need {
            return Ok(Allocation::new(vec![set.clone(), rest]));
        }
    }
    unreachable!("some witness set leaves the second agent her share")
}
