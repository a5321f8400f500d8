//! Certificates for finished allocations: per-agent guarantee reports,
//! competitive-equilibrium checks and the ordering between share notions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Allocation, Instance, Valuation};
use crate::knapsack::max_affordable;
use crate::scalar::{decimal, int, serde_rat, serde_rat_opt, Rat, Value};
use crate::shares::{aps_exact, pessimistic_share_exact, proportional_share, rank_value, tps};

const DIGITS: u32 = 6;

/// Which family of guarantees an allocation is held to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSet {
    /// Best of 3/5 of the APS, TPS/(2-b) and the value of the ⌊1/b⌋-th best item.
    ArbitraryEntitlements,
    /// Worse of 3/4 of the APS and 2n/(3n-1) of the TPS.
    EqualEntitlementsGefx,
}

impl std::str::FromStr for BoundSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "arbitrary-entitlements" | "arbitrary" => Ok(Self::ArbitraryEntitlements),
            "equal-entitlements-gefx" | "gefx" => Ok(Self::EqualEntitlementsGefx),
            other => Err(Error::Argument(format!("unknown bound set `{other}`"))),
        }
    }
}

/// An exact rational with a rounded rendering for people.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    #[serde(with = "serde_rat")]
    pub exact: Rat,
    pub decimal: String,
}

impl From<Rat> for Exact {
    fn from(exact: Rat) -> Self {
        let decimal = decimal(&exact, DIGITS);
        Self { exact, decimal }
    }
}

/// Achieved value over a share, or `None` when the share is zero.
fn fraction(value: Value, share: &Rat) -> Option<Exact> {
    (*share > Rat::from_integer(0.into())).then(|| Exact::from(int(value) / share))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fractions {
    pub proportional: Option<Exact>,
    pub tps: Option<Exact>,
    pub aps: Option<Exact>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pessimistic: Option<Exact>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTerm {
    pub name: String,
    pub required: Exact,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentReport {
    pub agent: usize,
    #[serde(with = "serde_rat")]
    pub entitlement: Rat,
    pub value: Value,
    #[serde(with = "serde_rat")]
    pub proportional: Rat,
    #[serde(with = "serde_rat")]
    pub tps: Rat,
    pub aps: Value,
    /// Left out when the instance is too large for the partition search.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pessimistic: Option<Value>,
    pub fractions: Fractions,
    pub terms: Vec<BoundTerm>,
    /// The term that decides the requirement.
    pub binding: String,
    pub required: Exact,
    pub vacuous: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuaranteeReport {
    pub bounds: BoundSet,
    pub agents: Vec<AgentReport>,
    pub pass: bool,
    pub failures: Vec<String>,
}

fn terms(bounds: BoundSet, v: &Valuation, b: &Rat, n: usize, aps: Value, tps_share: &Rat) -> Vec<BoundTerm> {
    let term = |name: &str, required: Rat| BoundTerm {
        name: name.to_string(),
        required: required.into(),
    };
    match bounds {
        BoundSet::ArbitraryEntitlements => vec![
            term("3/5·aps", Rat::new(3.into(), 5.into()) * int(aps)),
            term("tps/(2-b)", tps_share / (int(2) - b)),
            term("rank", int(rank_value(v, b))),
        ],
        BoundSet::EqualEntitlementsGefx => {
            let n = n as u64;
            vec![
                term("3/4·aps", Rat::new(3.into(), 4.into()) * int(aps)),
                term("2n/(3n-1)·tps", int(2 * n) / int(3 * n - 1) * tps_share),
            ]
        }
    }
}

/// Checks every agent of a complete allocation against `bounds`.
pub fn check_allocation(inst: &Instance, alloc: &Allocation, bounds: BoundSet) -> Result<GuaranteeReport> {
    alloc.validate(inst.n(), inst.m(), true)?;
    let mut agents = Vec::with_capacity(inst.n());
    let mut failures = Vec::new();
    for i in 0..inst.n() {
        let v = inst.valuation(i);
        let b = inst.entitlement(i);
        let value = alloc.value(i, v);
        let prop = proportional_share(v, b);
        let tps_share = tps(v, b);
        let aps = aps_exact(v, b)?.value;
        let pessimistic = match pessimistic_share_exact(v, b) {
            Ok(p) => Some(p),
            Err(Error::Guard { .. }) => None,
            Err(e) => return Err(e),
        };
        let terms = terms(bounds, v, b, inst.n(), aps, &tps_share);
        let pick = |a: &&BoundTerm, c: &&BoundTerm| a.required.exact.cmp(&c.required.exact);
        let decisive = match bounds {
            BoundSet::ArbitraryEntitlements => terms.iter().max_by(pick),
            BoundSet::EqualEntitlementsGefx => terms.iter().min_by(pick),
        }
        .expect("at least one term")
        .clone();
        let vacuous = decisive.required.exact == int(0);
        let pass = int(value) >= decisive.required.exact;
        if !pass {
            failures.push(format!(
                "agent {i}: value {value} below {} bound {}",
                decisive.name, decisive.required.decimal
            ));
        }
        agents.push(AgentReport {
            agent: i,
            entitlement: b.clone(),
            value,
            fractions: Fractions {
                proportional: fraction(value, &prop),
                tps: fraction(value, &tps_share),
                aps: fraction(value, &int(aps)),
                pessimistic: pessimistic.and_then(|p| fraction(value, &int(p))),
            },
            proportional: prop,
            tps: tps_share,
            aps,
            pessimistic,
            terms,
            binding: decisive.name,
            required: decisive.required,
            vacuous,
            pass,
        });
    }
    Ok(GuaranteeReport {
        bounds,
        pass: failures.is_empty(),
        agents,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeAgent {
    pub agent: usize,
    pub value: Value,
    #[serde(with = "serde_rat")]
    pub spent: Rat,
    pub affordable: bool,
    /// Best value any affordable bundle reaches at these prices.
    pub best_affordable: Value,
    pub utility_maximizing: bool,
    /// Filled in only when the whole check passes.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub aps: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeReport {
    pub agents: Vec<CeAgent>,
    pub all_allocated: bool,
    pub equilibrium: bool,
    #[serde(with = "serde_rat_opt", skip_serializing_if = "Option::is_none", default)]
    pub price_total: Option<Rat>,
}

/// Decides whether `(alloc, prices)` is a competitive equilibrium with the
/// instance's entitlements as budgets.
///
/// When it is, each agent's APS is computed too and the report panics if an
/// agent falls below it, because that would mean the solver is wrong.
pub fn check_ce(inst: &Instance, alloc: &Allocation, prices: &[Rat]) -> Result<CeReport> {
    if prices.len() != inst.m() {
        return Err(Error::Argument(format!(
            "{} prices for {} items",
            prices.len(),
            inst.m()
        )));
    }
    if let Some(j) = prices.iter().position(|p| *p < int(0)) {
        return Err(Error::Argument(format!("price of item {j} is negative")));
    }
    alloc.validate(inst.n(), inst.m(), false)?;
    let all_allocated = alloc.bundles().iter().map(Vec::len).sum::<usize>() == inst.m();
    let mut agents = Vec::with_capacity(inst.n());
    for i in 0..inst.n() {
        let v = inst.valuation(i);
        let b = inst.entitlement(i);
        let spent: Rat = alloc.bundle(i).iter().map(|&j| prices[j].clone()).sum();
        let value = alloc.value(i, v);
        let (best_affordable, _) = max_affordable(v.values(), prices, b);
        agents.push(CeAgent {
            agent: i,
            value,
            affordable: spent <= *b,
            spent,
            best_affordable,
            utility_maximizing: best_affordable <= value,
            aps: None,
        });
    }
    let equilibrium = all_allocated && agents.iter().all(|a| a.affordable && a.utility_maximizing);
    if equilibrium {
        for a in &mut agents {
            let aps = aps_exact(inst.valuation(a.agent), inst.entitlement(a.agent))?.value;
            assert!(
                a.value >= aps,
                "agent {} gets {} in an equilibrium but has APS {aps}",
                a.agent,
                a.value
            );
            a.aps = Some(aps);
        }
    }
    Ok(CeReport {
        agents,
        all_allocated,
        equilibrium,
        price_total: Some(prices.iter().sum()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareChain {
    #[serde(with = "serde_rat")]
    pub proportional: Rat,
    #[serde(with = "serde_rat")]
    pub tps: Rat,
    pub aps: Value,
    pub pessimistic: Value,
    #[serde(with = "serde_rat")]
    pub half_aps: Rat,
    /// Whether each of the four links holds.
    pub holds: [bool; 4],
    /// Whether each link holds strictly.
    pub strict: [bool; 4],
}

impl ShareChain {
    pub fn is_valid(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// proportional ≥ tps ≥ aps ≥ pessimistic ≥ aps/2, with each link checked exactly.
pub fn check_share_chain(v: &Valuation, b: &Rat) -> Result<ShareChain> {
    let proportional = proportional_share(v, b);
    let tps = tps(v, b);
    let aps = aps_exact(v, b)?.value;
    let pessimistic = pessimistic_share_exact(v, b)?;
    let half_aps = int(aps) / int(2);
    let chain = [
        proportional.clone(),
        tps.clone(),
        int(aps),
        int(pessimistic),
        half_aps.clone(),
    ];
    let holds = std::array::from_fn(|k| chain[k] >= chain[k + 1]);
    let strict = std::array::from_fn(|k| chain[k] > chain[k + 1]);
    Ok(ShareChain {
        proportional,
        tps,
        aps,
        pessimistic,
        half_aps,
        holds,
        strict,
    })
}
