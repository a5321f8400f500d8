//! Agents, valuations, instances and allocations.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};

use crate::error::{field, Error, Result};
use crate::scalar::{format_rat, int, is_valid_entitlement, parse_rat, Rat, Value};

/// Additive valuation: one non-negative integer per item.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Valuation(Vec<Value>);

impl Valuation {
    pub fn new(values: Vec<Value>) -> Self {
        Valuation(values)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }

    pub fn value(&self, item: usize) -> Value {
        self.0[item]
    }

    /// `v(M)`.
    pub fn total(&self) -> Value {
        self.0.iter().sum()
    }

    /// Value of a set of item indices.
    pub fn of<'a>(&self, items: impl IntoIterator<Item = &'a usize>) -> Value {
        items.into_iter().map(|&j| self.0[j]).sum()
    }

    /// Item indices by non-increasing value, ties by index.
    pub fn ranking(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.0.len()).collect();
        order.sort_by(|&a, &b| self.0[b].cmp(&self.0[a]).then(a.cmp(&b)));
        order
    }

    /// Values sorted non-increasing.
    pub fn sorted_desc(&self) -> Vec<Value> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    pub fn is_non_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<Vec<Value>> for Valuation {
    fn from(values: Vec<Value>) -> Self {
        Valuation(values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agent {
    pub name: Option<String>,
    pub entitlement: Rat,
    pub valuation: Valuation,
}

/// A validated fair-division instance: entitlements are positive and sum to one,
/// and every valuation covers the same items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    agents: Vec<Agent>,
    items: Option<Vec<String>>,
}

impl Instance {
    pub fn new(agents: Vec<Agent>, items: Option<Vec<String>>) -> Result<Self> {
        if agents.is_empty() {
            return Err(field("agents", "at least one agent is required"));
        }
        let m = agents[0].valuation.len();
        for (i, a) in agents.iter().enumerate() {
            if !is_valid_entitlement(&a.entitlement) {
                return Err(field(
                    format!("agents[{i}].entitlement"),
                    format!("{} is not in (0, 1]", format_rat(&a.entitlement)),
                ));
            }
            if a.valuation.len() != m {
                return Err(field(
                    format!("agents[{i}].values"),
                    format!("has {} entries, expected {m}", a.valuation.len()),
                ));
            }
        }
        if let Some(names) = &items {
            if names.len() != m {
                return Err(field(
                    "items",
                    format!("has {} names, expected {m}", names.len()),
                ));
            }
        }
        let sum: Rat = agents.iter().map(|a| a.entitlement.clone()).sum();
        if !sum.is_one() {
            return Err(Error::EntitlementSum(format_rat(&sum)));
        }
        Ok(Instance { agents, items })
    }

    /// Unnamed instance from `(entitlement, values)` rows.
    pub fn from_rows(rows: Vec<(Rat, Vec<Value>)>) -> Result<Self> {
        let agents = rows
            .into_iter()
            .map(|(b, v)| Agent {
                name: None,
                entitlement: b,
                valuation: Valuation::new(v),
            })
            .collect();
        Instance::new(agents, None)
    }

    /// Equal entitlements `1/n` for every row.
    pub fn equal(rows: Vec<Vec<Value>>) -> Result<Self> {
        let n = rows.len().max(1) as u64;
        let b = Rat::one() / int(n);
        Instance::from_rows(rows.into_iter().map(|v| (b.clone(), v)).collect())
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn m(&self) -> usize {
        self.agents[0].valuation.len()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, i: usize) -> &Agent {
        &self.agents[i]
    }

    pub fn valuation(&self, i: usize) -> &Valuation {
        &self.agents[i].valuation
    }

    pub fn entitlement(&self, i: usize) -> &Rat {
        &self.agents[i].entitlement
    }

    pub fn entitlements(&self) -> Vec<Rat> {
        self.agents.iter().map(|a| a.entitlement.clone()).collect()
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.agents.iter().map(|a| a.valuation.clone()).collect()
    }

    pub fn item_names(&self) -> Option<&[String]> {
        self.items.as_deref()
    }

    pub fn has_equal_entitlements(&self) -> bool {
        let first = &self.agents[0].entitlement;
        self.agents.iter().all(|a| &a.entitlement == first)
    }

    /// Parses the JSON instance format, reporting the offending field path on error.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Json = serde_json::from_str(text)?;
        let obj = doc
            .as_object()
            .ok_or_else(|| field("$", "expected an object"))?;
        let items = match obj.get("items") {
            None | Some(Json::Null) => None,
            Some(Json::Array(names)) => Some(
                names
                    .iter()
                    .enumerate()
                    .map(|(j, n)| {
                        n.as_str()
                            .map(str::to_owned)
                            .ok_or_else(|| field(format!("items[{j}]"), "expected a string"))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
            Some(_) => return Err(field("items", "expected an array of names")),
        };
        let rows = obj
            .get("agents")
            .and_then(Json::as_array)
            .ok_or_else(|| field("agents", "expected an array"))?;
        let mut agents = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            agents.push(parse_agent(i, row)?);
        }
        Instance::new(agents, items)
    }

    pub fn to_json_value(&self) -> Json {
        let agents: Vec<Json> = self
            .agents
            .iter()
            .map(|a| {
                let mut o = json!({
                    "entitlement": format_rat(&a.entitlement),
                    "values": a.valuation.values(),
                });
                if let Some(name) = &a.name {
                    o["name"] = json!(name);
                }
                o
            })
            .collect();
        let mut doc = json!({ "agents": agents });
        if let Some(items) = &self.items {
            doc["items"] = json!(items);
        }
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("instance serializes")
    }
}

fn parse_agent(i: usize, row: &Json) -> Result<Agent> {
    let at = |f: &str| format!("agents[{i}].{f}");
    let obj = row
        .as_object()
        .ok_or_else(|| field(format!("agents[{i}]"), "expected an object"))?;
    let name = match obj.get("name") {
        None | Some(Json::Null) => None,
        Some(Json::String(s)) => Some(s.clone()),
        Some(_) => return Err(field(at("name"), "expected a string")),
    };
    let entitlement = match obj.get("entitlement") {
        Some(Json::String(s)) => parse_rat(s).map_err(|e| field(at("entitlement"), e))?,
        Some(_) => return Err(field(at("entitlement"), "expected a \"p/q\" string")),
        None => return Err(field(at("entitlement"), "missing")),
    };
    let raw = obj
        .get("values")
        .and_then(Json::as_array)
        .ok_or_else(|| field(at("values"), "expected an array of integers"))?;
    let mut values = Vec::with_capacity(raw.len());
    for (j, x) in raw.iter().enumerate() {
        let path = format!("agents[{i}].values[{j}]");
        match x.as_u64() {
            Some(v) => values.push(v),
            None if x.as_i64().is_some() => {
                return Err(field(path, "negative value"));
            }
            None => return Err(field(path, "expected a non-negative integer")),
        }
    }
    Ok(Agent {
        name,
        entitlement,
        valuation: Valuation::new(values),
    })
}

/// One (possibly empty) bundle of item indices per agent, each kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Allocation {
    bundles: Vec<Vec<usize>>,
}

impl Allocation {
    pub fn new(mut bundles: Vec<Vec<usize>>) -> Self {
        for b in &mut bundles {
            b.sort_unstable();
        }
        Allocation { bundles }
    }

    pub fn empty(n: usize) -> Self {
        Allocation {
            bundles: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.bundles.len()
    }

    pub fn bundles(&self) -> &[Vec<usize>] {
        &self.bundles
    }

    pub fn bundle(&self, i: usize) -> &[usize] {
        &self.bundles[i]
    }

    pub fn into_bundles(self) -> Vec<Vec<usize>> {
        self.bundles
    }

    /// Checks disjointness and range; with `full`, also that every item is allocated.
    pub fn validate(&self, n: usize, m: usize, full: bool) -> Result<()> {
        if self.bundles.len() != n {
            return Err(Error::Allocation(format!(
                "{} bundles for {n} agents",
                self.bundles.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for (i, bundle) in self.bundles.iter().enumerate() {
            for &j in bundle {
                if j >= m {
                    return Err(Error::Allocation(format!(
                        "bundle {i} holds item {j}, but there are only {m} items"
                    )));
                }
                if !seen.insert(j) {
                    return Err(Error::Allocation(format!("item {j} is allocated twice")));
                }
            }
        }
        if full && seen.len() != m {
            let missing: Vec<usize> = (0..m).filter(|j| !seen.contains(j)).collect();
            return Err(Error::Allocation(format!("items {missing:?} are unallocated")));
        }
        Ok(())
    }

    /// Value of agent `i`'s bundle under `v`.
    pub fn value(&self, i: usize, v: &Valuation) -> Value {
        v.of(&self.bundles[i])
    }

    /// Every agent's value for its own bundle.
    pub fn values(&self, inst: &Instance) -> Vec<Value> {
        (0..self.n()).map(|i| self.value(i, inst.valuation(i))).collect()
    }
}

/// Sum of a list of rationals; zero when empty.
pub(crate) fn rat_sum<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Rat {
    xs.into_iter().fold(Rat::zero(), |acc, x| acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn parses_minimal_instance() {
        let inst = Instance::from_json(
            r#"{"agents":[{"entitlement":"1/2","values":[1,1]},{"entitlement":"1/2","values":[1,1]}]}"#,
        )
        .unwrap();
        assert_eq!((inst.n(), inst.m()), (2, 2));
    }

    #[test]
    fn rejects_bad_entitlement_sum() {
        let err = Instance::from_json(
            r#"{"agents":[{"entitlement":"2/5","values":[1]},{"entitlement":"2/5","values":[1]},{"entitlement":"2/5","values":[1]}]}"#,
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "entitlements sum 6/5 ≠ 1");
    }

    #[test]
    fn reports_field_paths() {
        let neg = Instance::from_json(
            r#"{"agents":[{"entitlement":"1","values":[1,-2]}]}"#,
        )
        .unwrap_err();
        assert_eq!(neg.to_string(), "agents[0].values[1]: negative value");

        let ragged = Instance::from_json(
            r#"{"agents":[{"entitlement":"1/2","values":[1,2]},{"entitlement":"1/2","values":[1]}]}"#,
        )
        .unwrap_err();
        assert!(ragged.to_string().starts_with("agents[1].values"));

        assert!(matches!(Instance::from_json("{"), Err(Error::Json(_))));
    }

    #[test]
    fn five_item_example_parses() {
        let inst = Instance::from_json(
            r#"{"agents":[{"entitlement":"2/5","values":[2,1,1,1,0]},{"entitlement":"3/5","values":[2,1,1,1,0]}]}"#,
        )
        .unwrap();
        assert_eq!(inst.entitlement(0), &rat(2, 5));
        assert_eq!(inst.valuation(0).values(), &[2, 1, 1, 1, 0]);
    }

    #[test]
    fn json_round_trip() {
        let inst = Instance::new(
            vec![
                Agent {
                    name: Some("ann".into()),
                    entitlement: rat(1, 3),
                    valuation: Valuation::new(vec![3, 0, 4]),
                },
                Agent {
                    name: None,
                    entitlement: rat(2, 3),
                    valuation: Valuation::new(vec![1, 1, 1]),
                },
            ],
            Some(vec!["a".into(), "b".into(), "c".into()]),
        )
        .unwrap();
        assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn allocation_validation() {
        let a = Allocation::new(vec![vec![2, 0], vec![1]]);
        assert_eq!(a.bundle(0), &[0, 2]);
        assert!(a.validate(2, 3, true).is_ok());
        assert!(a.validate(2, 4, true).is_err());
        assert!(a.validate(2, 4, false).is_ok());
        assert!(Allocation::new(vec![vec![0], vec![0]]).validate(2, 1, false).is_err());
        assert!(Allocation::new(vec![vec![5]]).validate(1, 3, false).is_err());
    }
}
