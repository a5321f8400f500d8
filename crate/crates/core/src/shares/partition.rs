//! Branch-and-bound over partitions: MMS, ℓ-out-of-d, pessimistic, weighted MMS.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::instance::Valuation;
use crate::limits::{guard, Limits};
use crate::scalar::{floor_value, int, Rat, Value};

/// Maximin share with `n_parts` bundles.
pub fn mms_exact(v: &Valuation, n_parts: usize) -> Result<Value> {
    if n_parts == 0 {
        return Err(Error::Argument("n_parts must be positive".into()));
    }
    Limits::from_env().check_items(v.len())?;
    Ok(SmallestSum::new(v, 1, n_parts).run())
}

/// Best value of the worst `l` bundles over all partitions into `d` bundles.
pub fn l_out_of_d_share_exact(v: &Valuation, l: usize, d: usize) -> Result<Value> {
    if l == 0 || l > d {
        return Err(Error::Argument(format!("need 1 ≤ l ≤ d, got l={l}, d={d}")));
    }
    Limits::from_env().check_items(v.len())?;
    Ok(SmallestSum::new(v, l, d).run())
}

/// Pessimistic share: the best `l`-out-of-`d` share with `l/d ≤ b`.
///
/// For each `d` only the largest admissible `l = ⌊b·d⌋` matters, and `d`
/// never needs to exceed the number of items.
pub fn pessimistic_share_exact(v: &Valuation, b: &Rat) -> Result<Value> {
    Limits::from_env().check_items(v.len())?;
    let mut best = 0;
    for d in 1..=v.len() {
        let l = floor_value(&(b * int(d as Value))) as usize;
        if l == 0 {
            continue;
        }
        best = best.max(SmallestSum::new(v, l.min(d), d).run());
    }
    Ok(best)
}

/// Maximizes the sum of the `l` smallest bundle values over `d`-partitions.
struct SmallestSum {
    items: Vec<Value>,
    total: Value,
    l: usize,
    d: usize,
    loads: Vec<Value>,
    best: Value,
    ceiling: Value,
}

impl SmallestSum {
    fn new(v: &Valuation, l: usize, d: usize) -> Self {
        let items: Vec<Value> = v.sorted_desc().into_iter().filter(|&x| x > 0).collect();
        let total = items.iter().sum();
        let ceiling = (l as u128 * total as u128 / d as u128) as Value;
        let mut search = SmallestSum {
            items,
            total,
            l,
            d,
            loads: vec![0; d],
            best: 0,
            ceiling,
        };
        search.best = search.greedy();
        search
    }

    fn run(mut self) -> Value {
        if self.l == self.d {
            return self.total;
        }
        self.branch(0);
        self.best
    }

    /// Largest item into the lightest bundle.
    fn greedy(&self) -> Value {
        let mut loads = vec![0; self.d];
        for &x in &self.items {
            let k = (0..self.d).min_by_key(|&k| loads[k]).expect("d ≥ 1");
            loads[k] += x;
        }
        self.score(&loads)
    }

    fn score(&self, loads: &[Value]) -> Value {
        let mut sorted = loads.to_vec();
        sorted.sort_unstable();
        sorted[..self.l].iter().sum()
    }

    /// The `d − k` bundles outside the `k` heaviest end with at most
    /// `total − (their current loads)`, and the `l` lightest bundles overall are
    /// no heavier than the `l` lightest among them.
    fn bound(&self) -> Value {
        let mut sorted = self.loads.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut top = 0;
        let mut bound = Value::MAX;
        for k in 0..=self.d - self.l {
            let rest = (self.total - top) as u128;
            bound = bound.min((self.l as u128 * rest / (self.d - k) as u128) as Value);
            if k < self.d {
                top += sorted[k];
            }
        }
        bound
    }

    fn branch(&mut self, idx: usize) {
        if self.best >= self.ceiling {
            return;
        }
        if idx == self.items.len() {
            self.best = self.best.max(self.score(&self.loads));
            return;
        }
        if self.bound() <= self.best {
            return;
        }
        let x = self.items[idx];
        let mut order: Vec<usize> = (0..self.d).collect();
        order.sort_by_key(|&k| self.loads[k]);
        let mut tried: Vec<Value> = Vec::with_capacity(self.d);
        for k in order {
            let load = self.loads[k];
            if tried.contains(&load) {
                continue;
            }
            tried.push(load);
            self.loads[k] += x;
            self.branch(idx + 1);
            self.loads[k] -= x;
        }
    }
}

/// Weighted maximin share of agent `i`: the best over allocations of
/// `min_k b_i · v_i(A_k) / b_k`.
pub fn wmms_exact(entitlements: &[Rat], i: usize, v: &Valuation) -> Result<Rat> {
    let n = entitlements.len();
    if i >= n {
        return Err(Error::Argument(format!("agent {i} out of range for {n} agents")));
    }
    let b_i = &entitlements[i];
    if n == 1 {
        return Ok(int(v.total()));
    }
    let items: Vec<Value> = v.sorted_desc().into_iter().filter(|&x| x > 0).collect();
    if items.len() < n {
        return Ok(Rat::zero());
    }
    let limits = Limits::from_env();
    limits.check_items(items.len())?;
    let space = (n as u128).checked_pow(items.len() as u32).unwrap_or(u128::MAX);
    guard("allocations", space, limits.allocations)?;

    let mut search = Weighted {
        suffix: suffix_sums(&items),
        items,
        weights: entitlements.to_vec(),
        loads: vec![0; n],
        best: Rat::zero(),
    };
    search.branch(0);
    Ok(b_i * search.best)
}

fn suffix_sums(items: &[Value]) -> Vec<Value> {
    let mut suffix = vec![0; items.len() + 1];
    for k in (0..items.len()).rev() {
        suffix[k] = suffix[k + 1] + items[k];
    }
    suffix
}

struct Weighted {
    items: Vec<Value>,
    suffix: Vec<Value>,
    weights: Vec<Rat>,
    loads: Vec<Value>,
    /// Best `min_k v(A_k) / b_k` so far.
    best: Rat,
}

impl Weighted {
    fn branch(&mut self, idx: usize) {
        let rest = self.suffix[idx];
        let bound = self
            .loads
            .iter()
            .zip(&self.weights)
            .map(|(&load, w)| int(load + rest) / w)
            .min()
            .expect("n ≥ 2");
        if bound <= self.best {
            return;
        }
        if idx == self.items.len() {
            self.best = bound;
            return;
        }
        let x = self.items[idx];
        let mut tried: Vec<(Value, &Rat)> = Vec::new();
        let weights = self.weights.clone();
        for (k, w) in weights.iter().enumerate() {
            let key = (self.loads[k], w);
            if tried.contains(&key) {
                continue;
            }
            tried.push(key);
            self.loads[k] += x;
            self.branch(idx + 1);
            self.loads[k] -= x;
        }
    }
}
