//! Value-indexed knapsack tables with arbitrary exact prices.
//!
//! Tables are indexed by integer value levels, so the cost is `O(m · V)` field
//! operations where `V` is the value range.

use crate::scalar::{Scalar, Value};

/// Cheapest set whose value reaches `target`; `None` when even all items fall short.
///
/// Ties are resolved towards the set found first in index order.
pub fn cheapest_reaching<T: Scalar>(
    values: &[Value],
    prices: &[T],
    target: Value,
) -> Option<(T, Vec<usize>)> {
    let cap = target as usize;
    let mut best: Vec<Option<T>> = vec![None; cap + 1];
    best[0] = Some(T::zero());
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; cap + 1]; values.len()];
    for (j, (&v, p)) in values.iter().zip(prices).enumerate() {
        if v == 0 {
            continue;
        }
        for w in (0..=cap).rev() {
            let Some(base) = best[w].clone() else { continue };
            let u = (w + v as usize).min(cap);
            let cand = base + p.clone();
            if best[u].as_ref().is_none_or(|cur| cand < *cur) {
                best[u] = Some(cand);
                pred[j][u] = Some(w);
            }
        }
    }
    let price = best[cap].clone()?;
    Some((price, backtrack(&pred, cap)))
}

/// Highest value reachable with total price at most `budget`, and a set attaining it.
pub fn max_affordable<T: Scalar>(values: &[Value], prices: &[T], budget: &T) -> (Value, Vec<usize>) {
    let total: Value = values.iter().sum();
    let cap = total as usize;
    let mut best: Vec<Option<T>> = vec![None; cap + 1];
    best[0] = Some(T::zero());
    let mut pred: Vec<Vec<Option<usize>>> = vec![vec![None; cap + 1]; values.len()];
    let mut reach = 0usize;
    for (j, (&v, p)) in values.iter().zip(prices).enumerate() {
        if v == 0 {
            continue;
        }
        let v = v as usize;
        for w in (0..=reach).rev() {
            let Some(base) = best[w].clone() else { continue };
            let cand = base + p.clone();
            if best[w + v].as_ref().is_none_or(|cur| cand < *cur) {
                best[w + v] = Some(cand);
                pred[j][w + v] = Some(w);
            }
        }
        reach += v;
    }
    let level = (0..=cap)
        .rev()
        .find(|&w| best[w].as_ref().is_some_and(|p| p <= budget))
        .unwrap_or(0);
    (level as Value, backtrack(&pred, level))
}

fn backtrack(pred: &[Vec<Option<usize>>], mut state: usize) -> Vec<usize> {
    let mut set = Vec::new();
    for j in (0..pred.len()).rev() {
        if let Some(prev) = pred[j][state] {
            set.push(j);
            state = prev;
        }
    }
    set.reverse();
    set
}
