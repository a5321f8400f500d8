use fairshare::{Rat, Result, Valuation, Value};
use num_traits::Zero;

use crate::{guard, PARTITION_MAX_AGENTS, PARTITION_MAX_ITEMS};

/// Calls `visit` with the block sums of every set partition of the items.
fn each_set_partition(v: &Valuation, mut visit: impl FnMut(&[Value])) {
    fn go(v: &Valuation, j: usize, blocks: &mut Vec<Value>, visit: &mut dyn FnMut(&[Value])) {
        if j == v.len() {
            visit(blocks);
            return;
        }
        for k in 0..blocks.len() {
            blocks[k] += v.value(j);
            go(v, j + 1, blocks, visit);
            blocks[k] -= v.value(j);
        }
        blocks.push(v.value(j));
        go(v, j + 1, blocks, visit);
        blocks.pop();
    }
    go(v, 0, &mut Vec::new(), &mut visit);
}

/// Sum of the `l` smallest parts after padding the partition to `d` parts.
fn smallest_union(blocks: &[Value], l: usize, d: usize) -> Value {
    let mut parts = blocks.to_vec();
    parts.resize(d, 0);
    parts.sort_unstable();
    parts[..l].iter().sum()
}

pub fn mms_brute(v: &Valuation, n: usize) -> Result<Value> {
    guard("oracle_partition_items", v.len(), PARTITION_MAX_ITEMS)?;
    guard("oracle_partition_agents", n, PARTITION_MAX_AGENTS)?;
    let mut best = 0;
    each_set_partition(v, |blocks| {
        if blocks.len() <= n {
            best = best.max(smallest_union(blocks, 1, n));
        }
    });
    Ok(best)
}

/// Best `l`-out-of-`d` share over `d ≤ m` and `l ≤ b·d`.
///
/// Larger `d` never helps: with more parts than items, the extra parts are
/// empty and the same value is reached with fewer parts.
pub fn pessimistic_brute(v: &Valuation, b: &Rat) -> Result<Value> {
    let m = v.len();
    guard("oracle_partition_items", m, PARTITION_MAX_ITEMS)?;
    let mut best = 0;
    each_set_partition(v, |blocks| {
        for d in blocks.len().max(1)..=m {
            let l = (b * Rat::from_integer((d as i64).into())).floor().to_integer();
            let l: usize = l.try_into().expect("small");
            if l >= 1 {
                best = best.max(smallest_union(blocks, l, d));
            }
        }
    });
    Ok(best)
}

/// `b_i` times the best over all allocations of `min_k v(A_k) / b_k`.
pub fn wmms_brute(entitlements: &[Rat], i: usize, v: &Valuation) -> Result<Rat> {
    let n = entitlements.len();
    let m = v.len();
    guard("oracle_partition_items", m, PARTITION_MAX_ITEMS)?;
    guard("oracle_partition_agents", n, PARTITION_MAX_AGENTS)?;
    let mut best = Rat::zero();
    let mut owner = vec![0usize; m];
    loop {
        let mut loads = vec![0 as Value; n];
        for (j, &k) in owner.iter().enumerate() {
            loads[k] += v.value(j);
        }
        let worst = (0..n)
            .map(|k| Rat::from_integer(loads[k].into()) / &entitlements[k])
            .min()
            .expect("n ≥ 1");
        best = best.max(worst);
        // next assignment in base n
        let mut j = 0;
        while j < m && owner[j] == n - 1 {
            owner[j] = 0;
            j += 1;
        }
        if j == m {
            break;
        }
        owner[j] += 1;
    }
    Ok(&entitlements[i] * best)
}
