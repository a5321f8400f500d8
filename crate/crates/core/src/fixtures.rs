//! Small named instances with known shares, used by tests and demos.

use crate::instance::{Instance, Valuation};
use crate::scalar::{rat, Value};

/// Values `2,1,1,1,0`: proportional share, TPS and APS are 2 at `b = 2/5`,
/// while the pessimistic share is 1.
pub fn five_items() -> Valuation {
    Valuation::new(vec![2, 1, 1, 1, 0])
}

/// Fifteen items indexed by the pairs `{k, j}` of `1..=6` in lexicographic order.
///
/// Each of the six rows (all pairs containing a fixed `k`) is worth 97 and each
/// item lies in exactly two rows, so the APS at `b = 1/3` is 97 while no
/// three-way split reaches 97 in every part.
pub struct PairGrid {
    pub valuation: Valuation,
    pub rows: Vec<Vec<usize>>,
}

pub fn pair_grid() -> PairGrid {
    #[rustfmt::skip]
    let table: [[Value; 6]; 6] = [
        [0, 11, 7, 7, 7, 65],
        [11, 0, 23, 23, 23, 17],
        [7, 23, 0, 31, 31, 5],
        [7, 23, 31, 0, 31, 5],
        [7, 23, 31, 31, 0, 5],
        [65, 17, 5, 5, 5, 0],
    ];
    let mut pairs = Vec::new();
    for k in 0..6 {
        for j in k + 1..6 {
            pairs.push((k, j));
        }
    }
    let valuation = Valuation::new(pairs.iter().map(|&(k, j)| table[k][j]).collect());
    let rows = (0..6)
        .map(|r| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(k, j))| k == r || j == r)
                .map(|(idx, _)| idx)
                .collect()
        })
        .collect();
    PairGrid { valuation, rows }
}

/// `m` items of value 1.
pub fn identical_units(m: usize) -> Valuation {
    Valuation::new(vec![1; m])
}

/// Three agents with equal entitlements and five unit items.
pub fn three_agents_five_units() -> Instance {
    Instance::equal(vec![vec![1; 5]; 3]).expect("valid instance")
}

/// Two agents with identical valuations `28,24,20,16,16` (a 1/52 scale).
pub fn greedy_pair() -> Instance {
    Instance::equal(vec![vec![28, 24, 20, 16, 16]; 2]).expect("valid instance")
}

/// Two agents with entitlements `2/5` and `3/5` over three unit items.
pub fn ce_three_items() -> Instance {
    Instance::from_rows(vec![(rat(2, 5), vec![1, 1, 1]), (rat(3, 5), vec![1, 1, 1])])
        .expect("valid instance")
}

/// Ordered instance on which Greedy-EFX leaves agent 0 with little of her MMS.
///
/// Items come in groups `a = 0..=k`; group `a` has `4^a` large and `2·4^a`
/// small items, and there is one agent per large item. Agent 0 values a large
/// item of group `a` at `2k − a` and a small one at `a`. Everyone else values
/// them at `2^(k+2) − 2^(a+1)` and `2^a`.
pub struct GroupInstance {
    pub k: u32,
    pub instance: Instance,
    /// Item indices of group 0 (one large, two small).
    pub group_zero: Vec<usize>,
    /// A partition into `n` bundles, each worth at least `mms_floor` to agent 0.
    pub partition: Vec<Vec<usize>>,
    /// The least value agent 0 assigns to a bundle of `partition`.
    pub mms_floor: Value,
    /// Agent 0's value scale: a value `x` here is `x / scale` in unit terms.
    pub scale: Value,
}

pub fn group_instance(k: u32) -> GroupInstance {
    assert!(k >= 1);
    let groups = 0..=k;
    let count = |a: u32| 4usize.pow(a);
    let mut large: Vec<Vec<usize>> = Vec::new();
    let mut small: Vec<Vec<usize>> = vec![Vec::new(); k as usize + 1];
    let mut first_row: Vec<Value> = Vec::new();
    let mut other_row: Vec<Value> = Vec::new();
    let big = 1u64 << (k + 2);
    for a in groups.clone() {
        let start = first_row.len();
        large.push((start..start + count(a)).collect());
        for _ in 0..count(a) {
            first_row.push(2 * k as Value - a as Value);
            other_row.push(big - (1 << (a + 1)));
        }
    }
    for a in groups.clone().rev() {
        let start = first_row.len();
        small[a as usize] = (start..start + 2 * count(a)).collect();
        for _ in 0..2 * count(a) {
            first_row.push(a as Value);
            other_row.push(1 << a);
        }
    }
    let n: usize = groups.clone().map(count).sum();
    let mut rows = vec![first_row];
    rows.extend(std::iter::repeat_n(other_row, n - 1));
    let instance = Instance::equal(rows).expect("valid instance");

    let mut partition = Vec::new();
    for a in 1..=k as usize {
        let mut smalls = small[a - 1].iter();
        for pair in large[a].chunks(2) {
            let mut bundle = pair.to_vec();
            bundle.push(*smalls.next().expect("two small items per pair of large ones"));
            partition.push(bundle);
        }
    }
    let top = &small[k as usize];
    let triples = (top.len() - 2) / 3;
    for t in 0..triples {
        partition.push(top[3 * t..3 * t + 3].to_vec());
    }
    partition.push(vec![large[0][0], top[top.len() - 2], top[top.len() - 1]]);

    let v = instance.valuation(0);
    let mms_floor = partition.iter().map(|b| v.of(b)).min().expect("non-empty");
    let mut group_zero = vec![large[0][0]];
    group_zero.extend(&small[0]);
    GroupInstance {
        k,
        instance,
        group_zero,
        partition,
        mms_floor,
        scale: 2 * k as Value,
    }
}
