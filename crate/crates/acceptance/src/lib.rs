//! Seeded random instances for the acceptance checks.

use fairshare::{rat, Instance, Rat, Valuation, Value};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn valuation(rng: &mut impl Rng, m: usize, max_value: Value) -> Valuation {
    Valuation::new((0..m).map(|_| rng.gen_range(0..=max_value)).collect())
}

/// An entitlement `p/q` with `q ≤ 8`.
pub fn entitlement(rng: &mut impl Rng) -> Rat {
    let q = rng.gen_range(2..=8);
    rat(rng.gen_range(1..q), q)
}

/// Entitlements proportional to random weights in `1..=6`.
pub fn entitlements(rng: &mut impl Rng, n: usize) -> Vec<Rat> {
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| rat(w, total)).collect()
}

pub fn instance(rng: &mut impl Rng, n: usize, m: usize, max_value: Value) -> Instance {
    let rows = entitlements(rng, n)
        .into_iter()
        .map(|b| (b, valuation(rng, m, max_value).values().to_vec()))
        .collect();
    Instance::from_rows(rows).expect("weights normalise to one")
}

pub fn equal_instance(rng: &mut impl Rng, n: usize, m: usize, max_value: Value) -> Instance {
    let rows = (0..n)
        .map(|_| valuation(rng, m, max_value).values().to_vec())
        .collect();
    Instance::equal(rows).expect("valid instance")
}
