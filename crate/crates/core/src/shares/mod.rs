//! Share notions: proportional, truncated proportional, AnyPrice, and the
//! partition-based maximin family.

mod aps;
mod partition;

pub use aps::{
    aps_exact, aps_exact_calls, check_bundle_witness, check_price_certificate,
    two_agent_aps_allocation, ApsCertificate, BundleWitness, PriceCertificate,
};
pub use partition::{l_out_of_d_share_exact, mms_exact, pessimistic_share_exact, wmms_exact};

use num_traits::{One, Zero};

use crate::instance::Valuation;
use crate::scalar::{ceil_inverse, floor_inverse, int, rat, Rat, Value};

/// `b · v(M)`.
pub fn proportional_share(v: &Valuation, b: &Rat) -> Rat {
    b * int(v.total())
}

/// Truncated proportional share: the largest `z` with `b · Σ min(v(j), z) = z`.
///
/// Peels off the top item while it exceeds the current proportional share;
/// removing it turns entitlement `b` into `b / (1 − b)` on the rest.
pub fn tps(v: &Valuation, b: &Rat) -> Rat {
    let items = v.sorted_desc();
    let half = rat(1, 2);
    let mut b = b.clone();
    let mut rest: Value = v.total();
    for &top in &items {
        let share = &b * int(rest);
        if int(top) <= share {
            return share;
        }
        let scale = &b / (Rat::one() - &b);
        if b >= half {
            return scale * int(rest - top);
        }
        b = scale;
        rest -= top;
    }
    Rat::zero()
}

/// AnyPrice share of a unit-demand agent: the value of her `⌈1/b⌉`-th best item.
pub fn unit_demand_aps(item_values: &[Value], b: &Rat) -> Value {
    let mut sorted = item_values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.get(ceil_inverse(b) - 1).copied().unwrap_or(0)
}

/// Value of the `⌊1/b⌋`-th best item (0 if there are fewer items).
pub fn rank_value(v: &Valuation, b: &Rat) -> Value {
    v.sorted_desc().get(floor_inverse(b) - 1).copied().unwrap_or(0)
}
