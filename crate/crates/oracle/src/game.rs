use fairshare::bidding::{GameState, Strategy, View};
use fairshare::{Rat, Result, Valuation, Value};
use num_traits::One;

use crate::{guard, GAME_MAX_ITEMS};

/// The least value `strategy` can end with against an opponent holding
/// `1 − b` who, each round, either concedes or matches the agent's bid and
/// buys some non-empty prefix of the agent's remaining items in her order.
pub fn game_tree_oracle(v: &Valuation, b: &Rat, strategy: &dyn Strategy) -> Result<Value> {
    guard("oracle_game_items", v.len(), GAME_MAX_ITEMS)?;
    let state = GameState::new(vec![b.clone(), Rat::one() - b], v.len());
    Ok(explore(v, &state, strategy.clone_box()))
}

fn explore(v: &Valuation, state: &GameState, mut strategy: Box<dyn Strategy>) -> Value {
    if state.is_over() {
        return v.of(state.bundle(0));
    }
    let mut bid = strategy.bid(&View { agent: 0, state });
    if bid < Rat::from_integer(0.into()) || bid > *state.budget(0) {
        bid = Rat::from_integer(0.into());
    }

    let mut worst = {
        let mut s = strategy.clone_box();
        let mut next = state.clone();
        let mut taken = s.select(&View { agent: 0, state }, &bid);
        if state.check_purchase(0, &bid, &taken).is_err() {
            taken = vec![top_remaining(v, state)];
        }
        next.purchase(0, &bid, &taken).expect("checked");
        explore(v, &next, s)
    };

    let mut order = state.remaining_items();
    order.sort_by(|&a, &c| v.value(c).cmp(&v.value(a)).then(a.cmp(&c)));
    for len in 1..=order.len() {
        let prefix = &order[..len];
        if state.check_purchase(1, &bid, prefix).is_err() {
            break;
        }
        let mut next = state.clone();
        next.purchase(1, &bid, prefix).expect("checked");
        worst = worst.min(explore(v, &next, strategy.clone_box()));
    }
    worst
}

fn top_remaining(v: &Valuation, state: &GameState) -> usize {
    state
        .remaining_items()
        .into_iter()
        .max_by(|&a, &c| v.value(a).cmp(&v.value(c)).then(c.cmp(&a)))
        .expect("items remain")
}
