//! A single pooled opponent that outbids the agent at the lowest possible cost.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::instance::{Allocation, Valuation};
use crate::scalar::{int, rat, Rat, Value};

use super::engine::{sanitize_bid, settle_selection, GameState, GameTranscript, RoundRecord, Strategy, View};
use super::strategies::{ApsStrategy, EndGame};

/// Rounds (0-based) in which the adversary lets the agent win.
///
/// After the last listed round, the adversary keeps outbidding while she can
/// afford it and concedes otherwise. Before it, every round must be bought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WinPattern {
    pub first: Option<usize>,
    pub second: Option<usize>,
}

impl WinPattern {
    pub const NONE: WinPattern = WinPattern {
        first: None,
        second: None,
    };

    pub fn pair(k: usize, l: usize) -> Self {
        assert!(k < l);
        WinPattern {
            first: Some(k),
            second: Some(l),
        }
    }

    pub fn single(k: usize) -> Self {
        WinPattern {
            first: Some(k),
            second: None,
        }
    }

    fn concedes(&self, round: usize) -> bool {
        self.first == Some(round) || self.second == Some(round)
    }

    fn last(&self) -> Option<usize> {
        self.second.or(self.first)
    }

    /// The patterns with no, one or two conceded rounds among the first `m`.
    pub fn all(m: usize) -> Vec<WinPattern> {
        let mut out = vec![WinPattern::NONE];
        for k in 0..m {
            out.push(WinPattern::single(k));
            for l in k + 1..m {
                out.push(WinPattern::pair(k, l));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdversaryOutcome {
    /// The pattern is playable; agent 0 is the focal agent, agent 1 the adversary.
    Feasible(GameTranscript),
    /// The adversary runs out of budget (or items run out) before the pattern completes.
    Infeasible { round: usize },
}

impl AdversaryOutcome {
    pub fn agent_value(&self, v: &Valuation) -> Option<Value> {
        match self {
            AdversaryOutcome::Feasible(t) => Some(t.allocation.value(0, v)),
            AdversaryOutcome::Infeasible { .. } => None,
        }
    }
}

/// Plays `strategy` (entitlement `b`) against an opponent holding the other
/// `1 − b` of the budget. When the opponent wins she matches the agent's bid
/// and takes the agent's best remaining item.
pub fn worst_case_adversary(
    v: &Valuation,
    b: &Rat,
    strategy: &dyn Strategy,
    pattern: WinPattern,
) -> AdversaryOutcome {
    play(v, b, strategy.clone_box(), pattern).0
}

pub(crate) fn play(
    v: &Valuation,
    b: &Rat,
    mut strategy: Box<dyn Strategy>,
    pattern: WinPattern,
) -> (AdversaryOutcome, Box<dyn Strategy>) {
    let m = v.len();
    let mut state = GameState::new(vec![b.clone(), Rat::one() - b], m);
    let order = v.ranking();
    let mut rounds = Vec::new();
    let mut flags = Vec::new();
    while !state.is_over() {
        let round = state.round();
        let raw = strategy.bid(&View { agent: 0, state: &state });
        let bid = sanitize_bid(raw, &state, 0, &mut flags);
        let affordable = bid <= *state.budget(1);
        let pending = pattern.last().is_some_and(|last| round < last);
        let agent_wins = pattern.concedes(round) || (!affordable && !pending);
        if !agent_wins && !affordable {
            return (AdversaryOutcome::Infeasible { round }, strategy);
        }
        let (winner, taken, bids) = if agent_wins {
            let taken = settle_selection(strategy.as_mut(), &state, 0, &bid, v, &mut flags);
            (0, taken, vec![bid.clone(), Rat::zero()])
        } else {
            let top = *order
                .iter()
                .find(|&&j| state.is_remaining(j))
                .expect("items remain");
            (1, vec![top], vec![bid.clone(), bid.clone()])
        };
        let payment = state
            .purchase(winner, &bid, &taken)
            .expect("purchases are checked before they happen");
        rounds.push(RoundRecord {
            bids,
            winner,
            taken,
            payment,
        });
    }
    if pattern.last().is_some_and(|last| last >= rounds.len()) {
        return (AdversaryOutcome::Infeasible { round: rounds.len() }, strategy);
    }
    let transcript = GameTranscript {
        rounds,
        allocation: Allocation::new(vec![state.bundle(0).to_vec(), state.bundle(1).to_vec()]),
        flags,
    };
    (AdversaryOutcome::Feasible(transcript), strategy)
}

/// The least value the agent ends with over all feasible patterns, with a
/// pattern attaining it.
pub fn worst_case_value(v: &Valuation, b: &Rat, strategy: &dyn Strategy) -> (Value, WinPattern) {
    let mut worst: Option<(Value, WinPattern)> = None;
    for pattern in WinPattern::all(v.len()) {
        if let Some(value) = worst_case_adversary(v, b, strategy, pattern).agent_value(v) {
            if worst.is_none_or(|(w, _)| value < w) {
                worst = Some((value, pattern));
            }
        }
    }
    worst.expect("conceding every round is always feasible")
}

/// Whether the `3z/5` strategy with target `z` reaches `3z/5` against every
/// feasible pattern without tripping its internal check.
pub fn test_z_good(v: &Valuation, b: &Rat, z: Value) -> bool {
    if z == 0 {
        return true;
    }
    let goal = rat(3, 5) * int(z);
    let strategy = ApsStrategy::new(v, b, z, EndGame::ThreeFifths);
    WinPattern::all(v.len()).into_iter().all(|pattern| {
        let (outcome, after) = play(v, b, Box::new(strategy.clone()), pattern);
        match outcome.agent_value(v) {
            Some(value) => int(value) >= goal && after.sound(),
            None => true,
        }
    })
}

/// Binary search for a good target.
///
/// Goodness need not be monotone above the AnyPrice share, but every target up
/// to that share is good and the search only discards targets that tested bad,
/// so the result is good and at least the share.
pub fn best_good_z(v: &Valuation, b: &Rat) -> Value {
    let (mut lo, mut hi) = (0, v.total());
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if test_z_good(v, b, mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

