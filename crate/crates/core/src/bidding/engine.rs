use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{rat_sum, Allocation, Instance, Valuation};
use crate::scalar::{format_rat, int, serde_rat, serde_rat_vec, Rat};

/// Budgets, remaining items and bundles between rounds of the bidding game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameState {
    round: usize,
    remaining: Vec<bool>,
    budgets: Vec<Rat>,
    /// Items in the order they were won.
    bundles: Vec<Vec<usize>>,
    paid: Vec<Rat>,
}

impl GameState {
    pub fn new(budgets: Vec<Rat>, m: usize) -> Self {
        let n = budgets.len();
        GameState {
            round: 0,
            remaining: vec![true; m],
            budgets,
            bundles: vec![Vec::new(); n],
            paid: vec![Rat::zero(); n],
        }
    }

    pub fn round(&self) -> usize {
        self.round
    }

    pub fn n(&self) -> usize {
        self.budgets.len()
    }

    pub fn m(&self) -> usize {
        self.remaining.len()
    }

    pub fn is_remaining(&self, item: usize) -> bool {
        self.remaining[item]
    }

    pub fn remaining_items(&self) -> Vec<usize> {
        (0..self.m()).filter(|&j| self.remaining[j]).collect()
    }

    pub fn is_over(&self) -> bool {
        !self.remaining.iter().any(|&r| r)
    }

    pub fn budget(&self, agent: usize) -> &Rat {
        &self.budgets[agent]
    }

    pub fn total_budget(&self) -> Rat {
        rat_sum(&self.budgets)
    }

    pub fn total_paid(&self) -> Rat {
        rat_sum(&self.paid)
    }

    /// Items agent `agent` has won so far, in the order won.
    pub fn bundle(&self, agent: usize) -> &[usize] {
        &self.bundles[agent]
    }

    pub fn allocation(&self) -> Allocation {
        Allocation::new(self.bundles.clone())
    }

    /// Checks that `winner` may take `items` at `price` each.
    pub fn check_purchase(&self, winner: usize, price: &Rat, items: &[usize]) -> Result<(), String> {
        if items.is_empty() {
            return Err("empty selection".into());
        }
        for (k, &j) in items.iter().enumerate() {
            if j >= self.m() || !self.remaining[j] {
                return Err(format!("item {j} is not available"));
            }
            if items[..k].contains(&j) {
                return Err(format!("item {j} selected twice"));
            }
        }
        if price.is_negative() {
            return Err("negative price".into());
        }
        let cost = price * int(items.len() as u64);
        if cost > self.budgets[winner] {
            return Err(format!(
                "{} items at {} exceed the budget {}",
                items.len(),
                format_rat(price),
                format_rat(&self.budgets[winner])
            ));
        }
        Ok(())
    }

    /// Transfers `items` to `winner` at `price` each and advances the round.
    pub fn purchase(&mut self, winner: usize, price: &Rat, items: &[usize]) -> Result<Rat, String> {
        self.check_purchase(winner, price, items)?;
        let cost = price * int(items.len() as u64);
        for &j in items {
            self.remaining[j] = false;
            self.bundles[winner].push(j);
        }
        self.budgets[winner] -= &cost;
        self.paid[winner] += &cost;
        self.round += 1;
        Ok(cost)
    }
}

/// What a strategy sees when asked to act.
#[derive(Debug, Clone, Copy)]
pub struct View<'a> {
    pub agent: usize,
    pub state: &'a GameState,
}

impl View<'_> {
    pub fn budget(&self) -> &Rat {
        self.state.budget(self.agent)
    }

    pub fn won(&self) -> &[usize] {
        self.state.bundle(self.agent)
    }
}

/// A bidding behaviour. Strategies may keep state across rounds; `bid` is
/// called once per round for every agent, `select` only for the winner.
pub trait Strategy: fmt::Debug + Send {
    fn bid(&mut self, view: &View<'_>) -> Rat;

    /// Items to take after winning at `price` per item.
    fn select(&mut self, view: &View<'_>, price: &Rat) -> Vec<usize>;

    fn name(&self) -> &'static str;

    fn clone_box(&self) -> Box<dyn Strategy>;

    /// False when an internal precondition of the strategy's guarantee was
    /// observed to fail during play.
    fn sound(&self) -> bool {
        true
    }
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.clone_box()
    }
}

/// Who wins among equal highest bids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestIndex,
    /// Ties go to anyone but this agent (lowest index among the others).
    AgainstAgent(usize),
}

impl TieBreak {
    fn pick(self, tied: &[usize]) -> usize {
        match self {
            TieBreak::LowestIndex => tied[0],
            TieBreak::AgainstAgent(focal) => {
                tied.iter().copied().find(|&i| i != focal).unwrap_or(tied[0])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    #[serde(with = "serde_rat_vec")]
    pub bids: Vec<Rat>,
    pub winner: usize,
    pub taken: Vec<usize>,
    #[serde(with = "serde_rat")]
    pub payment: Rat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaultKind {
    InvalidBid,
    InvalidSelection,
}

/// A strategy misbehaved and the engine substituted a fallback action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub round: usize,
    pub agent: usize,
    pub kind: FaultKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub rounds: Vec<RoundRecord>,
    pub allocation: Allocation,
    pub flags: Vec<Fault>,
}

/// Validates a bid, replacing an out-of-range one by 0.
pub(crate) fn sanitize_bid(
    bid: Rat,
    state: &GameState,
    agent: usize,
    flags: &mut Vec<Fault>,
) -> Rat {
    if bid.is_negative() || bid > *state.budget(agent) {
        flags.push(Fault {
            round: state.round(),
            agent,
            kind: FaultKind::InvalidBid,
            detail: format!(
                "bid {} outside [0, {}]",
                format_rat(&bid),
                format_rat(state.budget(agent))
            ),
        });
        Rat::zero()
    } else {
        bid
    }
}

/// Asks the winner for a selection, falling back to her top remaining item.
pub(crate) fn settle_selection(
    strategy: &mut dyn Strategy,
    state: &GameState,
    winner: usize,
    price: &Rat,
    valuation: &Valuation,
    flags: &mut Vec<Fault>,
) -> Vec<usize> {
    let view = View { agent: winner, state };
    let choice = strategy.select(&view, price);
    match state.check_purchase(winner, price, &choice) {
        Ok(()) => choice,
        Err(detail) => {
            flags.push(Fault {
                round: state.round(),
                agent: winner,
                kind: FaultKind::InvalidSelection,
                detail,
            });
            let top = state
                .remaining_items()
                .into_iter()
                .max_by(|&a, &b| valuation.value(a).cmp(&valuation.value(b)).then(b.cmp(&a)))
                .expect("the game continues only while items remain");
            vec![top]
        }
    }
}

/// Plays the bidding game to the end: each round the highest bidder takes a
/// non-empty set of items, paying her bid for each of them.
pub fn run_game(
    inst: &Instance,
    mut strategies: Vec<Box<dyn Strategy>>,
    tie_break: TieBreak,
) -> Result<GameTranscript> {
    if strategies.len() != inst.n() {
        return Err(Error::Argument(format!(
            "{} strategies for {} agents",
            strategies.len(),
            inst.n()
        )));
    }
    let mut state = GameState::new(inst.entitlements(), inst.m());
    let mut rounds = Vec::new();
    let mut flags = Vec::new();
    while !state.is_over() {
        let bids: Vec<Rat> = strategies
            .iter_mut()
            .enumerate()
            .map(|(i, s)| {
                let raw = s.bid(&View { agent: i, state: &state });
                sanitize_bid(raw, &state, i, &mut flags)
            })
            .collect();
        let top = bids.iter().max().expect("n ≥ 1").clone();
        let tied: Vec<usize> = (0..bids.len()).filter(|&i| bids[i] == top).collect();
        let winner = tie_break.pick(&tied);
        let taken = settle_selection(
            strategies[winner].as_mut(),
            &state,
            winner,
            &top,
            inst.valuation(winner),
            &mut flags,
        );
        let payment = state
            .purchase(winner, &top, &taken)
            .expect("settled selections are affordable");
        rounds.push(RoundRecord {
            bids,
            winner,
            taken,
            payment,
        });
    }
    Ok(GameTranscript {
        rounds,
        allocation: state.allocation(),
        flags,
    })
}

/// Re-applies a transcript from scratch, checking every round, and returns the
/// state after each round.
pub fn replay(budgets: Vec<Rat>, m: usize, transcript: &GameTranscript) -> Result<Vec<GameState>> {
    let n = budgets.len();
    let mut state = GameState::new(budgets, m);
    let mut states = Vec::with_capacity(transcript.rounds.len());
    for (t, r) in transcript.rounds.iter().enumerate() {
        let bad = |msg: String| Error::Argument(format!("round {t}: {msg}"));
        if r.bids.len() != n || r.winner >= n {
            return Err(bad("bids or winner do not match the agent count".into()));
        }
        if let Some(i) = (0..n).find(|&i| r.bids[i].is_negative() || r.bids[i] > *state.budget(i)) {
            return Err(bad(format!("agent {i} bid beyond her budget")));
        }
        let top = r.bids.iter().max().expect("n ≥ 1");
        if r.bids[r.winner] != *top {
            return Err(bad("the winner did not place a highest bid".into()));
        }
        let cost = state.purchase(r.winner, top, &r.taken).map_err(bad)?;
        if cost != r.payment {
            return Err(bad("recorded payment differs from bid × items".into()));
        }
        states.push(state.clone());
    }
    if state.allocation() != transcript.allocation {
        return Err(Error::Argument("replayed allocation differs from the transcript".into()));
    }
    Ok(states)
}
