//! Bidding strategies with provable value guarantees.

use num_traits::{One, Signed, Zero};

use crate::instance::Valuation;
use crate::scalar::{int, rat, Rat, Value};

use super::engine::{Strategy, View};

fn rats(v: &Valuation) -> Vec<Rat> {
    v.values().iter().map(|&x| int(x)).collect()
}

/// Remaining items by `values` descending, then `tiebreak` descending, then index.
fn ranked(values: &[Rat], tiebreak: &[Rat], view: &View<'_>) -> Vec<usize> {
    let mut items = view.state.remaining_items();
    items.sort_by(|&a, &b| {
        values[b]
            .cmp(&values[a])
            .then_with(|| tiebreak[b].cmp(&tiebreak[a]))
            .then(a.cmp(&b))
    });
    items
}

fn top_two(values: &[Rat], order: &[usize]) -> (Rat, Rat) {
    let at = |k: usize| order.get(k).map_or_else(Rat::zero, |&j| values[j].clone());
    (at(0), at(1))
}

fn sum_over(values: &[Rat], items: &[usize]) -> Rat {
    items.iter().fold(Rat::zero(), |acc, &j| acc + &values[j])
}

/// Bids the value of the best remaining item as a fraction of the whole,
/// `min(x / s, budget)`, and takes that item on a win.
#[derive(Debug, Clone)]
pub struct BidMaxValue {
    values: Vec<Rat>,
    total: Rat,
    /// Converts the normalized bid into the game's currency.
    currency: Rat,
}

impl BidMaxValue {
    /// Values are truncated at `cap` when given.
    pub fn new(v: &Valuation, cap: Option<Value>) -> Self {
        let values: Vec<Rat> = v
            .values()
            .iter()
            .map(|&x| int(cap.map_or(x, |c| x.min(c))))
            .collect();
        let total = values.iter().sum();
        BidMaxValue {
            values,
            total,
            currency: Rat::one(),
        }
    }

    /// A copy of the strategy for a sub-game whose budgets are scaled by `currency`
    /// and whose items are worth `values` in total `total`.
    pub(crate) fn scaled(values: Vec<Rat>, total: Rat, currency: Rat) -> Self {
        BidMaxValue {
            values,
            total,
            currency,
        }
    }
}

impl Strategy for BidMaxValue {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        let best = view
            .state
            .remaining_items()
            .into_iter()
            .map(|j| self.values[j].clone())
            .max()
            .unwrap_or_else(Rat::zero);
        if !best.is_positive() || !self.total.is_positive() {
            return Rat::zero();
        }
        (&self.currency * best / &self.total).min(view.budget().clone())
    }

    fn select(&mut self, view: &View<'_>, _price: &Rat) -> Vec<usize> {
        ranked(&self.values, &self.values, view).into_iter().take(1).collect()
    }

    fn name(&self) -> &'static str {
        "bid-max-value"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TpsRule {
    Single,
    Pair,
    Proportional,
}

/// Reaches a `1/(2 − b)` fraction of the truncated proportional share.
///
/// With `x, y` the two best remaining values, `s` the remaining total and
/// `b_t / B_t` the agent's share of the remaining budget:
/// * if `x ≥ (b_t/B_t)·s`, bid everything for the top item and stop;
/// * if `x < (b_t/(2B_t − b_t))·s ≤ (x + y)·B_t/b_t`, bid `b_t/2` for the top pair and stop;
/// * otherwise bid `(x/s)·B_t` for the top item.
#[derive(Debug, Clone)]
pub struct TpsStrategy {
    values: Vec<Rat>,
    rule: TpsRule,
    finished: bool,
}

impl TpsStrategy {
    pub fn new(v: &Valuation) -> Self {
        TpsStrategy {
            values: rats(v),
            rule: TpsRule::Proportional,
            finished: false,
        }
    }
}

impl Strategy for TpsStrategy {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        let own = view.budget().clone();
        if self.finished || !own.is_positive() {
            return Rat::zero();
        }
        let order = ranked(&self.values, &self.values, view);
        let rest = sum_over(&self.values, &order);
        if !rest.is_positive() {
            return Rat::zero();
        }
        let (x, y) = top_two(&self.values, &order);
        let all = view.state.total_budget();
        let fair = &own / &all * &rest;
        if x >= fair {
            self.rule = TpsRule::Single;
            return own;
        }
        let pair_limit = &own / (int(2) * &all - &own) * &rest;
        if x < pair_limit && &x + &y >= fair {
            self.rule = TpsRule::Pair;
            return own / int(2);
        }
        self.rule = TpsRule::Proportional;
        (x / rest * all).min(own)
    }

    fn select(&mut self, view: &View<'_>, _price: &Rat) -> Vec<usize> {
        let order = ranked(&self.values, &self.values, view);
        let take = match self.rule {
            TpsRule::Single => 1,
            TpsRule::Pair => 2,
            TpsRule::Proportional => 1,
        };
        if self.rule != TpsRule::Proportional {
            self.finished = true;
        }
        order.into_iter().take(take).collect()
    }

    fn name(&self) -> &'static str {
        "tps"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Always bids the entitlement `b` and takes the best remaining item; ends
/// with one of her `⌊1/b⌋` best items.
#[derive(Debug, Clone)]
pub struct RankItem {
    values: Vec<Rat>,
    entitlement: Rat,
}

impl RankItem {
    pub fn new(v: &Valuation, b: &Rat) -> Self {
        RankItem {
            values: rats(v),
            entitlement: b.clone(),
        }
    }
}

impl Strategy for RankItem {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        self.entitlement.clone().min(view.budget().clone())
    }

    fn select(&mut self, view: &View<'_>, _price: &Rat) -> Vec<usize> {
        ranked(&self.values, &self.values, view).into_iter().take(1).collect()
    }

    fn name(&self) -> &'static str {
        "rank"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Never bids; takes her best item if she wins anyway.
#[derive(Debug, Clone)]
pub struct ZeroBid {
    values: Vec<Rat>,
}

impl ZeroBid {
    pub fn new(v: &Valuation) -> Self {
        ZeroBid { values: rats(v) }
    }
}

impl Strategy for ZeroBid {
    fn bid(&mut self, _view: &View<'_>) -> Rat {
        Rat::zero()
    }

    fn select(&mut self, view: &View<'_>, _price: &Rat) -> Vec<usize> {
        ranked(&self.values, &self.values, view).into_iter().take(1).collect()
    }

    fn name(&self) -> &'static str {
        "zero"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[derive(Debug, Clone)]
enum Stage {
    /// Buying at fair prices; `full` records whether last round bid the whole budget.
    First { full: bool },
    /// Bid-your-max-value on rescaled values.
    Second(BidMaxValue),
    Idle,
}

/// Reaches `3z/2` whenever `z` is at most the AnyPrice share for half the entitlement.
///
/// Values are truncated at `z`. While `x + u < 3z/2` (`u` is the value won so
/// far) the agent bids the fair price `x/s`; otherwise she bids her whole
/// budget for the top item. At the first round where a whole-budget bid is
/// followed by a fair-price bid she switches to bid-your-max-value with item
/// values `min(b_r·s, ((b − 2b_r)/b_r)·v(e))`, `b_r` being her budget then.
#[derive(Debug, Clone)]
pub struct HalfShareStrategy {
    raw: Vec<Rat>,
    target: Rat,
    entitlement: Rat,
    currency: Rat,
    capped: Vec<Rat>,
    total: Rat,
    start: Option<usize>,
    stage: Stage,
    sound: bool,
}

impl HalfShareStrategy {
    pub fn new(v: &Valuation, b: &Rat, z: Value) -> Self {
        Self::scaled(rats(v), b.clone(), int(z), Rat::one())
    }

    /// Plays in a sub-game that starts at the next bid, where the agent's
    /// entitlement is `entitlement` and budgets are measured in units of `currency`.
    pub(crate) fn scaled(raw: Vec<Rat>, entitlement: Rat, target: Rat, currency: Rat) -> Self {
        let capped = raw.iter().map(|x| x.clone().min(target.clone())).collect();
        HalfShareStrategy {
            raw,
            target,
            entitlement,
            currency,
            capped,
            total: Rat::zero(),
            start: None,
            stage: Stage::First { full: false },
            sound: true,
        }
    }

    fn won(&self, view: &View<'_>) -> Rat {
        let start = self.start.unwrap_or(0);
        sum_over(&self.capped, &view.won()[start..])
    }

    fn enter_second_stage(&mut self, view: &View<'_>) -> Stage {
        let own = view.budget() / &self.currency;
        if !own.is_positive() {
            return Stage::Idle;
        }
        let all = view.state.total_budget() / &self.currency;
        let factor = (&self.entitlement - int(2) * &own) / &own;
        let ceiling = &own * &self.total;
        let mut rescaled = vec![Rat::zero(); self.raw.len()];
        for j in view.state.remaining_items() {
            let x = (&factor * &self.capped[j]).min(ceiling.clone());
            rescaled[j] = x.max(Rat::zero());
        }
        let total: Rat = rescaled.iter().sum();
        let largest = rescaled.iter().max().cloned().unwrap_or_else(Rat::zero);
        if largest > &own / &all * &total {
            self.sound = false;
        }
        Stage::Second(BidMaxValue::scaled(rescaled, total, &self.currency * all))
    }
}

impl Strategy for HalfShareStrategy {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        if self.start.is_none() {
            self.start = Some(view.won().len());
            self.total = sum_over(&self.capped, &view.state.remaining_items());
        }
        let goal = rat(3, 2) * &self.target;
        if self.won(view) >= goal {
            self.stage = Stage::Idle;
        }
        let full = match &mut self.stage {
            Stage::Idle => return Rat::zero(),
            Stage::Second(inner) => return inner.bid(view),
            Stage::First { full } => *full,
        };
        let order = ranked(&self.capped, &self.raw, view);
        let (x, _) = top_two(&self.capped, &order);
        if &x + self.won(view) >= goal {
            self.stage = Stage::First { full: true };
            return view.budget().clone();
        }
        if full {
            self.stage = self.enter_second_stage(view);
            return match &mut self.stage {
                Stage::Second(inner) => inner.bid(view),
                _ => Rat::zero(),
            };
        }
        if !self.total.is_positive() {
            return Rat::zero();
        }
        (&self.currency * x / &self.total).min(view.budget().clone())
    }

    fn select(&mut self, view: &View<'_>, price: &Rat) -> Vec<usize> {
        match &mut self.stage {
            Stage::Second(inner) => inner.select(view, price),
            _ => ranked(&self.capped, &self.raw, view).into_iter().take(1).collect(),
        }
    }

    fn name(&self) -> &'static str {
        "half-share"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn sound(&self) -> bool {
        self.sound
    }
}

/// What [`ApsStrategy`] does once no single item or pair reaches `3z/5`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EndGame {
    /// Guarantees `3z/5` for `z` up to the AnyPrice share.
    #[default]
    ThreeFifths,
    /// Bid-your-max-value on the rest, for the `(2/3)`-proportional variant.
    MaxValue,
}

#[derive(Debug, Clone)]
enum ApsPhase {
    Opening { take: usize },
    Delegated(Box<dyn Strategy>),
    Done,
}

/// Reaches `3z/5` whenever `z` is at most the AnyPrice share.
///
/// 1. If the best item is worth `3z/5`, bid everything for it.
/// 2. Else if the best pair is, bid `b/2` for the pair.
/// 3. Otherwise renormalize all budgets by their current total `B'` and play
///    [`HalfShareStrategy`] with target `2z/5` on what is left.
#[derive(Debug, Clone)]
pub struct ApsStrategy {
    values: Vec<Rat>,
    entitlement: Rat,
    target: Value,
    end_game: EndGame,
    phase: ApsPhase,
}

impl ApsStrategy {
    pub fn new(v: &Valuation, b: &Rat, z: Value, end_game: EndGame) -> Self {
        ApsStrategy {
            values: rats(v),
            entitlement: b.clone(),
            target: z,
            end_game,
            phase: ApsPhase::Opening { take: 1 },
        }
    }

    pub fn target(&self) -> Value {
        self.target
    }

    fn delegate(&mut self, view: &View<'_>) -> Box<dyn Strategy> {
        let all = view.state.total_budget();
        match self.end_game {
            EndGame::ThreeFifths => Box::new(HalfShareStrategy::scaled(
                self.values.clone(),
                view.budget() / &all,
                rat(2, 5) * int(self.target),
                all,
            )),
            EndGame::MaxValue => {
                let mut rest = vec![Rat::zero(); self.values.len()];
                for j in view.state.remaining_items() {
                    rest[j] = self.values[j].clone();
                }
                let total = rest.iter().sum();
                Box::new(BidMaxValue::scaled(rest, total, all))
            }
        }
    }
}

impl Strategy for ApsStrategy {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        if let ApsPhase::Opening { .. } = self.phase {
            if !view.won().is_empty() {
                self.phase = ApsPhase::Done;
            } else if self.target == 0 {
                self.phase = ApsPhase::Delegated(self.delegate(view));
            } else {
                let goal = rat(3, 5) * int(self.target);
                let order = ranked(&self.values, &self.values, view);
                let (x, y) = top_two(&self.values, &order);
                if x >= goal {
                    self.phase = ApsPhase::Opening { take: 1 };
                    return view.budget().clone();
                }
                if x + y >= goal {
                    self.phase = ApsPhase::Opening { take: 2 };
                    return (&self.entitlement / int(2)).min(view.budget().clone());
                }
                self.phase = ApsPhase::Delegated(self.delegate(view));
            }
        }
        match &mut self.phase {
            ApsPhase::Delegated(inner) => inner.bid(view),
            _ => Rat::zero(),
        }
    }

    fn select(&mut self, view: &View<'_>, price: &Rat) -> Vec<usize> {
        match &mut self.phase {
            ApsPhase::Delegated(inner) => inner.select(view, price),
            ApsPhase::Opening { take } => {
                let take = *take;
                ranked(&self.values, &self.values, view).into_iter().take(take).collect()
            }
            ApsPhase::Done => ranked(&self.values, &self.values, view).into_iter().take(1).collect(),
        }
    }

    fn name(&self) -> &'static str {
        match self.end_game {
            EndGame::ThreeFifths => "aps35",
            EndGame::MaxValue => "aps815",
        }
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn sound(&self) -> bool {
        match &self.phase {
            ApsPhase::Delegated(inner) => inner.sound(),
            _ => true,
        }
    }
}
