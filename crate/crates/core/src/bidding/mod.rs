//! The sequential bidding game and strategies for it.
//!
//! Every agent starts with her entitlement as budget. Each round the highest
//! bidder takes any non-empty set of items she can afford at her bid per item.

mod adversary;
mod engine;
mod meta;
mod strategies;

pub use adversary::{
    best_good_z, test_z_good, worst_case_adversary, worst_case_value, AdversaryOutcome, WinPattern,
};
pub use engine::{
    replay, run_game, Fault, FaultKind, GameState, GameTranscript, RoundRecord, Strategy, TieBreak,
    View,
};
pub use meta::{meta_strategy, Guarantee, MetaChoice, MetaStrategy};
pub use strategies::{
    ApsStrategy, BidMaxValue, EndGame, HalfShareStrategy, RankItem, TpsStrategy, ZeroBid,
};

use crate::instance::Valuation;
use crate::scalar::{Rat, Value};

pub fn strategy_bid_max_value(v: &Valuation, cap: Option<Value>) -> Box<dyn Strategy> {
    Box::new(BidMaxValue::new(v, cap))
}

pub fn strategy_tps(v: &Valuation) -> Box<dyn Strategy> {
    Box::new(TpsStrategy::new(v))
}

pub fn strategy_rank_item(v: &Valuation, b: &Rat) -> Box<dyn Strategy> {
    Box::new(RankItem::new(v, b))
}

pub fn strategy_half_share(v: &Valuation, b: &Rat, z: Value) -> Box<dyn Strategy> {
    Box::new(HalfShareStrategy::new(v, b, z))
}

pub fn strategy_aps(v: &Valuation, b: &Rat, z: Value, end_game: EndGame) -> Box<dyn Strategy> {
    Box::new(ApsStrategy::new(v, b, z, end_game))
}
