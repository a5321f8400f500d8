use serde::Serialize;

use crate::instance::Valuation;
use crate::scalar::{int, rat, serde_rat, Rat, Value};
use crate::shares::{rank_value, tps};

use super::adversary::best_good_z;
use super::engine::{Strategy, View};
use super::strategies::{ApsStrategy, EndGame, RankItem, TpsStrategy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    Aps,
    Tps,
    Rank,
}

/// The three value guarantees available to an agent, all computable in polynomial time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MetaChoice {
    pub chosen: Guarantee,
    /// Target used by the `3z/5` strategy.
    pub good_z: Value,
    #[serde(with = "serde_rat")]
    pub aps_guarantee: Rat,
    #[serde(with = "serde_rat")]
    pub tps_guarantee: Rat,
    pub rank_guarantee: Value,
}

impl MetaChoice {
    pub fn guarantee(&self) -> Rat {
        match self.chosen {
            Guarantee::Aps => self.aps_guarantee.clone(),
            Guarantee::Tps => self.tps_guarantee.clone(),
            Guarantee::Rank => int(self.rank_guarantee),
        }
    }
}

/// Plays whichever of the three strategies promises the most.
#[derive(Debug, Clone)]
pub struct MetaStrategy {
    choice: MetaChoice,
    inner: Box<dyn Strategy>,
}

impl MetaStrategy {
    pub fn choice(&self) -> &MetaChoice {
        &self.choice
    }
}

/// Picks the best of `(3/5)·z`, `tps/(2 − b)` and the `⌊1/b⌋`-th best item,
/// preferring them in that order on ties.
pub fn meta_strategy(v: &Valuation, b: &Rat) -> MetaStrategy {
    let good_z = best_good_z(v, b);
    let aps_guarantee = rat(3, 5) * int(good_z);
    let tps_guarantee = tps(v, b) / (int(2) - b);
    let rank_guarantee = rank_value(v, b);
    let rank_rat = int(rank_guarantee);
    let chosen = if aps_guarantee >= tps_guarantee && aps_guarantee >= rank_rat {
        Guarantee::Aps
    } else if tps_guarantee >= rank_rat {
        Guarantee::Tps
    } else {
        Guarantee::Rank
    };
    let inner: Box<dyn Strategy> = match chosen {
        Guarantee::Aps => Box::new(ApsStrategy::new(v, b, good_z, EndGame::ThreeFifths)),
        Guarantee::Tps => Box::new(TpsStrategy::new(v)),
        Guarantee::Rank => Box::new(RankItem::new(v, b)),
    };
    MetaStrategy {
        choice: MetaChoice {
            chosen,
            good_z,
            aps_guarantee,
            tps_guarantee,
            rank_guarantee,
        },
        inner,
    }
}

impl Strategy for MetaStrategy {
    fn bid(&mut self, view: &View<'_>) -> Rat {
        self.inner.bid(view)
    }

    fn select(&mut self, view: &View<'_>, price: &Rat) -> Vec<usize> {
        self.inner.select(view, price)
    }

    fn name(&self) -> &'static str {
        "meta"
    }

    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn sound(&self) -> bool {
        self.inner.sound()
    }
}
