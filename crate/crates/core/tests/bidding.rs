use fairshare::bidding::*;
use fairshare::fixtures::{five_items, pair_grid, three_agents_five_units};
use fairshare::shares::{aps_exact, rank_value, tps};
use fairshare::{rat, Instance, Rat, Valuation, Value};
use num_traits::{One, Zero};
use proptest::prelude::{prop, prop_assert, prop_assert_eq, proptest, ProptestConfig};
use proptest::strategy::Strategy as _;

fn r(v: Value) -> Rat {
    Rat::from_integer(v.into())
}

fn worst(v: &Valuation, b: &Rat, s: Box<dyn Strategy>) -> Value {
    worst_case_value(v, b, s.as_ref()).0
}

#[test]
fn lone_agent_takes_everything() {
    let inst = Instance::equal(vec![vec![3, 0, 7]]).unwrap();
    for s in [
        strategy_bid_max_value(inst.valuation(0), None),
        strategy_tps(inst.valuation(0)),
        strategy_rank_item(inst.valuation(0), &Rat::one()),
    ] {
        let t = run_game(&inst, vec![s], TieBreak::LowestIndex).unwrap();
        assert!(t.rounds.iter().all(|r| r.winner == 0));
        assert_eq!(t.allocation.bundle(0), &[0, 1, 2]);
        assert!(t.flags.is_empty());
    }
}

#[test]
fn tps_players_split_unit_items() {
    let inst = three_agents_five_units();
    let strategies = (0..3).map(|i| strategy_tps(inst.valuation(i))).collect();
    let t = run_game(&inst, strategies, TieBreak::LowestIndex).unwrap();
    for i in 0..3 {
        assert!(!t.allocation.bundle(i).is_empty());
    }
}

#[test]
fn max_value_bidder_against_silent_opponent() {
    let inst = Instance::equal(vec![vec![4, 3, 2, 1], vec![4, 3, 2, 1]]).unwrap();
    let strategies = vec![
        strategy_bid_max_value(inst.valuation(0), None),
        Box::new(ZeroBid::new(inst.valuation(1))) as Box<dyn Strategy>,
    ];
    let t = run_game(&inst, strategies, TieBreak::AgainstAgent(0)).unwrap();
    assert_eq!(t.rounds[0].bids[0], rat(2, 5));
    assert_eq!(t.rounds[0].taken, vec![0]);
    assert_eq!(t.rounds[1].bids[0], rat(1, 10));
    assert_eq!(t.rounds[1].taken, vec![1]);
    assert_eq!(t.rounds[2].bids[0], Rat::zero());
    assert_eq!(t.rounds[2].winner, 1);
    assert_eq!(t.allocation.bundle(0), &[0, 1]);
}

#[derive(Debug, Clone)]
struct Greedy;

impl Strategy for Greedy {
    fn bid(&mut self, _: &View<'_>) -> Rat {
        rat(7, 1)
    }
    fn select(&mut self, view: &View<'_>, _: &Rat) -> Vec<usize> {
        view.state.remaining_items()
    }
    fn name(&self) -> &'static str {
        "greedy"
    }
    fn clone_box(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

#[test]
fn misbehaving_strategy_is_flagged() {
    let inst = Instance::equal(vec![vec![1, 1], vec![1, 1]]).unwrap();
    let t = run_game(
        &inst,
        vec![Box::new(Greedy), strategy_bid_max_value(inst.valuation(1), None)],
        TieBreak::LowestIndex,
    )
    .unwrap();
    assert!(t.flags.iter().any(|f| f.agent == 0 && f.kind == FaultKind::InvalidBid));
    let replayed = replay(inst.entitlements(), inst.m(), &t).unwrap();
    assert_eq!(replayed.last().unwrap().allocation(), t.allocation);
}

#[test]
fn wrong_number_of_strategies() {
    let inst = Instance::equal(vec![vec![1], vec![1]]).unwrap();
    assert!(run_game(&inst, vec![Box::new(Greedy)], TieBreak::LowestIndex).is_err());
}

#[test]
fn transcripts_replay_and_round_trip() {
    let inst = Instance::from_rows(vec![
        (rat(1, 2), vec![5, 4, 3, 2, 1]),
        (rat(1, 3), vec![1, 2, 3, 4, 5]),
        (rat(1, 6), vec![3, 3, 3, 3, 3]),
    ])
    .unwrap();
    let make = || -> Vec<Box<dyn Strategy>> {
        (0..3)
            .map(|i| Box::new(meta_strategy(inst.valuation(i), inst.entitlement(i))) as Box<dyn Strategy>)
            .collect()
    };
    let a = run_game(&inst, make(), TieBreak::LowestIndex).unwrap();
    let b = run_game(&inst, make(), TieBreak::LowestIndex).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a).unwrap();
    let back: GameTranscript = serde_json::from_str(&json).unwrap();
    assert_eq!(back, a);
    let states = replay(inst.entitlements(), inst.m(), &back).unwrap();
    assert_eq!(states.last().unwrap().allocation(), a.allocation);

    let mut tampered = a.clone();
    tampered.rounds[0].payment += rat(1, 100);
    assert!(replay(inst.entitlements(), inst.m(), &tampered).is_err());
    let mut overspent = a;
    let w = overspent.rounds[0].winner;
    overspent.rounds[0].bids[w] = rat(2, 1);
    assert!(replay(inst.entitlements(), inst.m(), &overspent).is_err());
}

#[test]
fn capped_max_value_gets_half_the_tps() {
    let v = five_items();
    let b = rat(2, 5);
    let t = tps(&v, &b);
    let cap = (t.to_integer().to_string()).parse::<Value>().unwrap();
    let got = worst(&v, &b, strategy_bid_max_value(&v, Some(cap)));
    assert!(r(got) * r(2) >= t);
}

#[test]
fn max_value_with_three_units() {
    let v = Valuation::new(vec![1, 1, 1]);
    assert!(worst(&v, &rat(1, 3), strategy_bid_max_value(&v, None)) >= 1);
    let units = Valuation::new(vec![1; 5]);
    let got = worst(&units, &rat(1, 3), strategy_bid_max_value(&units, None));
    assert!(r(got) * r(6) >= r(5));
}

#[test]
fn tps_strategy_examples() {
    let units = Valuation::new(vec![1; 5]);
    let b = rat(1, 3);
    let t = tps(&units, &b);
    assert_eq!(t, rat(5, 3));
    assert_eq!(worst(&units, &b, strategy_tps(&units)), 1);
    assert_eq!(rat(3, 5) * t, Rat::one());

    let single = Valuation::new(vec![9]);
    assert_eq!(worst(&single, &Rat::one(), strategy_tps(&single)), 9);

    let v = five_items();
    let b = rat(2, 5);
    assert!(worst(&v, &b, strategy_tps(&v)) >= 2);
    assert!(r(2) >= tps(&v, &b) / (r(2) - b));
}

#[test]
fn rank_strategy_examples() {
    let v = five_items();
    let got = worst(&v, &rat(2, 5), strategy_rank_item(&v, &rat(2, 5)));
    assert!(got >= v.sorted_desc()[1]);
    assert!(worst(&v, &Rat::one(), strategy_rank_item(&v, &Rat::one())) >= v.sorted_desc()[0]);
    let v = Valuation::new(vec![5, 4, 3, 2]);
    assert!(worst(&v, &rat(1, 3), strategy_rank_item(&v, &rat(1, 3))) >= 3);
}

#[test]
fn half_share_strategy_examples() {
    let v = five_items();
    let b = rat(2, 5);
    let z = aps_exact(&v, &rat(1, 5)).unwrap().value;
    let got = worst(&v, &b, strategy_half_share(&v, &b, z));
    assert!(r(2 * got) >= r(3 * z));

    let zero = Valuation::new(vec![0, 0, 0]);
    assert_eq!(worst(&zero, &b, strategy_half_share(&zero, &b, 0)), 0);

    // after reaching the goal the strategy stops bidding
    let inst = Instance::from_rows(vec![(rat(1, 2), vec![6, 1, 1]), (rat(1, 2), vec![0, 0, 0])]).unwrap();
    let t = run_game(
        &inst,
        vec![
            strategy_half_share(inst.valuation(0), inst.entitlement(0), 2),
            Box::new(ZeroBid::new(inst.valuation(1))),
        ],
        TieBreak::AgainstAgent(0),
    )
    .unwrap();
    assert_eq!(t.rounds[0].taken, vec![0]);
    assert!(t.rounds[1..].iter().all(|r| r.bids[0].is_zero()));
}

#[test]
fn aps_strategy_examples() {
    let v = five_items();
    let b = rat(2, 5);
    for end_game in [EndGame::ThreeFifths, EndGame::MaxValue] {
        assert!(worst(&v, &b, strategy_aps(&v, &b, 2, end_game)) >= 2);
    }
    let idle = worst(&v, &b, strategy_aps(&v, &b, 0, EndGame::ThreeFifths));
    assert!(idle <= v.total());

    let g = pair_grid();
    let b = rat(1, 3);
    let got = worst(&g.valuation, &b, strategy_aps(&g.valuation, &b, 97, EndGame::ThreeFifths));
    assert!(r(5 * got) >= r(3 * 97));
}

#[test]
fn adversary_with_full_entitlement() {
    let v = Valuation::new(vec![3, 2, 1]);
    let s = strategy_bid_max_value(&v, None);
    for pattern in WinPattern::all(3) {
        let outcome = worst_case_adversary(&v, &Rat::one(), s.as_ref(), pattern);
        if let Some(value) = outcome.agent_value(&v) {
            assert_eq!(value, 6);
        } else {
            // only patterns needing an adversary win before their last conceded round fail
            let conceded = [pattern.first, pattern.second].iter().flatten().count();
            let last = pattern.second.or(pattern.first).unwrap();
            assert!(last + 1 > conceded);
        }
    }
    assert_eq!(worst_case_value(&v, &Rat::one(), s.as_ref()).0, 6);
}

#[test]
fn adversary_exhausts_budget_on_units() {
    let v = Valuation::new(vec![1, 1, 1]);
    let s = strategy_bid_max_value(&v, None);
    let outcome = worst_case_adversary(&v, &rat(1, 3), s.as_ref(), WinPattern::NONE);
    let AdversaryOutcome::Feasible(t) = outcome else {
        panic!("conceding nothing is always playable")
    };
    assert_eq!(t.allocation.bundle(1).len(), 2);
    assert_eq!(t.allocation.bundle(0).len(), 1);
    let late = worst_case_adversary(&v, &rat(1, 3), s.as_ref(), WinPattern::single(5));
    assert!(matches!(late, AdversaryOutcome::Infeasible { .. }));
}

#[test]
fn goodness_examples() {
    let v = five_items();
    let b = rat(2, 5);
    assert!(test_z_good(&v, &b, 0));
    assert!(test_z_good(&v, &b, 2));
    assert!(!test_z_good(&v, &b, v.total() + 1));
    assert!(best_good_z(&v, &b) >= 2);
    assert_eq!(best_good_z(&Valuation::new(vec![0, 0]), &rat(1, 3)), 0);
    assert!(best_good_z(&Valuation::new(vec![1, 1]), &rat(1, 2)) >= 1);
}

#[test]
fn goodness_can_skip_above_the_share() {
    let v = Valuation::new(vec![10, 6, 5, 10, 7, 10, 3, 9]);
    let b = rat(2, 3);
    let aps = aps_exact(&v, &b).unwrap().value;
    assert_eq!(aps, 40);
    assert!((0..=aps).all(|z| test_z_good(&v, &b, z)));
    assert!(!test_z_good(&v, &b, 49));
    assert!(test_z_good(&v, &b, 51));
    let z = best_good_z(&v, &b);
    assert!(z >= aps && test_z_good(&v, &b, z));
}

#[test]
fn meta_examples() {
    let units = Valuation::new(vec![1; 10]);
    let choice = meta_strategy(&units, &rat(9, 10)).choice().clone();
    assert_eq!(choice.rank_guarantee, 1);
    assert_eq!(choice.tps_guarantee, rat(90, 11));
    assert_eq!(choice.chosen, Guarantee::Tps);

    let v = Valuation::new(vec![5, 4, 3, 2]);
    let b = rat(1, 3);
    let choice = meta_strategy(&v, &b).choice().clone();
    let all = [choice.aps_guarantee.clone(), choice.tps_guarantee.clone(), r(choice.rank_guarantee)];
    let best = all.iter().max().unwrap().clone();
    assert_eq!(choice.guarantee(), best);
    let first = [Guarantee::Aps, Guarantee::Tps, Guarantee::Rank][all.iter().position(|g| *g == best).unwrap()];
    assert_eq!(choice.chosen, first);

    let single = Valuation::new(vec![4]);
    let choice = meta_strategy(&single, &rat(2, 3)).choice().clone();
    assert_eq!(choice.chosen, Guarantee::Rank);
    assert_eq!(choice.guarantee(), r(4));
}

#[test]
fn meta_does_not_solve_the_share_lp() {
    let v = Valuation::new(vec![7, 5, 5, 3, 2, 1]);
    let before = fairshare::shares::aps_exact_calls();
    let _ = meta_strategy(&v, &rat(2, 7));
    assert_eq!(fairshare::shares::aps_exact_calls(), before);
}

fn entitlement() -> impl proptest::strategy::Strategy<Value = Rat> {
    (2i64..=7).prop_flat_map(|q| (1..q).prop_map(move |p| rat(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn strategies_meet_their_guarantees(values in prop::collection::vec(0u64..=10, 1..=8), b in entitlement()) {
        let v = Valuation::new(values);
        let aps = aps_exact(&v, &b).unwrap().value;
        let z = best_good_z(&v, &b);
        prop_assert!(z >= aps);
        prop_assert!((0..=aps).all(|z| test_z_good(&v, &b, z)));
        let aps35 = worst(&v, &b, strategy_aps(&v, &b, z, EndGame::ThreeFifths));
        prop_assert!(r(5 * aps35) >= r(3 * aps));
        let t = worst(&v, &b, strategy_tps(&v));
        prop_assert!(r(t) * (r(2) - &b) >= tps(&v, &b));
        prop_assert!(worst(&v, &b, strategy_rank_item(&v, &b)) >= rank_value(&v, &b));
        let meta = meta_strategy(&v, &b);
        let guarantee = meta.choice().guarantee();
        prop_assert!(r(worst(&v, &b, Box::new(meta))) >= guarantee);
    }

    #[test]
    fn budgets_are_conserved(
        rows in prop::collection::vec(prop::collection::vec(0u64..=6, 5), 2..=3),
        weights in prop::collection::vec(1i64..=4, 3),
    ) {
        let n = rows.len();
        let total: i64 = weights[..n].iter().sum();
        let inst = Instance::from_rows(
            rows.into_iter().zip(&weights).map(|(row, &w)| (rat(w, total), row)).collect(),
        ).unwrap();
        let strategies = (0..n)
            .map(|i| Box::new(meta_strategy(inst.valuation(i), inst.entitlement(i))) as Box<dyn Strategy>)
            .collect();
        let t = run_game(&inst, strategies, TieBreak::LowestIndex).unwrap();
        prop_assert!(t.flags.is_empty());
        t.allocation.validate(n, inst.m(), true).unwrap();
        for state in replay(inst.entitlements(), inst.m(), &t).unwrap() {
            prop_assert_eq!(state.total_budget() + state.total_paid(), Rat::one());
        }
    }
}
