use fairshare::bidding::{strategy_aps, strategy_bid_max_value, EndGame};
use fairshare::fixtures::five_items;
use fairshare::shares::{aps_exact, mms_exact, pessimistic_share_exact, tps, wmms_exact};
use fairshare::{rat, Rat, Valuation};
use fairshare_oracle::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

#[test]
fn brute_force_examples() {
    let v = five_items();
    assert_eq!(aps_brute(&v, &rat(2, 5)).unwrap(), 2);
    assert_eq!(aps_brute(&Valuation::new(vec![1, 1]), &rat(1, 2)).unwrap(), 1);
    let w = Valuation::new(vec![2, 2, 1]);
    assert_eq!(aps_brute(&w, &rat(2, 5)).unwrap(), 1);
    assert_eq!(tps(&w, &rat(2, 5)), Rat::from_integer(2.into()));

    assert_eq!(mms_brute(&v, 2).unwrap(), 2);
    assert_eq!(pessimistic_brute(&v, &rat(2, 5)).unwrap(), 1);
    let units = Valuation::new(vec![1, 1]);
    let b = [rat(1, 2), rat(1, 4), rat(1, 4)];
    for i in 0..3 {
        assert!(wmms_brute(&b, i, &units).unwrap().is_zero());
    }
}

#[test]
fn guards_trip() {
    assert!(aps_brute(&Valuation::new(vec![1; 13]), &rat(1, 2)).is_err());
    assert!(mms_brute(&Valuation::new(vec![1; 11]), 2).is_err());
    assert!(mms_brute(&Valuation::new(vec![1; 3]), 5).is_err());
    let v = Valuation::new(vec![1; 7]);
    let s = strategy_bid_max_value(&v, None);
    assert!(game_tree_oracle(&v, &rat(1, 2), s.as_ref()).is_err());
}

#[test]
fn game_tree_examples() {
    let v = Valuation::new(vec![4, 0, 3]);
    let s = strategy_bid_max_value(&v, None);
    assert_eq!(game_tree_oracle(&v, &Rat::one(), s.as_ref()).unwrap(), 7);

    let v = five_items();
    let b = rat(2, 5);
    let s = strategy_aps(&v, &b, 2, EndGame::ThreeFifths);
    assert!(game_tree_oracle(&v, &b, s.as_ref()).unwrap() >= 2);

    let v = Valuation::new(vec![1, 1, 1]);
    let s = strategy_bid_max_value(&v, None);
    assert!(game_tree_oracle(&v, &rat(1, 3), s.as_ref()).unwrap() >= 1);
}

fn entitlement() -> impl Strategy<Value = Rat> {
    (2i64..=7).prop_flat_map(|q| (1..q).prop_map(move |p| rat(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn aps_agrees(values in prop::collection::vec(0u64..=10, 0..=8), b in entitlement()) {
        let v = Valuation::new(values);
        prop_assert_eq!(aps_exact(&v, &b).unwrap().value, aps_brute(&v, &b).unwrap());
    }

    #[test]
    fn partition_shares_agree(values in prop::collection::vec(0u64..=10, 1..=8), n in 1usize..=4, b in entitlement()) {
        let v = Valuation::new(values);
        prop_assert_eq!(mms_exact(&v, n).unwrap(), mms_brute(&v, n).unwrap());
        prop_assert_eq!(pessimistic_share_exact(&v, &b).unwrap(), pessimistic_brute(&v, &b).unwrap());
    }

    #[test]
    fn wmms_agrees(values in prop::collection::vec(0u64..=10, 1..=7), weights in prop::collection::vec(1i64..=5, 1..=3)) {
        let v = Valuation::new(values);
        let total: i64 = weights.iter().sum();
        let b: Vec<Rat> = weights.iter().map(|&w| rat(w, total)).collect();
        for i in 0..b.len() {
            prop_assert_eq!(wmms_exact(&b, i, &v).unwrap(), wmms_brute(&b, i, &v).unwrap());
        }
    }
}
