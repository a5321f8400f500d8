use fairshare::fixtures::{greedy_pair, group_instance, three_agents_five_units};
use fairshare::greedy_efx::{
    greedy_efx, greedy_efx_full, greedy_efx_with, replay_trace, Arbitration, Placement,
};
use fairshare::shares::{aps_exact, mms_exact, tps};
use fairshare::{rat, Instance, Rat, Valuation, Value};
use proptest::prelude::*;

fn ordered_identical(mut values: Vec<Value>, n: usize) -> Instance {
    values.sort_unstable_by(|a, b| b.cmp(a));
    Instance::equal(vec![values; n]).unwrap()
}

fn ordered_rows(rows: Vec<Vec<Value>>) -> Instance {
    let rows = rows
        .into_iter()
        .map(|mut r| {
            r.sort_unstable_by(|a, b| b.cmp(a));
            r
        })
        .collect();
    Instance::equal(rows).unwrap()
}

#[test]
fn pair_fixture_matches_hand_trace() {
    let inst = greedy_pair();
    let (alloc, trace) = greedy_efx(&inst).unwrap();
    let v = inst.valuation(0);
    assert_eq!(alloc.bundle(0), &[0, 3, 4]);
    assert_eq!(alloc.bundle(1), &[1, 2]);
    let least = (0..2).map(|i| alloc.value(i, v)).min().unwrap();
    assert_eq!(least, 44);
    let mms = mms_exact(v, 2).unwrap();
    assert_eq!(mms, 52);
    let ratio = Rat::from_integer(least.into()) / Rat::from_integer(mms.into());
    assert_eq!(ratio, rat(11, 13));
    let eps = rat(4, 52);
    assert_eq!(ratio, rat(3, 4) + rat(5, 4) * eps);

    let aps = aps_exact(v, &rat(1, 2)).unwrap().value;
    assert!(Rat::from_integer(least.into()) * rat(4, 1) >= Rat::from_integer(aps.into()) * rat(3, 1));

    let json = serde_json::to_value(&trace).unwrap();
    assert_eq!(json[0]["item"], 0);
    assert_eq!(json[0]["to"], 0);
    assert!(json[0]["rotations"].as_array().unwrap().is_empty());
    let back: Vec<Placement> = serde_json::from_value(json).unwrap();
    assert_eq!(back, trace);
}

#[test]
fn group_fixture_leaves_first_agent_with_group_zero() {
    let g = group_instance(2);
    assert_eq!((g.instance.n(), g.instance.m()), (21, 63));
    let (alloc, _) = greedy_efx(&g.instance).unwrap();
    let mut got = alloc.bundle(0).to_vec();
    got.sort_unstable();
    let mut want = g.group_zero.clone();
    want.sort_unstable();
    assert_eq!(got, want);

    let v = g.instance.valuation(0);
    let value = alloc.value(0, v);
    assert_eq!(value, g.scale);
    // the explicit partition is a certificate for the maximin floor
    let mut seen = vec![false; g.instance.m()];
    assert_eq!(g.partition.len(), g.instance.n());
    for bundle in &g.partition {
        for &j in bundle {
            assert!(!seen[j]);
            seen[j] = true;
        }
    }
    assert!(seen.iter().all(|&s| s));
    assert_eq!(g.mms_floor, 5);
    let ratio = Rat::from_integer(value.into()) / Rat::from_integer(g.mms_floor.into());
    assert_eq!(ratio, rat(4, 5));
}

#[test]
fn lowest_index_rule_gives_first_agent_a_small_item() {
    let g = group_instance(2);
    let (alloc, _) = greedy_efx_with(&g.instance, Arbitration::LowestIndex).unwrap();
    assert_ne!(alloc.bundle(0).len(), g.group_zero.len());
}

#[test]
fn unit_items_three_agents() {
    let inst = three_agents_five_units();
    let alloc = greedy_efx_full(&inst).unwrap();
    let v = inst.valuation(0);
    let least = (0..3).map(|i| alloc.value(i, v)).min().unwrap();
    assert_eq!(least, 1);
    let t = tps(v, &rat(1, 3));
    assert_eq!(t, rat(5, 3));
    assert_eq!(Rat::from_integer(least.into()) / t.clone(), rat(3, 5));
    let aps = aps_exact(v, &rat(1, 3)).unwrap().value;
    assert_eq!(aps, 1);
    let by_aps = rat(3, 4) * Rat::from_integer(aps.into());
    let by_tps = rat(6, 8) * t;
    assert!(by_aps < by_tps);
    assert!(Rat::from_integer(least.into()) >= by_aps);
}

fn check_trace(inst: &Instance, trace: &[Placement]) -> std::result::Result<(), TestCaseError> {
    let vals: Vec<Valuation> = inst.valuations();
    let n = inst.n();
    let mut rotations = 0;
    for (step, bundles) in trace.iter().zip(replay_trace(n, trace)) {
        rotations += step.rotations.len();
        for i in 0..n {
            let own = vals[i].of(&bundles[i]);
            for (j, other) in bundles.iter().enumerate() {
                if other.is_empty() {
                    continue;
                }
                let without_last = vals[i].of(&other[..other.len() - 1]);
                prop_assert!(without_last <= own, "agent {i} envies {j} beyond one item");
            }
            let seq: Vec<Value> = bundles[i].iter().map(|&j| vals[i].value(j)).collect();
            prop_assert!(seq.windows(2).all(|w| w[0] >= w[1]));
        }
    }
    prop_assert!(rotations <= n * inst.m());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trace_is_efx_identical(values in prop::collection::vec(0u64..20, 1..12), n in 2usize..5) {
        let inst = ordered_identical(values, n);
        let (_, trace) = greedy_efx(&inst).unwrap();
        check_trace(&inst, &trace)?;
    }

    #[test]
    fn last_item_bound_holds_generally(rows in prop::collection::vec(prop::collection::vec(0u64..20, 8), 2..5)) {
        let inst = ordered_rows(rows);
        let (_, trace) = greedy_efx(&inst).unwrap();
        let vals = inst.valuations();
        for bundles in replay_trace(inst.n(), &trace) {
            for i in 0..inst.n() {
                let own = vals[i].of(&bundles[i]);
                for other in bundles.iter().filter(|b| !b.is_empty()) {
                    prop_assert!(vals[i].of(&other[..other.len() - 1]) <= own);
                }
            }
        }
    }

    #[test]
    fn full_run_meets_guarantee(rows in prop::collection::vec(prop::collection::vec(0u64..12, 1..9), 3..4)) {
        let m = rows.iter().map(Vec::len).min().unwrap();
        let rows: Vec<Vec<Value>> = rows.into_iter().map(|r| r[..m].to_vec()).collect();
        let inst = Instance::equal(rows).unwrap();
        let alloc = greedy_efx_full(&inst).unwrap();
        alloc.validate(inst.n(), inst.m(), true).unwrap();
        let n = inst.n() as i64;
        let b = rat(1, n);
        for i in 0..inst.n() {
            let v = inst.valuation(i);
            let got = Rat::from_integer(alloc.value(i, v).into());
            let aps = Rat::from_integer(aps_exact(v, &b).unwrap().value.into());
            let bound = std::cmp::min(rat(3, 4) * aps, rat(2 * n, 3 * n - 1) * tps(v, &b));
            prop_assert!(got >= bound);
        }
    }
}
