use legmosaic::bounds::{is_unknot_pair, lower_tb, unknot_upper_bound, InvariantPair};
use legmosaic::constructions::{barn_capacity, build_unknot_on, build_unknot_plan, crab_bucket, MoveKind};
use legmosaic::invariants::invariants;
use legmosaic::topology::{identify, identify_with, HomflyEngine, KnotType};
use legmosaic::Tile;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn unknot_pairs(min_tb: i64) -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for tb in min_tb..=-1 {
        for rot in tb + 1..=-tb - 1 {
            if is_unknot_pair(InvariantPair { tb, rot }) {
                v.push((tb, rot));
            }
        }
    }
    v
}

#[test]
fn every_unknot_pair_down_to_minus_40_builds() {
    let pairs = unknot_pairs(-40);
    // Every crossing in these mosaics is nugatory, so a high cap stays cheap.
    let mut engine = HomflyEngine::with_max_crossings(400);
    assert_eq!(pairs.len(), (1..=40).sum::<usize>());
    for (tb, rot) in pairs {
        let (c, plan) = build_unknot_plan(tb, rot).unwrap_or_else(|e| panic!("({tb}, {rot}): {e}"));
        let m = &c.mosaic;
        assert!(m.is_suitably_connected());
        let inv = invariants(m).unwrap();
        assert_eq!(inv.components, 1);
        assert_eq!((inv.tb, inv.rot.abs()), (tb, rot.abs()), "({tb}, {rot})");
        let bound = unknot_upper_bound(InvariantPair { tb, rot }).unwrap() as usize;
        assert_eq!(plan.bound, bound);
        assert_eq!(m.rows(), plan.n);
        assert!(plan.n >= bound && plan.n <= bound + 2, "({tb}, {rot}) built on {}", plan.n);
        // Where the counting argument goes through (k >= 0 for an all-crossing
        // soil, or rot = 0) the move family must fit on odd sizes at the bound.
        let n = bound as i64;
        let k_direct = if rot != 0 { -(tb + rot.abs() + n - 2) } else { -(tb + n - 2) };
        if bound % 2 == 1 && k_direct >= 0 {
            assert_eq!(plan.n, bound, "({tb}, {rot})");
        }
        if rot == 0 {
            assert_eq!(plan.n, bound, "({tb}, {rot})");
        }
        if plan.n > bound {
            assert!(build_unknot_on(bound, tb, rot).is_err());
        }
        assert!(2 * plan.f + plan.k <= barn_capacity(plan.n));
        let fish = plan.placements.iter().filter(|p| p.kind == MoveKind::Fish).count();
        assert_eq!(fish, plan.f);
        assert_eq!(identify_with(&mut engine, m).unwrap().knot_type, KnotType::Unknot, "({tb}, {rot})");
    }
}

#[test]
fn crab_buckets_are_sharp_and_identified() {
    for n in 5..=12 {
        let m = crab_bucket(n).unwrap();
        let inv = invariants(&m).unwrap();
        assert_eq!(lower_tb(InvariantPair { tb: inv.tb, rot: inv.rot }), Some(n as i64));
    }
    assert_eq!(identify(&crab_bucket(5).unwrap()).unwrap().knot_type, KnotType::Trefoil);
    assert_eq!(identify(&crab_bucket(6).unwrap()).unwrap().knot_type, KnotType::Granny);
    // β_7 is (2,3)#(2,5)#(2,3), outside the named table.
    let b7 = identify(&crab_bucket(7).unwrap()).unwrap();
    assert_eq!(b7.knot_type, KnotType::Unknown);
    assert_eq!(b7.crossings, crab_bucket(7).unwrap().count(Tile::T10));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Reordering placements within each barn row gives the same mosaic.
    #[test]
    fn moves_commute_within_rows(idx in 0usize..400, seed in any::<u64>()) {
        let pairs = unknot_pairs(-30);
        let (tb, rot) = pairs[idx % pairs.len()];
        let (built, plan) = build_unknot_plan(tb, rot).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut placements = plan.placements.clone();
        let mut start = 0;
        while start < placements.len() {
            let d = placements[start].barn.col as i64 - placements[start].barn.row as i64;
            let mut end = start;
            while end < placements.len() && placements[end].barn.col as i64 - placements[end].barn.row as i64 == d {
                end += 1;
            }
            placements[start..end].shuffle(&mut rng);
            start = end;
        }
        let shuffled = legmosaic::constructions::MovePlan { placements, ..plan };
        let again = shuffled.replay().unwrap();
        prop_assert_eq!(&again.mosaic, &built.mosaic);
        let a = invariants(&again.mosaic).unwrap();
        prop_assert_eq!((a.tb, a.rot.abs()), (tb, rot.abs()));
    }
}
