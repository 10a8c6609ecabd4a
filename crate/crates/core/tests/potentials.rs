//! Potential bookkeeping: the incremental tracker matches a full recount, and
//! melding never raises the weighted potential.

mod common;

use proptest::prelude::*;

use padovan_core::auditor::{check_structure, compute_potentials, CostModel, PotentialTracker};
use padovan_core::replay::Replayer;
use padovan_core::{PadovanForest, PadovanHeap};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tracker_matches_recount(choices in common::choices(300)) {
        let trace = common::build_trace(&choices);
        let mut replay = Replayer::new(PadovanHeap::<i64>::with_audit_trail());
        let mut tracker = PotentialTracker::new();
        {
            let (forest, state) = replay.heap_mut().parts_mut();
            tracker.rebuild(forest, state);
        }
        for i in 0..trace.len() {
            replay.step(&trace).unwrap();
            let (forest, state) = replay.heap_mut().parts_mut();
            let tracked = tracker.sync(forest, state);
            let counted = compute_potentials(forest, state);
            prop_assert_eq!(tracked, counted, "after op {}", i);
        }
    }

    #[test]
    fn meld_never_raises_weighted_potential(
        a in prop::collection::vec((0u8..4, -50i64..50), 0..80),
        b in prop::collection::vec((0u8..4, -50i64..50), 0..80),
    ) {
        let t = CostModel::WEIGHTS;
        let mut forest = PadovanForest::<i64>::new();
        let mut heaps = Vec::new();
        for ops in [&a, &b] {
            let mut h = forest.new_heap();
            for &(op, key) in ops {
                match op {
                    0 | 1 => { forest.insert(&mut h, key); }
                    2 => { forest.find_min(&mut h).ok(); }
                    _ => { forest.delete_min(&mut h).ok(); }
                }
            }
            heaps.push(h);
        }
        let hb = heaps.pop().unwrap();
        let ha = heaps.pop().unwrap();
        let before = compute_potentials(&forest, &ha).weight(&t) + compute_potentials(&forest, &hb).weight(&t);
        let (na, nb) = (ha.len(), hb.len());
        let mut h = forest.meld(ha, hb);
        prop_assert_eq!(h.len(), na + nb);
        prop_assert!(check_structure(&forest, &h).is_clean());
        let after = compute_potentials(&forest, &h).weight(&t);
        prop_assert!(after <= before, "W went from {} to {}", before, after);

        let mut last = i64::MIN;
        while let Ok((_, k)) = forest.delete_min(&mut h) {
            prop_assert!(k >= last);
            last = k;
        }
    }
}
