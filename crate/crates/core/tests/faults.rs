//! Each injected corruption is reported under the violation kind that names it.

use padovan_core::auditor::faults::{inject, Fault};
use padovan_core::auditor::{check_structure, ViolationKind};
use padovan_core::replay::Replayer;
use padovan_core::workload::{generate, Mode};
use padovan_core::{AddressableHeap, PadovanHeap};

fn expected(fault: Fault) -> ViolationKind {
    match fault {
        Fault::RankOffByOne => ViolationKind::RankConsistency,
        Fault::ReorderedInner => ViolationKind::InnerOrder,
        Fault::WrongStatus => ViolationKind::Layout,
        Fault::BrokenLeftCycle => ViolationKind::ListLink,
        Fault::BrokenOwnerLink => ViolationKind::OwnerLink,
        Fault::HeapOrder => ViolationKind::HeapOrder,
    }
}

#[test]
fn every_fault_is_named() {
    for fault in Fault::ALL {
        for seed in 0..5 {
            let trace = generate(Mode::Random, 1_500, 900 + seed);
            let mut replay = Replayer::new(PadovanHeap::<i64>::with_audit_trail());
            replay.run_to_end(&trace).unwrap();
            let heap = replay.heap_mut();
            heap.find_min().unwrap();
            let (forest, state) = heap.parts_mut();
            assert!(check_structure(forest, state).is_clean());
            inject(forest, state, fault).expect("a site for every fault");
            let report = check_structure(forest, state);
            assert!(report.has(expected(fault)), "{fault:?} seed {seed}: {report}");
        }
    }
}

#[test]
fn fresh_heap_offers_no_sites() {
    let mut heap = PadovanHeap::<i64>::new();
    heap.insert(1);
    let (forest, state) = heap.parts_mut();
    for fault in Fault::ALL {
        assert_eq!(inject(forest, state, fault), None, "{fault:?}");
    }
}
