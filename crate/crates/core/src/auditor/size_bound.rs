use crate::padovan::{HeapState, PadovanForest};
use crate::HeapKey;

use super::structure::{Report, ViolationKind, Walk};
use super::RuleView;

/// Minimal active-subtree size per rank: P(0..=2) = 1, P(r) = 1 + P(r-2) + P(r-3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeBoundTable {
    p: Vec<u64>,
}

impl Default for SizeBoundTable {
    /// Covers every rank a `u8` can hold.
    fn default() -> Self {
        Self::new(256)
    }
}

impl SizeBoundTable {
    pub fn new(ranks: usize) -> Self {
        let mut p = vec![1u64; ranks.max(3)];
        for r in 3..p.len() {
            p[r] = 1u64.saturating_add(p[r - 2]).saturating_add(p[r - 3]);
        }
        SizeBoundTable { p }
    }

    pub fn get(&self, rank: usize) -> u64 {
        self.p[rank]
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }
}

/// Compares every vertex's active-subtree size with P(rank).
pub fn check_size_bounds<K: HeapKey>(
    forest: &PadovanForest<K>,
    h: &HeapState,
    table: &SizeBoundTable,
) -> Report {
    let store = forest.store();
    let mut report = Report::default();
    let Some(walk) = Walk::run(store, h.dummy(), &mut report) else {
        return report;
    };
    let mut size = vec![0u64; store.slots()];
    for &v in walk.order.iter().rev() {
        let view = RuleView::new(store, walk.children(v).iter().rev().copied());
        let s = 1 + view.active().map(|c| size[c.index()]).sum::<u64>();
        size[v.index()] = s;
        let rank = usize::from(store.rank(v));
        if s < table.get(rank) {
            report.push(
                ViolationKind::SizeBound,
                walk.path(v),
                format!("rank {rank} needs {} active vertices, has {s}", table.get(rank)),
            );
        }
    }
    report
}
