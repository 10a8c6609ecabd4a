use crate::arena::NodeId;
use crate::node_store::{NodeStore, Status};
use crate::padovan::{HeapState, PadovanForest};
use crate::HeapKey;

use super::potentials::{phi2_cap, PotentialVector};
use super::{rev_children, RuleView};

/// Per-vertex share of Φ0, Φ1, Φ3, Φ4, Φ5, Φ6.
type Share = [i64; 6];

/// Incrementally maintained potentials of one heap.
///
/// Each vertex's share depends only on its own record, its root flag and the
/// right end of its children list, so after an operation only the journalled
/// vertices and the owners of journalled list ends need recomputing. Requires
/// a forest built with an audit trail and holding a single heap.
#[derive(Clone, Debug, Default)]
pub struct PotentialTracker {
    share: Vec<Share>,
    total: Share,
}

impl PotentialTracker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Recomputes every share from scratch.
    pub fn rebuild<K: HeapKey>(&mut self, forest: &mut PadovanForest<K>, h: &HeapState) -> PotentialVector {
        forest.store_mut().drain_touched();
        let store = forest.store();
        self.share.clear();
        self.total = [0; 6];
        let mut stack: Vec<_> = store.children(h.dummy()).collect();
        while let Some(v) = stack.pop() {
            self.update(store, v);
            stack.extend(store.children(v));
        }
        self.vector(h)
    }

    /// Folds in the writes journalled since the last call.
    pub fn sync<K: HeapKey>(&mut self, forest: &mut PadovanForest<K>, h: &HeapState) -> PotentialVector {
        let mut touched = forest.store_mut().drain_touched();
        touched.sort_unstable();
        touched.dedup();
        let store = forest.store();
        for &x in &touched {
            self.update(store, x);
        }
        for &x in &touched {
            if let Some(owner) = end_owner(store, x) {
                self.update(store, owner);
            }
        }
        self.vector(h)
    }

    fn vector(&self, h: &HeapState) -> PotentialVector {
        let [roots, placed, critical, phi4, misplaced, dangerous] = self.total;
        PotentialVector {
            phi: [
                roots,
                placed,
                roots.min(phi2_cap(h.len())),
                critical,
                phi4,
                misplaced,
                dangerous,
            ],
        }
    }

    fn update<K: HeapKey>(&mut self, store: &NodeStore<K>, v: NodeId) {
        let i = v.index();
        if self.share.len() <= i {
            self.share.resize(i + 1, [0; 6]);
        }
        let new = if store.is_live(v) && !store.is_head(v) {
            share(store, v)
        } else {
            [0; 6]
        };
        for (t, (n, o)) in self.total.iter_mut().zip(new.iter().zip(&self.share[i])) {
            *t += n - o;
        }
        self.share[i] = new;
    }
}

fn share<K: HeapKey>(store: &NodeStore<K>, v: NodeId) -> Share {
    let root = store.root_flag(v).expect("tracker needs an audit trail");
    let rank = i64::from(store.rank(v));
    let dangerous = i64::from(RuleView::new(store, rev_children(store, v)).dangerous(store, v));
    if root {
        return [1, 0, 0, rank, 0, dangerous];
    }
    let status = store.status(v);
    [
        0,
        i64::from(status == Status::OuterPlaced),
        i64::from(status == Status::CriticalInner),
        rank - i64::from(status.is_inner()),
        i64::from(status == Status::OuterMisplaced),
        dangerous,
    ]
}

/// Owner of `x`'s list when only misplaced siblings separate `x` from the
/// right end, since then `x` can decide whether the owner is dangerous.
fn end_owner<K: HeapKey>(store: &NodeStore<K>, x: NodeId) -> Option<NodeId> {
    if !store.is_live(x) || store.is_head(x) {
        return None;
    }
    let mut y = x;
    while !store.is_rightmost(y) {
        y = store.right(y);
        if store.status(y) != Status::OuterMisplaced {
            return None;
        }
    }
    let owner = store.right(y);
    (!store.is_head(owner)).then_some(owner)
}
