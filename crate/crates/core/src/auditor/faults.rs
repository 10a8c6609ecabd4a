//! Deliberate corruptions used to show the structure check catches each
//! invariant class.

use crate::arena::NodeId;
use crate::node_store::Status;
use crate::padovan::{HeapState, PadovanForest};
use crate::HeapKey;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Rank of a vertex with an inner last child raised by one.
    RankOffByOne,
    /// Last two inner children swapped.
    ReorderedInner,
    /// Last inner child tagged outer placed.
    WrongStatus,
    /// Leftmost child's `left` no longer points at the rightmost.
    BrokenLeftCycle,
    /// Rightmost child's `right` points at the dummy instead of the owner.
    BrokenOwnerLink,
    /// A nonroot key set below its parent's.
    HeapOrder,
}

impl Fault {
    pub const ALL: [Fault; 6] = [
        Fault::RankOffByOne,
        Fault::ReorderedInner,
        Fault::WrongStatus,
        Fault::BrokenLeftCycle,
        Fault::BrokenOwnerLink,
        Fault::HeapOrder,
    ];
}

/// Applies `fault` to the first suitable vertex in breadth-first order.
/// Returns the corrupted vertex, or `None` if the heap has no place for it.
pub fn inject<K: HeapKey>(forest: &mut PadovanForest<K>, h: &HeapState, fault: Fault) -> Option<NodeId> {
    let store = forest.store();
    let mut order: Vec<NodeId> = store.children(h.dummy()).collect();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        order.extend(store.children(v));
        i += 1;
    }
    let inner_tail = |v: NodeId, n: usize| {
        let kids: Vec<_> = store.children(v).collect();
        kids.len() >= n && kids[kids.len() - n..].iter().all(|&c| store.status(c).is_inner())
    };
    let target = order.iter().copied().find(|&v| match fault {
        Fault::RankOffByOne | Fault::WrongStatus => inner_tail(v, 1),
        Fault::ReorderedInner => inner_tail(v, 2),
        Fault::BrokenLeftCycle => store.children(v).count() >= 2,
        Fault::BrokenOwnerLink => store.child(v).is_some(),
        Fault::HeapOrder => store.child(v).is_some() && store.key(v) > K::min_value(),
    })?;
    let dummy = h.dummy();
    let store = forest.store_mut();
    let first = store.child(target).expect("target has children");
    let last = store.left(first);
    match fault {
        Fault::RankOffByOne => {
            let r = store.rank(target);
            store.set_rank(target, r + 1);
        }
        Fault::ReorderedInner => {
            let second = store.left(last);
            store.detach(second);
            store.push_back(target, second);
        }
        Fault::WrongStatus => store.set_status(last, Status::OuterPlaced),
        Fault::BrokenLeftCycle => store.set_left(first, first),
        Fault::BrokenOwnerLink => store.set_right(last, dummy),
        Fault::HeapOrder => store.set_key(first, K::min_value()),
    }
    Some(target)
}
