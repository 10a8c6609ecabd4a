//! Padovan heap.
//!
//! A Fibonacci-family heap whose vertices carry three links (see
//! [`node_store`](crate::node_store)). Every key comparison is remembered as a
//! tree edge and only roots are ever compared, so `insert` and `meld` do no
//! comparisons at all and the minimum is found lazily by [`PadovanForest::find_min`].
//!
//! # Ranks
//!
//! Children of a vertex are laid out as a prefix of *outer placed* children
//! followed by *inner* children (noncritical or critical) in strictly
//! increasing noncritical rank ρ, possibly interleaved with *outer misplaced*
//! children waiting to be swept to the front. Let `w0` be the last inner child
//! and `w1` the one before it, with absent children counting as noncritical of
//! rank -1. Then:
//!
//! 1. `ρ(w0) > ρ(w1) + 1` and `w0` noncritical: rank = ρ(w0), vertex is *dangerous*.
//! 2. `ρ(w0) > ρ(w1) + 1` and `w0` critical: `w0` is demoted to outer and the
//!    rule is re-evaluated.
//! 3. otherwise: rank = ρ(w0) + 1, vertex is *safe*.
//!
//! Cutting a vertex triggers a cascade of rank recomputations up the parent
//! chain, which stops at the dummy head, at an unchanged rank, or at a vertex
//! that is not among the last two of its list (whose parent is unreachable).

use crate::arena::{Handle, NodeId};
use crate::counters::Counters;
use crate::error::HeapError;
use crate::node_store::{NodeStore, Position, Status};
use crate::queue::AddressableHeap;
use crate::HeapKey;

const INITIAL_BUCKETS: usize = 64;

/// A heap inside a [`PadovanForest`]: its dummy head and element count.
///
/// [`PadovanForest::meld`] consumes the donor state. Cloning is only meaningful
/// together with the forest it belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeapState {
    dummy: NodeId,
    size: usize,
}

impl HeapState {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Sentinel that owns the root list.
    pub fn dummy(&self) -> NodeId {
        self.dummy
    }
}

/// What a rank recomputation did.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankOutcome {
    pub new_rank: u8,
    /// Rank was set by rule 1.
    pub dangerous: bool,
    /// Applications of rule 2.
    pub demotions: u32,
    /// Misplaced children swept to the front.
    pub placings: u32,
}

/// Arena shared by any number of Padovan heaps. Heaps from one forest can be melded.
#[derive(Debug, Clone)]
pub struct PadovanForest<K> {
    store: NodeStore<K>,
    buckets: Vec<Option<NodeId>>,
}

impl<K: HeapKey> Default for PadovanForest<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: HeapKey> PadovanForest<K> {
    pub fn new() -> Self {
        Self::from_store(NodeStore::new())
    }

    /// Forest that journals writes and root flags for the auditor.
    pub fn with_audit_trail() -> Self {
        Self::from_store(NodeStore::with_audit_trail())
    }

    fn from_store(store: NodeStore<K>) -> Self {
        PadovanForest {
            store,
            buckets: vec![None; INITIAL_BUCKETS],
        }
    }

    pub fn store(&self) -> &NodeStore<K> {
        &self.store
    }

    /// Raw access to the vertex store. Writes through it bypass every heap
    /// invariant; meant for fault injection in tests.
    pub fn store_mut(&mut self) -> &mut NodeStore<K> {
        &mut self.store
    }

    pub fn counters(&self) -> Counters {
        self.store.counters
    }

    pub fn new_heap(&mut self) -> HeapState {
        let dummy = self.store.alloc(K::min_value());
        HeapState { dummy, size: 0 }
    }

    /// Releases an empty heap's dummy head.
    pub fn drop_heap(&mut self, h: HeapState) {
        assert!(h.is_empty(), "drop_heap on a non-empty heap");
        self.store.free(h.dummy);
    }

    pub fn key(&self, handle: Handle) -> Result<K, HeapError> {
        let v = self.resolve(handle)?;
        Ok(self.store.key(v))
    }

    fn resolve(&self, handle: Handle) -> Result<NodeId, HeapError> {
        self.store.resolve(handle).ok_or(HeapError::StaleHandle)
    }

    /// Number of trees.
    pub fn root_count(&self, h: &HeapState) -> usize {
        self.store.children(h.dummy).count()
    }

    pub fn roots<'a>(&'a self, h: &HeapState) -> impl Iterator<Item = NodeId> + 'a {
        self.store.children(h.dummy)
    }

    /// Appends a new rank-0 root at the right end of the root list. No comparisons.
    pub fn insert(&mut self, h: &mut HeapState, key: K) -> Handle {
        let v = self.store.alloc(key);
        self.store.push_back(h.dummy, v);
        self.store.set_root_flag(v, true);
        h.size += 1;
        self.store.handle(v)
    }

    /// Concatenates `b`'s root list onto the right end of `a`'s and frees `b`'s dummy.
    pub fn meld(&mut self, mut a: HeapState, b: HeapState) -> HeapState {
        self.store.concat(a.dummy, b.dummy);
        self.store.free(b.dummy);
        a.size += b.size;
        a
    }

    /// Links the forest into a single tree and returns its root, the minimum.
    pub fn find_min(&mut self, h: &mut HeapState) -> Result<Handle, HeapError> {
        if h.is_empty() {
            return Err(HeapError::Empty);
        }
        self.consolidate(h);
        let root = self.store.child(h.dummy).expect("non-empty heap has a root");
        Ok(self.store.handle(root))
    }

    pub fn delete_min(&mut self, h: &mut HeapState) -> Result<(Handle, K), HeapError> {
        let handle = self.find_min(h)?;
        let m = handle.id();
        let key = self.store.key(m);
        self.remove_root(h, m);
        Ok((handle, key))
    }

    /// Cuts the vertex, runs the rank cascade from its former parent and then
    /// lowers the key of what is now a root.
    pub fn decrease_key(
        &mut self,
        h: &mut HeapState,
        handle: Handle,
        key: K,
    ) -> Result<(), HeapError> {
        let v = self.resolve(handle)?;
        if key > self.store.key(v) {
            return Err(HeapError::KeyIncrease);
        }
        if let Some(parent) = self.cut(h, v) {
            self.cascade(parent);
        }
        self.store.set_key(v, key);
        Ok(())
    }

    /// Removes an arbitrary element and returns its key.
    pub fn delete(&mut self, h: &mut HeapState, handle: Handle) -> Result<K, HeapError> {
        let v = self.resolve(handle)?;
        if let Some(parent) = self.cut(h, v) {
            self.cascade(parent);
        }
        let key = self.store.key(v);
        self.remove_root(h, v);
        Ok(key)
    }

    /// Splices the children of root `m` into the root list and frees `m`.
    fn remove_root(&mut self, h: &mut HeapState, m: NodeId) {
        self.store.detach(m);
        if self.store.is_auditing() {
            let children: Vec<_> = self.store.children(m).collect();
            for c in children {
                self.store.set_root_flag(c, true);
            }
        }
        self.store.concat(h.dummy, m);
        self.store.free(m);
        h.size -= 1;
    }

    /// Moves `v` to the root list. Returns the former parent when the rank
    /// cascade has to start there: only when `v` was among the last two
    /// children of a real vertex.
    pub fn cut(&mut self, h: &HeapState, v: NodeId) -> Option<NodeId> {
        let parent = match self.store.position_probe(v) {
            Position::NotLastTwo => None,
            Position::Last { owner } | Position::SecondLast { owner } => {
                if self.store.is_head(owner) {
                    // already a root near the right end
                    return None;
                }
                Some(owner)
            }
        };
        self.store.detach(v);
        self.store.push_back(h.dummy, v);
        self.store.set_root_flag(v, true);
        parent
    }

    /// Re-derives the rank of `p` from its last inner children.
    pub fn recompute_rank(&mut self, p: NodeId) -> RankOutcome {
        let placings_before = self.store.counters.placings;
        let mut demotions = 0;
        let mut dangerous = false;
        let rank = loop {
            self.store.counters.rule_steps += 1;
            let Some(w0) = self.seek_last_inner(p) else {
                break 0;
            };
            let rho0 = self.store.noncritical_rank(w0);
            let gap = if self.store.child(p) == Some(w0) {
                rho0 > 0
            } else {
                let w1 = self.store.left(w0);
                match self.store.status(w1) {
                    // a misplaced child between two inner ones means their
                    // noncritical ranks differ by at least two
                    Status::OuterMisplaced => true,
                    Status::OuterPlaced => rho0 > 0,
                    _ => rho0 > self.store.noncritical_rank(w1) + 1,
                }
            };
            if !gap {
                break rho0 + 1;
            }
            if self.store.status(w0) == Status::NoncriticalInner {
                dangerous = true;
                break rho0;
            }
            self.demote_to_front(p, w0);
            demotions += 1;
        };
        let new_rank = u8::try_from(rank).expect("rank fits in u8");
        self.store.set_rank(p, new_rank);
        RankOutcome {
            new_rank,
            dangerous,
            demotions,
            placings: (self.store.counters.placings - placings_before) as u32,
        }
    }

    /// Sweeps misplaced children off the right end of `p`'s list and returns
    /// the last inner child, if any.
    fn seek_last_inner(&mut self, p: NodeId) -> Option<NodeId> {
        loop {
            let last = self.store.rightmost_child(p)?;
            match self.store.status(last) {
                Status::OuterMisplaced => {
                    self.move_to_front(p, last);
                    self.store.counters.placings += 1;
                }
                Status::OuterPlaced => return None,
                Status::NoncriticalInner | Status::CriticalInner => return Some(last),
            }
        }
    }

    fn move_to_front(&mut self, p: NodeId, c: NodeId) {
        self.store.detach(c);
        self.store.set_status(c, Status::OuterPlaced);
        self.store.push_front(p, c);
    }

    fn demote_to_front(&mut self, p: NodeId, c: NodeId) {
        self.move_to_front(p, c);
    }

    /// Cascading rank recomputation starting at `p`.
    pub fn cascade(&mut self, mut p: NodeId) {
        loop {
            if self.store.is_head(p) {
                return;
            }
            let old = self.store.rank(p);
            let new = self.recompute_rank(p).new_rank;
            if new == old {
                return;
            }
            debug_assert!(new < old, "rank of {p:?} grew from {old} to {new}");
            if new > old {
                return;
            }
            let drop = old - new;
            let status = self.store.status(p);
            match self.store.position_probe(p) {
                Position::NotLastTwo => {
                    // parent unreachable: mark and stop
                    let next = match status {
                        Status::NoncriticalInner if drop == 1 => Status::CriticalInner,
                        Status::NoncriticalInner | Status::CriticalInner => Status::OuterMisplaced,
                        outer => outer,
                    };
                    if next != status {
                        self.store.set_status(p, next);
                    }
                    return;
                }
                Position::Last { owner: g } | Position::SecondLast { owner: g } => {
                    if self.store.is_head(g) {
                        return;
                    }
                    match status {
                        Status::NoncriticalInner if drop == 1 => {
                            self.store.set_status(p, Status::CriticalInner)
                        }
                        Status::NoncriticalInner | Status::CriticalInner => {
                            self.demote_to_front(g, p)
                        }
                        Status::OuterPlaced | Status::OuterMisplaced => return,
                    }
                    p = g;
                }
            }
        }
    }

    /// Demotes the last inner child of root `v` until `v` is safe.
    pub fn make_safe(&mut self, v: NodeId) {
        loop {
            self.store.counters.rule_steps += 1;
            let Some(w0) = self.seek_last_inner(v) else {
                return;
            };
            if i32::from(self.store.rank(v)) > self.store.noncritical_rank(w0) {
                return;
            }
            self.demote_to_front(v, w0);
            self.recompute_rank(v);
        }
    }

    fn consolidate(&mut self, h: &HeapState) {
        let dummy = h.dummy;

        // Phase 1: join roots of equal rank. Roots stay in the list while they
        // sit in a bucket; only losers leave it.
        let mut cursor = self.store.child(dummy);
        while let Some(v) = cursor {
            let next = self.store.right(v);
            cursor = (next != dummy).then_some(next);
            self.store.counters.traversals += 1;
            self.make_safe(v);
            let mut x = v;
            loop {
                let r = usize::from(self.store.rank(x));
                if r >= self.buckets.len() {
                    let len = (self.buckets.len() * 2).max(r + 1);
                    self.buckets.resize(len, None);
                }
                self.store.counters.bucket_ops += 1;
                match self.buckets[r].take() {
                    None => {
                        self.buckets[r] = Some(x);
                        break;
                    }
                    Some(occupant) => x = self.join(occupant, x),
                }
            }
        }

        // The surviving roots have distinct ranks; clear exactly their buckets.
        let mut cursor = self.store.child(dummy);
        while let Some(v) = cursor {
            self.buckets[usize::from(self.store.rank(v))] = None;
            self.store.counters.bucket_ops += 1;
            self.store.counters.traversals += 1;
            let next = self.store.right(v);
            cursor = (next != dummy).then_some(next);
        }

        // Phase 2: link last with second last, then the next two to the left,
        // cyclically, until one root remains.
        let Some(first) = self.store.child(dummy) else {
            return;
        };
        let mut a = self.store.left(first);
        loop {
            let b = self.store.left(a);
            if b == a {
                break;
            }
            self.store.counters.traversals += 1;
            let winner = self.link_outer(a, b);
            a = self.store.left(winner);
        }
    }

    /// Phase-1 join of two roots of equal rank; ties go to the incumbent.
    fn join(&mut self, incumbent: NodeId, challenger: NodeId) -> NodeId {
        self.store.note_comparison(incumbent, challenger);
        let (winner, loser) = if self.store.key(challenger) < self.store.key(incumbent) {
            (challenger, incumbent)
        } else {
            (incumbent, challenger)
        };
        self.store.detach(loser);
        self.store.set_status(loser, Status::NoncriticalInner);
        self.store.push_back(winner, loser);
        self.store.set_root_flag(loser, false);
        let rank = self.store.rank(winner) + 1;
        self.store.set_rank(winner, rank);
        winner
    }

    /// Phase-2 link: the loser becomes an outer child at the front of the
    /// winner's list, ranks unchanged. Ties go to `first_seen`.
    fn link_outer(&mut self, first_seen: NodeId, other: NodeId) -> NodeId {
        self.store.note_comparison(first_seen, other);
        let (winner, loser) = if self.store.key(other) < self.store.key(first_seen) {
            (other, first_seen)
        } else {
            (first_seen, other)
        };
        self.store.detach(loser);
        self.store.set_status(loser, Status::OuterPlaced);
        self.store.push_front(winner, loser);
        self.store.set_root_flag(loser, false);
        winner
    }
}

/// A single Padovan heap owning its forest.
#[derive(Debug, Clone)]
pub struct PadovanHeap<K> {
    forest: PadovanForest<K>,
    state: HeapState,
}

impl<K: HeapKey> Default for PadovanHeap<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: HeapKey> PadovanHeap<K> {
    pub fn new() -> Self {
        Self::from_forest(PadovanForest::new())
    }

    pub fn with_audit_trail() -> Self {
        Self::from_forest(PadovanForest::with_audit_trail())
    }

    fn from_forest(mut forest: PadovanForest<K>) -> Self {
        let state = forest.new_heap();
        PadovanHeap { forest, state }
    }

    pub fn forest(&self) -> &PadovanForest<K> {
        &self.forest
    }

    pub fn state(&self) -> &HeapState {
        &self.state
    }

    /// Forest and heap state together, for callers that need the raw forest API.
    pub fn parts_mut(&mut self) -> (&mut PadovanForest<K>, &mut HeapState) {
        (&mut self.forest, &mut self.state)
    }

    pub fn root_count(&self) -> usize {
        self.forest.root_count(&self.state)
    }
}

impl<K: HeapKey> AddressableHeap<K> for PadovanHeap<K> {
    type Handle = Handle;

    fn insert(&mut self, key: K) -> Handle {
        self.forest.insert(&mut self.state, key)
    }

    fn find_min(&mut self) -> Result<(Handle, K), HeapError> {
        let h = self.forest.find_min(&mut self.state)?;
        Ok((h, self.forest.store.key(h.id())))
    }

    fn delete_min(&mut self) -> Result<(Handle, K), HeapError> {
        self.forest.delete_min(&mut self.state)
    }

    fn decrease_key(&mut self, handle: Handle, key: K) -> Result<(), HeapError> {
        self.forest.decrease_key(&mut self.state, handle, key)
    }

    fn delete(&mut self, handle: Handle) -> Result<K, HeapError> {
        self.forest.delete(&mut self.state, handle)
    }

    fn len(&self) -> usize {
        self.state.size
    }

    fn counters(&self) -> Counters {
        self.forest.counters()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Forest = PadovanForest<i64>;

    fn child(f: &mut Forest, parent: NodeId, key: i64, rank: u8, status: Status) -> NodeId {
        let s = f.store_mut();
        let v = s.alloc(key);
        s.set_rank(v, rank);
        s.set_status(v, status);
        s.push_back(parent, v);
        v
    }

    /// A heap whose only root is returned, with the given rank.
    fn rooted(f: &mut Forest, rank: u8) -> (HeapState, NodeId) {
        let mut h = f.new_heap();
        let root = f.insert(&mut h, 0).id();
        f.store_mut().set_rank(root, rank);
        (h, root)
    }

    fn statuses(f: &Forest, v: NodeId) -> Vec<(i64, Status)> {
        f.store().children(v).map(|c| (f.store().key(c), f.store().status(c))).collect()
    }

    use Status::{CriticalInner as C, NoncriticalInner as N, OuterPlaced as P};

    #[test]
    fn empty_heap() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        assert_eq!(h.len(), 0);
        assert_eq!(f.root_count(&h), 0);
        assert_eq!(f.find_min(&mut h), Err(HeapError::Empty));
        assert_eq!(f.delete_min(&mut h).map(|x| x.1), Err(HeapError::Empty));
    }

    #[test]
    fn inserts_do_not_compare() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        let handles: Vec<_> = [5, 3, 9].into_iter().map(|k| f.insert(&mut h, k)).collect();
        assert_eq!(f.root_count(&h), 3);
        assert_eq!(f.counters().comparisons, 0);
        // appended at the right end, in order
        let keys: Vec<_> = f.roots(&h).map(|r| f.store().key(r)).collect();
        assert_eq!(keys, [5, 3, 9]);
        f.decrease_key(&mut h, handles[2], 1).unwrap();
        assert_eq!(f.key(handles[2]), Ok(1));
    }

    #[test]
    fn meld_concatenates() {
        let mut f = Forest::new();
        let mut a = f.new_heap();
        let mut b = f.new_heap();
        for k in [1, 2] {
            f.insert(&mut a, k);
        }
        for k in [3, 4, 5] {
            f.insert(&mut b, k);
        }
        let live = f.store().live();
        let mut m = f.meld(a, b);
        assert_eq!(m.len(), 5);
        assert_eq!(f.root_count(&m), 5);
        assert_eq!(f.store().live(), live - 1);
        let keys: Vec<_> = f.roots(&m).map(|r| f.store().key(r)).collect();
        assert_eq!(keys, [1, 2, 3, 4, 5]);

        let e = f.new_heap();
        m = f.meld(m, e);
        assert_eq!((m.len(), f.root_count(&m)), (5, 5));
        let e = f.new_heap();
        let m = f.meld(e, m);
        assert_eq!((m.len(), f.root_count(&m)), (5, 5));
    }

    #[test]
    fn find_min_on_three_roots() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        for k in [3, 1, 2] {
            f.insert(&mut h, k);
        }
        let m = f.find_min(&mut h).unwrap();
        assert_eq!(f.key(m), Ok(1));
        assert_eq!(f.root_count(&h), 1);
        // 3 joined under 1 in phase one, 2 linked as outer child in phase two
        assert_eq!(f.store().rank(m.id()), 1);
        assert_eq!(statuses(&f, m.id()), [(2, P), (3, N)]);
        assert_eq!(f.counters().comparisons, 2);
    }

    #[test]
    fn find_min_on_four_roots_joins_twice() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        for k in [4, 2, 3, 1] {
            f.insert(&mut h, k);
        }
        let m = f.find_min(&mut h).unwrap().id();
        assert_eq!(f.store().key(m), 1);
        assert_eq!(f.store().rank(m), 2);
        assert_eq!(f.root_count(&h), 1);
        assert_eq!(statuses(&f, m), [(3, N), (2, N)]);
        let (_, k) = f.delete_min(&mut h).unwrap();
        assert_eq!(k, 1);
        assert_eq!(f.root_count(&h), 2);
    }

    #[test]
    fn find_min_on_singleton_is_a_no_op() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        let a = f.insert(&mut h, 7);
        let before = f.counters();
        assert_eq!(f.find_min(&mut h), Ok(a));
        assert_eq!((f.counters() - before).comparisons, 0);
        assert_eq!(f.store().rank(a.id()), 0);
    }

    #[test]
    fn equal_keys_keep_the_incumbent() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        let a = f.insert(&mut h, 5);
        let _b = f.insert(&mut h, 5);
        assert_eq!(f.find_min(&mut h), Ok(a));
    }

    #[test]
    fn delete_min_examples() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        f.insert(&mut h, 5);
        assert_eq!(f.delete_min(&mut h).unwrap().1, 5);
        assert!(h.is_empty());
        assert_eq!(f.root_count(&h), 0);

        for k in [3, 1, 2] {
            f.insert(&mut h, k);
        }
        assert_eq!(f.delete_min(&mut h).unwrap().1, 1);
        let m = f.find_min(&mut h).unwrap();
        assert_eq!(f.key(m), Ok(2));
    }

    #[test]
    fn delete_min_promotes_all_children() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        for k in 0..13 {
            f.insert(&mut h, k);
        }
        let m = f.find_min(&mut h).unwrap().id();
        let children = f.store().children(m).count();
        f.delete_min(&mut h).unwrap();
        assert_eq!(f.root_count(&h), children);
        assert_eq!(h.len(), 12);
    }

    #[test]
    fn rules_three_children_rank_three() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 0);
        for r in 0..3 {
            child(&mut f, v, 10 + i64::from(r), r, N);
        }
        let out = f.recompute_rank(v);
        assert_eq!((out.new_rank, out.dangerous, out.demotions), (3, false, 0));
    }

    #[test]
    fn rule_one_gap_is_dangerous() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 0);
        child(&mut f, v, 11, 1, N);
        child(&mut f, v, 13, 3, N);
        let out = f.recompute_rank(v);
        assert_eq!((out.new_rank, out.dangerous, out.demotions), (3, true, 0));
    }

    #[test]
    fn rule_two_demotes_critical_w0() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 0);
        child(&mut f, v, 10, 0, N);
        child(&mut f, v, 11, 1, N);
        child(&mut f, v, 13, 2, C);
        let out = f.recompute_rank(v);
        assert_eq!((out.new_rank, out.dangerous, out.demotions), (2, false, 1));
        assert_eq!(statuses(&f, v), [(13, P), (10, N), (11, N)]);
    }

    #[test]
    fn no_inner_children_rank_zero() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 4);
        child(&mut f, v, 10, 3, P);
        assert_eq!(f.recompute_rank(v).new_rank, 0);
        let (_, w) = rooted(&mut f, 4);
        assert_eq!(f.recompute_rank(w).new_rank, 0);
    }

    #[test]
    fn misplaced_children_are_swept_and_force_a_gap() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 0);
        child(&mut f, v, 10, 0, N);
        child(&mut f, v, 11, 1, Status::OuterMisplaced);
        child(&mut f, v, 12, 1, N);
        child(&mut f, v, 13, 2, Status::OuterMisplaced);
        let out = f.recompute_rank(v);
        // 13 is placed; the misplaced 11 left of w0 forces rule one
        assert_eq!(out.placings, 1);
        assert_eq!((out.new_rank, out.dangerous), (1, true));
        assert_eq!(
            statuses(&f, v),
            [(13, P), (10, N), (11, Status::OuterMisplaced), (12, N)]
        );
    }

    #[test]
    fn make_safe_single_demotion() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 4);
        child(&mut f, v, 10, 0, N);
        child(&mut f, v, 11, 1, N);
        child(&mut f, v, 14, 4, N);
        f.make_safe(v);
        assert_eq!(f.store().rank(v), 2);
        assert_eq!(statuses(&f, v), [(14, P), (10, N), (11, N)]);
    }

    #[test]
    fn make_safe_through_two_rule_one_states() {
        let mut f = Forest::new();
        let (_, v) = rooted(&mut f, 5);
        child(&mut f, v, 10, 0, N);
        child(&mut f, v, 12, 2, N);
        child(&mut f, v, 15, 5, N);
        f.make_safe(v);
        assert_eq!(f.store().rank(v), 1);
        assert_eq!(statuses(&f, v), [(12, P), (15, P), (10, N)]);
    }

    #[test]
    fn cut_positions() {
        let mut f = Forest::new();
        let (h, v) = rooted(&mut f, 0);
        let a = child(&mut f, v, 10, 0, P);
        let b = child(&mut f, v, 11, 0, N);
        let c = child(&mut f, v, 12, 1, N);
        let d = child(&mut f, v, 13, 2, N);
        // root near the right end of the root list
        assert_eq!(f.cut(&h, v), None);
        assert_eq!(f.root_count(&h), 1);
        // middle child
        assert_eq!(f.cut(&h, a), None);
        assert_eq!(f.root_count(&h), 2);
        // rightmost child
        assert_eq!(f.cut(&h, d), Some(v));
        assert_eq!(f.store().right(c), v);
        // second last child
        assert_eq!(f.cut(&h, b), Some(v));
        assert_eq!(f.root_count(&h), 4);
    }

    #[test]
    fn decrease_key_on_root_changes_nothing_else() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        f.insert(&mut h, 1);
        let b = f.insert(&mut h, 5);
        f.insert(&mut h, 9);
        let before = f.counters();
        f.decrease_key(&mut h, b, 2).unwrap();
        let d = f.counters() - before;
        assert_eq!((d.comparisons, d.link_writes, d.rule_steps), (0, 0, 0));
        assert_eq!(f.key(b), Ok(2));
    }

    #[test]
    fn decrease_key_on_middle_outer_child_skips_ranks() {
        let mut f = Forest::new();
        let (mut h, v) = rooted(&mut f, 1);
        let a = child(&mut f, v, 10, 0, P);
        child(&mut f, v, 11, 0, P);
        child(&mut f, v, 12, 0, N);
        h.size = 4;
        let before = f.counters();
        let handle = f.store().handle(a);
        f.decrease_key(&mut h, handle, 3).unwrap();
        assert_eq!((f.counters() - before).rule_steps, 0);
        assert_eq!(f.root_count(&h), 2);
        assert_eq!(f.store().rank(v), 1);
    }

    #[test]
    fn decrease_key_on_last_inner_child_of_safe_root() {
        let mut f = Forest::new();
        let (mut h, v) = rooted(&mut f, 2);
        child(&mut f, v, 10, 0, N);
        let b = child(&mut f, v, 11, 1, N);
        h.size = 3;
        let handle = f.store().handle(b);
        f.decrease_key(&mut h, handle, -1).unwrap();
        assert_eq!(f.store().rank(v), 1);
        assert_eq!(f.root_count(&h), 2);
        assert_eq!(f.key(handle), Ok(-1));
    }

    #[test]
    fn cascade_stops_on_unchanged_rank() {
        let mut f = Forest::new();
        let (h, v) = rooted(&mut f, 2);
        let a = child(&mut f, v, 10, 0, N);
        child(&mut f, v, 12, 2, N);
        let p = f.cut(&h, a).unwrap();
        let before = f.counters();
        f.cascade(p);
        assert_eq!((f.counters() - before).rule_steps, 1);
        assert_eq!(f.store().rank(v), 2);
    }

    #[test]
    fn cascade_makes_child_critical_and_demotes_at_grandparent() {
        let mut f = Forest::new();
        let (h, g) = rooted(&mut f, 3);
        child(&mut f, g, 10, 0, N);
        let p = child(&mut f, g, 11, 3, N);
        let a = child(&mut f, p, 20, 1, N);
        child(&mut f, p, 21, 2, N);
        assert_eq!(f.cut(&h, a), Some(p));
        f.cascade(p);
        assert_eq!(f.store().rank(p), 2);
        assert_eq!(f.store().status(p), P);
        assert_eq!(f.store().rank(g), 1);
        assert_eq!(statuses(&f, g), [(11, P), (10, N)]);
    }

    #[test]
    fn cascade_demotes_critical_child() {
        let mut f = Forest::new();
        let (h, g) = rooted(&mut f, 3);
        child(&mut f, g, 10, 0, N);
        child(&mut f, g, 11, 1, N);
        let p = child(&mut f, g, 12, 1, C);
        let a = child(&mut f, p, 20, 0, N);
        assert_eq!(f.cut(&h, a), Some(p));
        f.cascade(p);
        assert_eq!(f.store().rank(p), 0);
        assert_eq!(f.store().rank(g), 2);
        assert_eq!(statuses(&f, g), [(12, P), (10, N), (11, N)]);
    }

    #[test]
    fn cascade_marks_unreachable_parent() {
        let mut f = Forest::new();
        let (h, g) = rooted(&mut f, 4);
        child(&mut f, g, 10, 0, N);
        let p = child(&mut f, g, 11, 1, N);
        child(&mut f, g, 12, 2, N);
        child(&mut f, g, 13, 3, N);
        let a = child(&mut f, p, 20, 0, N);
        assert_eq!(f.cut(&h, a), Some(p));
        let before = f.counters();
        f.cascade(p);
        // p is third from the right, so g is out of reach: mark and stop
        assert_eq!(f.store().status(p), C);
        assert_eq!(f.store().rank(p), 0);
        assert_eq!((f.counters() - before).rule_steps, 1);
        assert_eq!(f.store().rank(g), 4);
    }

    #[test]
    fn delete_examples() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        let a = f.insert(&mut h, 1);
        assert_eq!(f.delete(&mut h, a), Ok(1));
        assert!(h.is_empty());
        assert_eq!(f.delete(&mut h, a), Err(HeapError::StaleHandle));

        let hs: Vec<_> = [1, 2, 3].into_iter().map(|k| f.insert(&mut h, k)).collect();
        f.delete(&mut h, hs[1]).unwrap();
        assert_eq!(f.root_count(&h), 2);

        let (mut h, v) = rooted(&mut f, 1);
        child(&mut f, v, 10, 0, P);
        child(&mut f, v, 11, 0, N);
        h.size = 3;
        let before = f.root_count(&h);
        let hv = f.store().handle(v);
        f.delete(&mut h, hv).unwrap();
        assert_eq!(f.root_count(&h), before + 1);
    }

    #[test]
    fn handle_errors() {
        let mut f = Forest::new();
        let mut h = f.new_heap();
        let a = f.insert(&mut h, 4);
        assert_eq!(f.decrease_key(&mut h, a, 5), Err(HeapError::KeyIncrease));
        assert_eq!(f.decrease_key(&mut h, a, 4), Ok(()));
        f.delete_min(&mut h).unwrap();
        assert_eq!(f.decrease_key(&mut h, a, 1), Err(HeapError::StaleHandle));
        assert_eq!(f.key(a), Err(HeapError::StaleHandle));
    }
}
