//! Vertex storage with exactly three links per vertex.
//!
//! Every vertex belongs to one sibling list: the children of some owner, or the
//! root list owned by a heap's dummy head. A list is reached through the
//! owner's `child` link (its leftmost member). Members are chained by `right`
//! links, and the rightmost member's `right` link points back at the owner.
//! The `left` links form a cycle over exactly the members, so the leftmost
//! member's `left` is the rightmost member.
//!
//! ```text
//!            owner
//!              │ child
//!              ▼
//!   ┌────────► a ──right──► b ──right──► c ──right──► owner
//!   │          ▲◄───left──── ▲◄───left─── │
//!   └──────────┼─────────────┼────left────┘   (a.left = c)
//! ```
//!
//! A member `v` is rightmost exactly when `v.right.left != v`: for the rightmost
//! member `v.right` is the owner, whose own `left` lives in a different list.
//! Symmetrically `v` is leftmost when `v.left.right != v`, and then
//! `v.left.right` is the owner. So the owner of a list is reachable in O(1)
//! from either end, never from the middle. There is no parent field.

use crate::arena::{Handle, NodeId, Slab};
use crate::counters::Counters;

/// Role of a vertex in its parent's children list. Meaningless for roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u8)]
pub enum Status {
    NoncriticalInner,
    CriticalInner,
    OuterPlaced,
    OuterMisplaced,
}

impl Status {
    #[inline]
    pub fn is_inner(self) -> bool {
        matches!(self, Status::NoncriticalInner | Status::CriticalInner)
    }

    #[inline]
    pub fn is_outer(self) -> bool {
        !self.is_inner()
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Status::NoncriticalInner => "N",
            Status::CriticalInner => "C",
            Status::OuterPlaced => "P",
            Status::OuterMisplaced => "M",
        }
    }
}

/// One heap vertex: key, rank, status and three links.
#[derive(Clone, Debug)]
pub struct NodeRecord<K> {
    pub key: K,
    pub rank: u8,
    pub status: Status,
    pub left: NodeId,
    /// Next sibling, or the list owner for the rightmost member.
    pub right: NodeId,
    /// Leftmost child.
    pub child: Option<NodeId>,
}

impl<K> NodeRecord<K> {
    /// `rank + 1` for a critical vertex, `rank` otherwise.
    #[inline]
    pub fn noncritical_rank(&self) -> i32 {
        match self.status {
            Status::CriticalInner => i32::from(self.rank) + 1,
            _ => i32::from(self.rank),
        }
    }
}

/// Result of [`NodeStore::position_probe`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    NotLastTwo,
    Last { owner: NodeId },
    SecondLast { owner: NodeId },
}

impl Position {
    pub fn owner(self) -> Option<NodeId> {
        match self {
            Position::NotLastTwo => None,
            Position::Last { owner } | Position::SecondLast { owner } => Some(owner),
        }
    }
}

/// Side information kept only when auditing is enabled: which vertices were
/// written since the last drain, and which live vertices are roots.
#[derive(Debug, Default, Clone)]
struct AuditTrail {
    touched: Vec<NodeId>,
    root_flags: Vec<bool>,
    nonroot_comparisons: u64,
}

#[derive(Debug, Clone)]
pub struct NodeStore<K> {
    slab: Slab<NodeRecord<K>>,
    pub(crate) counters: Counters,
    trail: Option<AuditTrail>,
}

impl<K: Copy> Default for NodeStore<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Copy> NodeStore<K> {
    pub fn new() -> Self {
        NodeStore {
            slab: Slab::new(),
            counters: Counters::default(),
            trail: None,
        }
    }

    /// A store that journals every written vertex and tracks root flags.
    pub fn with_audit_trail() -> Self {
        NodeStore {
            trail: Some(AuditTrail::default()),
            ..Self::new()
        }
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    /// New detached vertex: rank 0, no children, `left` and `right` pointing at itself.
    pub fn alloc(&mut self, key: K) -> NodeId {
        let id = self.slab.insert_with(|id| NodeRecord {
            key,
            rank: 0,
            status: Status::NoncriticalInner,
            left: id,
            right: id,
            child: None,
        });
        self.counters.link_writes += 3;
        if let Some(trail) = &mut self.trail {
            if trail.root_flags.len() <= id.index() {
                trail.root_flags.resize(id.index() + 1, false);
            }
            trail.root_flags[id.index()] = false;
            trail.touched.push(id);
        }
        id
    }

    pub fn free(&mut self, id: NodeId) {
        if let Some(trail) = &mut self.trail {
            trail.root_flags[id.index()] = false;
            trail.touched.push(id);
        }
        self.slab.remove(id);
    }

    #[inline]
    pub fn is_live(&self, id: NodeId) -> bool {
        self.slab.is_live(id)
    }

    pub fn handle(&self, id: NodeId) -> Handle {
        self.slab.handle(id)
    }

    pub fn resolve(&self, handle: Handle) -> Option<NodeId> {
        self.slab.resolve(handle)
    }

    /// Live vertices, dummy heads included.
    pub fn live(&self) -> usize {
        self.slab.live()
    }

    /// Upper bound (exclusive) on vertex indices.
    pub fn slots(&self) -> usize {
        self.slab.slots()
    }

    #[inline]
    pub fn record(&self, id: NodeId) -> &NodeRecord<K> {
        debug_assert!(self.slab.is_live(id), "use after free of {id:?}");
        self.slab.get(id)
    }

    #[inline]
    pub fn key(&self, id: NodeId) -> K {
        self.record(id).key
    }

    #[inline]
    pub fn rank(&self, id: NodeId) -> u8 {
        self.record(id).rank
    }

    #[inline]
    pub fn status(&self, id: NodeId) -> Status {
        self.record(id).status
    }

    #[inline]
    pub fn noncritical_rank(&self, id: NodeId) -> i32 {
        self.record(id).noncritical_rank()
    }

    #[inline]
    pub fn left(&self, id: NodeId) -> NodeId {
        self.record(id).left
    }

    #[inline]
    pub fn right(&self, id: NodeId) -> NodeId {
        self.record(id).right
    }

    #[inline]
    pub fn child(&self, id: NodeId) -> Option<NodeId> {
        self.record(id).child
    }

    #[inline]
    fn touch(&mut self, id: NodeId) {
        if let Some(trail) = &mut self.trail {
            trail.touched.push(id);
        }
    }

    pub fn set_key(&mut self, id: NodeId, key: K) {
        self.slab.get_mut(id).key = key;
        self.touch(id);
    }

    pub fn set_rank(&mut self, id: NodeId, rank: u8) {
        self.slab.get_mut(id).rank = rank;
        self.counters.observe_rank(u32::from(rank));
        self.touch(id);
    }

    pub fn set_status(&mut self, id: NodeId, status: Status) {
        self.slab.get_mut(id).status = status;
        self.touch(id);
    }

    #[inline]
    pub fn set_left(&mut self, id: NodeId, to: NodeId) {
        self.slab.get_mut(id).left = to;
        self.counters.link_writes += 1;
        self.touch(id);
    }

    #[inline]
    pub fn set_right(&mut self, id: NodeId, to: NodeId) {
        self.slab.get_mut(id).right = to;
        self.counters.link_writes += 1;
        self.touch(id);
    }

    #[inline]
    pub fn set_child(&mut self, id: NodeId, to: Option<NodeId>) {
        self.slab.get_mut(id).child = to;
        self.counters.link_writes += 1;
        self.touch(id);
    }

    /// True for a dummy head, whose `right` link points at itself.
    #[inline]
    pub fn is_head(&self, id: NodeId) -> bool {
        self.right(id) == id
    }

    #[inline]
    pub fn is_rightmost(&self, v: NodeId) -> bool {
        self.left(self.right(v)) != v
    }

    #[inline]
    pub fn is_leftmost(&self, v: NodeId) -> bool {
        self.right(self.left(v)) != v
    }

    pub fn rightmost_child(&self, owner: NodeId) -> Option<NodeId> {
        self.child(owner).map(|first| self.left(first))
    }

    /// Makes `v` the leftmost child of `owner`. `v` must be detached.
    pub fn push_front(&mut self, owner: NodeId, v: NodeId) {
        match self.child(owner) {
            None => self.attach_only(owner, v),
            Some(first) => {
                let last = self.left(first);
                self.set_right(v, first);
                self.set_left(v, last);
                self.set_left(first, v);
                self.set_child(owner, Some(v));
            }
        }
    }

    /// Makes `v` the rightmost child of `owner`. `v` must be detached.
    pub fn push_back(&mut self, owner: NodeId, v: NodeId) {
        match self.child(owner) {
            None => self.attach_only(owner, v),
            Some(first) => {
                let last = self.left(first);
                self.set_right(last, v);
                self.set_left(v, last);
                self.set_right(v, owner);
                self.set_left(first, v);
            }
        }
    }

    fn attach_only(&mut self, owner: NodeId, v: NodeId) {
        self.set_left(v, v);
        self.set_right(v, owner);
        self.set_child(owner, Some(v));
    }

    /// Unlinks `v` from its list and leaves it as a detached singleton.
    ///
    /// The owner is only needed when `v` sits at either end of the list, and
    /// in both cases it is one link away. Returns the owner when it was
    /// touched.
    pub fn detach(&mut self, v: NodeId) -> Option<NodeId> {
        let l = self.left(v);
        let r = self.right(v);
        let rightmost = self.left(r) != v;
        let leftmost = self.right(l) != v;
        let owner = match (leftmost, rightmost) {
            (true, true) => {
                self.set_child(r, None);
                Some(r)
            }
            (true, false) => {
                let owner = self.right(l);
                self.set_left(r, l);
                self.set_child(owner, Some(r));
                Some(owner)
            }
            (false, true) => {
                self.set_right(l, r);
                let first = self.child(r).expect("owner of a non-empty list has a child");
                self.set_left(first, l);
                Some(r)
            }
            (false, false) => {
                self.set_right(l, r);
                self.set_left(r, l);
                None
            }
        };
        self.set_left(v, v);
        self.set_right(v, v);
        owner
    }

    /// Classifies `v` as last, second last or neither in its list.
    ///
    /// `v.right.right.left.left != v` says `v` is among the last two; then
    /// `v.right.left != v` says it is last.
    pub fn position_probe(&mut self, v: NodeId) -> Position {
        self.counters.traversals += 1;
        let r = self.right(v);
        let rr = self.right(r);
        if self.left(self.left(rr)) == v {
            Position::NotLastTwo
        } else if self.left(r) != v {
            Position::Last { owner: r }
        } else {
            Position::SecondLast { owner: rr }
        }
    }

    /// Moves all of `donor`'s children to the right end of `target`'s list.
    pub fn concat(&mut self, target: NodeId, donor: NodeId) {
        let Some(d_first) = self.child(donor) else {
            return;
        };
        let d_last = self.left(d_first);
        self.set_child(donor, None);
        match self.child(target) {
            None => {
                self.set_child(target, Some(d_first));
                self.set_right(d_last, target);
            }
            Some(t_first) => {
                let t_last = self.left(t_first);
                self.set_right(t_last, d_first);
                self.set_left(d_first, t_last);
                self.set_right(d_last, target);
                self.set_left(t_first, d_last);
            }
        }
    }

    /// Members of `owner`'s children list, left to right. Assumes a well-formed list.
    pub fn children(&self, owner: NodeId) -> Children<'_, K> {
        Children {
            store: self,
            owner,
            next: self.child(owner),
        }
    }

    pub fn is_auditing(&self) -> bool {
        self.trail.is_some()
    }

    /// Vertices written since the previous drain, possibly repeated.
    pub fn drain_touched(&mut self) -> Vec<NodeId> {
        self.trail
            .as_mut()
            .map(|t| std::mem::take(&mut t.touched))
            .unwrap_or_default()
    }

    /// Root flag kept by the audit trail, `None` when auditing is off.
    pub fn root_flag(&self, id: NodeId) -> Option<bool> {
        self.trail
            .as_ref()
            .map(|t| t.root_flags.get(id.index()).copied().unwrap_or(false))
    }

    pub(crate) fn set_root_flag(&mut self, id: NodeId, is_root: bool) {
        if let Some(trail) = &mut self.trail {
            trail.root_flags[id.index()] = is_root;
            trail.touched.push(id);
        }
    }

    pub(crate) fn note_comparison(&mut self, a: NodeId, b: NodeId) {
        self.counters.comparisons += 1;
        if let Some(trail) = &mut self.trail {
            if !trail.root_flags[a.index()] || !trail.root_flags[b.index()] {
                trail.nonroot_comparisons += 1;
            }
        }
    }

    /// Comparisons made between vertices that were not both roots. Always zero
    /// for a correct heap; only counted while auditing.
    pub fn nonroot_comparisons(&self) -> u64 {
        self.trail.as_ref().map_or(0, |t| t.nonroot_comparisons)
    }
}

pub struct Children<'a, K> {
    store: &'a NodeStore<K>,
    owner: NodeId,
    next: Option<NodeId>,
}

impl<K: Copy> Iterator for Children<'_, K> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let cur = self.next?;
        let r = self.store.right(cur);
        self.next = (r != self.owner).then_some(r);
        Some(cur)
    }
}
