//! Slot arena with generation-stamped handles.
//!
//! Slots are addressed internally by [`NodeId`]. Callers outside the heap hold
//! [`Handle`]s, which carry the generation the slot had when it was issued; a
//! handle whose slot has since been freed (or freed and reused) no longer
//! resolves.

use std::fmt;
use std::num::NonZeroU32;

/// Index of a slot in an arena. Used for all internal links.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(NonZeroU32);

impl NodeId {
    /// Panics if `index` does not fit in 32 bits.
    pub fn from_index(index: usize) -> Self {
        let raw = u32::try_from(index + 1).expect("arena exhausted: more than u32::MAX - 1 slots");
        NodeId(NonZeroU32::new(raw).expect("index + 1 is never zero"))
    }

    #[inline]
    pub fn index(self) -> usize {
        (self.0.get() - 1) as usize
    }
}

impl fmt::Debug for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.index())
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// User-facing reference to a heap element.
///
/// Stays valid until the element is removed from its heap.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Handle {
    id: NodeId,
    generation: u32,
}

impl Handle {
    pub fn id(self) -> NodeId {
        self.id
    }
}

/// Generation counters are odd while a slot is occupied and even while it is free.
#[derive(Debug, Clone)]
pub(crate) struct Slab<T> {
    items: Vec<T>,
    generations: Vec<u32>,
    free: Vec<NodeId>,
    live: usize,
}

impl<T> Slab<T> {
    pub(crate) fn new() -> Self {
        Slab {
            items: Vec::new(),
            generations: Vec::new(),
            free: Vec::new(),
            live: 0,
        }
    }

    pub(crate) fn insert_with(&mut self, make: impl FnOnce(NodeId) -> T) -> NodeId {
        self.live += 1;
        if let Some(id) = self.free.pop() {
            self.items[id.index()] = make(id);
            self.generations[id.index()] += 1;
            id
        } else {
            let id = NodeId::from_index(self.items.len());
            self.items.push(make(id));
            self.generations.push(1);
            id
        }
    }

    pub(crate) fn remove(&mut self, id: NodeId) {
        debug_assert!(self.is_live(id), "double free of {id:?}");
        self.generations[id.index()] += 1;
        self.free.push(id);
        self.live -= 1;
    }

    #[inline]
    pub(crate) fn is_live(&self, id: NodeId) -> bool {
        self.generations
            .get(id.index())
            .is_some_and(|g| g & 1 == 1)
    }

    pub(crate) fn handle(&self, id: NodeId) -> Handle {
        Handle {
            id,
            generation: self.generations[id.index()],
        }
    }

    pub(crate) fn resolve(&self, handle: Handle) -> Option<NodeId> {
        (self.generations.get(handle.id.index()) == Some(&handle.generation)).then_some(handle.id)
    }

    #[inline]
    pub(crate) fn get(&self, id: NodeId) -> &T {
        &self.items[id.index()]
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, id: NodeId) -> &mut T {
        &mut self.items[id.index()]
    }

    /// Number of occupied slots.
    pub(crate) fn live(&self) -> usize {
        self.live
    }

    /// Number of slots ever created, free or not.
    pub(crate) fn slots(&self) -> usize {
        self.items.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn freed_handles_stop_resolving() {
        let mut slab = Slab::new();
        let a = slab.insert_with(|_| 1u8);
        let ha = slab.handle(a);
        assert_eq!(slab.resolve(ha), Some(a));
        slab.remove(a);
        assert_eq!(slab.resolve(ha), None);
        assert!(!slab.is_live(a));

        // the slot is reused, the old handle still does not resolve
        let b = slab.insert_with(|_| 2u8);
        assert_eq!(a, b);
        assert_eq!(slab.resolve(ha), None);
        assert_eq!(slab.resolve(slab.handle(b)), Some(b));
        assert_eq!(slab.live(), 1);
    }

    #[test]
    fn node_id_round_trips_index() {
        for i in [0usize, 1, 17, 1 << 20] {
            assert_eq!(NodeId::from_index(i).index(), i);
        }
        assert_eq!(std::mem::size_of::<Option<NodeId>>(), 4);
    }
}
