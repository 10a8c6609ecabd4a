//! The operation set shared by every heap in this crate.

use std::fmt::Debug;
use std::hash::Hash;

use crate::counters::Counters;
use crate::error::HeapError;

/// A min-heap whose elements can be addressed after insertion.
///
/// Equal keys are allowed. Which of several equal minima `find_min` and
/// `delete_min` report is up to the implementation.
pub trait AddressableHeap<K> {
    type Handle: Copy + Eq + Hash + Debug;

    fn insert(&mut self, key: K) -> Self::Handle;

    fn find_min(&mut self) -> Result<(Self::Handle, K), HeapError>;

    /// The returned handle no longer resolves.
    fn delete_min(&mut self) -> Result<(Self::Handle, K), HeapError>;

    /// Lowering a key to its current value is allowed.
    fn decrease_key(&mut self, handle: Self::Handle, key: K) -> Result<(), HeapError>;

    fn delete(&mut self, handle: Self::Handle) -> Result<K, HeapError>;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn counters(&self) -> Counters;
}

impl<K, H: AddressableHeap<K> + ?Sized> AddressableHeap<K> for &mut H {
    type Handle = H::Handle;

    fn insert(&mut self, key: K) -> Self::Handle {
        (**self).insert(key)
    }

    fn find_min(&mut self) -> Result<(Self::Handle, K), HeapError> {
        (**self).find_min()
    }

    fn delete_min(&mut self) -> Result<(Self::Handle, K), HeapError> {
        (**self).delete_min()
    }

    fn decrease_key(&mut self, handle: Self::Handle, key: K) -> Result<(), HeapError> {
        (**self).decrease_key(handle, key)
    }

    fn delete(&mut self, handle: Self::Handle) -> Result<K, HeapError> {
        (**self).delete(handle)
    }

    fn len(&self) -> usize {
        (**self).len()
    }

    fn counters(&self) -> Counters {
        (**self).counters()
    }
}
