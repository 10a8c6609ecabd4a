//! Brute-force reference heap over an ordered set.

use std::collections::{BTreeSet, HashMap};

use crate::counters::Counters;
use crate::error::HeapError;
use crate::queue::AddressableHeap;
use crate::HeapKey;

/// Element id issued by [`OracleHeap`]. Ids are never reused.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OracleId(u64);

/// Ordered-set heap. Among equal keys the earliest inserted is the minimum.
#[derive(Debug, Clone, Default)]
pub struct OracleHeap<K> {
    set: BTreeSet<(K, OracleId)>,
    keys: HashMap<OracleId, K>,
    next: u64,
}

impl<K: HeapKey> OracleHeap<K> {
    pub fn new() -> Self {
        OracleHeap {
            set: BTreeSet::new(),
            keys: HashMap::new(),
            next: 0,
        }
    }

    pub fn key(&self, id: OracleId) -> Option<K> {
        self.keys.get(&id).copied()
    }

    pub fn contains(&self, id: OracleId) -> bool {
        self.keys.contains_key(&id)
    }

    pub fn min_key(&self) -> Option<K> {
        self.set.first().map(|&(k, _)| k)
    }

    /// Live keys in ascending order.
    pub fn sorted_keys(&self) -> Vec<K> {
        self.set.iter().map(|&(k, _)| k).collect()
    }
}

impl<K: HeapKey> AddressableHeap<K> for OracleHeap<K> {
    type Handle = OracleId;

    fn insert(&mut self, key: K) -> OracleId {
        let id = OracleId(self.next);
        self.next += 1;
        self.set.insert((key, id));
        self.keys.insert(id, key);
        id
    }

    fn find_min(&mut self) -> Result<(OracleId, K), HeapError> {
        self.set.first().map(|&(k, id)| (id, k)).ok_or(HeapError::Empty)
    }

    fn delete_min(&mut self) -> Result<(OracleId, K), HeapError> {
        let (k, id) = self.set.pop_first().ok_or(HeapError::Empty)?;
        self.keys.remove(&id);
        Ok((id, k))
    }

    fn decrease_key(&mut self, id: OracleId, key: K) -> Result<(), HeapError> {
        let old = self.key(id).ok_or(HeapError::StaleHandle)?;
        if key > old {
            return Err(HeapError::KeyIncrease);
        }
        self.set.remove(&(old, id));
        self.set.insert((key, id));
        self.keys.insert(id, key);
        Ok(())
    }

    fn delete(&mut self, id: OracleId) -> Result<K, HeapError> {
        let key = self.keys.remove(&id).ok_or(HeapError::StaleHandle)?;
        self.set.remove(&(key, id));
        Ok(key)
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn counters(&self) -> Counters {
        Counters::default()
    }
}
