//! Textbook Fibonacci heap, kept as a baseline for step counts.
//!
//! Four links per vertex (parent, child, left, right), a degree and a mark.
//! The minimum pointer is maintained eagerly; `delete_min` consolidates by
//! degree through an array of about log_φ n slots. Marks are cleared whenever
//! a vertex becomes a root so that roots are never marked.

use crate::arena::{Handle, NodeId, Slab};
use crate::counters::Counters;
use crate::error::HeapError;
use crate::queue::AddressableHeap;
use crate::{HeapKey, PHI};

#[derive(Debug, Clone)]
pub struct FibNode<K> {
    pub key: K,
    pub degree: u8,
    pub marked: bool,
    pub parent: Option<NodeId>,
    pub child: Option<NodeId>,
    pub left: NodeId,
    pub right: NodeId,
}

/// A heap inside a [`FibonacciForest`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibState {
    min: Option<NodeId>,
    size: usize,
}

impl FibState {
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn min(&self) -> Option<NodeId> {
        self.min
    }
}

#[derive(Debug, Clone)]
pub struct FibonacciForest<K> {
    slab: Slab<FibNode<K>>,
    counters: Counters,
    scratch: Vec<Option<NodeId>>,
}

impl<K: HeapKey> Default for FibonacciForest<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// Largest degree a vertex can have in a heap of `n` elements.
pub fn degree_bound(n: usize) -> usize {
    if n <= 1 {
        return 0;
    }
    ((n as f64).ln() / PHI.ln()).floor() as usize
}

impl<K: HeapKey> FibonacciForest<K> {
    pub fn new() -> Self {
        FibonacciForest {
            slab: Slab::new(),
            counters: Counters::default(),
            scratch: Vec::new(),
        }
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    pub fn new_heap(&self) -> FibState {
        FibState { min: None, size: 0 }
    }

    pub fn node(&self, id: NodeId) -> &FibNode<K> {
        self.slab.get(id)
    }

    pub fn key(&self, handle: Handle) -> Result<K, HeapError> {
        Ok(self.slab.get(self.resolve(handle)?).key)
    }

    fn resolve(&self, handle: Handle) -> Result<NodeId, HeapError> {
        self.slab.resolve(handle).ok_or(HeapError::StaleHandle)
    }

    fn n(&mut self, id: NodeId) -> &mut FibNode<K> {
        self.slab.get_mut(id)
    }

    fn set_left(&mut self, id: NodeId, to: NodeId) {
        self.counters.link_writes += 1;
        self.n(id).left = to;
    }

    fn set_right(&mut self, id: NodeId, to: NodeId) {
        self.counters.link_writes += 1;
        self.n(id).right = to;
    }

    fn set_parent(&mut self, id: NodeId, to: Option<NodeId>) {
        self.counters.link_writes += 1;
        self.n(id).parent = to;
    }

    fn set_child(&mut self, id: NodeId, to: Option<NodeId>) {
        self.counters.link_writes += 1;
        self.n(id).child = to;
    }

    fn less(&mut self, a: NodeId, b: NodeId) -> bool {
        self.counters.comparisons += 1;
        self.slab.get(a).key < self.slab.get(b).key
    }

    /// Joins the circular lists through `a` and `b` into one.
    fn join_lists(&mut self, a: NodeId, b: NodeId) {
        let a_right = self.slab.get(a).right;
        let b_left = self.slab.get(b).left;
        self.set_right(a, b);
        self.set_left(b, a);
        self.set_right(b_left, a_right);
        self.set_left(a_right, b_left);
    }

    /// Unlinks `x` from its circular list and makes it a singleton.
    fn unlink(&mut self, x: NodeId) {
        let (left, right) = (self.slab.get(x).left, self.slab.get(x).right);
        if left != x {
            self.set_right(left, right);
            self.set_left(right, left);
            self.set_left(x, x);
            self.set_right(x, x);
        }
    }

    pub fn insert(&mut self, h: &mut FibState, key: K) -> Handle {
        let x = self.slab.insert_with(|id| FibNode {
            key,
            degree: 0,
            marked: false,
            parent: None,
            child: None,
            left: id,
            right: id,
        });
        self.counters.link_writes += 4;
        self.add_root(h, x);
        h.size += 1;
        self.slab.handle(x)
    }

    fn add_root(&mut self, h: &mut FibState, x: NodeId) {
        match h.min {
            None => h.min = Some(x),
            Some(m) => {
                self.join_lists(m, x);
                if self.less(x, m) {
                    h.min = Some(x);
                }
            }
        }
    }

    pub fn meld(&mut self, mut a: FibState, b: FibState) -> FibState {
        match (a.min, b.min) {
            (_, None) => {}
            (None, Some(_)) => a.min = b.min,
            (Some(ma), Some(mb)) => {
                self.join_lists(ma, mb);
                if self.less(mb, ma) {
                    a.min = Some(mb);
                }
            }
        }
        a.size += b.size;
        a
    }

    pub fn find_min(&self, h: &FibState) -> Result<Handle, HeapError> {
        h.min.map(|m| self.slab.handle(m)).ok_or(HeapError::Empty)
    }

    pub fn delete_min(&mut self, h: &mut FibState) -> Result<(Handle, K), HeapError> {
        let z = h.min.ok_or(HeapError::Empty)?;
        let handle = self.slab.handle(z);
        let key = self.slab.get(z).key;
        self.remove_root(h, z);
        if let Some(start) = h.min {
            self.consolidate(h, start);
        }
        Ok((handle, key))
    }

    /// Removes root `z`, moving its children to the root list. If `z` was the
    /// minimum, `h.min` is left pointing at an arbitrary root.
    fn remove_root(&mut self, h: &mut FibState, z: NodeId) {
        if let Some(c) = self.slab.get(z).child {
            let mut x = c;
            loop {
                self.counters.traversals += 1;
                self.set_parent(x, None);
                self.n(x).marked = false;
                x = self.slab.get(x).right;
                if x == c {
                    break;
                }
            }
            self.join_lists(z, c);
            self.set_child(z, None);
        }
        let next = self.slab.get(z).right;
        self.unlink(z);
        if h.min == Some(z) {
            h.min = (next != z).then_some(next);
        }
        self.slab.remove(z);
        h.size -= 1;
    }

    fn consolidate(&mut self, h: &mut FibState, start: NodeId) {
        let slots = degree_bound(h.size) + 2;
        self.scratch.clear();
        self.scratch.resize(slots, None);
        self.counters.bucket_ops += slots as u64;

        let mut roots = Vec::new();
        let mut x = start;
        loop {
            self.counters.traversals += 1;
            roots.push(x);
            x = self.slab.get(x).right;
            if x == start {
                break;
            }
        }

        for w in roots {
            let mut x = w;
            let mut d = usize::from(self.slab.get(x).degree);
            loop {
                if d >= self.scratch.len() {
                    self.scratch.resize(d + 1, None);
                }
                self.counters.bucket_ops += 1;
                let Some(mut y) = self.scratch[d].take() else {
                    break;
                };
                // the incumbent wins ties
                if !self.less(x, y) {
                    std::mem::swap(&mut x, &mut y);
                }
                self.link(y, x);
                d += 1;
            }
            self.scratch[d] = Some(x);
        }

        h.min = None;
        for i in 0..self.scratch.len() {
            self.counters.bucket_ops += 1;
            if let Some(r) = self.scratch[i] {
                match h.min {
                    Some(m) if !self.less(r, m) => {}
                    _ => h.min = Some(r),
                }
            }
        }
    }

    /// Makes root `y` a child of root `x`.
    fn link(&mut self, y: NodeId, x: NodeId) {
        self.unlink(y);
        match self.slab.get(x).child {
            None => self.set_child(x, Some(y)),
            Some(c) => self.join_lists(c, y),
        }
        self.set_parent(y, Some(x));
        self.n(y).marked = false;
        let degree = self.slab.get(x).degree + 1;
        self.n(x).degree = degree;
        self.counters.observe_rank(u32::from(degree));
    }

    pub fn decrease_key(
        &mut self,
        h: &mut FibState,
        handle: Handle,
        key: K,
    ) -> Result<(), HeapError> {
        let x = self.resolve(handle)?;
        if key > self.slab.get(x).key {
            return Err(HeapError::KeyIncrease);
        }
        self.n(x).key = key;
        if let Some(y) = self.slab.get(x).parent {
            if self.less(x, y) {
                self.cut(h, x, y);
                self.cascading_cut(h, y);
            }
        }
        let m = h.min.expect("live element implies non-empty heap");
        if self.less(x, m) {
            h.min = Some(x);
        }
        Ok(())
    }

    fn cut(&mut self, h: &mut FibState, x: NodeId, y: NodeId) {
        let next = self.slab.get(x).right;
        if self.slab.get(y).child == Some(x) {
            self.set_child(y, (next != x).then_some(next));
        }
        self.unlink(x);
        self.n(y).degree -= 1;
        self.set_parent(x, None);
        self.n(x).marked = false;
        let m = h.min.expect("cut in an empty heap");
        self.join_lists(m, x);
    }

    fn cascading_cut(&mut self, h: &mut FibState, mut y: NodeId) {
        while let Some(z) = self.slab.get(y).parent {
            self.counters.rule_steps += 1;
            if !self.slab.get(y).marked {
                self.n(y).marked = true;
                return;
            }
            self.cut(h, y, z);
            y = z;
        }
    }

    /// Cuts the element to the root list and removes it there. Consolidates
    /// only if it was the minimum.
    pub fn delete(&mut self, h: &mut FibState, handle: Handle) -> Result<K, HeapError> {
        let x = self.resolve(handle)?;
        let key = self.slab.get(x).key;
        if h.min == Some(x) {
            self.delete_min(h)?;
            return Ok(key);
        }
        if let Some(y) = self.slab.get(x).parent {
            self.cut(h, x, y);
            self.cascading_cut(h, y);
        }
        self.remove_root(h, x);
        Ok(key)
    }

    /// Checks list links, parent pointers, degrees, marks, heap order, the
    /// minimum pointer, the element count and the degree bound.
    pub fn check(&self, h: &FibState) -> Result<(), String> {
        let Some(min) = h.min else {
            return if h.size == 0 {
                Ok(())
            } else {
                Err(format!("size {} but no minimum", h.size))
            };
        };
        let roots = self.list(min, h.size + 1)?;
        let mut count = 0;
        let mut max_degree = 0;
        for &r in &roots {
            let node = self.slab.get(r);
            if node.parent.is_some() {
                return Err(format!("root {r:?} has a parent"));
            }
            if node.marked {
                return Err(format!("root {r:?} is marked"));
            }
            if node.key < self.slab.get(min).key {
                return Err(format!("root {r:?} is below the minimum"));
            }
            count += self.check_tree(r, h.size, &mut max_degree)?;
        }
        if count != h.size {
            return Err(format!("counted {count} elements, size says {}", h.size));
        }
        if max_degree > degree_bound(h.size) {
            return Err(format!("degree {max_degree} with only {} elements", h.size));
        }
        Ok(())
    }

    fn list(&self, start: NodeId, limit: usize) -> Result<Vec<NodeId>, String> {
        let mut out = Vec::new();
        let mut x = start;
        loop {
            if !self.slab.is_live(x) {
                return Err(format!("link to freed vertex {x:?}"));
            }
            let right = self.slab.get(x).right;
            if self.slab.get(right).left != x {
                return Err(format!("broken left link at {right:?}"));
            }
            out.push(x);
            if out.len() > limit {
                return Err(format!("list through {start:?} does not close"));
            }
            x = right;
            if x == start {
                return Ok(out);
            }
        }
    }

    /// Returns the subtree size.
    fn check_tree(&self, v: NodeId, limit: usize, max_degree: &mut usize) -> Result<usize, String> {
        let node = self.slab.get(v);
        let children = match node.child {
            None => Vec::new(),
            Some(c) => self.list(c, limit)?,
        };
        if children.len() != usize::from(node.degree) {
            return Err(format!(
                "{v:?} has degree {} but {} children",
                node.degree,
                children.len()
            ));
        }
        *max_degree = (*max_degree).max(children.len());
        let mut size = 1;
        for c in children {
            let child = self.slab.get(c);
            if child.parent != Some(v) {
                return Err(format!("{c:?} does not point back to parent {v:?}"));
            }
            if child.key < node.key {
                return Err(format!("heap order violated at {c:?} under {v:?}"));
            }
            size += self.check_tree(c, limit, max_degree)?;
        }
        Ok(size)
    }
}

/// A single Fibonacci heap owning its forest.
#[derive(Debug, Clone)]
pub struct FibonacciHeap<K> {
    forest: FibonacciForest<K>,
    state: FibState,
}

impl<K: HeapKey> Default for FibonacciHeap<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: HeapKey> FibonacciHeap<K> {
    pub fn new() -> Self {
        let forest = FibonacciForest::new();
        let state = forest.new_heap();
        FibonacciHeap { forest, state }
    }

    pub fn forest(&self) -> &FibonacciForest<K> {
        &self.forest
    }

    pub fn state(&self) -> &FibState {
        &self.state
    }

    pub fn check(&self) -> Result<(), String> {
        self.forest.check(&self.state)
    }
}

impl<K: HeapKey> AddressableHeap<K> for FibonacciHeap<K> {
    type Handle = Handle;

    fn insert(&mut self, key: K) -> Handle {
        self.forest.insert(&mut self.state, key)
    }

    fn find_min(&mut self) -> Result<(Handle, K), HeapError> {
        let h = self.forest.find_min(&self.state)?;
        Ok((h, self.forest.slab.get(h.id()).key))
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
        self.forest.counters
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_layout_has_four_links() {
        let FibNode {
            key: _,
            degree: _,
            marked: _,
            parent: _,
            child: _,
            left: _,
            right: _,
        } = FibNode {
            key: 0i64,
            degree: 0,
            marked: false,
            parent: None,
            child: None,
            left: NodeId::from_index(0),
            right: NodeId::from_index(0),
        };
        assert_eq!(std::mem::size_of::<FibNode<i64>>(), 32);
    }

    #[test]
    fn sorts_and_cuts() {
        let mut h = FibonacciHeap::new();
        let handles: Vec<_> = (0..50i64).map(|k| h.insert(100 - k)).collect();
        assert_eq!(h.delete_min().unwrap().1, 51);
        h.check().unwrap();
        for (i, &hd) in handles.iter().enumerate().take(49).skip(1).step_by(3) {
            h.decrease_key(hd, -(i as i64)).unwrap();
            h.check().unwrap();
        }
        let mut prev = i64::MIN;
        while let Ok((_, k)) = h.delete_min() {
            assert!(k >= prev);
            prev = k;
            h.check().unwrap();
        }
    }

    #[test]
    fn delete_non_min() {
        let mut h = FibonacciHeap::new();
        let hs: Vec<_> = (0..20i64).map(|k| h.insert(k)).collect();
        h.delete_min().unwrap();
        assert_eq!(h.delete(hs[7]), Ok(7));
        assert_eq!(h.delete(hs[7]), Err(HeapError::StaleHandle));
        h.check().unwrap();
        assert_eq!(h.len(), 18);
        let keys: Vec<_> = std::iter::from_fn(|| h.delete_min().ok().map(|x| x.1)).collect();
        assert_eq!(keys, (1..20).filter(|&k| k != 7).collect::<Vec<_>>());
    }

    #[test]
    fn meld_keeps_minimum() {
        let mut f = FibonacciForest::new();
        let mut a = f.new_heap();
        let mut b = f.new_heap();
        f.insert(&mut a, 5i64);
        let hb = f.insert(&mut b, 2);
        let mut m = f.meld(a, b);
        assert_eq!(f.find_min(&m), Ok(hb));
        f.check(&m).unwrap();
        assert_eq!(f.delete_min(&mut m).unwrap().1, 2);
    }
}
