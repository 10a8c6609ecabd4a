//! Instrumentation counters shared by the heap implementations.

use std::ops::Sub;

/// Primitive-step counters. Every unit has weight one in [`Counters::total_steps`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Writes to link fields (left, right, child, and parent for the baseline).
    pub link_writes: u64,
    pub comparisons: u64,
    /// Applications of a rank rule, including safe tests.
    pub rule_steps: u64,
    /// Misplaced outer children moved to the front of their list.
    pub placings: u64,
    /// Reads, writes and clears of rank-indexed array slots.
    pub bucket_ops: u64,
    /// Steps along a root list or children list.
    pub traversals: u64,
    /// Largest rank (or degree) ever assigned. Not a step count.
    pub max_rank: u32,
}

impl Counters {
    pub fn total_steps(&self) -> u64 {
        self.link_writes
            + self.comparisons
            + self.rule_steps
            + self.placings
            + self.bucket_ops
            + self.traversals
    }

    #[inline]
    pub(crate) fn observe_rank(&mut self, rank: u32) {
        self.max_rank = self.max_rank.max(rank);
    }
}

impl Sub for Counters {
    type Output = Counters;

    /// Step-wise difference; `max_rank` keeps the later value.
    fn sub(self, earlier: Counters) -> Counters {
        Counters {
            link_writes: self.link_writes - earlier.link_writes,
            comparisons: self.comparisons - earlier.comparisons,
            rule_steps: self.rule_steps - earlier.rule_steps,
            placings: self.placings - earlier.placings,
            bucket_ops: self.bucket_ops - earlier.bucket_ops,
            traversals: self.traversals - earlier.traversals,
            max_rank: self.max_rank,
        }
    }
}
