//! Invariant and potential auditor for Padovan heaps.
//!
//! Everything here reads a quiescent heap. [`check_structure`] and
//! [`check_size_bounds`] walk the whole forest; [`PotentialTracker`] keeps the
//! potentials up to date from the store's write journal so that per-operation
//! amortized costs can be measured on long traces.

mod amortized;
pub mod faults;
mod potentials;
mod size_bound;
mod structure;
mod tracker;

pub use amortized::{
    audit_amortized, audit_samples, calibrate, sample_trace, AmortizedReport, BudgetViolation, CostModel, OpKind,
    OpSample,
};
pub use potentials::{compute_potentials, phi2_cap, PotentialVector};
pub use size_bound::{check_size_bounds, SizeBoundTable};
pub use structure::{
    check_after_find_min, check_structure, max_rank, Report, Violation, ViolationKind,
};
pub use tracker::PotentialTracker;

use crate::arena::NodeId;
use crate::node_store::{NodeStore, Status};

/// The last inner child of a vertex and what the rank rules make of it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RuleView {
    pub w0: Option<NodeId>,
    /// Inner left neighbour of `w0`, absent when the gap is forced.
    pub w1: Option<NodeId>,
    pub gap: bool,
    /// The rightmost child is misplaced, so the rules are pending.
    pub pending: bool,
}

/// The rank the rules assign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum RuleRank {
    Rank(i32),
    /// Gap behind a critical `w0`: a demotion is due.
    DemotionDue,
}

impl RuleView {
    /// Evaluates the rules over children given right to left. Only the
    /// trailing misplaced run and at most two more children are read.
    pub fn new<K: Copy>(store: &NodeStore<K>, mut rev_children: impl Iterator<Item = NodeId>) -> Self {
        let mut view = RuleView {
            w0: None,
            w1: None,
            gap: false,
            pending: false,
        };
        let mut first = true;
        let w0 = loop {
            let Some(c) = rev_children.next() else {
                return view;
            };
            match store.status(c) {
                Status::OuterMisplaced => view.pending |= first,
                Status::OuterPlaced => return view,
                _ => break c,
            }
            first = false;
        };
        view.w0 = Some(w0);
        let rho0 = store.noncritical_rank(w0);
        view.gap = match rev_children.next() {
            Some(l) => match store.status(l) {
                Status::OuterMisplaced => true,
                Status::OuterPlaced => rho0 > 0,
                _ => {
                    view.w1 = Some(l);
                    rho0 > store.noncritical_rank(l) + 1
                }
            },
            None => rho0 > 0,
        };
        view
    }

    pub fn rank<K: Copy>(&self, store: &NodeStore<K>) -> RuleRank {
        let Some(w0) = self.w0 else {
            return RuleRank::Rank(0);
        };
        let rho0 = store.noncritical_rank(w0);
        match (self.gap, store.status(w0)) {
            (false, _) => RuleRank::Rank(rho0 + 1),
            (true, Status::NoncriticalInner) => RuleRank::Rank(rho0),
            (true, _) => RuleRank::DemotionDue,
        }
    }

    /// The children whose subtrees carry the size bound.
    pub fn active(&self) -> impl Iterator<Item = NodeId> {
        let w1 = if self.gap { None } else { self.w1 };
        self.w0.into_iter().chain(w1)
    }

    /// Rank no larger than the noncritical rank of the last inner child.
    pub fn dangerous<K: Copy>(&self, store: &NodeStore<K>, v: NodeId) -> bool {
        self.w0
            .is_some_and(|w0| i32::from(store.rank(v)) <= store.noncritical_rank(w0))
    }
}

/// Children of `owner` from right to left, following `left` links.
pub(crate) fn rev_children<K: Copy>(
    store: &NodeStore<K>,
    owner: NodeId,
) -> impl Iterator<Item = NodeId> + '_ {
    let first = store.child(owner);
    let mut next = first.map(|f| store.left(f));
    std::iter::from_fn(move || {
        let c = next?;
        next = (Some(c) != first).then(|| store.left(c));
        Some(c)
    })
}
