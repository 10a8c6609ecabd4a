use std::fmt;

use crate::arena::NodeId;
use crate::node_store::{NodeStore, Status};
use crate::padovan::{HeapState, PadovanForest};
use crate::HeapKey;

use super::{RuleRank, RuleView};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Dummy head missing or not self-linked.
    Head,
    /// A `right`/`left` pair does not match, or a list does not close.
    ListLink,
    /// The rightmost child's `right` does not lead back to the owner.
    OwnerLink,
    /// A vertex is reached twice.
    Shared,
    Dangling,
    Size,
    HeapOrder,
    /// Placed outer children are not a prefix of the list.
    Layout,
    /// Inner children not in strictly increasing noncritical rank.
    InnerOrder,
    /// The k-th inner child has noncritical rank below k.
    IndexBound,
    /// Rank below the number of inner children.
    RankBudget,
    RankConsistency,
    /// A critical last inner child sits behind a gap and was not demoted.
    DemotionDue,
    /// A noncritical inner vertex is dangerous.
    DangerousInner,
    RootFlag,
    /// Two vertices were compared while one of them was not a root.
    Comparison,
    SingleRoot,
    RootUnsafe,
    Minimum,
    SizeBound,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::Head => "head",
            ViolationKind::ListLink => "list_link",
            ViolationKind::OwnerLink => "owner_link",
            ViolationKind::Shared => "shared",
            ViolationKind::Dangling => "dangling",
            ViolationKind::Size => "size",
            ViolationKind::HeapOrder => "heap_order",
            ViolationKind::Layout => "layout",
            ViolationKind::InnerOrder => "inner_order",
            ViolationKind::IndexBound => "index_bound",
            ViolationKind::RankBudget => "rank_budget",
            ViolationKind::RankConsistency => "rank_consistency",
            ViolationKind::DemotionDue => "demotion_due",
            ViolationKind::DangerousInner => "dangerous_inner",
            ViolationKind::RootFlag => "root_flag",
            ViolationKind::Comparison => "comparison",
            ViolationKind::SingleRoot => "single_root",
            ViolationKind::RootUnsafe => "root_unsafe",
            ViolationKind::Minimum => "minimum",
            ViolationKind::SizeBound => "size_bound",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Root index then child indices, e.g. `r2/c0/c3`; empty for heap-wide findings.
    pub path: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
    }

    /// One `violation kind=... path=... detail="..."` line per finding, or `violations=0`.
    pub fn key_value(&self) -> String {
        if self.is_clean() {
            return "violations=0\n".to_owned();
        }
        let mut out = format!("violations={}\n", self.violations.len());
        for v in &self.violations {
            out.push_str(&format!(
                "violation kind={} path={} detail={:?}\n",
                v.kind.name(),
                if v.path.is_empty() { "-" } else { &v.path },
                v.detail
            ));
        }
        out
    }

    pub(crate) fn push(&mut self, kind: ViolationKind, path: String, detail: String) {
        self.violations.push(Violation { kind, path, detail });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return writeln!(f, "no violations");
        }
        for v in &self.violations {
            if v.path.is_empty() {
                writeln!(f, "{}: {}", v.kind.name(), v.detail)?;
            } else {
                writeln!(f, "{} at {}: {}", v.kind.name(), v.path, v.detail)?;
            }
        }
        Ok(())
    }
}

/// A verified walk of the forest: every list closes, every vertex is live and
/// reached once. Vertices are stored breadth first; children of each vertex
/// are a contiguous run of `order`.
pub(crate) struct Walk {
    pub dummy: NodeId,
    /// Real vertices, breadth first.
    pub order: Vec<NodeId>,
    /// Per slot: (owner, position in owner's list) of reached vertices.
    place: Vec<Option<(NodeId, u32)>>,
    /// Per slot: (start in `order`, count) of a vertex's children.
    kids: Vec<(u32, u32)>,
}

impl Walk {
    pub fn run<K: Copy>(store: &NodeStore<K>, dummy: NodeId, report: &mut Report) -> Option<Walk> {
        if !store.is_live(dummy) || !store.is_head(dummy) {
            report.push(
                ViolationKind::Head,
                String::new(),
                format!("{dummy:?} is not a live self-linked head"),
            );
            return None;
        }
        let mut walk = Walk {
            dummy,
            order: Vec::new(),
            place: vec![None; store.slots()],
            kids: vec![(0, 0); store.slots()],
        };
        let mut owners = vec![dummy];
        let mut cursor = 0;
        loop {
            let owner = owners[cursor];
            let start = walk.order.len();
            if let Err((kind, at, detail)) = walk.list(store, owner) {
                let path = walk.path(at);
                report.push(kind, path, detail);
                return None;
            }
            walk.kids[owner.index()] = (start as u32, (walk.order.len() - start) as u32);
            owners.extend_from_slice(&walk.order[start..]);
            cursor += 1;
            if cursor == owners.len() {
                return Some(walk);
            }
        }
    }

    fn list<K: Copy>(
        &mut self,
        store: &NodeStore<K>,
        owner: NodeId,
    ) -> Result<(), (ViolationKind, NodeId, String)> {
        let Some(first) = store.child(owner) else {
            return Ok(());
        };
        let mut x = first;
        let mut pos = 0u32;
        loop {
            if !store.is_live(x) {
                return Err((ViolationKind::Dangling, owner, format!("child list reaches freed {x:?}")));
            }
            if x == self.dummy || self.place[x.index()].is_some() {
                return Err((ViolationKind::Shared, owner, format!("{x:?} reached twice")));
            }
            self.place[x.index()] = Some((owner, pos));
            self.order.push(x);
            pos += 1;
            let r = store.right(x);
            if r == owner {
                if store.left(first) != x {
                    return Err((
                        ViolationKind::ListLink,
                        first,
                        format!("leftmost left is {:?}, rightmost is {x:?}", store.left(first)),
                    ));
                }
                return Ok(());
            }
            if store.left(first) == x {
                // a list that carries on consistently means the left cycle closes early
                if store.is_live(r) && r != self.dummy && store.left(r) == x {
                    return Err((
                        ViolationKind::ListLink,
                        first,
                        format!("leftmost left is {x:?}, but the list continues to {r:?}"),
                    ));
                }
                return Err((
                    ViolationKind::OwnerLink,
                    x,
                    format!("rightmost right is {r:?}, owner is {owner:?}"),
                ));
            }
            if !store.is_live(r) {
                return Err((ViolationKind::Dangling, x, format!("right link to freed {r:?}")));
            }
            if store.left(r) != x {
                return Err((
                    ViolationKind::ListLink,
                    x,
                    format!("right is {r:?} whose left is {:?}", store.left(r)),
                ));
            }
            x = r;
        }
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        let (start, len) = self.kids[v.index()];
        &self.order[start as usize..(start + len) as usize]
    }

    pub fn owner(&self, v: NodeId) -> Option<NodeId> {
        self.place.get(v.index()).copied().flatten().map(|(o, _)| o)
    }

    pub fn is_root(&self, v: NodeId) -> bool {
        self.owner(v) == Some(self.dummy)
    }

    pub fn path(&self, v: NodeId) -> String {
        let mut parts = Vec::new();
        let mut x = v;
        while let Some((owner, pos)) = self.place.get(x.index()).copied().flatten() {
            let tag = if owner == self.dummy { 'r' } else { 'c' };
            parts.push(format!("{tag}{pos}"));
            x = owner;
        }
        parts.reverse();
        parts.join("/")
    }
}

/// Evaluates every structural invariant. Returns early only when the lists
/// themselves are broken.
pub fn check_structure<K: HeapKey>(forest: &PadovanForest<K>, h: &HeapState) -> Report {
    let store = forest.store();
    let mut report = Report::default();
    let Some(walk) = Walk::run(store, h.dummy(), &mut report) else {
        return report;
    };
    if walk.order.len() != h.len() {
        report.push(
            ViolationKind::Size,
            String::new(),
            format!("{} vertices reachable, size is {}", walk.order.len(), h.len()),
        );
    }
    if store.nonroot_comparisons() > 0 {
        report.push(
            ViolationKind::Comparison,
            String::new(),
            format!("{} comparisons involved a nonroot", store.nonroot_comparisons()),
        );
    }
    for &v in &walk.order {
        check_vertex(store, &walk, v, &mut report);
    }
    report
}

fn check_vertex<K: HeapKey>(store: &NodeStore<K>, walk: &Walk, v: NodeId, report: &mut Report) {
    let root = walk.is_root(v);
    let path = || walk.path(v);
    if let Some(flag) = store.root_flag(v) {
        if flag != root {
            report.push(ViolationKind::RootFlag, path(), format!("root flag {flag}, actual {root}"));
        }
    }
    let rank = store.rank(v);
    let children = walk.children(v);

    let mut inner = 0i32;
    let mut last_rho: Option<i32> = None;
    let mut prefix = true;
    for &c in children {
        if store.key(c) < store.key(v) {
            report.push(
                ViolationKind::HeapOrder,
                walk.path(c),
                format!("key {:?} below parent key {:?}", store.key(c), store.key(v)),
            );
        }
        let status = store.status(c);
        if status == Status::OuterPlaced {
            if !prefix {
                report.push(ViolationKind::Layout, walk.path(c), "placed child after a non-placed one".into());
            }
            continue;
        }
        prefix = false;
        if !status.is_inner() {
            continue;
        }
        let rho = store.noncritical_rank(c);
        if rho < inner {
            report.push(
                ViolationKind::IndexBound,
                walk.path(c),
                format!("inner child #{inner} has noncritical rank {rho}"),
            );
        }
        if let Some(prev) = last_rho {
            if rho <= prev {
                report.push(
                    ViolationKind::InnerOrder,
                    walk.path(c),
                    format!("noncritical rank {rho} follows {prev}"),
                );
            }
        }
        last_rho = Some(rho);
        inner += 1;
    }
    if i32::from(rank) < inner {
        report.push(
            ViolationKind::RankBudget,
            path(),
            format!("rank {rank} with {inner} inner children"),
        );
    }

    let view = RuleView::new(store, children.iter().rev().copied());
    if !view.pending {
        match view.rank(store) {
            RuleRank::Rank(r) if r != i32::from(rank) => report.push(
                ViolationKind::RankConsistency,
                path(),
                format!("stored rank {rank}, rules give {r}"),
            ),
            RuleRank::Rank(_) => {}
            RuleRank::DemotionDue => report.push(
                ViolationKind::DemotionDue,
                path(),
                "critical last inner child behind a gap".into(),
            ),
        }
    }
    if !root && store.status(v) == Status::NoncriticalInner && view.dangerous(store, v) {
        report.push(
            ViolationKind::DangerousInner,
            path(),
            format!("noncritical inner vertex of rank {rank} is dangerous"),
        );
    }
}

/// Post-conditions of find-min: one root, safe, holding `expected_min`.
pub fn check_after_find_min<K: HeapKey>(
    forest: &PadovanForest<K>,
    h: &HeapState,
    expected_min: Option<K>,
) -> Report {
    let store = forest.store();
    let mut report = Report::default();
    let roots: Vec<_> = forest.roots(h).collect();
    if roots.len() != usize::from(!h.is_empty()) {
        report.push(
            ViolationKind::SingleRoot,
            String::new(),
            format!("{} roots after find-min", roots.len()),
        );
    }
    if let Some(&root) = roots.first() {
        if RuleView::new(store, super::rev_children(store, root)).dangerous(store, root) {
            report.push(ViolationKind::RootUnsafe, "r0".into(), "root is dangerous".into());
        }
        let key = store.key(root);
        if Some(key) != expected_min {
            report.push(
                ViolationKind::Minimum,
                "r0".into(),
                format!("root key {key:?}, minimum is {expected_min:?}"),
            );
        }
    }
    report
}

/// Largest rank of any vertex in the heap.
pub fn max_rank<K: HeapKey>(forest: &PadovanForest<K>, h: &HeapState) -> u8 {
    let store = forest.store();
    let mut stack: Vec<_> = store.children(h.dummy()).collect();
    let mut best = 0;
    while let Some(v) = stack.pop() {
        best = best.max(store.rank(v));
        stack.extend(store.children(v));
    }
    best
}
