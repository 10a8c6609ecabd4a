use std::fmt;
use std::ops::Sub;

use crate::node_store::Status;
use crate::padovan::{HeapState, PadovanForest};
use crate::{HeapKey, PLASTIC};

use super::{rev_children, RuleView};

/// Φ0 through Φ6.
///
/// 0. trees
/// 1. outer placed nonroots
/// 2. tree count capped at 1 + ⌊log_p n⌋
/// 3. critical nonroots
/// 4. Σ over all vertices of rank minus inner children
/// 5. outer misplaced nonroots
/// 6. dangerous vertices
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PotentialVector {
    pub phi: [i64; 7],
}

impl PotentialVector {
    /// Σ t_i Φ_i.
    pub fn weight(&self, t: &[f64; 7]) -> f64 {
        self.phi.iter().zip(t).map(|(&p, &w)| p as f64 * w).sum()
    }
}

impl Sub for PotentialVector {
    type Output = PotentialVector;

    fn sub(self, rhs: PotentialVector) -> PotentialVector {
        let mut phi = self.phi;
        for (a, b) in phi.iter_mut().zip(rhs.phi) {
            *a -= b;
        }
        PotentialVector { phi }
    }
}

impl fmt::Display for PotentialVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.phi.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "phi{i}={p}")?;
        }
        Ok(())
    }
}

/// 1 + ⌊log_p n⌋, and 0 for an empty heap.
pub fn phi2_cap(n: usize) -> i64 {
    if n == 0 {
        0
    } else {
        1 + ((n as f64).ln() / PLASTIC.ln()).floor() as i64
    }
}

/// Full walk over the heap. Assumes the lists are well formed.
pub fn compute_potentials<K: HeapKey>(forest: &PadovanForest<K>, h: &HeapState) -> PotentialVector {
    let store = forest.store();
    let mut phi = [0i64; 7];
    let mut stack: Vec<_> = store.children(h.dummy()).collect();
    phi[0] = stack.len() as i64;
    while let Some(v) = stack.pop() {
        phi[4] += i64::from(store.rank(v));
        for c in store.children(v) {
            match store.status(c) {
                Status::OuterPlaced => phi[1] += 1,
                Status::CriticalInner => {
                    phi[3] += 1;
                    phi[4] -= 1;
                }
                Status::NoncriticalInner => phi[4] -= 1,
                Status::OuterMisplaced => phi[5] += 1,
            }
            stack.push(c);
        }
        if RuleView::new(store, rev_children(store, v)).dangerous(store, v) {
            phi[6] += 1;
        }
    }
    phi[2] = phi[0].min(phi2_cap(h.len()));
    PotentialVector { phi }
}
