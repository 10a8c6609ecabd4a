//! Padovan heaps, a textbook Fibonacci heap baseline, a brute-force oracle
//! and an auditor that checks structural invariants, potentials and
//! amortized step bounds of the Padovan heap.
//!
//! All heaps are generic over the key type; `i64` aliases are provided for
//! the common case.

pub mod arena;
pub mod auditor;
pub mod counters;
pub mod dot;
pub mod error;
pub mod fibonacci;
pub mod node_store;
pub mod oracle;
pub mod padovan;
pub mod queue;
pub mod replay;
pub mod runner;
pub mod trace;
pub mod workload;

use std::fmt::Debug;

pub use arena::{Handle, NodeId};
pub use counters::Counters;
pub use error::HeapError;
pub use fibonacci::{FibonacciForest, FibonacciHeap};
pub use oracle::OracleHeap;
pub use padovan::{PadovanForest, PadovanHeap};
pub use queue::AddressableHeap;

/// Keys need a total order and a least value (used for dummy heads).
pub trait HeapKey: Copy + Ord + num_traits::Bounded + Debug {}

impl<T: Copy + Ord + num_traits::Bounded + Debug> HeapKey for T {}

pub type PadovanHeapI64 = PadovanHeap<i64>;
pub type PadovanForestI64 = PadovanForest<i64>;
pub type FibonacciHeapI64 = FibonacciHeap<i64>;
pub type OracleHeapI64 = OracleHeap<i64>;

/// Golden ratio.
pub const PHI: f64 = 1.618_033_988_749_895;

/// Plastic number, the real root of x³ = x + 1.
pub const PLASTIC: f64 = 1.324_717_957_244_746;
