use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum HeapError {
    #[error("heap is empty")]
    Empty,
    #[error("new key is greater than the current key")]
    KeyIncrease,
    #[error("handle refers to an element that is no longer in the heap")]
    StaleHandle,
}
