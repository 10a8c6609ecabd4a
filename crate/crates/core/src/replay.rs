//! Step-by-step replay of a [`Trace`] on any [`AddressableHeap`].

use std::collections::HashMap;
use std::fmt;

use crate::error::HeapError;
use crate::queue::AddressableHeap;
use crate::trace::{Event, Trace, TraceId};

/// What a single event printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Silent,
    Key(i64),
    Empty,
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Output::Silent => Ok(()),
            Output::Key(k) => write!(f, "{k}"),
            Output::Empty => write!(f, "empty"),
        }
    }
}

/// Replays a trace event by event, mapping trace ids to heap handles.
///
/// When a heap removes a different element than the oracle among equal
/// minimum keys, the two ids trade handles; both elements carry the same key,
/// so the heap stays equivalent to the trace's view of it.
#[derive(Debug)]
pub struct Replayer<H: AddressableHeap<i64>> {
    heap: H,
    handles: Vec<Option<H::Handle>>,
    ids: HashMap<H::Handle, TraceId>,
    next: usize,
}

impl<H: AddressableHeap<i64>> Replayer<H> {
    pub fn new(heap: H) -> Self {
        Replayer {
            heap,
            handles: Vec::new(),
            ids: HashMap::new(),
            next: 0,
        }
    }

    pub fn heap(&self) -> &H {
        &self.heap
    }

    pub fn heap_mut(&mut self) -> &mut H {
        &mut self.heap
    }

    pub fn into_heap(self) -> H {
        self.heap
    }

    /// Index of the next event to run.
    pub fn position(&self) -> usize {
        self.next
    }

    /// Handle currently standing for a live trace id.
    pub fn handle(&self, id: TraceId) -> Option<H::Handle> {
        self.handles.get(id.checked_sub(1)?).copied().flatten()
    }

    /// Runs event `self.position()` of `trace`.
    pub fn step(&mut self, trace: &Trace) -> Result<Output, HeapError> {
        let index = self.next;
        self.next += 1;
        match trace.events()[index] {
            Event::Insert(key) => {
                let h = self.heap.insert(key);
                self.handles.push(Some(h));
                self.ids.insert(h, self.handles.len());
                Ok(Output::Silent)
            }
            Event::FindMin => match self.heap.find_min() {
                Ok((_, key)) => Ok(Output::Key(key)),
                Err(HeapError::Empty) => Ok(Output::Empty),
                Err(e) => Err(e),
            },
            Event::DeleteMin => match self.heap.delete_min() {
                Ok((h, key)) => {
                    let removed = self.ids.remove(&h).ok_or(HeapError::StaleHandle)?;
                    let canonical = trace.victim(index).unwrap_or(removed);
                    if canonical != removed {
                        let survivor = self.handles[canonical - 1].expect("victim was live");
                        self.handles[removed - 1] = Some(survivor);
                        self.ids.insert(survivor, removed);
                    }
                    self.handles[canonical - 1] = None;
                    Ok(Output::Key(key))
                }
                Err(HeapError::Empty) => Ok(Output::Empty),
                Err(e) => Err(e),
            },
            Event::DecreaseKey(id, key) => {
                let h = self.handle(id).ok_or(HeapError::StaleHandle)?;
                self.heap.decrease_key(h, key)?;
                Ok(Output::Silent)
            }
            Event::Delete(id) => {
                let h = self.handle(id).ok_or(HeapError::StaleHandle)?;
                self.heap.delete(h)?;
                self.ids.remove(&h);
                self.handles[id - 1] = None;
                Ok(Output::Silent)
            }
        }
    }

    /// Runs the rest of the trace and collects the printed lines.
    pub fn run_to_end(&mut self, trace: &Trace) -> Result<Vec<Output>, HeapError> {
        let mut out = Vec::new();
        while self.next < trace.len() {
            match self.step(trace)? {
                Output::Silent => {}
                o => out.push(o),
            }
        }
        Ok(out)
    }
}
