//! Trace strategy shared by the property tests.

use proptest::prelude::*;

use padovan_core::trace::{Event, Trace};

/// Raw choices: operation selector, key material and victim selector.
pub type Choice = (u8, i64, usize);

pub fn choices(max_len: usize) -> impl Strategy<Value = Vec<Choice>> {
    prop::collection::vec((0u8..20, -30i64..30, any::<usize>()), 1..max_len)
}

/// Turns raw choices into a valid trace over a small key range, so equal
/// keys are common. Live elements are tracked with the oracle's tie rule:
/// among equal keys the earliest insert is the minimum.
pub fn build_trace(choices: &[Choice]) -> Trace {
    let mut live: Vec<(usize, i64)> = Vec::new();
    let mut next_id = 0;
    let mut events = Vec::with_capacity(choices.len());
    for &(op, key, pick) in choices {
        let event = match op {
            _ if live.is_empty() && op >= 10 => Event::FindMin,
            0..=7 => {
                next_id += 1;
                live.push((next_id, key));
                Event::Insert(key)
            }
            8 | 9 => Event::FindMin,
            10..=13 => {
                let i = (0..live.len()).min_by_key(|&i| (live[i].1, live[i].0)).expect("non-empty");
                live.remove(i);
                Event::DeleteMin
            }
            14..=17 => {
                let i = pick % live.len();
                live[i].1 -= key.abs();
                Event::DecreaseKey(live[i].0, live[i].1)
            }
            _ => {
                let (id, _) = live.remove(pick % live.len());
                Event::Delete(id)
            }
        };
        events.push(event);
    }
    Trace::from_events(events).expect("generated traces are valid")
}
