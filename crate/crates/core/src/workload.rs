//! Deterministic trace generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::trace::{Event, Trace, TraceId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Mixed operations over distinct live keys.
    Random,
    /// `n` increasing inserts followed by one find-min.
    Ascending,
    /// Round `i` inserts `-i` and `-(i+1)`, then finds and deletes the minimum.
    Competition,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Random => "random",
            Mode::Ascending => "ascending",
            Mode::Competition => "competition",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "random" => Ok(Mode::Random),
            "ascending" => Ok(Mode::Ascending),
            "competition" => Ok(Mode::Competition),
            other => Err(format!("unknown mode `{other}` (random, ascending, competition)")),
        }
    }
}

/// `n` counts operations for random mode, inserts for ascending mode and
/// rounds for competition mode.
pub fn generate(mode: Mode, n: usize, seed: u64) -> Trace {
    let events = match mode {
        Mode::Random => random_events(n, seed),
        Mode::Ascending => (1..=n as i64)
            .map(Event::Insert)
            .chain(std::iter::once(Event::FindMin))
            .collect(),
        Mode::Competition => (1..=n as i64)
            .flat_map(|i| {
                [
                    Event::Insert(-i),
                    Event::Insert(-(i + 1)),
                    Event::FindMin,
                    Event::DeleteMin,
                ]
            })
            .collect(),
    };
    Trace::from_events(events).expect("generated traces are valid")
}

const KEY_RANGE: i64 = 1 << 40;

/// Operation mix: insert .40, delete-min .20, find-min .10, decrease-key .25, delete .05.
fn random_events(n: usize, seed: u64) -> Vec<Event> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mix = WeightedIndex::new([40, 20, 10, 25, 5]).expect("positive weights");
    let mut by_key: BTreeMap<i64, TraceId> = BTreeMap::new();
    let mut key_of: HashMap<TraceId, i64> = HashMap::new();
    let mut live: Vec<TraceId> = Vec::new();
    let mut slot: HashMap<TraceId, usize> = HashMap::new();
    let mut inserts = 0;
    let mut events = Vec::with_capacity(n);

    let forget = |id: TraceId, live: &mut Vec<TraceId>, slot: &mut HashMap<TraceId, usize>| {
        let i = slot.remove(&id).expect("live id");
        live.swap_remove(i);
        if let Some(&moved) = live.get(i) {
            slot.insert(moved, i);
        }
    };

    while events.len() < n {
        let choice = if live.is_empty() { 0 } else { mix.sample(&mut rng) };
        let event = match choice {
            0 => {
                let key = loop {
                    let k = rng.gen_range(-KEY_RANGE..KEY_RANGE);
                    if !by_key.contains_key(&k) {
                        break k;
                    }
                };
                inserts += 1;
                by_key.insert(key, inserts);
                key_of.insert(inserts, key);
                slot.insert(inserts, live.len());
                live.push(inserts);
                Event::Insert(key)
            }
            1 => {
                let (_, id) = by_key.pop_first().expect("non-empty");
                key_of.remove(&id);
                forget(id, &mut live, &mut slot);
                Event::DeleteMin
            }
            2 => Event::FindMin,
            3 => {
                let id = live[rng.gen_range(0..live.len())];
                let old = key_of[&id];
                let key = loop {
                    let k = old - rng.gen_range(1..=KEY_RANGE / 4);
                    if !by_key.contains_key(&k) {
                        break k;
                    }
                };
                by_key.remove(&old);
                by_key.insert(key, id);
                key_of.insert(id, key);
                Event::DecreaseKey(id, key)
            }
            _ => {
                let id = live[rng.gen_range(0..live.len())];
                by_key.remove(&key_of.remove(&id).expect("live id"));
                forget(id, &mut live, &mut slot);
                Event::Delete(id)
            }
        };
        events.push(event);
    }
    events
}
