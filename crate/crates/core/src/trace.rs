//! Operation traces.
//!
//! One event per line:
//!
//! ```text
//! i <key>        insert; the n-th insert gets id n
//! f              find-min
//! d              delete-min
//! k <id> <key>   decrease key
//! x <id>         delete
//! ```
//!
//! `#` starts a comment; blank lines are ignored. A trace is validated by
//! replaying it on the oracle, which also fixes which id each `d` removes.

use std::fmt;

use thiserror::Error;

use crate::oracle::{OracleHeap, OracleId};
use crate::queue::AddressableHeap;

/// Trace element ids are 1-based insert ordinals.
pub type TraceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Event {
    Insert(i64),
    FindMin,
    DeleteMin,
    DecreaseKey(TraceId, i64),
    Delete(TraceId),
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Event::Insert(k) => write!(f, "i {k}"),
            Event::FindMin => write!(f, "f"),
            Event::DeleteMin => write!(f, "d"),
            Event::DecreaseKey(id, k) => write!(f, "k {id} {k}"),
            Event::Delete(id) => write!(f, "x {id}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceErrorKind {
    Syntax,
    DeadId,
    KeyIncrease,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind:?}: {message}")]
pub struct TraceError {
    pub kind: TraceErrorKind,
    pub line: usize,
    pub message: String,
}

/// A validated trace.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Trace {
    events: Vec<Event>,
    lines: Vec<usize>,
    /// For each `d`, the id the oracle removes; `None` elsewhere and on an empty heap.
    victims: Vec<Option<TraceId>>,
    inserts: usize,
}

impl Trace {
    pub fn parse(text: &str) -> Result<Trace, TraceError> {
        let mut events = Vec::new();
        let mut lines = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            events.push(parse_event(content).map_err(|message| TraceError {
                kind: TraceErrorKind::Syntax,
                line,
                message,
            })?);
            lines.push(line);
        }
        Self::validate(events, lines)
    }

    /// Events are numbered from line 1.
    pub fn from_events(events: Vec<Event>) -> Result<Trace, TraceError> {
        let lines = (1..=events.len()).collect();
        Self::validate(events, lines)
    }

    fn validate(events: Vec<Event>, lines: Vec<usize>) -> Result<Trace, TraceError> {
        let mut oracle = OracleHeap::<i64>::new();
        let mut ids: Vec<Option<OracleId>> = Vec::new();
        let mut owner = std::collections::HashMap::new();
        let mut victims = Vec::with_capacity(events.len());
        for (&event, &line) in events.iter().zip(&lines) {
            let error = |kind, message: String| TraceError { kind, line, message };
            let live = |id: TraceId, ids: &[Option<OracleId>]| {
                id.checked_sub(1)
                    .and_then(|i| ids.get(i).copied().flatten())
                    .ok_or_else(|| error(TraceErrorKind::DeadId, format!("id {id} is not live")))
            };
            let mut victim = None;
            match event {
                Event::Insert(key) => {
                    let o = oracle.insert(key);
                    ids.push(Some(o));
                    owner.insert(o, ids.len());
                }
                Event::FindMin => {}
                Event::DeleteMin => {
                    if let Ok((o, _)) = oracle.delete_min() {
                        let id = owner.remove(&o).expect("oracle ids are registered");
                        ids[id - 1] = None;
                        victim = Some(id);
                    }
                }
                Event::DecreaseKey(id, key) => {
                    let o = live(id, &ids)?;
                    let old = oracle.key(o).expect("live id has a key");
                    if key > old {
                        return Err(error(
                            TraceErrorKind::KeyIncrease,
                            format!("id {id} has key {old}, cannot raise it to {key}"),
                        ));
                    }
                    oracle.decrease_key(o, key).expect("checked above");
                }
                Event::Delete(id) => {
                    let o = live(id, &ids)?;
                    oracle.delete(o).expect("live id");
                    owner.remove(&o);
                    ids[id - 1] = None;
                }
            }
            victims.push(victim);
        }
        Ok(Trace {
            inserts: ids.len(),
            events,
            lines,
            victims,
        })
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Source line of event `index`.
    pub fn line(&self, index: usize) -> usize {
        self.lines[index]
    }

    pub fn victim(&self, index: usize) -> Option<TraceId> {
        self.victims[index]
    }

    /// Number of insert events, which is also the largest id.
    pub fn inserts(&self) -> usize {
        self.inserts
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

fn parse_event(content: &str) -> Result<Event, String> {
    let words: Vec<&str> = content.split_whitespace().collect();
    let arity = match words[0] {
        "i" | "x" => 1,
        "k" => 2,
        "f" | "d" => 0,
        other => return Err(format!("unknown operation `{other}`")),
    };
    if words.len() != arity + 1 {
        return Err(format!("`{}` takes {arity} argument(s)", words[0]));
    }
    let int = |word: &str| {
        word.parse::<i64>()
            .map_err(|_| format!("`{word}` is not an integer"))
    };
    let id = |word: &str| {
        let raw = int(word)?;
        TraceId::try_from(raw)
            .ok()
            .filter(|&id| id > 0)
            .ok_or_else(|| format!("id {raw} must be positive"))
    };
    Ok(match words[0] {
        "i" => Event::Insert(int(words[1])?),
        "f" => Event::FindMin,
        "d" => Event::DeleteMin,
        "k" => Event::DecreaseKey(id(words[1])?, int(words[2])?),
        _ => Event::Delete(id(words[1])?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(text: &str) -> TraceErrorKind {
        Trace::parse(text).unwrap_err().kind
    }

    #[test]
    fn parses_basic_events() {
        let t = Trace::parse("i 5\nf\nd\n").unwrap();
        assert_eq!(t.events(), [Event::Insert(5), Event::FindMin, Event::DeleteMin]);
        assert_eq!(t.victim(2), Some(1));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = Trace::parse("# header\n\ni -3   # negative\n  k 1 -7\nx 1\n").unwrap();
        assert_eq!(
            t.events(),
            [Event::Insert(-3), Event::DecreaseKey(1, -7), Event::Delete(1)]
        );
        assert_eq!(t.line(1), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(kind("i 5\nk 1 9\n"), TraceErrorKind::KeyIncrease);
        assert_eq!(kind("i 5\nx 2\n"), TraceErrorKind::DeadId);
        assert_eq!(kind("i 5\nd\nx 1\n"), TraceErrorKind::DeadId);
        assert_eq!(kind("i five\n"), TraceErrorKind::Syntax);
        assert_eq!(kind("q\n"), TraceErrorKind::Syntax);
        assert_eq!(kind("f 1\n"), TraceErrorKind::Syntax);
        assert_eq!(kind("x 0\n"), TraceErrorKind::Syntax);
        assert_eq!(Trace::parse("i 1\ni\n").unwrap_err().line, 2);
    }

    #[test]
    fn victims_follow_insertion_order_on_ties() {
        let t = Trace::parse("i 2\ni 1\ni 1\nd\nd\nd\nd\n").unwrap();
        let v: Vec<_> = (3..7).map(|i| t.victim(i)).collect();
        assert_eq!(v, [Some(2), Some(3), Some(1), None]);
    }

    #[test]
    fn text_round_trip() {
        let t = Trace::parse("i 4\ni 2\nk 1 1\nf\nx 2\nd\n").unwrap();
        assert_eq!(Trace::parse(&t.to_text()).unwrap().events(), t.events());
    }
}
