//! Trace runs as the command-line tool performs them: plain, audited or
//! differential, with optional statistics and DOT output.

use std::fmt;
use std::str::FromStr;

use crate::auditor::{
    check_after_find_min, check_size_bounds, check_structure, compute_potentials, max_rank,
    PotentialVector, SizeBoundTable,
};
use crate::counters::Counters;
use crate::dot::{fibonacci_dot, padovan_dot};
use crate::fibonacci::FibonacciHeap;
use crate::oracle::OracleHeap;
use crate::padovan::PadovanHeap;
use crate::queue::AddressableHeap;
use crate::replay::{Output, Replayer};
use crate::trace::{Event, Trace};
use crate::{PHI, PLASTIC};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Impl {
    Padovan,
    Fibonacci,
    Oracle,
}

impl Impl {
    pub const ALL: [Impl; 3] = [Impl::Padovan, Impl::Fibonacci, Impl::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Impl::Padovan => "padovan",
            Impl::Fibonacci => "fibonacci",
            Impl::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Impl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Impl {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "padovan" => Ok(Impl::Padovan),
            "fibonacci" => Ok(Impl::Fibonacci),
            "oracle" => Ok(Impl::Oracle),
            other => Err(format!("unknown implementation `{other}` (padovan, fibonacci, oracle)")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Check invariants after every operation and stop at the first failure.
    pub audit: bool,
    /// Replay all three implementations in lockstep and compare their output.
    pub differential: bool,
    /// Label for the `mode` column of the statistics row.
    pub mode: Option<String>,
    /// Value for the `n` column; defaults to the number of inserts.
    pub n: Option<usize>,
}

/// One CSV row of run statistics.
#[derive(Clone, Debug, PartialEq)]
pub struct Stats {
    pub implementation: Impl,
    pub mode: String,
    pub n: usize,
    pub ops: usize,
    pub total_steps: u64,
    pub max_rank: u32,
    pub phi: Option<PotentialVector>,
}

impl Stats {
    pub const HEADER: &'static str =
        "impl,mode,n,ops,total_steps,max_rank,steps_per_op,phi0,phi1,phi2,phi3,phi4,phi5,phi6";

    pub fn steps_per_op(&self) -> f64 {
        if self.ops == 0 {
            0.0
        } else {
            self.total_steps as f64 / self.ops as f64
        }
    }

    pub fn csv_row(&self) -> String {
        let phi = match &self.phi {
            Some(p) => p.phi.iter().map(i64::to_string).collect::<Vec<_>>().join(","),
            None => ",,,,,,".to_owned(),
        };
        format!(
            "{},{},{},{},{},{},{:.4},{}",
            self.implementation,
            self.mode,
            self.n,
            self.ops,
            self.total_steps,
            self.max_rank,
            self.steps_per_op(),
            phi
        )
    }
}

#[derive(Clone, Debug)]
pub struct RunResult {
    /// One line per find-min or delete-min, as far as the run got.
    pub lines: Vec<String>,
    /// First audit or differential failure.
    pub failure: Option<String>,
    pub stats: Stats,
    /// Final forest; `None` for the oracle.
    pub dot: Option<String>,
}

/// Hooks the runner needs beyond the heap operations.
trait Subject: AddressableHeap<i64> {
    fn audit(&mut self, event: Event, oracle_min: Option<i64>) -> Result<(), String>;
    fn potentials(&self) -> Option<PotentialVector>;
    fn dot(&self) -> Option<String>;
}

impl Subject for PadovanHeap<i64> {
    fn audit(&mut self, event: Event, oracle_min: Option<i64>) -> Result<(), String> {
        let (forest, state) = (self.forest(), self.state());
        let mut report = check_structure(forest, state);
        if report.is_clean() {
            report.merge(check_size_bounds(forest, state, &SizeBoundTable::default()));
        }
        if event == Event::FindMin {
            report.merge(check_after_find_min(forest, state, oracle_min));
        }
        if !report.is_clean() {
            return Err(report.to_string());
        }
        let rank = max_rank(forest, state);
        let limit = log_floor(state.len(), PLASTIC) + 3;
        if u32::from(rank) > limit {
            return Err(format!("rank {rank} exceeds {limit} with {} elements", state.len()));
        }
        Ok(())
    }

    fn potentials(&self) -> Option<PotentialVector> {
        Some(compute_potentials(self.forest(), self.state()))
    }

    fn dot(&self) -> Option<String> {
        Some(padovan_dot(self.forest(), self.state()))
    }
}

impl Subject for FibonacciHeap<i64> {
    fn audit(&mut self, _: Event, oracle_min: Option<i64>) -> Result<(), String> {
        self.check()?;
        let min = self.state().min().map(|m| self.forest().node(m).key);
        if min != oracle_min {
            return Err(format!("minimum {min:?}, oracle has {oracle_min:?}"));
        }
        Ok(())
    }

    fn potentials(&self) -> Option<PotentialVector> {
        None
    }

    fn dot(&self) -> Option<String> {
        Some(fibonacci_dot(self.forest(), self.state()))
    }
}

impl Subject for OracleHeap<i64> {
    fn audit(&mut self, _: Event, _: Option<i64>) -> Result<(), String> {
        Ok(())
    }

    fn potentials(&self) -> Option<PotentialVector> {
        None
    }

    fn dot(&self) -> Option<String> {
        None
    }
}

/// ⌊log_base n⌋, and 0 for n ≤ 1.
pub fn log_floor(n: usize, base: f64) -> u32 {
    if n <= 1 {
        0
    } else {
        ((n as f64).ln() / base.ln()).floor() as u32
    }
}

/// Largest degree the Fibonacci baseline may reach with `n` elements.
pub fn fibonacci_degree_limit(n: usize) -> u32 {
    log_floor(n, PHI) + 2
}

pub fn run(trace: &Trace, implementation: Impl, options: &RunOptions) -> RunResult {
    match implementation {
        Impl::Padovan => {
            let heap = if options.audit {
                PadovanHeap::with_audit_trail()
            } else {
                PadovanHeap::new()
            };
            drive(heap, implementation, trace, options)
        }
        Impl::Fibonacci => drive(FibonacciHeap::new(), implementation, trace, options),
        Impl::Oracle => drive(OracleHeap::new(), implementation, trace, options),
    }
}

fn drive<H: Subject>(heap: H, implementation: Impl, trace: &Trace, options: &RunOptions) -> RunResult {
    let mut main = Replayer::new(heap);
    let mut oracle = (options.audit || options.differential).then(|| Replayer::new(OracleHeap::new()));
    let mut others = options.differential.then(|| {
        (
            Replayer::new(PadovanHeap::<i64>::new()),
            Replayer::new(FibonacciHeap::<i64>::new()),
        )
    });
    let mut lines = Vec::new();
    let mut failure = None;
    let mut counters = Counters::default();

    for (index, &event) in trace.events().iter().enumerate() {
        let line = trace.line(index);
        let out = match main.step(trace) {
            Ok(o) => o,
            Err(e) => {
                failure = Some(format!("line {line}: {implementation} failed: {e}"));
                break;
            }
        };
        counters = main.heap().counters();
        if out != Output::Silent {
            lines.push(out.to_string());
        }
        let expected = oracle
            .as_mut()
            .map(|o| o.step(trace).expect("oracle replays valid traces"));
        if let Some((p, f)) = others.as_mut() {
            let outs = [
                (Impl::Padovan, p.step(trace)),
                (Impl::Fibonacci, f.step(trace)),
                (implementation, Ok(out)),
            ];
            let want = expected.expect("differential runs the oracle");
            if let Some((who, got)) = outs.iter().find(|(_, got)| got.as_ref().ok() != Some(&want)) {
                failure = Some(format!(
                    "line {line}: {who} printed {:?}, oracle printed {want}",
                    got.as_ref().map(|o| o.to_string())
                ));
                break;
            }
        }
        if options.audit {
            let oracle_min = oracle.as_ref().and_then(|o| o.heap().min_key());
            if let Err(message) = main.heap_mut().audit(event, oracle_min) {
                failure = Some(format!("line {line}: audit failed after `{event}`:\n{message}"));
                break;
            }
        }
    }

    let heap = main.heap();
    RunResult {
        lines,
        failure,
        stats: Stats {
            implementation,
            mode: options.mode.clone().unwrap_or_else(|| "trace".to_owned()),
            n: options.n.unwrap_or(trace.inserts()),
            ops: trace.len(),
            total_steps: counters.total_steps(),
            max_rank: counters.max_rank,
            phi: heap.potentials(),
        },
        dot: heap.dot(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workload::{generate, Mode};

    #[test]
    fn small_trace_on_every_impl() {
        let trace = Trace::parse("i 3\ni 1\ni 2\nf\nd\nf\n").unwrap();
        for imp in Impl::ALL {
            let r = run(&trace, imp, &RunOptions { audit: true, ..Default::default() });
            assert_eq!(r.lines, ["1", "1", "2"], "{imp}");
            assert!(r.failure.is_none());
        }
    }

    #[test]
    fn differential_random_trace() {
        let trace = generate(Mode::Random, 10_000, 7);
        let opts = RunOptions {
            differential: true,
            ..Default::default()
        };
        let r = run(&trace, Impl::Padovan, &opts);
        assert_eq!(r.failure, None);
    }

    #[test]
    fn stats_row_shape() {
        let trace = generate(Mode::Competition, 100, 0);
        let opts = RunOptions {
            mode: Some("competition".into()),
            n: Some(100),
            ..Default::default()
        };
        let p = run(&trace, Impl::Padovan, &opts).stats;
        assert_eq!(p.csv_row().split(',').count(), Stats::HEADER.split(',').count());
        assert!(p.csv_row().starts_with("padovan,competition,100,400,"));
        assert!(p.max_rank <= 3);
        let o = run(&trace, Impl::Oracle, &opts).stats;
        assert!(o.csv_row().ends_with(",,,,,,"));
    }

    #[test]
    fn log_floor_values() {
        assert_eq!(log_floor(0, PLASTIC), 0);
        assert_eq!(log_floor(1, PLASTIC), 0);
        assert_eq!(log_floor(2, PLASTIC), 2);
        assert_eq!(log_floor(1000, PHI), 14);
    }
}
