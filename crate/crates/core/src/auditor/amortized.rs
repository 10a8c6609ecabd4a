use std::fmt;

use crate::padovan::PadovanHeap;
use crate::replay::Replayer;
use crate::trace::{Event, Trace};
use crate::PLASTIC;

use super::potentials::PotentialVector;
use super::tracker::PotentialTracker;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Insert,
    FindMin,
    DeleteMin,
    DecreaseKey,
    Delete,
    Meld,
}

impl OpKind {
    /// Delete-min and delete may cost a logarithm; everything else is constant.
    pub fn is_logarithmic(self) -> bool {
        matches!(self, OpKind::DeleteMin | OpKind::Delete)
    }

    fn of(event: Event) -> OpKind {
        match event {
            Event::Insert(_) => OpKind::Insert,
            Event::FindMin => OpKind::FindMin,
            Event::DeleteMin => OpKind::DeleteMin,
            Event::DecreaseKey(..) => OpKind::DecreaseKey,
            Event::Delete(_) => OpKind::Delete,
        }
    }
}

/// Measured cost of one operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpSample {
    pub index: usize,
    pub kind: OpKind,
    /// Heap size before the operation.
    pub n: usize,
    pub steps: u64,
    pub delta: PotentialVector,
}

/// Potential weights and per-operation budgets.
///
/// The amortized cost of an operation is `steps + step_unit * Σ t_i ΔΦ_i`.
/// `step_unit` converts potential units into counted primitive steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostModel {
    /// Weights of Φ0..Φ6.
    pub t: [f64; 7],
    pub beta: f64,
    pub c: f64,
    pub step_unit: f64,
    pub budget_const: f64,
    pub budget_log: f64,
}

impl CostModel {
    /// Weights (t0, t1, t2, t5, t6, t3, t4) = (1, 1, 2, 2, 3, 6, 6).
    pub const WEIGHTS: [f64; 7] = [1.0, 1.0, 2.0, 6.0, 6.0, 2.0, 3.0];

    pub fn new(step_unit: f64, budget_const: f64, budget_log: f64) -> Self {
        CostModel {
            t: Self::WEIGHTS,
            beta: PLASTIC,
            c: 1.0,
            step_unit,
            budget_const,
            budget_log,
        }
    }

    /// The ordering the weights need for the potential argument to go through.
    pub fn weights_ordered(&self) -> bool {
        let t = &self.t;
        t[0] <= t[1] && t[1] < t[2] && t[1] < t[5] && t[5] < t[6] && t[5] + t[6] < t[3] && t[5] + t[6] < t[4]
    }

    pub fn amortized(&self, s: &OpSample) -> f64 {
        s.steps as f64 + self.step_unit * s.delta.weight(&self.t)
    }

    /// 1 + log_β(n / c), at least 1.
    pub fn log_factor(&self, n: usize) -> f64 {
        1.0 + ((n as f64 / self.c).max(1.0)).ln() / self.beta.ln()
    }

    pub fn budget(&self, kind: OpKind, n: usize) -> f64 {
        if kind.is_logarithmic() {
            self.budget_log * self.log_factor(n)
        } else {
            self.budget_const
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BudgetViolation {
    pub index: usize,
    pub kind: OpKind,
    pub n: usize,
    pub amortized: f64,
    pub budget: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct AmortizedReport {
    pub ops: usize,
    pub violations: Vec<BudgetViolation>,
    /// Largest amortized cost of a constant-budget operation.
    pub worst_const: f64,
    /// Largest amortized cost of a logarithmic operation divided by its log factor.
    pub worst_log: f64,
}

impl AmortizedReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AmortizedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "ops={} violations={} worst_const={:.2} worst_log={:.2}",
            self.ops,
            self.violations.len(),
            self.worst_const,
            self.worst_log
        )?;
        for v in self.violations.iter().take(20) {
            writeln!(
                f,
                "violation op={} kind={:?} n={} amortized={:.2} budget={:.2}",
                v.index, v.kind, v.n, v.amortized, v.budget
            )?;
        }
        Ok(())
    }
}

/// Replays `trace` on an audited Padovan heap and records steps and
/// potential change per operation.
pub fn sample_trace(trace: &Trace) -> Vec<OpSample> {
    let mut replay = Replayer::new(PadovanHeap::<i64>::with_audit_trail());
    let mut tracker = PotentialTracker::new();
    let mut phi = {
        let (forest, state) = replay.heap_mut().parts_mut();
        tracker.rebuild(forest, state)
    };
    let mut samples = Vec::with_capacity(trace.len());
    for (index, &event) in trace.events().iter().enumerate() {
        let n = replay.heap().state().len();
        let before = replay.heap().forest().counters();
        replay.step(trace).expect("valid trace replays cleanly");
        let steps = (replay.heap().forest().counters() - before).total_steps();
        let (forest, state) = replay.heap_mut().parts_mut();
        let after = tracker.sync(forest, state);
        samples.push(OpSample {
            index,
            kind: OpKind::of(event),
            n,
            steps,
            delta: after - phi,
        });
        phi = after;
    }
    samples
}

pub fn audit_samples(samples: &[OpSample], model: &CostModel) -> AmortizedReport {
    let mut report = AmortizedReport {
        ops: samples.len(),
        ..AmortizedReport::default()
    };
    for s in samples {
        let amortized = model.amortized(s);
        if s.kind.is_logarithmic() {
            report.worst_log = report.worst_log.max(amortized / model.log_factor(s.n));
        } else {
            report.worst_const = report.worst_const.max(amortized);
        }
        let budget = model.budget(s.kind, s.n);
        if amortized > budget {
            report.violations.push(BudgetViolation {
                index: s.index,
                kind: s.kind,
                n: s.n,
                amortized,
                budget,
            });
        }
    }
    report
}

/// Checks every operation of `trace` against its budget.
pub fn audit_amortized(trace: &Trace, model: &CostModel) -> AmortizedReport {
    audit_samples(&sample_trace(trace), model)
}

/// Picks the step unit from `units` that minimises the sum of the two
/// budgets the samples require, then scales both budgets by `margin`.
pub fn calibrate(samples: &[OpSample], units: &[f64], margin: f64) -> CostModel {
    let mut best: Option<CostModel> = None;
    for &u in units {
        let probe = CostModel::new(u, 0.0, 0.0);
        let r = audit_samples(samples, &probe);
        let model = CostModel::new(u, r.worst_const * margin, r.worst_log * margin);
        if best.is_none_or(|b| model.budget_const + model.budget_log < b.budget_const + b.budget_log) {
            best = Some(model);
        }
    }
    best.expect("at least one step unit")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_weights_are_ordered() {
        let m = CostModel::new(1.0, 0.0, 0.0);
        assert!(m.weights_ordered());
        let mut bad = m;
        bad.t[3] = 5.0;
        assert!(!bad.weights_ordered());
    }

    #[test]
    fn inserts_cost_a_constant() {
        let text: String = (0..200).map(|k| format!("i {k}\n")).collect();
        let samples = sample_trace(&Trace::parse(&text).unwrap());
        // the first insert finds an empty root list, the rest do identical work
        assert!(samples[1..].iter().all(|s| s.steps == samples[1].steps));
        assert!(samples[0].steps <= samples[1].steps);
        for s in &samples {
            // Φ0 grows by one, Φ2 by at most one
            assert_eq!(s.delta.phi[0], 1);
            assert!((0..=1).contains(&s.delta.phi[2]));
            assert_eq!(s.delta.phi[1..].iter().filter(|&&d| d != 0).count(), usize::from(s.delta.phi[2] != 0));
        }
        let model = CostModel::new(4.0, 40.0, 1.0);
        assert!(audit_samples(&samples, &model).is_clean());
    }
}
