//! Learner-on-text sessions and their within-horizon verdicts.
//!
//! A [`Trace`] records, for each step k, the hypothesis on the text's k-item
//! prefix and its distance to the target. The two checks extract the classic
//! facts: exact stabilization (hypothesis equals the target from some index
//! to the end of the horizon) and limit convergence (distance below a given
//! epsilon from some index on). Both report within-horizon evidence only and
//! say nothing about indices beyond the horizon.

use crate::distance::{Distance, Rat};
use crate::language::Language;
use crate::learners::Learner;
use crate::metrics::Metric;
use crate::texts::{DataSet, Text};
use num_traits::Zero;

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub k: u64,
    pub hypothesis: Language,
    /// `None` when the metric declined the pair; see `flag`.
    pub distance: Option<Distance>,
    pub flag: Option<String>,
    pub hyp_changed: bool,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
    pub target: Language,
    pub metric_name: String,
    pub horizon: u64,
}

/// Runs `learner` on the first `horizon` items of `text`, measuring each
/// hypothesis against `target`. Metric domain errors are recorded as flagged
/// steps and the run continues.
pub fn run(
    learner: &Learner,
    text: &Text,
    target: &Language,
    metric: &Metric,
    horizon: u64,
) -> Trace {
    assert!(horizon >= 1, "horizon is a positive integer");
    let mut steps = Vec::with_capacity(horizon as usize);
    let mut items = Vec::with_capacity(horizon as usize);
    let mut prev: Option<Language> = None;
    for k in 1..=horizon {
        items.push(text.item(k));
        let prefix = DataSet::new(items.clone()).expect("prefix is non-empty");
        let hypothesis = learner.hypothesize(&prefix);
        let (distance, flag) = match metric.distance(&hypothesis, target) {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let hyp_changed = match &prev {
            None => true,
            Some(p) => !hypothesis.equals(p).unwrap_or(false),
        };
        prev = Some(hypothesis.clone());
        steps.push(TraceStep { k, hypothesis, distance, flag, hyp_changed });
    }
    Trace { steps, target: target.clone(), metric_name: metric.name(), horizon }
}

/// Smallest index n0 such that the hypothesis equals the target at every
/// step from n0 through the horizon; `None` when even the last step differs.
/// A within-horizon fact, not a proof of learning.
pub fn check_exact_stabilization(trace: &Trace) -> Option<u64> {
    let mut start = None;
    for step in trace.steps.iter().rev() {
        if step.hypothesis.equals(&trace.target).unwrap_or(false) {
            start = Some(step.k);
        } else {
            break;
        }
    }
    start
}

/// Smallest index n0 with distance certifiably below `epsilon` at every step
/// from n0 through the horizon; interval distances compare by their upper
/// bound, and flagged steps never count as below.
pub fn check_limit_convergence(trace: &Trace, epsilon: &Rat) -> Option<u64> {
    assert!(epsilon > &Rat::zero(), "epsilon is positive");
    let mut start = None;
    for step in trace.steps.iter().rev() {
        let below = step
            .distance
            .as_ref()
            .is_some_and(|d| d.definitely_below(epsilon));
        if below {
            start = Some(step.k);
        } else {
            break;
        }
    }
    start
}
