//! Bounded verification and search for epsilon-locking data sets.
//!
//! A data set l locks a learner onto L at tolerance epsilon when range(l)
//! is inside L, the hypothesis on l is within epsilon of L, and it stays
//! within epsilon under any continuation drawn from L. Continuations range
//! over an infinite universe, so verification here is exhaustive over a
//! finite slice of it (a word pool times a length bound) and a PASS means
//! "no counterexample in the searched universe", never a proof.

use crate::distance::{Distance, Rat};
use crate::language::Language;
use crate::learners::Learner;
use crate::metrics::Metric;
use crate::texts::{DataSet, Text};
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_prefix_len: u64,
    pub max_cont_len: u64,
    pub word_pool_size: u64,
}

impl Default for SearchBounds {
    fn default() -> SearchBounds {
        SearchBounds { max_prefix_len: 12, max_cont_len: 3, word_pool_size: 6 }
    }
}

#[derive(Debug, Clone)]
pub enum LockingVerdict {
    /// No counterexample in the searched universe.
    Pass,
    /// Condition (i) fails: `word` is in the data set but not in the target.
    FailNotSubset { word: crate::alphabet::Word },
    /// Condition (ii) fails: the hypothesis on the candidate alone is not
    /// certifiably within epsilon. `distance` is `None` when the metric
    /// declined the pair.
    FailBase { distance: Option<Distance> },
    /// Condition (iii) fails: appending `continuation` drives the hypothesis
    /// out of the epsilon ball.
    FailContinuation { continuation: DataSet, distance: Option<Distance> },
}

impl LockingVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, LockingVerdict::Pass)
    }
}

#[derive(Debug, Clone)]
pub struct LockingReport {
    pub candidate: DataSet,
    pub epsilon: Rat,
    /// Continuation length bound the verdict covers.
    pub verified_up_to: u64,
    /// Human-readable description of the continuation universe searched.
    pub continuation_sample: String,
    pub verdict: LockingVerdict,
}

fn distance_ok(metric: &Metric, hypothesis: &Language, target: &Language, epsilon: &Rat) -> (bool, Option<Distance>) {
    match metric.distance(hypothesis, target) {
        Ok(d) => (d.definitely_below(epsilon), Some(d)),
        Err(_) => (false, None),
    }
}

/// Exhaustively checks the locking conditions for `l` against `target` over
/// all continuations built from the first `word_pool_size` shortlex words of
/// the target with lengths 1..=`max_cont_len`. Strict "< epsilon" reading:
/// a distance equal to epsilon counts as a failure.
pub fn verify_locking(
    l: &DataSet,
    target: &Language,
    learner: &Learner,
    metric: &Metric,
    epsilon: &Rat,
    max_cont_len: u64,
    word_pool_size: u64,
) -> LockingReport {
    assert!(epsilon > &Rat::zero(), "epsilon is positive");
    let pool = target.enumerate_first(word_pool_size as usize);
    let universe: u64 = (1..=max_cont_len)
        .map(|j| (pool.len() as u64).saturating_pow(j as u32))
        .sum();
    let continuation_sample = format!(
        "all sequences over the first {} shortlex words of the target, lengths 1..={} ({} continuations)",
        pool.len(),
        max_cont_len,
        universe
    );
    let report = |verdict| LockingReport {
        candidate: l.clone(),
        epsilon: epsilon.clone(),
        verified_up_to: max_cont_len,
        continuation_sample: continuation_sample.clone(),
        verdict,
    };

    // (i) range(l) subset of target. Foreign-alphabet words are outside.
    for word in l.items() {
        if !target.contains(word).unwrap_or(false) {
            return report(LockingVerdict::FailNotSubset { word: word.clone() });
        }
    }

    // (ii) the hypothesis on l alone.
    let base = learner.hypothesize(l);
    let (ok, distance) = distance_ok(metric, &base, target, epsilon);
    if !ok {
        return report(LockingVerdict::FailBase { distance });
    }

    // (iii) every continuation in the universe, shortest first, then by
    // pool index (odometer order).
    if !pool.is_empty() {
        for len in 1..=max_cont_len as usize {
            let mut odometer = vec![0usize; len];
            loop {
                let items: Vec<_> = l
                    .items()
                    .iter()
                    .cloned()
                    .chain(odometer.iter().map(|&i| pool[i].clone()))
                    .collect();
                let extended = DataSet::new(items).expect("non-empty");
                let hyp = learner.hypothesize(&extended);
                let (ok, distance) = distance_ok(metric, &hyp, target, epsilon);
                if !ok {
                    let continuation =
                        DataSet::new(odometer.iter().map(|&i| pool[i].clone()).collect())
                            .expect("non-empty");
                    return report(LockingVerdict::FailContinuation { continuation, distance });
                }
                // Advance the odometer; done when it wraps.
                let mut pos = len;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    odometer[pos] += 1;
                    if odometer[pos] < pool.len() {
                        break;
                    }
                    odometer[pos] = 0;
                }
                if odometer.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
    }

    report(LockingVerdict::Pass)
}

/// Tries canonical-text prefixes of the target with lengths
/// 1..=`bounds.max_prefix_len` and returns the first that verifies. `None`
/// means "not found under search policy", never "does not exist".
pub fn search_locking(
    target: &Language,
    learner: &Learner,
    metric: &Metric,
    epsilon: &Rat,
    bounds: &SearchBounds,
) -> Option<LockingReport> {
    let text = Text::canonical(target.clone()).ok()?;
    for n in 1..=bounds.max_prefix_len {
        let candidate = text.prefix(n);
        let report = verify_locking(
            &candidate,
            target,
            learner,
            metric,
            epsilon,
            bounds.max_cont_len,
            bounds.word_pool_size,
        );
        if report.verdict.passed() {
            return Some(report);
        }
    }
    None
}
