//! Adaptive text construction that denies exact stabilization.
//!
//! The adversary watches the learner's hypothesis on the data produced so
//! far. While the hypothesis equals the range of that data (the learner has
//! locked onto the finite range), it feeds a fresh shortlex word of the
//! infinite limit, invalidating the lock as a final answer. The moment the
//! hypothesis differs from the range, it repeats the shortlex-least word of
//! the range, building a legitimate text of the finite language the learner
//! is failing on. Runs are horizon-bounded evidence, never proofs.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::Word;
use crate::language::{Language, ShortlexCache};
use crate::learners::Learner;
use crate::simulate::Trace;
use crate::texts::DataSet;
use crate::Cardinality;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    FeedFresh,
    RepeatRange,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::FeedFresh => "FEED_FRESH",
            Policy::RepeatRange => "REPEAT_RANGE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct AdversaryStep {
    pub k: u64,
    pub word: Word,
    pub policy: Policy,
    /// The learner's hypothesis on the produced prefix through this step.
    pub hypothesis: Language,
    pub hyp_changed: bool,
}

/// Which policy pattern was in force over the run's tail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPattern {
    /// Every step fed a fresh word: the stream heads toward a text of the
    /// limit while the hypothesis trails on finite ranges.
    FreshThroughout,
    /// From this step on, only repeats: the stream builds a text of the
    /// frozen finite range that the learner keeps overshooting.
    RepeatFrom(u64),
    /// Policies kept alternating to the end.
    Mixed,
}

impl fmt::Display for TailPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailPattern::FreshThroughout => f.write_str("FEED_FRESH throughout"),
            TailPattern::RepeatFrom(k) => write!(f, "REPEAT_RANGE from step {k}"),
            TailPattern::Mixed => f.write_str("alternating policies to the end"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct AdversaryRun {
    pub steps: Vec<AdversaryStep>,
    pub limit: Language,
    pub horizon: u64,
    /// Hypothesis revisions after the initial guess.
    pub mind_change_count: u64,
    pub tail_pattern: TailPattern,
}

impl AdversaryRun {
    pub fn produced(&self) -> DataSet {
        DataSet::new(self.steps.iter().map(|s| s.word.clone()).collect())
            .expect("runs have at least one step")
    }
}

/// Plays the adaptive policy against `learner` for `horizon` steps.
/// Deterministic; the limit must be infinite so fresh words never run out.
pub fn run_adversary(learner: &Learner, limit: &Language, horizon: u64) -> AdversaryRun {
    assert!(horizon >= 1, "horizon is a positive integer");
    assert_eq!(limit.cardinality(), Cardinality::Infinite, "the limit must be infinite");
    let cache = ShortlexCache::new(limit.clone());
    let mut fresh_cursor: u64 = 0;
    let mut produced: Vec<Word> = Vec::with_capacity(horizon as usize);
    let mut range_set: BTreeSet<Word> = BTreeSet::new();
    let mut prev: Option<Language> = None;
    let mut steps = Vec::with_capacity(horizon as usize);
    for k in 1..=horizon {
        let locked_on_range = match &prev {
            None => true,
            Some(h) => {
                let range = Language::finite(limit.alphabet(), range_set.iter().cloned())
                    .expect("range words come from the limit");
                h.equals(&range).unwrap_or(false)
            }
        };
        let (policy, word) = if locked_on_range {
            fresh_cursor += 1;
            let w = cache.word_at(fresh_cursor).expect("infinite limits never run out");
            (Policy::FeedFresh, w)
        } else {
            let w = range_set.first().expect("repeat only fires after a fresh step").clone();
            (Policy::RepeatRange, w)
        };
        produced.push(word.clone());
        range_set.insert(word.clone());
        let prefix = DataSet::new(produced.clone()).expect("non-empty");
        let hypothesis = learner.hypothesize(&prefix);
        let hyp_changed = match &prev {
            None => true,
            Some(p) => !hypothesis.equals(p).unwrap_or(false),
        };
        prev = Some(hypothesis.clone());
        steps.push(AdversaryStep { k, word, policy, hypothesis, hyp_changed });
    }
    let mind_change_count =
        (steps.iter().filter(|s| s.hyp_changed).count() as u64).saturating_sub(1);
    let tail_pattern = if steps.iter().all(|s| s.policy == Policy::FeedFresh) {
        TailPattern::FreshThroughout
    } else if steps.last().map(|s| s.policy) == Some(Policy::RepeatRange) {
        let first_of_suffix = steps
            .iter()
            .rev()
            .take_while(|s| s.policy == Policy::RepeatRange)
            .last()
            .map(|s| s.k)
            .unwrap_or(horizon);
        TailPattern::RepeatFrom(first_of_suffix)
    } else {
        TailPattern::Mixed
    };
    AdversaryRun { steps, limit: limit.clone(), horizon, mind_change_count, tail_pattern }
}

/// Hypothesis revisions in a simulation trace: steps whose hypothesis
/// differs from the previous one, not counting the initial hypothesis.
pub fn mind_changes(trace: &Trace) -> u64 {
    (trace.steps.iter().filter(|s| s.hyp_changed).count() as u64).saturating_sub(1)
}

/// The Gold-style obstruction a run is expected to exhibit: either many mind
/// changes (at least horizon/10), or a suffix of at least half the horizon
/// on which the hypothesis never equals the verdict the policy pattern in
/// force would require (the limit under FEED_FRESH, the frozen range under
/// REPEAT_RANGE).
pub fn obstruction_witnessed(run: &AdversaryRun) -> bool {
    let h = run.horizon;
    if run.mind_change_count >= h / 10 {
        return true;
    }
    let suffix = &run.steps[(h / 2) as usize..];
    if suffix.is_empty() {
        return false;
    }
    let correct = if suffix.iter().all(|s| s.policy == Policy::FeedFresh) {
        run.limit.clone()
    } else if suffix.iter().all(|s| s.policy == Policy::RepeatRange) {
        run.produced().range()
    } else {
        return false;
    };
    suffix.iter().all(|s| !s.hypothesis.equals(&correct).unwrap_or(false))
}
