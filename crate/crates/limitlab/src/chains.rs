//! Strictly increasing language chains and the convergence experiment.
//!
//! A chain is a pure generator n -> L_n together with its intended limit
//! L_inf. Two constructions are built in: shortlex-prefix chains of an
//! infinite language, and cumulative unions of an explicit part list. The
//! convergence experiment measures d(L_n, L_inf) for n up to a bound and
//! grades the tail against an epsilon ladder. All verdicts are within-bound
//! facts: CONVERGING means every rung was permanently beaten before n_max,
//! not a limit statement.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Word;
use crate::distance::{Distance, Rat};
use crate::language::{Language, ShortlexCache};
use crate::metrics::Metric;
use crate::{distance::rat, Cardinality};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChainError {
    #[error("enumeration chains need an infinite limit")]
    FiniteLimit,
    #[error("decomposition needs at least one part")]
    EmptyParts,
    #[error("part {index} is not a subset of the limit")]
    PartNotSubset { index: usize },
    #[error("the parts miss \"{0}\" although it is in the limit and within the length bound")]
    CoverageGap(Word),
    #[error("chain invariant failed: {0}")]
    InvariantViolated(String),
    #[error(transparent)]
    Language(#[from] crate::language::LanguageError),
}

#[derive(Clone)]
enum ChainRepr {
    /// L_n = first n shortlex words of the limit.
    Enumeration(Arc<ShortlexCache>),
    /// L_n = cumulative union of the first min(n, len) parts.
    Cumulative(Arc<Vec<Language>>),
    Custom(Arc<dyn Fn(u64) -> Language + Send + Sync>),
}

#[derive(Clone)]
pub struct LanguageChain {
    repr: ChainRepr,
    limit: Language,
    /// Some(b): every tested n has m <= n+b with L_n proper subset of L_m.
    /// None: the chain may saturate (finite decompositions do).
    strictness_bound: Option<u64>,
}

impl fmt::Debug for LanguageChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageChain")
            .field("kind", &self.kind_name())
            .field("limit", &self.limit.to_string())
            .finish()
    }
}

/// Upper bound on words enumerated when validating decomposition coverage.
const COVERAGE_ENUM_CAP: usize = 100_000;

impl LanguageChain {
    /// Shortlex-prefix chain: L_n is the first n words of `limit`.
    pub fn from_enumeration(limit: Language) -> Result<LanguageChain, ChainError> {
        if limit.cardinality() != Cardinality::Infinite {
            return Err(ChainError::FiniteLimit);
        }
        Ok(LanguageChain {
            repr: ChainRepr::Enumeration(Arc::new(ShortlexCache::new(limit.clone()))),
            limit,
            strictness_bound: Some(1),
        })
    }

    /// Cumulative-union chain over an explicit part list. Indices beyond the
    /// list repeat the last union, so the chain saturates there. Coverage of
    /// the limit is validated for words of length <= `coverage_len_bound`.
    pub fn from_decomposition(
        parts: &[Language],
        limit: Language,
        coverage_len_bound: usize,
    ) -> Result<LanguageChain, ChainError> {
        if parts.is_empty() {
            return Err(ChainError::EmptyParts);
        }
        for (index, part) in parts.iter().enumerate() {
            if !part.is_subset(&limit)? {
                return Err(ChainError::PartNotSubset { index });
            }
        }
        let mut cumulative = Vec::with_capacity(parts.len());
        let mut acc = parts[0].clone();
        cumulative.push(acc.clone());
        for part in &parts[1..] {
            acc = acc.union(part)?;
            cumulative.push(acc.clone());
        }
        for word in limit.enumerate(COVERAGE_ENUM_CAP, coverage_len_bound) {
            if !acc.contains(&word)? {
                return Err(ChainError::CoverageGap(word));
            }
        }
        Ok(LanguageChain {
            repr: ChainRepr::Cumulative(Arc::new(cumulative)),
            limit,
            strictness_bound: None,
        })
    }

    /// Chain from an arbitrary pure generator. The caller declares whether a
    /// strictness bound holds; invariants are still checked before use.
    pub fn custom<F>(generator: F, limit: Language, strictness_bound: Option<u64>) -> LanguageChain
    where
        F: Fn(u64) -> Language + Send + Sync + 'static,
    {
        LanguageChain { repr: ChainRepr::Custom(Arc::new(generator)), limit, strictness_bound }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.repr {
            ChainRepr::Enumeration(_) => "enumeration-prefix",
            ChainRepr::Cumulative(_) => "decomposition",
            ChainRepr::Custom(_) => "custom",
        }
    }

    pub fn limit(&self) -> &Language {
        &self.limit
    }

    /// L_n for 1-based n.
    pub fn language_at(&self, n: u64) -> Language {
        assert!(n >= 1, "chain indices are 1-based");
        match &self.repr {
            ChainRepr::Enumeration(cache) => {
                let words = cache.prefix(n);
                assert_eq!(words.len() as u64, n, "infinite limit cannot run out of words");
                Language::finite(self.limit.alphabet(), words).expect("words come from the limit")
            }
            ChainRepr::Cumulative(unions) => {
                let i = (n as usize).min(unions.len()) - 1;
                unions[i].clone()
            }
            ChainRepr::Custom(f) => f(n),
        }
    }

    /// Checks the three chain invariants for n = 1..=n_max: each step is a
    /// subset of the next, proper growth within the declared strictness
    /// bound, and (for enumeration chains) the i-th shortlex word of the
    /// limit appears by step i.
    pub fn check_invariants(&self, n_max: u64) -> Result<(), ChainError> {
        if let ChainRepr::Enumeration(cache) = &self.repr {
            // Structural check: the cached prefix is distinct, in the limit,
            // and covers word i at step i by construction.
            let words = cache.prefix(n_max);
            if (words.len() as u64) < n_max {
                return Err(ChainError::InvariantViolated(format!(
                    "limit ran out of words at index {}",
                    words.len() + 1
                )));
            }
            let mut seen = BTreeSet::new();
            for word in &words {
                if !self.limit.contains(word)? {
                    return Err(ChainError::InvariantViolated(format!(
                        "\"{word}\" enumerated but not in the limit"
                    )));
                }
                if !seen.insert(word.clone()) {
                    return Err(ChainError::InvariantViolated(format!(
                        "\"{word}\" enumerated twice"
                    )));
                }
            }
            return Ok(());
        }
        let mut prev = self.language_at(1);
        if !prev.is_subset(&self.limit)? {
            return Err(ChainError::InvariantViolated("step 1 is not inside the limit".into()));
        }
        for n in 1..n_max {
            let next = self.language_at(n + 1);
            if !prev.is_subset(&next)? {
                return Err(ChainError::InvariantViolated(format!(
                    "step {n} is not a subset of step {}",
                    n + 1
                )));
            }
            if !next.is_subset(&self.limit)? {
                return Err(ChainError::InvariantViolated(format!(
                    "step {} is not inside the limit",
                    n + 1
                )));
            }
            prev = next;
        }
        if let Some(bound) = self.strictness_bound {
            for n in 1..=n_max {
                let here = self.language_at(n);
                let grew = (n + 1..=n + bound)
                    .any(|m| here.is_proper_subset(&self.language_at(m)).unwrap_or(false));
                if !grew {
                    return Err(ChainError::InvariantViolated(format!(
                        "no proper growth within {bound} steps after {n}"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainRow {
    pub n: u64,
    /// `None` when the metric declined the pair; see `flag`.
    pub distance: Option<Distance>,
    pub flag: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainVerdict {
    Converging,
    Obstructed,
}

impl fmt::Display for ChainVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainVerdict::Converging => "CONVERGING",
            ChainVerdict::Obstructed => "OBSTRUCTED",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceReport {
    pub rows: Vec<ChainRow>,
    /// Per-rung result: epsilon and the first index from which every later
    /// distance is certifiably below it, None when the rung is never
    /// permanently beaten within n_max.
    pub rungs: Vec<(Rat, Option<u64>)>,
    pub verdict: ChainVerdict,
    pub metric_name: String,
    pub n_max: u64,
}

/// The default epsilon ladder 1/2, 1/4, ..., 1/64.
pub fn default_ladder() -> Vec<Rat> {
    (1..=6).map(|i| rat(1, 1 << i)).collect()
}

/// Measures d(L_n, L_inf) for n = 1..=n_max and grades the tail against the
/// ladder. Chain invariants are re-checked first; metric domain errors
/// flag their row and count against every rung.
pub fn convergence_experiment(
    chain: &LanguageChain,
    metric: &Metric,
    n_max: u64,
    ladder: &[Rat],
) -> Result<ConvergenceReport, ChainError> {
    assert!(n_max >= 1, "n_max is a positive integer");
    assert!(!ladder.is_empty(), "the ladder has at least one rung");
    chain.check_invariants(n_max)?;
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let l_n = chain.language_at(n);
        let (distance, flag) = match metric.distance(&l_n, &chain.limit) {
            Ok(d) => (Some(d), None),
            Err(e) => (None, Some(e.to_string())),
        };
        rows.push(ChainRow { n, distance, flag });
    }
    let rungs: Vec<(Rat, Option<u64>)> = ladder
        .iter()
        .map(|eps| {
            let mut start = None;
            for row in rows.iter().rev() {
                let below =
                    row.distance.as_ref().is_some_and(|d| d.definitely_below(eps));
                if below {
                    start = Some(row.n);
                } else {
                    break;
                }
            }
            (eps.clone(), start)
        })
        .collect();
    let verdict = if rungs.iter().all(|(_, hit)| hit.is_some()) {
        ChainVerdict::Converging
    } else {
        ChainVerdict::Obstructed
    };
    Ok(ConvergenceReport { rows, rungs, verdict, metric_name: metric.name(), n_max })
}
