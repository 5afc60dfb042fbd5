//! Metrics on languages.
//!
//! Three built-ins:
//! - the exact (0/1) metric, whose nonzero distances are bounded away from
//!   zero by a gap of 1, so convergence under it forces eventual identity;
//! - the counting metric relative to an infinite hub language L_inf, where
//!   distance to L_inf is the reciprocal of the intersection cardinality and
//!   distinct finite languages are measured through the hub;
//! - a weighted symmetric-difference metric, structure-sensitive and gapless,
//!   exact on finite pairs and a certified interval on regular pairs.
//!
//! Distances are exact rationals wherever possible. Truncated sums return a
//! [`Distance::Interval`] whose upper bound includes the provable tail mass,
//! so downstream verdicts never silently ignore truncation error.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::alphabet::Word;
use crate::distance::{rat_int, Distance, Rat};
use crate::language::{Cardinality, Language, LanguageError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricError {
    #[error("pair outside the metric's domain: {0}")]
    OutsideDomain(String),
    #[error("the counting metric needs an infinite hub language")]
    HubNotInfinite,
    #[error("the weight base must exceed 1")]
    BaseTooSmall,
    #[error(transparent)]
    Language(#[from] LanguageError),
}

type CustomFn = dyn Fn(&Language, &Language) -> Result<Distance, MetricError> + Send + Sync;

#[derive(Clone)]
enum MetricKind {
    Exact,
    Counting { hub: Language },
    SymDiff { base: Rat, trunc_rank: u64 },
    Custom { name: String, gap: Option<Rat>, f: Arc<CustomFn> },
}

/// Pure, immutable distance function on languages.
#[derive(Clone)]
pub struct Metric {
    kind: MetricKind,
}

/// Word sets at most this large may be expanded for exact summation.
const MATERIALIZE_LIMIT: usize = 4096;
/// Largest shortlex rank granted an exact power; deeper ranks go through
/// truncation so denominators stay desk-sized.
const EXACT_RANK_LIMIT: u128 = 4096;
/// Default truncation rank for regular pairs.
pub const DEFAULT_TRUNCATION_RANK: u64 = 64;

impl Metric {
    /// d(L,G) = 0 if the languages are equal, 1 otherwise. Gap = 1.
    pub fn exact() -> Metric {
        Metric { kind: MetricKind::Exact }
    }

    /// The hub metric: d(L, hub) = 1/|L ∩ hub| (1 when disjoint) for finite
    /// L, d(L, L) = 0, and distinct finite languages are measured through
    /// the hub by summing their two hub distances. Domain: languages that
    /// are finite or equal to the hub.
    pub fn counting(hub: Language) -> Result<Metric, MetricError> {
        if hub.cardinality().is_finite() {
            return Err(MetricError::HubNotInfinite);
        }
        Ok(Metric { kind: MetricKind::Counting { hub } })
    }

    /// Weighted symmetric difference with the default truncation rank.
    pub fn symdiff(base: Rat) -> Result<Metric, MetricError> {
        Metric::symdiff_with_rank(base, DEFAULT_TRUNCATION_RANK)
    }

    pub fn symdiff_with_rank(base: Rat, trunc_rank: u64) -> Result<Metric, MetricError> {
        if base <= Rat::one() {
            return Err(MetricError::BaseTooSmall);
        }
        assert!(trunc_rank >= 1);
        Ok(Metric { kind: MetricKind::SymDiff { base, trunc_rank } })
    }

    /// Arbitrary distance function; used to exercise the axiom checker with
    /// deliberately broken metrics and for experimentation.
    pub fn custom(
        name: &str,
        gap: Option<Rat>,
        f: impl Fn(&Language, &Language) -> Result<Distance, MetricError> + Send + Sync + 'static,
    ) -> Metric {
        Metric { kind: MetricKind::Custom { name: name.to_string(), gap, f: Arc::new(f) } }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            MetricKind::Exact => "exact".to_string(),
            MetricKind::Counting { hub } => format!("counting({})", hub),
            MetricKind::SymDiff { base, trunc_rank } => {
                format!("symdiff(base={}/{}, rank={})", base.numer(), base.denom(), trunc_rank)
            }
            MetricKind::Custom { name, .. } => name.clone(),
        }
    }

    /// inf of nonzero distances, when known. Some(1) makes a metric exact in
    /// the gap sense.
    pub fn gap(&self) -> Option<Rat> {
        match &self.kind {
            MetricKind::Exact => Some(Rat::one()),
            MetricKind::Counting { .. } => None,
            MetricKind::SymDiff { .. } => None,
            MetricKind::Custom { gap, .. } => gap.clone(),
        }
    }

    pub fn distance(&self, l: &Language, g: &Language) -> Result<Distance, MetricError> {
        match &self.kind {
            MetricKind::Exact => {
                Ok(if l.equals(g)? { Distance::zero() } else { Distance::exact(Rat::one()) })
            }
            MetricKind::Counting { hub } => counting_distance(hub, l, g),
            MetricKind::SymDiff { base, trunc_rank } => symdiff_distance(base, *trunc_rank, l, g),
            MetricKind::Custom { f, .. } => f(l, g),
        }
    }
}

impl std::fmt::Debug for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Metric({})", self.name())
    }
}

fn counting_hub_leg(hub: &Language, finite: &Language) -> Result<Distance, MetricError> {
    match finite.intersection_cardinality(hub)? {
        Cardinality::Finite(0) => Ok(Distance::exact(Rat::one())),
        Cardinality::Finite(n) => Ok(Distance::exact(Rat::one() / rat_int(n as i64))),
        Cardinality::Infinite => unreachable!("finite language has finite intersections"),
    }
}

fn counting_distance(hub: &Language, l: &Language, g: &Language) -> Result<Distance, MetricError> {
    if l.equals(g)? {
        return Ok(Distance::zero());
    }
    // Domain: each side is finite or IS the hub. Classification reuses the
    // equality decision procedure, so a pattern spelling the hub differently
    // still counts as the hub.
    let classify = |lang: &Language| -> Result<bool, MetricError> {
        if lang.equals(hub)? {
            Ok(true)
        } else if lang.cardinality().is_finite() {
            Ok(false)
        } else {
            Err(MetricError::OutsideDomain(format!(
                "{} is infinite and differs from the hub",
                lang
            )))
        }
    };
    match (classify(l)?, classify(g)?) {
        (true, true) => unreachable!("equal-to-hub pairs were handled by the equality check"),
        (true, false) => counting_hub_leg(hub, g),
        (false, true) => counting_hub_leg(hub, l),
        (false, false) => Ok(counting_hub_leg(hub, l)?.add(&counting_hub_leg(hub, g)?)),
    }
}

fn rat_pow(base: &Rat, mut exp: u128) -> Rat {
    let mut acc = Rat::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Shortlex rank of a word within the full universe of non-empty words over
/// its alphabet, 1-based; saturates at u128::MAX.
pub fn universe_rank(word: &Word) -> u128 {
    let m = word.alphabet().len() as u128;
    // Words strictly shorter: m + m^2 + ... + m^(len-1).
    let mut shorter = 0u128;
    let mut power = 1u128;
    for _ in 1..word.len() {
        power = power.saturating_mul(m);
        shorter = shorter.saturating_add(power);
    }
    let mut within = 0u128;
    for &d in word.indices() {
        within = within.saturating_mul(m).saturating_add(d as u128);
    }
    shorter.saturating_add(within).saturating_add(1)
}

/// The word of the full universe at shortlex rank r (1-based).
pub fn universe_word(alphabet: &crate::alphabet::Alphabet, r: u128) -> Word {
    assert!(r >= 1);
    let m = alphabet.len() as u128;
    let mut len = 1usize;
    let mut count = m; // words of current length
    let mut offset = r - 1; // 0-based among words of current length
    while offset >= count {
        offset -= count;
        count = count.saturating_mul(m);
        len += 1;
    }
    let mut indices = vec![0u8; len];
    for slot in indices.iter_mut().rev() {
        *slot = (offset % m) as u8;
        offset /= m;
    }
    alphabet.word_from_indices(indices).expect("len >= 1")
}

fn symdiff_distance(
    base: &Rat,
    trunc_rank: u64,
    l: &Language,
    g: &Language,
) -> Result<Distance, MetricError> {
    if l.equals(g)? {
        return Ok(Distance::zero());
    }
    // Exact path: both sides expandable and every differing word's rank small
    // enough for an exact power.
    if let (Some(ws_l), Some(ws_g)) = (l.materialize(MATERIALIZE_LIMIT), g.materialize(MATERIALIZE_LIMIT)) {
        let sym: BTreeSet<&Word> = ws_l.symmetric_difference(&ws_g).collect();
        let ranks: Vec<u128> = sym.iter().map(|w| universe_rank(w)).collect();
        if ranks.iter().all(|&r| r <= EXACT_RANK_LIMIT) {
            let mut total = Rat::zero();
            for r in ranks {
                total += rat_pow(base, r).recip();
            }
            return Ok(Distance::exact(total));
        }
    }
    // Truncated path: walk the full universe up to trunc_rank, then certify
    // the tail: sum over r > R of base^(-r) = base^(-R) / (base - 1).
    let alphabet = l.alphabet();
    let mut partial = Rat::zero();
    let mut term = Rat::one();
    for r in 1..=trunc_rank as u128 {
        term = term / base.clone();
        let w = universe_word(alphabet, r);
        if l.contains(&w)? != g.contains(&w)? {
            partial += term.clone();
        }
    }
    // term is now base^(-R).
    let tail = term / (base.clone() - Rat::one());
    Ok(Distance::interval(partial.clone(), partial + tail))
}

/// One axiom-check failure, with the sample indices that witnessed it.
#[derive(Debug, Clone)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub indices: Vec<usize>,
    pub detail: String,
}

/// Outcome of checking metric axioms on every pair and triple of a sample.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub metric_name: String,
    pub sample_size: usize,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    /// (i, j, reason) pairs the metric declined as outside its domain.
    pub skipped_pairs: Vec<(usize, usize, String)>,
    pub violations: Vec<AxiomViolation>,
    pub passed: bool,
}

/// Checks non-negativity, identity of indiscernibles (via language
/// equality), symmetry, and the triangle inequality on every pair and triple
/// of the sample. Exact distances are compared exactly; intervals within the
/// given tolerance. Out-of-domain pairs are reported and skipped, not fatal.
pub fn verify_metric_axioms(
    metric: &Metric,
    sample: &[Language],
    tolerance: &Rat,
) -> AxiomReport {
    let n = sample.len();
    let mut dist: Vec<Vec<Option<Distance>>> = vec![vec![None; n]; n];
    let mut skipped: Vec<(usize, usize, String)> = Vec::new();
    let mut pairs_checked = 0u64;
    for i in 0..n {
        for j in 0..n {
            match metric.distance(&sample[i], &sample[j]) {
                Ok(d) => dist[i][j] = Some(d),
                Err(e) => {
                    if i <= j {
                        skipped.push((i, j, e.to_string()));
                    }
                }
            }
        }
    }

    let tol_for = |ds: &[&Distance]| -> Rat {
        if ds.iter().all(|d| d.is_exact()) {
            Rat::zero()
        } else {
            tolerance.clone()
        }
    };
    let mut violations: Vec<AxiomViolation> = Vec::new();

    for i in 0..n {
        for j in 0..n {
            let Some(d) = &dist[i][j] else { continue };
            if i <= j {
                pairs_checked += 1;
            }
            let tol = tol_for(&[d]);
            if *d.lo() < -tol.clone() {
                violations.push(AxiomViolation {
                    axiom: "non-negativity",
                    indices: vec![i, j],
                    detail: format!("d({}, {}) = {}", sample[i], sample[j], d),
                });
            }
            if i > j {
                continue;
            }
            // Identity of indiscernibles, both directions, decided by the
            // language-equality oracle.
            let equal = match sample[i].equals(&sample[j]) {
                Ok(e) => e,
                Err(_) => continue,
            };
            if equal && *d.hi() > tol {
                violations.push(AxiomViolation {
                    axiom: "identity",
                    indices: vec![i, j],
                    detail: format!("equal pair but d({}, {}) = {}", sample[i], sample[j], d),
                });
            }
            if !equal && *d.hi() <= tol {
                violations.push(AxiomViolation {
                    axiom: "identity",
                    indices: vec![i, j],
                    detail: format!("distinct pair but d({}, {}) = {}", sample[i], sample[j], d),
                });
            }
        }
    }

    // Symmetry.
    for i in 0..n {
        for j in i + 1..n {
            let (Some(dij), Some(dji)) = (&dist[i][j], &dist[j][i]) else { continue };
            let tol = tol_for(&[dij, dji]);
            if (dij.lo() - dji.lo()).abs() > tol || (dij.hi() - dji.hi()).abs() > tol {
                violations.push(AxiomViolation {
                    axiom: "symmetry",
                    indices: vec![i, j],
                    detail: format!("d forward = {}, d backward = {}", dij, dji),
                });
            }
        }
    }

    // Triangle inequality over ordered triples of distinct indices.
    let mut triples_checked = 0u64;
    for i in 0..n {
        for j in 0..n {
            if j == i {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                let (Some(dik), Some(dij), Some(djk)) = (&dist[i][k], &dist[i][j], &dist[j][k])
                else {
                    continue;
                };
                triples_checked += 1;
                let tol = tol_for(&[dik, dij, djk]);
                if dik.lo() > &(dij.hi() + djk.hi() + tol) {
                    violations.push(AxiomViolation {
                        axiom: "triangle",
                        indices: vec![i, j, k],
                        detail: format!(
                            "d({}, {}) = {} exceeds {} + {}",
                            sample[i], sample[k], dik, dij, djk
                        ),
                    });
                }
            }
        }
    }

    let passed = violations.is_empty();
    AxiomReport {
        metric_name: metric.name(),
        sample_size: n,
        pairs_checked,
        triples_checked,
        skipped_pairs: skipped,
        violations,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::distance::rat;

    fn unary() -> Alphabet {
        Alphabet::new("a").unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn fin(alphabet: &Alphabet, words: &[&str]) -> Language {
        Language::finite_from_texts(alphabet, words).unwrap()
    }

    #[test]
    fn exact_metric_is_zero_one() {
        let m = Metric::exact();
        let a = fin(&unary(), &["a"]);
        let plus = Language::from_pattern(&unary(), "a+").unwrap();
        let plus2 = Language::from_pattern(&unary(), "aa*a|a").unwrap();
        assert_eq!(m.distance(&a, &a).unwrap(), Distance::zero());
        assert_eq!(m.distance(&a, &plus).unwrap(), Distance::exact(rat_int(1)));
        assert_eq!(m.distance(&plus, &plus2).unwrap(), Distance::zero());
        assert_eq!(m.gap(), Some(rat_int(1)));
    }

    #[test]
    fn counting_metric_matches_the_hub_formulas() {
        let ab = ab();
        let hub = Language::from_pattern(&ab, "a+").unwrap();
        let m = Metric::counting(hub).unwrap();

        let b = fin(&ab, &["b"]);
        assert_eq!(
            m.distance(&b, &Language::from_pattern(&ab, "a+").unwrap()).unwrap(),
            Distance::exact(rat_int(1))
        );

        let mixed = fin(&ab, &["a", "aa", "b"]);
        assert_eq!(
            m.distance(&mixed, &Language::from_pattern(&ab, "a+").unwrap()).unwrap(),
            Distance::exact(rat(1, 2))
        );

        let a = fin(&ab, &["a"]);
        let aa = fin(&ab, &["aa"]);
        assert_eq!(m.distance(&a, &aa).unwrap(), Distance::exact(rat_int(2)));
        assert_eq!(m.distance(&a, &a).unwrap(), Distance::zero());
    }

    #[test]
    fn counting_metric_domain_is_guarded() {
        let ab = ab();
        let hub = Language::from_pattern(&ab, "a+").unwrap();
        let m = Metric::counting(hub).unwrap();
        let other_infinite = Language::from_pattern(&ab, "(a|b)+").unwrap();
        let a = fin(&ab, &["a"]);
        assert!(matches!(
            m.distance(&other_infinite, &a),
            Err(MetricError::OutsideDomain(_))
        ));
        // A differently spelled hub is still the hub.
        let hub_again = Language::from_pattern(&ab, "aa*").unwrap();
        assert_eq!(m.distance(&hub_again, &a).unwrap(), Distance::exact(rat_int(1)));

        let finite = Language::from_pattern(&ab, "a|aa").unwrap();
        assert!(matches!(Metric::counting(finite), Err(MetricError::HubNotInfinite)));
    }

    #[test]
    fn symdiff_exact_on_small_finite_pairs() {
        let ab = ab();
        let m = Metric::symdiff(rat_int(2)).unwrap();
        // ranks over {a,b}: a -> 1, b -> 2.
        let a = fin(&ab, &["a"]);
        let b = fin(&ab, &["b"]);
        assert_eq!(m.distance(&a, &b).unwrap(), Distance::exact(rat(3, 4)));
        assert_eq!(m.distance(&a, &a).unwrap(), Distance::zero());
    }

    #[test]
    fn symdiff_interval_tail_is_certified_and_decreasing() {
        let unary = unary();
        let plus = Language::from_pattern(&unary, "a+").unwrap();
        let m = Metric::symdiff(rat_int(2)).unwrap();
        let mut last_hi: Option<Rat> = None;
        for n in 1..=20u64 {
            let ln = Language::finite(
                &unary,
                (1..=n).map(|k| plus.nth_shortlex(k).unwrap()),
            )
            .unwrap();
            let d = m.distance(&ln, &plus).unwrap();
            // True distance is 2^(-n); the certified interval must cover it.
            let truth = rat_pow(&rat_int(2), n as u128).recip();
            assert!(d.lo() <= &truth && &truth <= d.hi());
            if let Some(prev) = last_hi {
                assert!(d.hi() < &prev, "upper bound must strictly decrease");
            }
            last_hi = Some(d.hi().clone());
        }
    }

    #[test]
    fn universe_rank_and_word_are_inverse() {
        let ab = ab();
        for r in 1..=100u128 {
            let w = universe_word(&ab, r);
            assert_eq!(universe_rank(&w), r);
        }
        let deep = Word::parse("aaaaa", &ab).unwrap();
        // ranks: 2 + 4 + 8 + 16 words shorter, then first of length 5.
        assert_eq!(universe_rank(&deep), 31);
    }

    #[test]
    fn axioms_pass_for_builtin_metrics() {
        let ab = ab();
        let sample = vec![
            fin(&ab, &["a"]),
            fin(&ab, &["b"]),
            fin(&ab, &["a", "b"]),
            fin(&ab, &["aa", "ab"]),
            Language::from_pattern(&ab, "a+").unwrap(),
        ];
        let tol = rat(1, 1_000_000_000);
        for m in [
            Metric::exact(),
            Metric::counting(Language::from_pattern(&ab, "a+").unwrap()).unwrap(),
            Metric::symdiff(rat_int(2)).unwrap(),
        ] {
            let report = verify_metric_axioms(&m, &sample, &tol);
            assert!(report.passed, "{}: {:?}", report.metric_name, report.violations);
            assert!(report.skipped_pairs.is_empty());
        }
    }

    #[test]
    fn axioms_catch_a_broken_metric() {
        let ab = ab();
        let a = fin(&ab, &["a"]);
        let b = fin(&ab, &["b"]);
        let broken = Metric::custom("broken", None, move |l, g| {
            // d = -1 on one specific pair, 0/1 metric elsewhere.
            let is_the_pair = |x: &Language, y: &Language| {
                x.equals(&fin(&Alphabet::new("ab").unwrap(), &["a"])).unwrap_or(false)
                    && y.equals(&fin(&Alphabet::new("ab").unwrap(), &["b"])).unwrap_or(false)
            };
            if is_the_pair(l, g) || is_the_pair(g, l) {
                Ok(Distance::exact(rat_int(-1)))
            } else if l.equals(g).map_err(MetricError::from)? {
                Ok(Distance::zero())
            } else {
                Ok(Distance::exact(rat_int(1)))
            }
        });
        let report = verify_metric_axioms(&broken, &[a, b], &Rat::zero());
        assert!(!report.passed);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "non-negativity" && v.indices == vec![0, 1]));
    }

    #[test]
    fn out_of_domain_pairs_are_reported_not_fatal() {
        let ab = ab();
        let hub = Language::from_pattern(&ab, "a+").unwrap();
        let m = Metric::counting(hub).unwrap();
        let sample = vec![
            fin(&ab, &["a"]),
            Language::from_pattern(&ab, "(a|b)+").unwrap(), // outside domain
            fin(&ab, &["b"]),
        ];
        let report = verify_metric_axioms(&m, &sample, &Rat::zero());
        assert!(!report.skipped_pairs.is_empty());
        assert!(report.passed, "in-domain pairs alone must pass: {:?}", report.violations);
    }
}
