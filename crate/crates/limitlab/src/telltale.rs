//! Tell-tale subset search and family learnability verdicts.
//!
//! A tell-tale for a member L of a family is a finite subset D of L such
//! that no family member containing D is a proper subset of L. The search
//! here is exhaustive over subsets within explicit size and word-length
//! bounds, so verdicts are graded: WITNESS is always sound, REFUTED is
//! emitted only where the bounded search provably covers the relevant
//! space, and everything else caps at INCONCLUSIVE.
//!
//! Schema families ("all finite languages up to so many words of such a
//! length, plus listed extras") stand in for the family of ALL finite
//! languages; the caps exist because configurations must be finite. To keep
//! the verdict invariant under the caps, subset search inside a schema
//! family is clamped to the schema caps: a candidate larger than every
//! schema member would otherwise qualify vacuously and flip the verdict.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, Word};
use crate::language::Language;
use crate::metrics::universe_word;
use crate::Cardinality;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TelltaleError {
    #[error("the language is not a member of the family")]
    NotInFamily,
    #[error("the family has no members")]
    EmptyFamily,
    #[error("schema expands to {size} members, over the cap of {cap}")]
    FamilyTooLarge { size: u128, cap: u64 },
    #[error("family members use different alphabets")]
    AlphabetMismatch,
    #[error(transparent)]
    Language(#[from] crate::language::LanguageError),
}

/// Most members a schema may expand to.
pub const EXPANSION_CAP: u64 = 4096;
/// Most words drawn from a member as tell-tale candidates.
const POOL_CAP: usize = 4096;

#[derive(Debug, Clone)]
pub enum Family {
    Explicit(Vec<Language>),
    /// All finite languages over `alphabet` with at most `max_words` words
    /// of length at most `max_len`, plus `extras`.
    Schema { alphabet: Alphabet, max_words: u64, max_len: u64, extras: Vec<Language> },
}

impl Family {
    pub fn alphabet(&self) -> Result<&Alphabet, TelltaleError> {
        match self {
            Family::Explicit(members) => {
                let first = members.first().ok_or(TelltaleError::EmptyFamily)?;
                for m in members {
                    if m.alphabet() != first.alphabet() {
                        return Err(TelltaleError::AlphabetMismatch);
                    }
                }
                Ok(first.alphabet())
            }
            Family::Schema { alphabet, extras, .. } => {
                for m in extras {
                    if m.alphabet() != alphabet {
                        return Err(TelltaleError::AlphabetMismatch);
                    }
                }
                Ok(alphabet)
            }
        }
    }

    /// Schema caps (max_words, max_len) when this is a schema family.
    fn caps(&self) -> Option<(u64, u64)> {
        match self {
            Family::Explicit(_) => None,
            Family::Schema { max_words, max_len, .. } => Some((*max_words, *max_len)),
        }
    }

    /// Materializes the member list. Schema members come in set-shortlex
    /// order (fewer words first, then lexicographic over sorted word lists),
    /// followed by extras that do not duplicate a schema member.
    pub fn expand(&self) -> Result<Vec<Language>, TelltaleError> {
        self.alphabet()?;
        let members = match self {
            Family::Explicit(members) => members.clone(),
            Family::Schema { alphabet, max_words, max_len, extras } => {
                let k = alphabet.len() as u128;
                let mut word_total: u128 = 0;
                let mut pow: u128 = 1;
                for _ in 0..*max_len {
                    pow = pow.saturating_mul(k);
                    word_total = word_total.saturating_add(pow);
                }
                if word_total > EXPANSION_CAP as u128 {
                    return Err(TelltaleError::FamilyTooLarge {
                        size: word_total,
                        cap: EXPANSION_CAP,
                    });
                }
                let universe: Vec<Word> =
                    (1..=word_total).map(|r| universe_word(alphabet, r)).collect();
                let n = universe.len() as u128;
                let mut count: u128 = 0;
                for size in 1..=(*max_words).min(universe.len() as u64) {
                    count = count.saturating_add(binomial(n, size as u128));
                }
                if count > EXPANSION_CAP as u128 {
                    return Err(TelltaleError::FamilyTooLarge { size: count, cap: EXPANSION_CAP });
                }
                let mut members = Vec::with_capacity(count as usize);
                for size in 1..=(*max_words).min(universe.len() as u64) as usize {
                    let mut combo: Vec<usize> = (0..size).collect();
                    loop {
                        let words: Vec<Word> =
                            combo.iter().map(|&i| universe[i].clone()).collect();
                        members.push(
                            Language::finite(alphabet, words).expect("universe words are valid"),
                        );
                        if !next_combination(&mut combo, universe.len()) {
                            break;
                        }
                    }
                }
                for extra in extras {
                    let dup = members
                        .iter()
                        .any(|m| m.equals(extra).unwrap_or(false));
                    if !dup {
                        members.push(extra.clone());
                    }
                }
                members
            }
        };
        if members.is_empty() {
            return Err(TelltaleError::EmptyFamily);
        }
        Ok(members)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
        if acc > u64::MAX as u128 {
            return u128::MAX;
        }
    }
    acc
}

/// Advances `combo` (strictly increasing indices into 0..n) to the next
/// combination in lexicographic order; false when exhausted.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] + 1 <= n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TelltaleBounds {
    pub max_subset_size: u64,
    pub max_word_len: u64,
}

impl Default for TelltaleBounds {
    fn default() -> TelltaleBounds {
        TelltaleBounds { max_subset_size: 4, max_word_len: 6 }
    }
}

#[derive(Debug, Clone)]
pub enum MemberVerdict {
    /// `words` is a tell-tale: a subset of the member that no proper-subset
    /// member of the family covers.
    Witness { words: BTreeSet<Word> },
    /// No finite tell-tale exists under the schema reading: every candidate
    /// subset is itself a family member properly contained in the language.
    Refuted { blocking: Vec<(BTreeSet<Word>, Language)> },
    /// Search bounds exhausted without a witness or a completeness argument.
    Inconclusive { blocking: Vec<(BTreeSet<Word>, Language)> },
}

impl MemberVerdict {
    pub fn kind_name(&self) -> &'static str {
        match self {
            MemberVerdict::Witness { .. } => "WITNESS",
            MemberVerdict::Refuted { .. } => "REFUTED",
            MemberVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVerdict {
    Learnable,
    NotLearnable,
    Unknown,
}

impl fmt::Display for FamilyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyVerdict::Learnable => "LEARNABLE",
            FamilyVerdict::NotLearnable => "NOT_LEARNABLE",
            FamilyVerdict::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TelltaleReport {
    pub members: Vec<Language>,
    pub verdicts: Vec<MemberVerdict>,
    pub verdict: FamilyVerdict,
    pub bounds: TelltaleBounds,
}

const BLOCKING_SAMPLE_CAP: usize = 3;

fn member_verdict(
    target: &Language,
    expanded: &[Language],
    caps: Option<(u64, u64)>,
    bounds: &TelltaleBounds,
) -> MemberVerdict {
    // Inside a schema family the search must not outgrow the schema caps;
    // see the module docs.
    let (max_size, max_len) = match caps {
        Some((w, l)) => (bounds.max_subset_size.min(w), bounds.max_word_len.min(l)),
        None => (bounds.max_subset_size, bounds.max_word_len),
    };
    let pool = target.enumerate(POOL_CAP, max_len as usize);
    let mut blocking: Vec<(BTreeSet<Word>, Language)> = Vec::new();
    for size in 1..=(max_size as usize).min(pool.len()) {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            let candidate: BTreeSet<Word> = combo.iter().map(|&i| pool[i].clone()).collect();
            let blocker = expanded.iter().find(|member| {
                candidate.iter().all(|w| member.contains(w).unwrap_or(false))
                    && member.is_proper_subset(target).unwrap_or(false)
            });
            match blocker {
                None => return MemberVerdict::Witness { words: candidate },
                Some(member) => {
                    if blocking.len() < BLOCKING_SAMPLE_CAP {
                        blocking.push((candidate, member.clone()));
                    }
                }
            }
            if !next_combination(&mut combo, pool.len()) {
                break;
            }
        }
    }
    // Completeness argument: in a schema family, every finite subset of an
    // infinite member is itself a schema member (the finite language it
    // spans) properly contained in the member, so no tell-tale can exist
    // under the schema reading. Anything else stays inconclusive.
    if caps.is_some() && target.cardinality() == Cardinality::Infinite {
        MemberVerdict::Refuted { blocking }
    } else {
        MemberVerdict::Inconclusive { blocking }
    }
}

/// Searches subsets D of `target` with |D| <= bounds.max_subset_size over
/// words of length <= bounds.max_word_len, smallest first and shortlex-least
/// within a size, and returns the first that no proper-subset member covers.
pub fn find_telltale(
    target: &Language,
    family: &Family,
    bounds: &TelltaleBounds,
) -> Result<MemberVerdict, TelltaleError> {
    let expanded = family.expand()?;
    let is_member = expanded
        .iter()
        .any(|m| m.equals(target).unwrap_or(false));
    if !is_member {
        return Err(TelltaleError::NotInFamily);
    }
    Ok(member_verdict(target, &expanded, family.caps(), bounds))
}

/// Runs the tell-tale search for every member. LEARNABLE means every member
/// produced a witness; NOT_LEARNABLE means some member is refuted; UNKNOWN
/// covers inconclusive searches.
pub fn check_family(family: &Family, bounds: &TelltaleBounds) -> Result<TelltaleReport, TelltaleError> {
    let expanded = family.expand()?;
    let caps = family.caps();
    let verdicts: Vec<MemberVerdict> = expanded
        .iter()
        .map(|member| member_verdict(member, &expanded, caps, bounds))
        .collect();
    let verdict = if verdicts.iter().any(|v| matches!(v, MemberVerdict::Refuted { .. })) {
        FamilyVerdict::NotLearnable
    } else if verdicts.iter().all(|v| matches!(v, MemberVerdict::Witness { .. })) {
        FamilyVerdict::Learnable
    } else {
        FamilyVerdict::Unknown
    };
    Ok(TelltaleReport { members: expanded, verdicts, verdict, bounds: *bounds })
}

/// Re-verifies a witness against the full family by direct subset checks.
pub fn verify_witness(
    target: &Language,
    words: &BTreeSet<Word>,
    expanded: &[Language],
) -> bool {
    words.iter().all(|w| target.contains(w).unwrap_or(false))
        && expanded.iter().all(|member| {
            let covers = words.iter().all(|w| member.contains(w).unwrap_or(false));
            !covers || !member.is_proper_subset(target).unwrap_or(false)
        })
}

/// Orders members for the enumeration learner: non-decreasing cardinality
/// with infinite members last, ties broken by the earliest word on which
/// the two differ (the language containing it sorts first).
pub fn order_for_enumeration(members: &[Language]) -> Vec<Language> {
    let mut sorted = members.to_vec();
    sorted.sort_by(|a, b| {
        use std::cmp::Ordering;
        let rank = |l: &Language| match l.cardinality() {
            Cardinality::Finite(n) => (0u8, n),
            Cardinality::Infinite => (1u8, 0),
        };
        match rank(a).cmp(&rank(b)) {
            Ordering::Equal => match a.earliest_difference(b) {
                Ok(Some(w)) => {
                    if a.contains(&w).unwrap_or(false) {
                        Ordering::Less
                    } else {
                        Ordering::Greater
                    }
                }
                _ => Ordering::Equal,
            },
            other => other,
        }
    });
    sorted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unary() -> Alphabet {
        Alphabet::new("a").unwrap()
    }

    fn fin(alphabet: &Alphabet, words: &[&str]) -> Language {
        Language::finite_from_texts(alphabet, words).unwrap()
    }

    fn witness_strings(v: &MemberVerdict) -> Vec<String> {
        match v {
            MemberVerdict::Witness { words } => words.iter().map(|w| w.as_string()).collect(),
            other => panic!("expected a witness, got {}", other.kind_name()),
        }
    }

    #[test]
    fn two_member_family_has_both_witnesses() {
        let unary = unary();
        let small = fin(&unary, &["a"]);
        let big = fin(&unary, &["a", "aa"]);
        let family = Family::Explicit(vec![small.clone(), big.clone()]);
        let bounds = TelltaleBounds::default();
        // Only {a,aa} contains aa, and it is not a proper subset of itself.
        let v = find_telltale(&big, &family, &bounds).unwrap();
        assert_eq!(witness_strings(&v), vec!["aa"]);
        // {a,aa} contains a but is a superset, not a proper subset.
        let v = find_telltale(&small, &family, &bounds).unwrap();
        assert_eq!(witness_strings(&v), vec!["a"]);
        let report = check_family(&family, &bounds).unwrap();
        assert_eq!(report.verdict, FamilyVerdict::Learnable);
    }

    #[test]
    fn gold_family_refutes_its_infinite_member() {
        let unary = unary();
        let a_plus = Language::from_pattern(&unary, "a+").unwrap();
        let family = Family::Schema {
            alphabet: unary.clone(),
            max_words: 4,
            max_len: 6,
            extras: vec![a_plus.clone()],
        };
        let expanded = family.expand().unwrap();
        assert_eq!(expanded.len(), 57, "56 finite languages plus the infinite extra");
        let v = find_telltale(&a_plus, &family, &TelltaleBounds::default()).unwrap();
        match &v {
            MemberVerdict::Refuted { blocking } => {
                assert!(!blocking.is_empty());
                for (candidate, blocker) in blocking {
                    assert!(candidate.iter().all(|w| blocker.contains(w).unwrap()));
                    assert!(blocker.is_proper_subset(&a_plus).unwrap());
                }
            }
            other => panic!("expected REFUTED, got {}", other.kind_name()),
        }
        let report = check_family(&family, &TelltaleBounds::default()).unwrap();
        assert_eq!(report.verdict, FamilyVerdict::NotLearnable);
        // Every finite member still gets a witness.
        let finite_witnesses = report
            .verdicts
            .iter()
            .filter(|v| matches!(v, MemberVerdict::Witness { .. }))
            .count();
        assert_eq!(finite_witnesses, 56);
    }

    #[test]
    fn finite_plus_infinite_pair_is_learnable() {
        let unary = unary();
        let small = fin(&unary, &["a"]);
        let a_plus = Language::from_pattern(&unary, "a+").unwrap();
        let family = Family::Explicit(vec![small, a_plus.clone()]);
        let bounds = TelltaleBounds::default();
        // {a} blocks the candidate {a}; the next candidate {aa} is covered
        // by no proper subset of a+ in this family.
        let v = find_telltale(&a_plus, &family, &bounds).unwrap();
        assert_eq!(witness_strings(&v), vec!["aa"]);
        let report = check_family(&family, &bounds).unwrap();
        assert_eq!(report.verdict, FamilyVerdict::Learnable);
    }

    #[test]
    fn membership_is_a_precondition() {
        let unary = unary();
        let family = Family::Explicit(vec![fin(&unary, &["a"])]);
        let stranger = fin(&unary, &["aa"]);
        assert!(matches!(
            find_telltale(&stranger, &family, &TelltaleBounds::default()),
            Err(TelltaleError::NotInFamily)
        ));
    }

    #[test]
    fn witnesses_reverify_against_the_expanded_family() {
        let unary = unary();
        let a_plus = Language::from_pattern(&unary, "a+").unwrap();
        let family = Family::Schema {
            alphabet: unary.clone(),
            max_words: 3,
            max_len: 4,
            extras: vec![a_plus],
        };
        let report = check_family(&family, &TelltaleBounds::default()).unwrap();
        let expanded = &report.members;
        for (member, verdict) in expanded.iter().zip(&report.verdicts) {
            if let MemberVerdict::Witness { words } = verdict {
                assert!(verify_witness(member, words, expanded));
            }
        }
    }

    #[test]
    fn enumeration_order_puts_small_and_distinguished_first() {
        let unary = unary();
        let a_plus = Language::from_pattern(&unary, "a+").unwrap();
        let members = vec![
            a_plus.clone(),
            fin(&unary, &["aa", "aaa"]),
            fin(&unary, &["a", "aa"]),
            fin(&unary, &["a"]),
        ];
        let ordered = order_for_enumeration(&members);
        let names: Vec<String> = ordered.iter().map(|l| l.to_string()).collect();
        // Cardinality 1 first, then the two two-word sets: {a,aa} contains
        // the earliest difference "a", so it precedes {aa,aaa}; infinite last.
        assert_eq!(names, vec!["{a}", "{a, aa}", "{aa, aaa}", "a+"]);
    }

    #[test]
    fn schema_expansion_is_deduplicated_and_capped() {
        let unary = unary();
        let family = Family::Schema {
            alphabet: unary.clone(),
            max_words: 1,
            max_len: 2,
            extras: vec![fin(&unary, &["a"])],
        };
        // {a} and {aa} from the schema; the extra duplicates {a}.
        assert_eq!(family.expand().unwrap().len(), 2);

        let ab = Alphabet::new("ab").unwrap();
        let huge = Family::Schema { alphabet: ab, max_words: 6, max_len: 6, extras: vec![] };
        assert!(matches!(
            huge.expand(),
            Err(TelltaleError::FamilyTooLarge { .. })
        ));
    }
}
