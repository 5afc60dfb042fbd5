//! Learners: deterministic total maps from data sets to hypothesis
//! languages.
//!
//! A learner never errors; when configured languages live over a different
//! alphabet than the incoming data, containment simply fails and the learner
//! falls back to the range of what it has seen.

use crate::language::Language;
use crate::texts::DataSet;

#[derive(Debug, Clone)]
enum LearnerKind {
    Range,
    Enumeration { family: Vec<Language> },
    Memorizing { target: Language, threshold: usize },
}

#[derive(Debug, Clone)]
pub struct Learner {
    kind: LearnerKind,
}

impl Learner {
    /// hypothesize(s) = range(s).
    pub fn range() -> Learner {
        Learner { kind: LearnerKind::Range }
    }

    /// Identification by enumeration: the first family member (in the given
    /// order) containing range(s); falls back to range(s) when none does.
    /// The family order is the caller's responsibility and significant.
    pub fn enumeration(family: Vec<Language>) -> Learner {
        assert!(!family.is_empty(), "enumeration learner needs a non-empty family");
        Learner { kind: LearnerKind::Enumeration { family } }
    }

    /// Guesses the configured infinite language as soon as the data looks
    /// diverse, otherwise plays safe with the range.
    ///
    /// Exact rule: hypothesize(s) = target iff range(s) ⊆ target, s contains
    /// at least `threshold` distinct words, and the last min(threshold,
    /// length(s)) items of s are pairwise distinct (no word repeated among
    /// them); otherwise range(s).
    pub fn memorizing(target: Language, threshold: usize) -> Learner {
        assert!(threshold >= 1, "threshold is a positive integer");
        assert!(
            !target.cardinality().is_finite(),
            "the memorizing learner guesses an infinite language"
        );
        Learner { kind: LearnerKind::Memorizing { target, threshold } }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            LearnerKind::Range => "range".to_string(),
            LearnerKind::Enumeration { family } => {
                format!("enumeration({} members)", family.len())
            }
            LearnerKind::Memorizing { target, threshold } => {
                format!("memorizing({}, threshold={})", target, threshold)
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            LearnerKind::Range => "range",
            LearnerKind::Enumeration { .. } => "enumeration",
            LearnerKind::Memorizing { .. } => "memorizing",
        }
    }

    /// Pure function of the item sequence of `s`.
    pub fn hypothesize(&self, s: &DataSet) -> Language {
        match &self.kind {
            LearnerKind::Range => s.range(),
            LearnerKind::Enumeration { family } => {
                let range = s.range();
                for candidate in family {
                    // Foreign-alphabet members never contain the range.
                    if range.is_subset(candidate).unwrap_or(false) {
                        return candidate.clone();
                    }
                }
                range
            }
            LearnerKind::Memorizing { target, threshold } => {
                let range = s.range();
                if !range.is_subset(target).unwrap_or(false) {
                    return range;
                }
                let distinct = match range.cardinality() {
                    crate::dfa::Cardinality::Finite(n) => n as usize,
                    crate::dfa::Cardinality::Infinite => unreachable!("ranges are finite"),
                };
                if distinct < *threshold {
                    return range;
                }
                let window = (*threshold).min(s.len());
                let tail = &s.items()[s.len() - window..];
                let fresh = (0..tail.len()).all(|i| !tail[i + 1..].contains(&tail[i]));
                if fresh {
                    target.clone()
                } else {
                    range
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn unary() -> Alphabet {
        Alphabet::new("a").unwrap()
    }

    fn ds(alphabet: &Alphabet, items: &[&str]) -> DataSet {
        DataSet::from_texts(alphabet, items).unwrap()
    }

    fn fin(alphabet: &Alphabet, words: &[&str]) -> Language {
        Language::finite_from_texts(alphabet, words).unwrap()
    }

    #[test]
    fn range_learner_returns_the_range() {
        let unary = unary();
        let l = Learner::range();
        let h = l.hypothesize(&ds(&unary, &["a", "aa", "a"]));
        assert!(h.equals(&fin(&unary, &["a", "aa"])).unwrap());
        let ab = Alphabet::new("ab").unwrap();
        let h2 = l.hypothesize(&ds(&ab, &["b"]));
        assert!(h2.equals(&fin(&ab, &["b"])).unwrap());
    }

    #[test]
    fn enumeration_learner_takes_first_consistent() {
        let unary = unary();
        let family = vec![fin(&unary, &["a"]), fin(&unary, &["a", "aa"])];
        let l = Learner::enumeration(family);
        let h = l.hypothesize(&ds(&unary, &["aa"]));
        assert!(h.equals(&fin(&unary, &["a", "aa"])).unwrap());
        let h2 = l.hypothesize(&ds(&unary, &["a"]));
        assert!(h2.equals(&fin(&unary, &["a"])).unwrap());
    }

    #[test]
    fn enumeration_learner_falls_back_to_range() {
        let ab = Alphabet::new("ab").unwrap();
        let l = Learner::enumeration(vec![fin(&ab, &["a"])]);
        let h = l.hypothesize(&ds(&ab, &["b"]));
        assert!(h.equals(&fin(&ab, &["b"])).unwrap());
    }

    #[test]
    fn memorizing_learner_rule_evaluation() {
        let unary = unary();
        let plus = Language::from_pattern(&unary, "a+").unwrap();
        let l = Learner::memorizing(plus.clone(), 2);

        // Three distinct fresh words: guesses the infinite target.
        let h = l.hypothesize(&ds(&unary, &["a", "aa", "aaa"]));
        assert!(h.equals(&plus).unwrap());

        // No fresh words recently: stays at the range.
        let h2 = l.hypothesize(&ds(&unary, &["a", "a", "a", "a"]));
        assert!(h2.equals(&fin(&unary, &["a"])).unwrap());

        // Range outside the target: range.
        let ab = Alphabet::new("ab").unwrap();
        let plus_ab = Language::from_pattern(&ab, "a+").unwrap();
        let lab = Learner::memorizing(plus_ab, 2);
        let h3 = lab.hypothesize(&ds(&ab, &["b"]));
        assert!(h3.equals(&fin(&ab, &["b"])).unwrap());

        // Diverse history but a stale tail: repeats in the last two items.
        let h4 = l.hypothesize(&ds(&unary, &["a", "aa", "aaa", "aaa"]));
        assert!(h4.equals(&fin(&unary, &["a", "aa", "aaa"])).unwrap());
    }

    #[test]
    fn learners_are_deterministic() {
        let unary = unary();
        let plus = Language::from_pattern(&unary, "a+").unwrap();
        let learners = vec![
            Learner::range(),
            Learner::enumeration(vec![fin(&unary, &["a"]), plus.clone()]),
            Learner::memorizing(plus, 3),
        ];
        let s = ds(&unary, &["a", "aaa", "a", "aa"]);
        for l in learners {
            let h1 = l.hypothesize(&s);
            let h2 = l.hypothesize(&s);
            assert!(h1.equals(&h2).unwrap(), "{} is not deterministic", l.name());
        }
    }
}
