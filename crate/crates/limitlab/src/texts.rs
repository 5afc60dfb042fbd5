//! Data sets and texts.
//!
//! A [`DataSet`] is a non-empty finite tuple of words; its `range` is the
//! underlying set. A [`Text`] is a total, surjective presentation of a
//! language: every word of the language appears at some index, and that
//! index is bounded by a computable construction-specific fairness bound.
//! Texts over finite languages cycle, since a surjective infinite sequence
//! onto a finite set must repeat.
//!
//! A text is a pure function of (construction parameters, index); nothing is
//! consumed by reading it.

use std::sync::Arc;

use thiserror::Error;

use crate::alphabet::{Alphabet, Word};
use crate::dfa::Cardinality;
use crate::language::{Language, LanguageError, ShortlexCache};
use crate::rng;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TextError {
    #[error("data set must contain at least one word")]
    EmptyDataSet,
    #[error("data set mixes words over different alphabets")]
    MixedAlphabets,
    #[error("no text exists for the empty language")]
    EmptyLanguage,
    #[error("prefix word {0:?} is outside the language")]
    PrefixOutsideLanguage(String),
    #[error("prefix and language use different alphabets")]
    AlphabetMismatch,
    #[error(transparent)]
    Language(#[from] LanguageError),
}

/// Finite non-empty sequence of words over one alphabet. Duplicates allowed;
/// order significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSet {
    items: Vec<Word>,
}

impl DataSet {
    pub fn new(items: Vec<Word>) -> Result<DataSet, TextError> {
        let first = items.first().ok_or(TextError::EmptyDataSet)?;
        let alphabet = first.alphabet().clone();
        if items.iter().any(|w| w.alphabet() != &alphabet) {
            return Err(TextError::MixedAlphabets);
        }
        Ok(DataSet { items })
    }

    pub fn from_texts(alphabet: &Alphabet, texts: &[&str]) -> Result<DataSet, TextError> {
        let items = texts
            .iter()
            .map(|t| Word::parse(t, alphabet))
            .collect::<Result<Vec<_>, _>>()
            .map_err(LanguageError::from)?;
        DataSet::new(items)
    }

    pub fn items(&self) -> &[Word] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.items[0].alphabet()
    }

    /// Underlying set, as a finite language.
    pub fn range(&self) -> Language {
        Language::finite(self.alphabet(), self.items.iter().cloned())
            .expect("items share the data set's alphabet")
    }

    /// Concatenation: self's items then other's, order and duplicates kept.
    pub fn concat(&self, other: &DataSet) -> Result<DataSet, TextError> {
        if self.alphabet() != other.alphabet() {
            return Err(TextError::MixedAlphabets);
        }
        let mut items = self.items.clone();
        items.extend(other.items.iter().cloned());
        Ok(DataSet { items })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TextKind {
    Canonical,
    RandomFair { seed: u64 },
    LockingPrefix,
    AdversarialReplay,
}

/// Total surjective presentation of a non-empty language.
#[derive(Debug, Clone)]
pub struct Text {
    kind: TextKind,
    prefix: Option<DataSet>,
    source: Arc<ShortlexCache>,
    cardinality: Cardinality,
}

impl Text {
    fn build(kind: TextKind, prefix: Option<DataSet>, language: Language) -> Result<Text, TextError> {
        if language.is_empty_language() {
            return Err(TextError::EmptyLanguage);
        }
        if let Some(p) = &prefix {
            if p.alphabet() != language.alphabet() {
                return Err(TextError::AlphabetMismatch);
            }
            for w in p.items() {
                if !language.contains(w)? {
                    return Err(TextError::PrefixOutsideLanguage(w.as_string()));
                }
            }
        }
        let cardinality = language.cardinality();
        Ok(Text { kind, prefix, source: Arc::new(ShortlexCache::new(language)), cardinality })
    }

    /// Shortlex enumeration of L; cyclic when L is finite.
    pub fn canonical(language: Language) -> Result<Text, TextError> {
        Text::build(TextKind::Canonical, None, language)
    }

    /// Odd indices 2i-1 draw pseudo-randomly among the first i shortlex words
    /// (clamped to the language size); even indices 2i replay the i-th
    /// canonical item, which alone guarantees surjectivity.
    pub fn random_fair(language: Language, seed: u64) -> Result<Text, TextError> {
        Text::build(TextKind::RandomFair { seed }, None, language)
    }

    /// The candidate data set verbatim, then the canonical text of L.
    pub fn locking_prefix(prefix: DataSet, language: Language) -> Result<Text, TextError> {
        Text::build(TextKind::LockingPrefix, Some(prefix), language)
    }

    /// Replays a recorded presentation (e.g. an adversary's output), then
    /// completes it into a genuine text of L canonically.
    pub fn adversarial_replay(prefix: DataSet, language: Language) -> Result<Text, TextError> {
        Text::build(TextKind::AdversarialReplay, Some(prefix), language)
    }

    pub fn language(&self) -> &Language {
        self.source.language()
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TextKind::Canonical => "canonical",
            TextKind::RandomFair { .. } => "random-fair",
            TextKind::LockingPrefix => "locking-prefix",
            TextKind::AdversarialReplay => "adversarial-replay",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self.kind {
            TextKind::RandomFair { seed } => Some(seed),
            _ => None,
        }
    }

    fn canonical_item(&self, k: u64) -> Word {
        debug_assert!(k >= 1);
        let idx = match self.cardinality {
            Cardinality::Finite(n) => (k - 1) % n + 1,
            Cardinality::Infinite => k,
        };
        self.source.word_at(idx).expect("index stays within the language")
    }

    /// Item at 1-based index k.
    pub fn item(&self, k: u64) -> Word {
        assert!(k >= 1, "text indices are 1-based");
        match self.kind {
            TextKind::Canonical => self.canonical_item(k),
            TextKind::RandomFair { seed } => {
                if k % 2 == 0 {
                    self.canonical_item(k / 2)
                } else {
                    let i = k.div_ceil(2);
                    let bound = match self.cardinality {
                        Cardinality::Finite(n) => i.min(n),
                        Cardinality::Infinite => i,
                    };
                    let r = rng::draw_in(seed, k, bound);
                    self.source.word_at(r).expect("rank is clamped to the language")
                }
            }
            TextKind::LockingPrefix | TextKind::AdversarialReplay => {
                let prefix = self.prefix.as_ref().expect("prefixed kinds carry a prefix");
                let plen = prefix.len() as u64;
                if k <= plen {
                    prefix.items()[k as usize - 1].clone()
                } else {
                    self.canonical_item(k - plen)
                }
            }
        }
    }

    pub fn prefix(&self, n: u64) -> DataSet {
        assert!(n >= 1, "prefixes have positive length");
        let items = (1..=n).map(|k| self.item(k)).collect();
        DataSet::new(items).expect("n >= 1 items over one alphabet")
    }

    /// Index by which the i-th shortlex word of the source has certainly
    /// appeared. Construction-specific; monotone in i.
    pub fn fairness_bound(&self, i: u64) -> u64 {
        match self.kind {
            TextKind::Canonical => i,
            TextKind::RandomFair { .. } => 2 * i,
            TextKind::LockingPrefix | TextKind::AdversarialReplay => {
                self.prefix.as_ref().expect("prefixed kinds carry a prefix").len() as u64 + 2 * i
            }
        }
    }
}
