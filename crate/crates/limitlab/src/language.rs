//! Languages with decidable membership, comparison, and counting.
//!
//! A [`Language`] is a set of non-empty words over a fixed alphabet, stored
//! either as an explicit finite word set or as a complete DFA compiled from
//! a pattern. The empty word is banned from every language; constructors
//! enforce it. All binary operations require both operands to share one
//! alphabet and report a mismatch as an error rather than guessing.
//!
//! Every operation here is total and deterministic: equality, subset tests
//! and intersection counts reduce to automaton products, so they are exact
//! decisions, not sampling.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Word};
use crate::dfa::Dfa;
use crate::pattern::{self, PatternError};

pub use crate::dfa::Cardinality;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LanguageError {
    #[error("operands live over different alphabets ({0} vs {1})")]
    AlphabetMismatch(String, String),
    #[error("word {0:?} does not belong to the language's alphabet")]
    ForeignWord(String),
    #[error("language accepts the empty word")]
    EmptyWordAccepted,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

#[derive(Debug)]
enum Repr {
    Finite(BTreeSet<Word>),
    Regular { dfa: Dfa, source: String },
}

/// A language over a fixed alphabet. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Language {
    alphabet: Alphabet,
    repr: Arc<Repr>,
}

impl Language {
    /// Explicit finite language. The word list may be empty and may contain
    /// duplicates; the stored set is deduplicated and shortlex-sorted.
    pub fn finite<I>(alphabet: &Alphabet, words: I) -> Result<Language, LanguageError>
    where
        I: IntoIterator<Item = Word>,
    {
        let mut set = BTreeSet::new();
        for w in words {
            if w.alphabet() != alphabet {
                return Err(LanguageError::ForeignWord(w.as_string()));
            }
            set.insert(w);
        }
        Ok(Language { alphabet: alphabet.clone(), repr: Arc::new(Repr::Finite(set)) })
    }

    /// Convenience constructor parsing each word from its spelling.
    pub fn finite_from_texts(
        alphabet: &Alphabet,
        words: &[&str],
    ) -> Result<Language, LanguageError> {
        let parsed = words
            .iter()
            .map(|t| Word::parse(t, alphabet))
            .collect::<Result<Vec<_>, _>>()?;
        Language::finite(alphabet, parsed)
    }

    /// Compiles a pattern; rejects patterns that accept the empty word.
    pub fn from_pattern(alphabet: &Alphabet, text: &str) -> Result<Language, LanguageError> {
        let dfa = pattern::compile(text, alphabet)?;
        if dfa.accepts_empty_word() {
            return Err(LanguageError::EmptyWordAccepted);
        }
        Ok(Language {
            alphabet: alphabet.clone(),
            repr: Arc::new(Repr::Regular { dfa, source: text.to_string() }),
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// "finite" for explicit word sets, "pattern" for compiled automata.
    pub fn kind(&self) -> &'static str {
        match &*self.repr {
            Repr::Finite(_) => "finite",
            Repr::Regular { .. } => "pattern",
        }
    }

    fn check_same_alphabet(&self, other: &Language) -> Result<(), LanguageError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(LanguageError::AlphabetMismatch(
                self.alphabet.to_string(),
                other.alphabet.to_string(),
            ))
        }
    }

    pub fn contains(&self, word: &Word) -> Result<bool, LanguageError> {
        if word.alphabet() != &self.alphabet {
            return Err(LanguageError::ForeignWord(word.as_string()));
        }
        Ok(match &*self.repr {
            Repr::Finite(set) => set.contains(word),
            Repr::Regular { dfa, .. } => dfa.accepts(word.indices()),
        })
    }

    pub fn cardinality(&self) -> Cardinality {
        match &*self.repr {
            Repr::Finite(set) => Cardinality::Finite(set.len() as u64),
            Repr::Regular { dfa, .. } => dfa.count_nonempty_words(),
        }
    }

    pub fn is_empty_language(&self) -> bool {
        match &*self.repr {
            Repr::Finite(set) => set.is_empty(),
            Repr::Regular { dfa, .. } => dfa.accepts_no_nonempty_word(),
        }
    }

    /// k-th word (1-based) in shortlex order, `None` past the end.
    pub fn nth_shortlex(&self, k: u64) -> Option<Word> {
        if k == 0 {
            return None;
        }
        match &*self.repr {
            Repr::Finite(set) => set.iter().nth(k as usize - 1).cloned(),
            Repr::Regular { dfa, .. } => dfa
                .nth_shortlex(k)
                .map(|idx| self.alphabet.word_from_indices(idx).expect("dfa emits valid words")),
        }
    }

    /// First `count` words no longer than `max_len`, in shortlex order.
    pub fn enumerate(&self, count: usize, max_len: usize) -> Vec<Word> {
        match &*self.repr {
            Repr::Finite(set) => set
                .iter()
                .take_while(|w| w.len() <= max_len)
                .take(count)
                .cloned()
                .collect(),
            Repr::Regular { dfa, .. } => dfa
                .enumerate_words(count, max_len)
                .into_iter()
                .map(|idx| self.alphabet.word_from_indices(idx).expect("dfa emits valid words"))
                .collect(),
        }
    }

    /// First `count` words with no length cap. Terminates because each call
    /// asks for finitely many words.
    pub fn enumerate_first(&self, count: usize) -> Vec<Word> {
        match &*self.repr {
            Repr::Finite(set) => set.iter().take(count).cloned().collect(),
            Repr::Regular { .. } => {
                let mut out = Vec::new();
                for k in 1..=count as u64 {
                    match self.nth_shortlex(k) {
                        Some(w) => out.push(w),
                        None => break,
                    }
                }
                out
            }
        }
    }

    fn to_dfa(&self) -> std::borrow::Cow<'_, Dfa> {
        match &*self.repr {
            Repr::Finite(set) => std::borrow::Cow::Owned(Dfa::from_words(
                self.alphabet.len(),
                set.iter().map(|w| w.indices()),
            )),
            Repr::Regular { dfa, .. } => std::borrow::Cow::Borrowed(dfa),
        }
    }

    /// Extensional equality, decided exactly.
    pub fn equals(&self, other: &Language) -> Result<bool, LanguageError> {
        self.check_same_alphabet(other)?;
        Ok(match (&*self.repr, &*other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => a == b,
            (Repr::Finite(set), Repr::Regular { dfa, .. })
            | (Repr::Regular { dfa, .. }, Repr::Finite(set)) => {
                // Cardinality first: comparing a finite set against an
                // infinite automaton must not walk the whole set.
                dfa.count_nonempty_words() == Cardinality::Finite(set.len() as u64)
                    && set.iter().all(|w| dfa.accepts(w.indices()))
            }
            (Repr::Regular { dfa: a, .. }, Repr::Regular { dfa: b, .. }) => {
                a.product(b, |x, y| x != y).accepts_no_nonempty_word()
            }
        })
    }

    pub fn is_subset(&self, other: &Language) -> Result<bool, LanguageError> {
        self.check_same_alphabet(other)?;
        Ok(match (&*self.repr, &*other.repr) {
            (Repr::Finite(a), _) => {
                a.iter().all(|w| other.contains(w).expect("alphabets already checked"))
            }
            (Repr::Regular { dfa, .. }, Repr::Finite(b)) => {
                match dfa.count_nonempty_words() {
                    Cardinality::Infinite => false,
                    Cardinality::Finite(n) => {
                        n as usize <= b.len()
                            && self.enumerate_first(n as usize).iter().all(|w| b.contains(w))
                    }
                }
            }
            (Repr::Regular { dfa: a, .. }, Repr::Regular { dfa: b, .. }) => {
                a.product(b, |x, y| x && !y).accepts_no_nonempty_word()
            }
        })
    }

    pub fn is_proper_subset(&self, other: &Language) -> Result<bool, LanguageError> {
        Ok(self.is_subset(other)? && !self.equals(other)?)
    }

    pub fn intersection_cardinality(&self, other: &Language) -> Result<Cardinality, LanguageError> {
        self.check_same_alphabet(other)?;
        Ok(match (&*self.repr, &*other.repr) {
            (Repr::Finite(a), _) => {
                let n = a
                    .iter()
                    .filter(|w| other.contains(w).expect("alphabets already checked"))
                    .count();
                Cardinality::Finite(n as u64)
            }
            (_, Repr::Finite(b)) => {
                let n = b
                    .iter()
                    .filter(|w| self.contains(w).expect("alphabets already checked"))
                    .count();
                Cardinality::Finite(n as u64)
            }
            (Repr::Regular { dfa: a, .. }, Repr::Regular { dfa: b, .. }) => {
                a.product(b, |x, y| x && y).count_nonempty_words()
            }
        })
    }

    pub fn union(&self, other: &Language) -> Result<Language, LanguageError> {
        self.check_same_alphabet(other)?;
        Ok(match (&*self.repr, &*other.repr) {
            (Repr::Finite(a), Repr::Finite(b)) => {
                let merged: BTreeSet<Word> = a.union(b).cloned().collect();
                Language { alphabet: self.alphabet.clone(), repr: Arc::new(Repr::Finite(merged)) }
            }
            _ => {
                let dfa = self.to_dfa().product(&other.to_dfa(), |x, y| x || y);
                let source = format!("union({}, {})", self, other);
                Language {
                    alphabet: self.alphabet.clone(),
                    repr: Arc::new(Repr::Regular { dfa, source }),
                }
            }
        })
    }

    /// Shortlex-least word on which the two languages disagree, or `None`
    /// when they are equal.
    pub fn earliest_difference(&self, other: &Language) -> Result<Option<Word>, LanguageError> {
        self.check_same_alphabet(other)?;
        let xor = self.to_dfa().product(&other.to_dfa(), |x, y| x != y);
        Ok(xor
            .nth_shortlex(1)
            .map(|idx| self.alphabet.word_from_indices(idx).expect("dfa emits valid words")))
    }

    /// Explicit word set when both small and finite; used by exact metric
    /// computations. `None` when infinite or larger than `limit`.
    pub fn materialize(&self, limit: usize) -> Option<BTreeSet<Word>> {
        match &*self.repr {
            Repr::Finite(set) => (set.len() <= limit).then(|| set.clone()),
            Repr::Regular { .. } => match self.cardinality() {
                Cardinality::Finite(n) if n as usize <= limit => {
                    Some(self.enumerate_first(n as usize).into_iter().collect())
                }
                _ => None,
            },
        }
    }
}

// Finite languages print as a braced shortlex-ordered set, pattern languages
// print their source text; reports lean on this being stable.
impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.repr {
            Repr::Finite(set) => {
                write!(f, "{{")?;
                for (i, w) in set.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", w)?;
                }
                write!(f, "}}")
            }
            Repr::Regular { source, .. } => write!(f, "{}", source),
        }
    }
}

/// Shared cache of an infinite language's shortlex prefix; chains and texts
/// extend it instead of re-deriving early words.
#[derive(Debug)]
pub struct ShortlexCache {
    language: Language,
    words: Mutex<Vec<Word>>,
}

impl ShortlexCache {
    pub fn new(language: Language) -> ShortlexCache {
        ShortlexCache { language, words: Mutex::new(Vec::new()) }
    }

    pub fn language(&self) -> &Language {
        &self.language
    }

    /// Word at 1-based shortlex position `k`, or `None` past the end of a
    /// finite language.
    pub fn word_at(&self, k: u64) -> Option<Word> {
        let mut words = self.words.lock().unwrap();
        while (words.len() as u64) < k {
            match self.language.nth_shortlex(words.len() as u64 + 1) {
                Some(w) => words.push(w),
                None => return None,
            }
        }
        Some(words[k as usize - 1].clone())
    }

    /// First `n` words; shorter when the language runs out.
    pub fn prefix(&self, n: u64) -> Vec<Word> {
        self.word_at(n);
        let words = self.words.lock().unwrap();
        words.iter().take(n as usize).cloned().collect()
    }
}
