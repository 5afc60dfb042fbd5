//! Alphabets and words.
//!
//! A [`Word`] stores symbol indices into its [`Alphabet`], not characters.
//! Shortlex order (shorter first, then position-wise by symbol index) is the
//! canonical order everywhere in this crate, and it follows the order in
//! which the alphabet's symbols were declared, not Unicode order.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one symbol")]
    Empty,
    #[error("alphabet symbol {0:?} appears more than once")]
    DuplicateSymbol(char),
    #[error("alphabet holds at most 255 symbols")]
    TooLarge,
    #[error("word must contain at least one symbol")]
    EmptyWord,
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
}

/// Finite, non-empty, ordered set of symbols. Cheap to clone.
#[derive(Clone)]
pub struct Alphabet {
    inner: Arc<Vec<char>>,
}

impl Alphabet {
    /// Builds an alphabet from distinct symbols; their order here fixes the
    /// shortlex order for every word and language over this alphabet.
    pub fn new(symbols: &str) -> Result<Alphabet, AlphabetError> {
        let chars: Vec<char> = symbols.chars().collect();
        if chars.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if chars.len() > 255 {
            return Err(AlphabetError::TooLarge);
        }
        for (i, c) in chars.iter().enumerate() {
            if chars[..i].contains(c) {
                return Err(AlphabetError::DuplicateSymbol(*c));
            }
        }
        Ok(Alphabet { inner: Arc::new(chars) })
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[char] {
        &self.inner
    }

    pub fn symbol(&self, index: u8) -> char {
        self.inner[index as usize]
    }

    pub fn index_of(&self, symbol: char) -> Option<u8> {
        self.inner.iter().position(|&c| c == symbol).map(|i| i as u8)
    }

    /// Word from symbol indices. Indices must be in range.
    pub fn word_from_indices(&self, indices: Vec<u8>) -> Result<Word, AlphabetError> {
        if indices.is_empty() {
            return Err(AlphabetError::EmptyWord);
        }
        debug_assert!(indices.iter().all(|&i| (i as usize) < self.len()));
        Ok(Word { alphabet: self.clone(), indices: Arc::new(indices) })
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for Alphabet {}

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.hash(state);
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.inner.iter().collect::<String>())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.inner.iter().collect::<String>())
    }
}

/// Non-empty finite sequence of symbols over a fixed alphabet.
///
/// Ordered by shortlex. Two words over different alphabets never compare
/// equal; their relative order falls back to the alphabets' symbol lists so
/// that `Ord` stays total.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    indices: Arc<Vec<u8>>,
}

impl Word {
    /// Parses a word from its symbol spelling.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Word, AlphabetError> {
        if text.is_empty() {
            return Err(AlphabetError::EmptyWord);
        }
        let mut indices = Vec::with_capacity(text.len());
        for c in text.chars() {
            match alphabet.index_of(c) {
                Some(i) => indices.push(i),
                None => return Err(AlphabetError::UnknownSymbol(c)),
            }
        }
        Ok(Word { alphabet: alphabet.clone(), indices: Arc::new(indices) })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    pub fn as_string(&self) -> String {
        self.indices.iter().map(|&i| self.alphabet.symbol(i)).collect()
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.indices == other.indices
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.alphabet.hash(state);
        self.indices.hash(state);
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .symbols()
            .cmp(other.alphabet.symbols())
            .then(self.indices.len().cmp(&other.indices.len()))
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?})", self.as_string())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_string())
    }
}
