//! Complete deterministic finite automata over symbol indices.
//!
//! Every language-level decision procedure in this crate reduces to a handful
//! of automaton primitives: product construction, reachability, cycle
//! detection on the useful subgraph (states both reachable and able to reach
//! an accepting state), and per-length word counting. The counting tables
//! double as a shortlex unranking scheme, so enumeration never materializes
//! words it does not return.
//!
//! Invariant: the transition table is total. Word counts saturate at
//! `u128::MAX`, far beyond anything a desk-scale experiment can index.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DfaError {
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("start state {0} out of range")]
    BadStart(usize),
    #[error("transition table is not total")]
    IncompleteDelta,
    #[error("transition target {0} out of range")]
    BadTarget(usize),
}

/// Number of words in a language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl Cardinality {
    pub fn is_finite(&self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }
}

impl std::fmt::Display for Cardinality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// Complete DFA. `delta` is row-major: `delta[state * n_symbols + symbol]`.
#[derive(Debug, Clone)]
pub struct Dfa {
    n_symbols: usize,
    n_states: usize,
    start: usize,
    accepting: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    pub fn new(
        n_symbols: usize,
        start: usize,
        accepting: Vec<bool>,
        delta: Vec<usize>,
    ) -> Result<Dfa, DfaError> {
        let n_states = accepting.len();
        if n_states == 0 {
            return Err(DfaError::NoStates);
        }
        if start >= n_states {
            return Err(DfaError::BadStart(start));
        }
        if delta.len() != n_states * n_symbols {
            return Err(DfaError::IncompleteDelta);
        }
        if let Some(&t) = delta.iter().find(|&&t| t >= n_states) {
            return Err(DfaError::BadTarget(t));
        }
        Ok(Dfa { n_symbols, n_states, start, accepting, delta })
    }

    /// Trie acceptor for an explicit word set, completed with a dead sink.
    pub fn from_words<'a, I>(n_symbols: usize, words: I) -> Dfa
    where
        I: IntoIterator<Item = &'a [u8]>,
    {
        // children[state][symbol] = Some(target); state 0 is the root.
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; n_symbols]];
        let mut accepting = vec![false];
        for word in words {
            let mut state = 0usize;
            for &sym in word {
                let sym = sym as usize;
                state = match children[state][sym] {
                    Some(next) => next,
                    None => {
                        let next = children.len();
                        children.push(vec![None; n_symbols]);
                        accepting.push(false);
                        children[state][sym] = Some(next);
                        next
                    }
                };
            }
            accepting[state] = true;
        }
        let dead = children.len();
        accepting.push(false);
        let n_states = children.len() + 1;
        let mut delta = vec![dead; n_states * n_symbols];
        for (s, row) in children.iter().enumerate() {
            for (sym, target) in row.iter().enumerate() {
                if let Some(t) = target {
                    delta[s * n_symbols + sym] = *t;
                }
            }
        }
        Dfa { n_symbols, n_states, start: 0, accepting, delta }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_symbols(&self) -> usize {
        self.n_symbols
    }

    pub fn step(&self, state: usize, symbol: u8) -> usize {
        self.delta[state * self.n_symbols + symbol as usize]
    }

    pub fn accepts(&self, word: &[u8]) -> bool {
        let mut state = self.start;
        for &sym in word {
            state = self.step(state, sym);
        }
        self.accepting[state]
    }

    pub fn accepts_empty_word(&self) -> bool {
        self.accepting[self.start]
    }

    /// Synchronous product; `combine` decides acceptance from the two
    /// component verdicts. Only pairs reachable from the joint start are
    /// materialized.
    pub fn product(&self, other: &Dfa, combine: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(self.n_symbols, other.n_symbols, "product needs a common alphabet");
        let m = self.n_symbols;
        let mut index = std::collections::HashMap::new();
        let mut pairs = vec![(self.start, other.start)];
        index.insert((self.start, other.start), 0usize);
        let mut delta = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (a, b) = pairs[head];
            head += 1;
            for sym in 0..m {
                let next = (self.step(a, sym as u8), other.step(b, sym as u8));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                delta.push(id);
            }
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| combine(self.accepting[a], other.accepting[b]))
            .collect();
        Dfa { n_symbols: m, n_states: pairs.len(), start: 0, accepting, delta }
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n_states];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(s) = stack.pop() {
            for sym in 0..self.n_symbols {
                let t = self.step(s, sym as u8);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    fn co_accessible(&self) -> Vec<bool> {
        // Reverse reachability from accepting states.
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.n_states];
        for s in 0..self.n_states {
            for sym in 0..self.n_symbols {
                rev[self.step(s, sym as u8)].push(s);
            }
        }
        let mut seen = vec![false; self.n_states];
        let mut stack: Vec<usize> =
            (0..self.n_states).filter(|&s| self.accepting[s]).collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// Does the automaton accept no word of length >= 1?
    pub fn accepts_no_nonempty_word(&self) -> bool {
        let mut seen = vec![false; self.n_states];
        let mut stack = Vec::new();
        for sym in 0..self.n_symbols {
            let t = self.step(self.start, sym as u8);
            if !seen[t] {
                seen[t] = true;
                stack.push(t);
            }
        }
        while let Some(s) = stack.pop() {
            if self.accepting[s] {
                return false;
            }
            for sym in 0..self.n_symbols {
                let t = self.step(s, sym as u8);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        true
    }

    /// Number of accepted words of length >= 1.
    pub fn count_nonempty_words(&self) -> Cardinality {
        let reach = self.reachable();
        let co = self.co_accessible();
        let useful: Vec<bool> =
            (0..self.n_states).map(|s| reach[s] && co[s]).collect();
        if !useful[self.start] {
            // Start cannot reach acceptance at all.
            return Cardinality::Finite(0);
        }

        // Cycle detection restricted to useful states: any cycle pumps
        // infinitely many distinct accepted words.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let mut color = vec![Color::White; self.n_states];
        let mut order = Vec::new(); // reverse topological order of useful states
        for root in 0..self.n_states {
            if !useful[root] || color[root] != Color::White {
                continue;
            }
            // Iterative DFS; (state, next symbol to try).
            let mut stack = vec![(root, 0usize)];
            color[root] = Color::Grey;
            while !stack.is_empty() {
                let (s, sym) = {
                    let top = stack.last_mut().unwrap();
                    let snapshot = *top;
                    if snapshot.1 < self.n_symbols {
                        top.1 += 1;
                    }
                    snapshot
                };
                if sym == self.n_symbols {
                    color[s] = Color::Black;
                    order.push(s);
                    stack.pop();
                    continue;
                }
                let t = self.step(s, sym as u8);
                if !useful[t] {
                    continue;
                }
                match color[t] {
                    Color::Grey => return Cardinality::Infinite,
                    Color::White => {
                        color[t] = Color::Grey;
                        stack.push((t, 0));
                    }
                    Color::Black => {}
                }
            }
        }

        // Acyclic: count paths. counts[s] = accepted words from s, empty word
        // included when s itself accepts.
        let mut counts = vec![0u128; self.n_states];
        for &s in &order {
            let mut c: u128 = if self.accepting[s] { 1 } else { 0 };
            for sym in 0..self.n_symbols {
                let t = self.step(s, sym as u8);
                if useful[t] {
                    c = c.saturating_add(counts[t]);
                }
            }
            counts[s] = c;
        }
        let mut total = counts[self.start];
        if self.accepting[self.start] {
            total -= 1;
        }
        Cardinality::Finite(u64::try_from(total).unwrap_or(u64::MAX))
    }

    /// Per-length acceptance counts: row `l` holds, for every state, the
    /// number of words of length exactly `l` accepted from that state.
    /// Rows stay correct under saturation only as long as true counts fit in
    /// u128, which desk-scale inputs never exceed.
    fn grow_count_rows(&self, rows: &mut Vec<Vec<u128>>, upto: usize) {
        if rows.is_empty() {
            rows.push(self.accepting.iter().map(|&a| a as u128).collect());
        }
        while rows.len() <= upto {
            let prev = rows.last().unwrap();
            let mut row = vec![0u128; self.n_states];
            for s in 0..self.n_states {
                let mut c = 0u128;
                for sym in 0..self.n_symbols {
                    c = c.saturating_add(prev[self.step(s, sym as u8)]);
                }
                row[s] = c;
            }
            rows.push(row);
        }
    }

    /// The k-th accepted word (1-based) in shortlex order, or `None` when the
    /// language has fewer than k words. The empty word is never counted.
    pub fn nth_shortlex(&self, k: u64) -> Option<Vec<u8>> {
        if k == 0 {
            return None;
        }
        let mut rows: Vec<Vec<u128>> = Vec::new();
        let mut remaining = k as u128;
        let mut len = 0usize;
        loop {
            len += 1;
            self.grow_count_rows(&mut rows, len);
            let here = rows[len][self.start];
            if remaining <= here {
                break;
            }
            remaining -= here;
            if rows[len].iter().all(|&c| c == 0) {
                return None; // no longer words exist
            }
        }
        // Unrank within length `len`.
        let mut word = Vec::with_capacity(len);
        let mut state = self.start;
        for pos in 0..len {
            let tail = len - pos - 1;
            for sym in 0..self.n_symbols {
                let t = self.step(state, sym as u8);
                let c = rows[tail][t];
                if remaining <= c {
                    word.push(sym as u8);
                    state = t;
                    break;
                }
                remaining -= c;
            }
        }
        debug_assert_eq!(word.len(), len);
        Some(word)
    }

    /// First `count` accepted words in shortlex order, stopping early at
    /// `max_len` or when the language is exhausted.
    pub fn enumerate_words(&self, count: usize, max_len: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::with_capacity(count.min(1024));
        if count == 0 {
            return out;
        }
        let mut rows: Vec<Vec<u128>> = Vec::new();
        for len in 1..=max_len {
            self.grow_count_rows(&mut rows, len);
            if rows[len].iter().all(|&c| c == 0) {
                break;
            }
            if rows[len][self.start] == 0 {
                continue;
            }
            // DFS over symbols in order, pruning prefixes with no completion.
            let mut word: Vec<u8> = Vec::with_capacity(len);
            let mut states = vec![self.start];
            let mut sym_at = vec![0usize];
            while let Some(&sym) = sym_at.last() {
                let depth = word.len();
                if depth == len {
                    out.push(word.clone());
                    if out.len() == count {
                        return out;
                    }
                    word.pop();
                    states.pop();
                    sym_at.pop();
                    if let Some(s) = sym_at.last_mut() {
                        *s += 1;
                    }
                    continue;
                }
                if sym >= self.n_symbols {
                    if depth == 0 {
                        break;
                    }
                    word.pop();
                    states.pop();
                    sym_at.pop();
                    if let Some(s) = sym_at.last_mut() {
                        *s += 1;
                    }
                    continue;
                }
                let state = *states.last().unwrap();
                let t = self.step(state, sym as u8);
                if rows[len - depth - 1][t] > 0 {
                    word.push(sym as u8);
                    states.push(t);
                    sym_at.push(0);
                } else {
                    *sym_at.last_mut().unwrap() += 1;
                }
            }
        }
        out
    }
}
