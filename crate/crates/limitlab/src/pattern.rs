//! Restricted pattern notation compiled to automata.
//!
//! Supported: literal symbols, concatenation, alternation `|`, grouping
//! `()`, Kleene star `*`, and plus `+`. Nothing else; in particular no
//! character classes, anchors, or escapes. Literals must belong to the
//! alphabet the pattern is compiled against.
//!
//! Compilation goes literal AST -> epsilon-NFA -> subset-construction DFA.
//! The DFA is complete by construction (the empty subset is the dead state)
//! and its state numbering is deterministic: subsets are discovered in BFS
//! order with symbols tried in alphabet order.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::alphabet::Alphabet;
use crate::dfa::Dfa;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("pattern is empty")]
    Empty,
    #[error("pattern symbol {0:?} at position {1} is not in the alphabet")]
    UnknownSymbol(char, usize),
    #[error("unbalanced parenthesis at position {0}")]
    UnbalancedParen(usize),
    #[error("quantifier at position {0} has nothing to repeat")]
    DanglingQuantifier(usize),
    #[error("empty alternation branch at position {0}")]
    EmptyBranch(usize),
    #[error("pattern expands to too many automaton states")]
    TooComplex,
}

enum Ast {
    Lit(u8),
    Cat(Vec<Ast>),
    Alt(Vec<Ast>),
    Star(Box<Ast>),
    Plus(Box<Ast>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alternation(&mut self) -> Result<Ast, PatternError> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 { branches.pop().unwrap() } else { Ast::Alt(branches) })
    }

    fn concat(&mut self) -> Result<Ast, PatternError> {
        let mut parts = Vec::new();
        loop {
            match self.peek() {
                None | Some('|') | Some(')') => break,
                Some('*') | Some('+') if parts.is_empty() => {
                    return Err(PatternError::DanglingQuantifier(self.pos));
                }
                _ => parts.push(self.repeat()?),
            }
        }
        if parts.is_empty() {
            return Err(PatternError::EmptyBranch(self.pos));
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Ast::Cat(parts) })
    }

    fn repeat(&mut self) -> Result<Ast, PatternError> {
        let mut node = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    node = Ast::Star(Box::new(node));
                }
                Some('+') => {
                    self.pos += 1;
                    node = Ast::Plus(Box::new(node));
                }
                _ => return Ok(node),
            }
        }
    }

    fn atom(&mut self) -> Result<Ast, PatternError> {
        match self.peek() {
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.alternation()?;
                if self.peek() != Some(')') {
                    return Err(PatternError::UnbalancedParen(open));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(')') => Err(PatternError::UnbalancedParen(self.pos)),
            Some(c) => match self.alphabet.index_of(c) {
                Some(idx) => {
                    self.pos += 1;
                    Ok(Ast::Lit(idx))
                }
                None => Err(PatternError::UnknownSymbol(c, self.pos)),
            },
            None => Err(PatternError::EmptyBranch(self.pos)),
        }
    }
}

#[derive(Default)]
struct NfaState {
    eps: Vec<usize>,
    trans: Vec<(u8, usize)>,
}

struct Nfa {
    states: Vec<NfaState>,
}

impl Nfa {
    fn push(&mut self) -> usize {
        self.states.push(NfaState::default());
        self.states.len() - 1
    }

    /// Returns (entry, exit); exit has no outgoing edges of its own yet.
    fn build(&mut self, ast: &Ast) -> (usize, usize) {
        match ast {
            Ast::Lit(sym) => {
                let s = self.push();
                let e = self.push();
                self.states[s].trans.push((*sym, e));
                (s, e)
            }
            Ast::Cat(parts) => {
                let (start, mut end) = self.build(&parts[0]);
                for p in &parts[1..] {
                    let (s, e) = self.build(p);
                    self.states[end].eps.push(s);
                    end = e;
                }
                (start, end)
            }
            Ast::Alt(branches) => {
                let s = self.push();
                let e = self.push();
                for b in branches {
                    let (bs, be) = self.build(b);
                    self.states[s].eps.push(bs);
                    self.states[be].eps.push(e);
                }
                (s, e)
            }
            Ast::Star(inner) => {
                let (is, ie) = self.build(inner);
                let s = self.push();
                let e = self.push();
                self.states[s].eps.push(is);
                self.states[s].eps.push(e);
                self.states[ie].eps.push(is);
                self.states[ie].eps.push(e);
                (s, e)
            }
            Ast::Plus(inner) => {
                let (is, ie) = self.build(inner);
                let s = self.push();
                let e = self.push();
                self.states[s].eps.push(is);
                self.states[ie].eps.push(is);
                self.states[ie].eps.push(e);
                (s, e)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.states[s].eps {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
}

const MAX_DFA_STATES: usize = 4096;

/// Compiles a pattern over the given alphabet into a complete DFA.
pub fn compile(pattern: &str, alphabet: &Alphabet) -> Result<Dfa, PatternError> {
    if pattern.is_empty() {
        return Err(PatternError::Empty);
    }
    let mut parser = Parser { chars: pattern.chars().collect(), pos: 0, alphabet };
    let ast = parser.alternation()?;
    if parser.pos != parser.chars.len() {
        // Only a stray ')' can stop the parser early.
        return Err(PatternError::UnbalancedParen(parser.pos));
    }

    let mut nfa = Nfa { states: Vec::new() };
    let (start, accept) = nfa.build(&ast);

    let m = alphabet.len();
    let mut initial = BTreeSet::from([start]);
    nfa.closure(&mut initial);

    let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut subsets = vec![initial.clone()];
    index.insert(initial, 0);
    let mut queue = VecDeque::from([0usize]);
    let mut delta = Vec::new();
    while let Some(id) = queue.pop_front() {
        let subset = subsets[id].clone();
        for sym in 0..m {
            let mut next = BTreeSet::new();
            for &s in &subset {
                for &(t_sym, t) in &nfa.states[s].trans {
                    if t_sym as usize == sym {
                        next.insert(t);
                    }
                }
            }
            nfa.closure(&mut next);
            let next_id = match index.get(&next) {
                Some(&i) => i,
                None => {
                    let i = subsets.len();
                    if i >= MAX_DFA_STATES {
                        return Err(PatternError::TooComplex);
                    }
                    subsets.push(next.clone());
                    index.insert(next, i);
                    queue.push_back(i);
                    i
                }
            };
            delta.push(next_id);
        }
    }
    let accepting: Vec<bool> = subsets.iter().map(|s| s.contains(&accept)).collect();
    Ok(Dfa::new(m, 0, accepting, delta).expect("subset construction emits a valid table"))
}
