//! Bracket alphabet, symbols and finite words.
//!
//! Symbols are written as text tokens `a1..aM` (left brackets) and `b1..bM`
//! (right brackets); a word is a comma-separated token list such as
//! `a1,b2,a2`. The derived ordering `a1 < … < aM < b1 < … < bM` is the
//! canonical order used for enumeration.

use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bracket alphabet with `M` pairs.
///
/// The theory is stated for `M >= 2`. `M = 1` is accepted so that small
/// cases can be tested, but several results (two distinct measures of
/// maximal entropy, for instance) degenerate there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    pairs: usize,
}

impl Alphabet {
    pub fn new(pairs: usize) -> Result<Self> {
        if pairs == 0 || pairs > u16::MAX as usize {
            return Err(Error::InvalidAlphabet(pairs));
        }
        Ok(Alphabet { pairs })
    }

    /// Number of bracket pairs `M`.
    pub fn pairs(&self) -> usize {
        self.pairs
    }

    /// Number of symbols, `2M`.
    pub fn size(&self) -> usize {
        2 * self.pairs
    }

    /// All `2M` symbols in canonical order.
    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.size()).map(move |c| self.symbol_from_code(c))
    }

    /// Dense code of a symbol: `a_k -> k-1`, `b_k -> M+k-1`.
    pub fn code(&self, s: Symbol) -> usize {
        match s.kind {
            Bracket::Left => s.index as usize - 1,
            Bracket::Right => self.pairs + s.index as usize - 1,
        }
    }

    pub fn symbol_from_code(&self, code: usize) -> Symbol {
        debug_assert!(code < self.size());
        if code < self.pairs {
            Symbol::left(code as u16 + 1)
        } else {
            Symbol::right((code - self.pairs) as u16 + 1)
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        s.index >= 1 && (s.index as usize) <= self.pairs
    }

    pub fn parse_symbol(&self, token: &str) -> Result<Symbol> {
        let s: Symbol = token.parse()?;
        if !self.contains(s) {
            return Err(Error::InvalidSymbol {
                token: token.to_string(),
                reason: format!("index outside 1..={}", self.pairs),
            });
        }
        Ok(s)
    }

    /// Parse a comma-separated word; the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        text.split(',')
            .map(|t| self.parse_symbol(t.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    /// Index all words of length `len` in canonical lexicographic order.
    pub fn word_from_rank(&self, mut rank: u64, len: usize) -> Word {
        let base = self.size() as u64;
        let mut codes = vec![0usize; len];
        for slot in codes.iter_mut().rev() {
            *slot = (rank % base) as usize;
            rank /= base;
        }
        codes.into_iter().map(|c| self.symbol_from_code(c)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bracket {
    /// `α` symbols.
    Left,
    /// `β` symbols.
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: Bracket,
    /// 1-based pair index.
    pub index: u16,
}

impl Symbol {
    pub const fn left(index: u16) -> Self {
        Symbol { kind: Bracket::Left, index }
    }

    pub const fn right(index: u16) -> Self {
        Symbol { kind: Bracket::Right, index }
    }

    pub fn is_left(&self) -> bool {
        self.kind == Bracket::Left
    }

    pub fn is_right(&self) -> bool {
        self.kind == Bracket::Right
    }

    /// Swap the bracket orientation, keeping the index.
    pub fn mirror(self) -> Self {
        match self.kind {
            Bracket::Left => Symbol::right(self.index),
            Bracket::Right => Symbol::left(self.index),
        }
    }

    /// `+1` for a left bracket, `-1` for a right bracket.
    pub fn height_step(&self) -> i64 {
        match self.kind {
            Bracket::Left => 1,
            Bracket::Right => -1,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Bracket::Left => write!(f, "a{}", self.index),
            Bracket::Right => write!(f, "b{}", self.index),
        }
    }
}

impl std::str::FromStr for Symbol {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidSymbol {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = token.chars();
        let kind = match chars.next() {
            Some('a') => Bracket::Left,
            Some('b') => Bracket::Right,
            _ => return Err(bad("expected a<k> or b<k>")),
        };
        let index: u16 = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a positive integer index"))?;
        if index == 0 {
            return Err(bad("indices start at 1"));
        }
        Ok(Symbol { kind, index })
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite word over the bracket alphabet. The empty word is the monoid
/// identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Cyclic rotation by `k` positions to the left (the shift on `w^∞`).
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    /// Reverse the word and swap `a_k <-> b_k`.
    ///
    /// This is the involution exchanging the `α` and `β` periodic classes.
    pub fn reverse_mirror(&self) -> Word {
        self.0.iter().rev().map(|s| s.mirror()).collect()
    }

    pub fn count_left(&self) -> usize {
        self.0.iter().filter(|s| s.is_left()).count()
    }

    pub fn count_right(&self) -> usize {
        self.0.iter().filter(|s| s.is_right()).count()
    }

    /// Largest pair index used, or 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|s| s.index as usize).max().unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parse a word without an alphabet bound (any positive index).
impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty());
        }
        text.split(',').map(|t| t.trim().parse()).collect()
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building words in tests and examples: `word!["a1", "b2"]`.
#[macro_export]
macro_rules! word {
    () => { $crate::Word::empty() };
    ($($tok:expr),+ $(,)?) => {
        $crate::Word::from(vec![$($tok.parse::<$crate::Symbol>().expect("valid symbol token")),+])
    };
}
