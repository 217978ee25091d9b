//! Krieger's embeddings of the two `(M+1)`-symbol full shifts into the Dyck
//! shift, and exact cylinder masses of the two ergodic measures of maximal
//! entropy `ν_α`, `ν_β`.
//!
//! On the `α` side every right bracket collapses to one wildcard letter; the
//! decoration map restores its index from the matching left bracket (found
//! looking back). The `β` side is the mirror image: left brackets collapse
//! and are re-indexed from the matching right bracket (looking ahead).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dyck::{reduce, ReducedForm};
use crate::error::{Error, Result};
use crate::rational::{format_rational, serde_string};
use crate::word::{Alphabet, Bracket, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Alpha,
    Beta,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Alpha => "alpha",
            Side::Beta => "beta",
        }
    }

    /// The bracket kind kept verbatim by the collapse on this side.
    fn kept(&self) -> Bracket {
        match self {
            Side::Alpha => Bracket::Left,
            Side::Beta => Bracket::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" | "a" => Ok(Side::Alpha),
            "beta" | "b" => Ok(Side::Beta),
            other => Err(Error::InvalidArgument(format!("unknown side {other:?}"))),
        }
    }
}

/// A letter of the collapsed alphabet: a kept bracket, or the wildcard
/// standing for any bracket of the other orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CollapsedSymbol {
    Kept(Symbol),
    Wildcard,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CollapsedWord {
    side: Side,
    symbols: Vec<CollapsedSymbol>,
}

impl CollapsedWord {
    pub fn new(side: Side, symbols: Vec<CollapsedSymbol>) -> Result<Self> {
        for s in &symbols {
            if let CollapsedSymbol::Kept(sym) = s {
                if sym.kind != side.kept() {
                    return Err(Error::InvalidArgument(format!(
                        "symbol {sym} does not belong to the {side} collapsed alphabet"
                    )));
                }
            }
        }
        Ok(CollapsedWord { side, symbols })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn symbols(&self) -> &[CollapsedSymbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn rotate(&self, k: usize) -> CollapsedWord {
        let mut symbols = self.symbols.clone();
        if !symbols.is_empty() {
            let k = k % symbols.len();
            symbols.rotate_left(k);
        }
        CollapsedWord { side: self.side, symbols }
    }

    /// Height gained over one period: `+1` per kept bracket and `-1` per
    /// wildcard. Decoration requires this to be positive.
    pub fn drift(&self) -> i64 {
        self.symbols
            .iter()
            .map(|s| match s {
                CollapsedSymbol::Kept(_) => 1,
                CollapsedSymbol::Wildcard => -1,
            })
            .sum()
    }

    /// Parse tokens `a1..aM`, `B` (α side) or `b1..bM`, `A` (β side).
    pub fn parse(side: Side, alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(CollapsedWord { side, symbols: Vec::new() });
        }
        let wildcard = wildcard_token(side);
        let symbols = text
            .split(',')
            .map(|t| {
                let t = t.trim();
                if t == wildcard {
                    Ok(CollapsedSymbol::Wildcard)
                } else {
                    alphabet.parse_symbol(t).map(CollapsedSymbol::Kept)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        CollapsedWord::new(side, symbols)
    }
}

fn wildcard_token(side: Side) -> &'static str {
    match side {
        Side::Alpha => "B",
        Side::Beta => "A",
    }
}

impl fmt::Display for CollapsedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match s {
                CollapsedSymbol::Kept(sym) => write!(f, "{sym}")?,
                CollapsedSymbol::Wildcard => f.write_str(wildcard_token(self.side))?,
            }
        }
        Ok(())
    }
}

/// Replace every bracket of the non-kept orientation by the wildcard.
pub fn collapse(side: Side, w: &[Symbol]) -> CollapsedWord {
    let symbols = w
        .iter()
        .map(|&s| if s.kind == side.kept() { CollapsedSymbol::Kept(s) } else { CollapsedSymbol::Wildcard })
        .collect();
    CollapsedWord { side, symbols }
}

/// Invert [`collapse`] on the periodic sequence `z^∞`.
///
/// Every wildcard receives the index of its matching bracket in the periodic
/// extension: on the `α` side the nearest unmatched left bracket looking
/// back, on the `β` side the nearest unmatched right bracket looking ahead.
pub fn decorate_periodic(z: &CollapsedWord) -> Result<Word> {
    let n = z.len();
    if n == 0 {
        return Ok(Word::empty());
    }
    let drift = z.drift();
    if drift <= 0 {
        return Err(Error::NoDrift(z.side.to_string()));
    }
    let bound = (n.div_ceil(drift as usize) + 2) * n;
    let wildcard_kind = match z.side {
        Side::Alpha => Bracket::Right,
        Side::Beta => Bracket::Left,
    };

    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let sym = match z.symbols[i] {
            CollapsedSymbol::Kept(s) => s,
            CollapsedSymbol::Wildcard => {
                let k = find_partner(z, i, bound)?;
                Symbol { kind: wildcard_kind, index: k }
            }
        };
        out.push(sym);
    }
    Ok(Word::from(out))
}

fn find_partner(z: &CollapsedWord, i: usize, bound: usize) -> Result<u16> {
    let n = z.len();
    let mut depth = 0usize;
    for step in 1..=bound {
        let j = match z.side {
            Side::Alpha => (i + n * bound - step) % n,
            Side::Beta => (i + step) % n,
        };
        match z.symbols[j] {
            CollapsedSymbol::Wildcard => depth += 1,
            CollapsedSymbol::Kept(s) if depth == 0 => return Ok(s.index),
            CollapsedSymbol::Kept(_) => depth -= 1,
        }
    }
    Err(Error::MatchSearchExceeded { position: i, bound })
}

/// An exact probability.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactMeasureValue(#[serde(with = "serde_string")] pub BigRational);

impl ExactMeasureValue {
    pub fn zero() -> Self {
        ExactMeasureValue(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactMeasureValue(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactMeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

/// Mass of the cylinder `{ω : ω_0…ω_{m-1} = v}` under `ν_side`.
///
/// Zero if `v` reduces to zero. Otherwise `(M+1)^{-|v|} M^{-u}`, where `u`
/// counts the brackets of `v` whose partner lies outside the window and must
/// be supplied by the decoration: unmatched right brackets on the `α` side,
/// unmatched left brackets on the `β` side. Each costs a uniform choice among
/// `M` indices.
pub fn mme_cylinder(alphabet: &Alphabet, side: Side, v: &[Symbol]) -> ExactMeasureValue {
    let unmatched = match reduce(v) {
        ReducedForm::Zero => return ExactMeasureValue::zero(),
        ReducedForm::Normal { beta, alpha } => match side {
            Side::Alpha => beta.len(),
            Side::Beta => alpha.len(),
        },
    };
    let m = BigInt::from(alphabet.pairs());
    let denom = num_traits::pow(&m + 1, v.len()) * num_traits::pow(m, unmatched);
    ExactMeasureValue(BigRational::new(BigInt::one(), denom))
}

/// `(ν_α + ν_β)/2` on the cylinder of `v`.
pub fn mixture_cylinder(alphabet: &Alphabet, v: &[Symbol]) -> ExactMeasureValue {
    let a = mme_cylinder(alphabet, Side::Alpha, v).0;
    let b = mme_cylinder(alphabet, Side::Beta, v).0;
    ExactMeasureValue((a + b) / BigInt::from(2))
}

/// Block entropy `-(1/m) Σ_v ν[v] log ν[v]` over all length-`m` words.
pub fn block_entropy(alphabet: &Alphabet, side: Side, m: usize) -> f64 {
    let size = alphabet.size() as u64;
    let total: f64 = (0..size.pow(m as u32))
        .map(|r| {
            let v = alphabet.word_from_rank(r, m);
            let p = crate::rational::to_f64(mme_cylinder(alphabet, side, &v).value());
            if p > 0.0 {
                -p * p.ln()
            } else {
                0.0
            }
        })
        .sum();
    total / m as f64
}
