//! The Dyck monoid: word reduction, heights and the periodic-point test.
//!
//! The monoid has generators `a_1..a_M, b_1..b_M` subject to
//! `a_i b_j = δ_ij` and an absorbing zero. Every nonzero element has the
//! normal form `b_{j1}…b_{jp} a_{i1}…a_{iq}`: unmatched right brackets
//! followed by unmatched left brackets.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Bracket, Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ReducedForm {
    Zero,
    /// `beta` holds the indices of unmatched right brackets (left to right),
    /// `alpha` the indices of unmatched left brackets (left to right).
    Normal { beta: Vec<u16>, alpha: Vec<u16> },
}

impl ReducedForm {
    pub fn identity() -> Self {
        ReducedForm::Normal { beta: Vec::new(), alpha: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedForm::Zero)
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, ReducedForm::Normal { beta, alpha } if beta.is_empty() && alpha.is_empty())
    }

    /// The normal form written back out as a word, `None` for zero.
    pub fn to_word(&self) -> Option<Word> {
        match self {
            ReducedForm::Zero => None,
            ReducedForm::Normal { beta, alpha } => Some(
                beta.iter()
                    .map(|&k| Symbol::right(k))
                    .chain(alpha.iter().map(|&k| Symbol::left(k)))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_word() {
            None => f.write_str("0"),
            Some(w) if w.is_empty() => f.write_str("1"),
            Some(w) => write!(f, "{w}"),
        }
    }
}

/// Incremental left-to-right reducer.
///
/// Left brackets are pushed on a stack; a right bracket pops and must match,
/// or is appended to the unmatched-right list when the stack is empty.
/// `push`/`pop` make it usable as the state of a depth-first search.
#[derive(Debug, Clone, Default)]
pub struct Reducer {
    beta: Vec<u16>,
    stack: Vec<u16>,
    log: Vec<Undo>,
    zero_at: Option<usize>,
}

#[derive(Debug, Clone, Copy)]
enum Undo {
    Pushed,
    Popped(u16),
    Unmatched,
    Dead,
}

impl Reducer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.log.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.zero_at.is_some()
    }

    /// Unmatched right-bracket indices so far.
    pub fn beta(&self) -> &[u16] {
        &self.beta
    }

    /// Unmatched left-bracket indices so far, bottom of stack first.
    pub fn alpha(&self) -> &[u16] {
        &self.stack
    }

    /// Append a symbol; returns `false` once the product has become zero.
    pub fn push(&mut self, s: Symbol) -> bool {
        if self.zero_at.is_some() {
            self.log.push(Undo::Dead);
            return false;
        }
        let entry = match s.kind {
            Bracket::Left => {
                self.stack.push(s.index);
                Undo::Pushed
            }
            Bracket::Right => match self.stack.pop() {
                Some(top) if top == s.index => Undo::Popped(top),
                Some(top) => {
                    self.stack.push(top);
                    self.zero_at = Some(self.log.len());
                    Undo::Dead
                }
                None => {
                    self.beta.push(s.index);
                    Undo::Unmatched
                }
            },
        };
        self.log.push(entry);
        self.zero_at.is_none()
    }

    /// Remove the most recently pushed symbol.
    pub fn pop(&mut self) {
        let Some(entry) = self.log.pop() else { return };
        match entry {
            Undo::Pushed => {
                self.stack.pop();
            }
            Undo::Popped(k) => self.stack.push(k),
            Undo::Unmatched => {
                self.beta.pop();
            }
            Undo::Dead => {
                if self.zero_at == Some(self.log.len()) {
                    self.zero_at = None;
                }
            }
        }
    }

    pub fn form(&self) -> ReducedForm {
        if self.is_zero() {
            ReducedForm::Zero
        } else {
            ReducedForm::Normal { beta: self.beta.clone(), alpha: self.stack.clone() }
        }
    }

    /// Class of the periodic point `w^∞` for the word pushed so far, or
    /// `None` when `w^∞` is not in the Dyck shift.
    pub fn periodic_class(&self) -> Option<PeriodClass> {
        if self.is_zero() {
            return None;
        }
        junction_class(&self.beta, &self.stack)
    }
}

/// Monoid product of the symbols of `w`.
pub fn reduce(w: &[Symbol]) -> ReducedForm {
    let mut r = Reducer::new();
    for &s in w {
        if !r.push(s) {
            return ReducedForm::Zero;
        }
    }
    r.form()
}

/// Number of left brackets minus number of right brackets.
pub fn h_value(w: &[Symbol]) -> i64 {
    w.iter().map(Symbol::height_step).sum()
}

/// Sign class of a periodic point, by the height gained over one period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PeriodClass {
    Alpha,
    Beta,
    Zero,
}

impl PeriodClass {
    pub const ALL: [PeriodClass; 3] = [PeriodClass::Alpha, PeriodClass::Beta, PeriodClass::Zero];

    pub fn from_height(h: i64) -> Self {
        match h.signum() {
            1 => PeriodClass::Alpha,
            -1 => PeriodClass::Beta,
            _ => PeriodClass::Zero,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            PeriodClass::Alpha => "alpha",
            PeriodClass::Beta => "beta",
            PeriodClass::Zero => "zero",
        }
    }
}

impl fmt::Display for PeriodClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for PeriodClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" | "a" => Ok(PeriodClass::Alpha),
            "beta" | "b" => Ok(PeriodClass::Beta),
            "zero" | "0" => Ok(PeriodClass::Zero),
            other => Err(Error::InvalidArgument(format!("unknown class {other:?}"))),
        }
    }
}

// For w = B·A in normal form, w^∞ = …B A B A…; every new cancellation happens
// at an A·B junction, and a single junction check covers all of them since
// the residue after one junction is one-sided.
fn junction_class(beta: &[u16], alpha: &[u16]) -> Option<PeriodClass> {
    let matched = alpha.iter().rev().zip(beta.iter()).all(|(a, b)| a == b);
    matched.then(|| PeriodClass::from_height(alpha.len() as i64 - beta.len() as i64))
}

/// Class of the periodic point `w^∞`, or `None` if `w^∞` is not in the Dyck
/// shift. Runs in linear time.
pub fn periodic_class(w: &[Symbol]) -> Result<Option<PeriodClass>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(match reduce(w) {
        ReducedForm::Zero => None,
        ReducedForm::Normal { beta, alpha } => junction_class(&beta, &alpha),
    })
}

/// Whether `w^∞` belongs to the Dyck shift, i.e. `w ∈ Per_{|w|}(σ)`.
pub fn is_periodic_point(w: &[Symbol]) -> Result<bool> {
    periodic_class(w).map(|c| c.is_some())
}

/// The shift-invariant set (`A_α`, `A_β` or `A_0`) containing `w^∞`.
///
/// Only periodic sequences are classified: along `w^∞` the heights drift
/// with slope `H_n / n`, so membership reduces to the sign of `H_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HeightDriftSet {
    /// Heights tend to `+∞` in the future and `-∞` in the past.
    AAlpha,
    /// Heights tend to `-∞` in the future and `+∞` in the past.
    ABeta,
    /// Heights return to every level infinitely often.
    AZero,
}

pub fn classify_a_set(w: &[Symbol]) -> Result<HeightDriftSet> {
    match periodic_class(w)? {
        None => Err(Error::NotPeriodicPoint(Word::from(w).to_string())),
        Some(PeriodClass::Alpha) => Ok(HeightDriftSet::AAlpha),
        Some(PeriodClass::Beta) => Ok(HeightDriftSet::ABeta),
        Some(PeriodClass::Zero) => Ok(HeightDriftSet::AZero),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    fn normal(beta: &[u16], alpha: &[u16]) -> ReducedForm {
        ReducedForm::Normal { beta: beta.to_vec(), alpha: alpha.to_vec() }
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&word!["a1", "b1"]), ReducedForm::identity());
        assert_eq!(reduce(&word!["a1", "b2"]), ReducedForm::Zero);
        assert_eq!(reduce(&word!["b2", "a1", "a1", "b1"]), normal(&[2], &[1]));
        assert_eq!(reduce(&word![]), ReducedForm::identity());
        assert_eq!(reduce(&word!["b1", "b2", "a2", "a1"]), normal(&[1, 2], &[2, 1]));
    }

    #[test]
    fn h_value_examples() {
        assert_eq!(h_value(&word!["a1", "a2", "b1"]), 1);
        assert_eq!(h_value(&word![]), 0);
        assert_eq!(h_value(&word!["b1", "b2", "a1"]), -1);
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(periodic_class(&word!["a1"]).unwrap(), Some(PeriodClass::Alpha));
        assert_eq!(periodic_class(&word!["a1", "b1"]).unwrap(), Some(PeriodClass::Zero));
        assert_eq!(periodic_class(&word!["a1", "b1", "b2"]).unwrap(), Some(PeriodClass::Beta));
        // b1 a2 reduces fine but the junction a2·b1 mismatches.
        assert_eq!(periodic_class(&word!["b1", "a2"]).unwrap(), None);
        assert_eq!(periodic_class(&word!["a1", "b2"]).unwrap(), None);
        assert_eq!(periodic_class(&word![]), Err(Error::EmptyWord));
    }

    #[test]
    fn a_set_examples() {
        assert_eq!(classify_a_set(&word!["a1", "a2"]).unwrap(), HeightDriftSet::AAlpha);
        assert_eq!(classify_a_set(&word!["b1", "b1"]).unwrap(), HeightDriftSet::ABeta);
        assert_eq!(classify_a_set(&word!["a2", "b2"]).unwrap(), HeightDriftSet::AZero);
        assert!(matches!(classify_a_set(&word!["a2", "b1"]), Err(Error::NotPeriodicPoint(_))));
    }

    #[test]
    fn reducer_undo_restores_state() {
        let w = word!["b2", "a1", "a2", "b1", "b2", "a1"];
        let mut r = Reducer::new();
        let mut snapshots = vec![r.form()];
        for &s in w.iter() {
            r.push(s);
            snapshots.push(r.form());
        }
        // a2 then b1 kills the product at position 3
        assert!(r.is_zero());
        for i in (0..w.len()).rev() {
            r.pop();
            assert_eq!(r.form(), snapshots[i], "after popping to length {i}");
        }
        assert!(r.is_empty());
    }

    #[test]
    fn height_matches_normal_form() {
        let w = word!["b1", "b2", "a1", "b1", "a2", "a2"];
        let ReducedForm::Normal { beta, alpha } = reduce(&w) else { panic!("nonzero") };
        assert_eq!(h_value(&w), alpha.len() as i64 - beta.len() as i64);
    }
}
