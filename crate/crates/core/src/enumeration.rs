//! Enumeration and counting of periodic points of the Dyck shift.
//!
//! Words of length `n` are generated by a depth-first search over prefixes in
//! canonical order (`a1 < … < aM < b1 < … < bM`). A prefix whose reduction
//! is zero is pruned, since zero is absorbing; the junction test for `w^∞`
//! runs at the leaves. Counts are exact big integers throughout.

use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyck::{PeriodClass, Reducer};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Which periodic class (or all of them) a query selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassFilter {
    Alpha,
    Beta,
    Zero,
    All,
}

impl ClassFilter {
    pub fn matches(&self, c: PeriodClass) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Alpha => c == PeriodClass::Alpha,
            ClassFilter::Beta => c == PeriodClass::Beta,
            ClassFilter::Zero => c == PeriodClass::Zero,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassFilter::Alpha => "alpha",
            ClassFilter::Beta => "beta",
            ClassFilter::Zero => "zero",
            ClassFilter::All => "all",
        }
    }
}

impl From<PeriodClass> for ClassFilter {
    fn from(c: PeriodClass) -> Self {
        match c {
            PeriodClass::Alpha => ClassFilter::Alpha,
            PeriodClass::Beta => ClassFilter::Beta,
            PeriodClass::Zero => ClassFilter::Zero,
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ClassFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(ClassFilter::All);
        }
        s.parse::<PeriodClass>().map(ClassFilter::from)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodicSetQuery {
    pub alphabet: Alphabet,
    pub n: usize,
    pub class: ClassFilter,
}

impl PeriodicSetQuery {
    pub fn new(pairs: usize, n: usize, class: impl Into<ClassFilter>) -> Result<Self> {
        if pairs < 2 {
            return Err(Error::InvalidAlphabet(pairs));
        }
        let alphabet = Alphabet::new(pairs)?;
        if n == 0 {
            return Err(Error::InvalidArgument("period n must be at least 1".into()));
        }
        Ok(PeriodicSetQuery { alphabet, n, class: class.into() })
    }
}

/// `(M+1)^n − Σ_{i=0}^{⌊n/2⌋} C(n,i) M^i`, the size of `Per_{α,n}` and of
/// `Per_{β,n}`.
pub fn count_signed_class(pairs: usize, n: usize) -> BigUint {
    let m = BigUint::from(pairs);
    let total = (&m + 1u32).pow(n as u32);
    let tail: BigUint = (0..=n / 2)
        .map(|i| binomial(BigUint::from(n), BigUint::from(i)) * m.pow(i as u32))
        .sum();
    total - tail
}

/// `C(n, n/2) M^{n/2}` for even `n`, zero for odd `n`: the size of `Per_{0,n}`.
pub fn count_zero_class(pairs: usize, n: usize) -> BigUint {
    if n % 2 == 1 {
        return BigUint::zero();
    }
    binomial(BigUint::from(n), BigUint::from(n / 2)) * BigUint::from(pairs).pow((n / 2) as u32)
}

pub fn count_closed_form(q: &PeriodicSetQuery) -> BigUint {
    let (m, n) = (q.alphabet.pairs(), q.n);
    match q.class {
        ClassFilter::Alpha | ClassFilter::Beta => count_signed_class(m, n),
        ClassFilter::Zero => count_zero_class(m, n),
        ClassFilter::All => count_signed_class(m, n) * 2u32 + count_zero_class(m, n),
    }
}

/// Exact number of nonzero prefixes of length `0..=n`, i.e. the number of
/// nodes the pruned search visits.
///
/// Tracks how many words reach each normal-form shape `(p, q)` (unmatched
/// rights, unmatched lefts); the indices contribute a factor `M` for every
/// free choice.
pub fn projected_visits(alphabet: Alphabet, n: usize) -> BigUint {
    let m = alphabet.pairs() as u32;
    // shapes[p][q]
    let mut shapes = vec![vec![BigUint::zero(); n + 1]; n + 1];
    shapes[0][0] = BigUint::one();
    let mut total = BigUint::one();
    for len in 0..n {
        let mut next = vec![vec![BigUint::zero(); n + 1]; n + 1];
        for p in 0..=len {
            for q in 0..=(len - p) {
                let c = &shapes[p][q];
                if c.is_zero() {
                    continue;
                }
                next[p][q + 1] += c * m;
                if q > 0 {
                    next[p][q - 1] += c;
                } else {
                    next[p + 1][0] += c * m;
                }
            }
        }
        shapes = next;
        total += shapes.iter().flatten().sum::<BigUint>();
    }
    total
}

/// Pruned depth-first enumeration of `Per_{class,n}(σ)`.
#[derive(Debug, Clone)]
pub struct Enumerator {
    query: PeriodicSetQuery,
    budget: u64,
}

impl Enumerator {
    pub fn new(query: PeriodicSetQuery) -> Self {
        Enumerator { query, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn query(&self) -> &PeriodicSetQuery {
        &self.query
    }

    pub fn check_budget(&self) -> Result<()> {
        let projected = projected_visits(self.query.alphabet, self.query.n);
        if projected > BigUint::from(self.budget) {
            return Err(Error::ResourceLimit { projected: projected.to_string(), budget: self.budget });
        }
        Ok(())
    }

    /// Streaming iterator over the selected words, in canonical order.
    pub fn iter(&self) -> Result<PeriodicWords> {
        self.check_budget()?;
        Ok(PeriodicWords::with_prefix(self.query, &[]))
    }

    /// Sequential visit of every selected word.
    pub fn for_each<F>(&self, mut f: F) -> Result<()>
    where
        F: FnMut(&[Symbol], PeriodClass),
    {
        self.check_budget()?;
        let mut dfs = Dfs::new(self.query);
        dfs.run(&[], &mut f);
        Ok(())
    }

    /// Fixed-depth prefixes splitting the search forest into independent
    /// shards, in canonical order. Prefixes that already reduce to zero are
    /// dropped.
    pub fn shards(&self) -> Vec<Vec<Symbol>> {
        let ab = self.query.alphabet;
        let mut depth = 0;
        let mut count = 1usize;
        while count < 64 && depth < self.query.n {
            depth += 1;
            count = count.saturating_mul(ab.size());
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(depth);
        let mut reducer = Reducer::new();
        collect_prefixes(ab, depth, &mut prefix, &mut reducer, &mut out);
        out
    }

    /// Parallel fold over the selected words. Each shard folds into its own
    /// accumulator; accumulators are merged in canonical shard order, so the
    /// result does not depend on the thread count.
    pub fn par_fold<T, I, F, G>(&self, init: I, fold: F, merge: G) -> Result<T>
    where
        T: Send,
        I: Fn() -> T + Sync,
        F: Fn(&mut T, &[Symbol], PeriodClass) + Sync,
        G: Fn(T, T) -> T,
    {
        self.check_budget()?;
        let parts: Vec<T> = self
            .shards()
            .par_iter()
            .map(|prefix| {
                let mut acc = init();
                let mut dfs = Dfs::new(self.query);
                dfs.run(prefix, &mut |w: &[Symbol], c| fold(&mut acc, w, c));
                acc
            })
            .collect();
        Ok(parts.into_iter().fold(init(), merge))
    }

    /// All selected words, in canonical order.
    pub fn collect(&self) -> Result<Vec<Word>> {
        self.par_fold(
            Vec::new,
            |acc, w, _| acc.push(Word::from(w)),
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        )
    }

    /// All selected words with their class.
    pub fn collect_classified(&self) -> Result<Vec<(Word, PeriodClass)>> {
        self.par_fold(
            Vec::new,
            |acc, w, c| acc.push((Word::from(w), c)),
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        )
    }

    pub fn count(&self) -> Result<BigUint> {
        self.par_fold(|| 0u64, |acc, _, _| *acc += 1, |a, b| a + b).map(BigUint::from)
    }
}

fn collect_prefixes(
    ab: Alphabet,
    depth: usize,
    prefix: &mut Vec<Symbol>,
    reducer: &mut Reducer,
    out: &mut Vec<Vec<Symbol>>,
) {
    if prefix.len() == depth {
        out.push(prefix.clone());
        return;
    }
    for s in ab.symbols() {
        if reducer.push(s) {
            prefix.push(s);
            collect_prefixes(ab, depth, prefix, reducer, out);
            prefix.pop();
        }
        reducer.pop();
    }
}

struct Dfs {
    query: PeriodicSetQuery,
    symbols: Vec<Symbol>,
    word: Vec<Symbol>,
    reducer: Reducer,
}

impl Dfs {
    fn new(query: PeriodicSetQuery) -> Self {
        Dfs {
            query,
            symbols: query.alphabet.symbols().collect(),
            word: Vec::with_capacity(query.n),
            reducer: Reducer::new(),
        }
    }

    fn run<F: FnMut(&[Symbol], PeriodClass)>(&mut self, prefix: &[Symbol], f: &mut F) {
        self.word.clear();
        self.reducer = Reducer::new();
        for &s in prefix {
            if !self.reducer.push(s) {
                return;
            }
            self.word.push(s);
        }
        self.descend(f);
    }

    fn descend<F: FnMut(&[Symbol], PeriodClass)>(&mut self, f: &mut F) {
        if self.word.len() == self.query.n {
            if let Some(c) = self.reducer.periodic_class() {
                if self.query.class.matches(c) {
                    f(&self.word, c);
                }
            }
            return;
        }
        for i in 0..self.symbols.len() {
            let s = self.symbols[i];
            if self.reducer.push(s) {
                self.word.push(s);
                self.descend(f);
                self.word.pop();
            }
            self.reducer.pop();
        }
    }
}

/// Iterator form of the pruned search; yields owned words in canonical order.
#[derive(Debug, Clone)]
pub struct PeriodicWords {
    query: PeriodicSetQuery,
    floor: usize,
    codes: Vec<usize>,
    reducer: Reducer,
    state: IterState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum IterState {
    Root,
    Descend,
    Advance,
    Done,
}

impl PeriodicWords {
    fn with_prefix(query: PeriodicSetQuery, prefix: &[Symbol]) -> Self {
        let mut reducer = Reducer::new();
        let mut state = IterState::Root;
        for &s in prefix {
            if !reducer.push(s) {
                state = IterState::Done;
            }
        }
        PeriodicWords {
            query,
            floor: prefix.len(),
            codes: prefix.iter().map(|&s| query.alphabet.code(s)).collect(),
            reducer,
            state,
        }
    }

    fn push_code(&mut self, code: usize) {
        self.codes.push(code);
        self.reducer.push(self.query.alphabet.symbol_from_code(code));
    }

    fn advance_sibling(&mut self) -> bool {
        while self.codes.len() > self.floor {
            let c = self.codes.pop().expect("nonempty");
            self.reducer.pop();
            if c + 1 < self.query.alphabet.size() {
                self.push_code(c + 1);
                return true;
            }
        }
        false
    }

    fn current(&self) -> Word {
        self.codes.iter().map(|&c| self.query.alphabet.symbol_from_code(c)).collect()
    }
}

impl Iterator for PeriodicWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        loop {
            match self.state {
                IterState::Done => return None,
                IterState::Root => {}
                IterState::Descend => self.push_code(0),
                IterState::Advance => {
                    if !self.advance_sibling() {
                        self.state = IterState::Done;
                        return None;
                    }
                }
            }
            if self.reducer.is_zero() {
                self.state = if self.state == IterState::Root { IterState::Done } else { IterState::Advance };
                continue;
            }
            if self.codes.len() < self.query.n {
                self.state = IterState::Descend;
                continue;
            }
            let root = self.state == IterState::Root;
            self.state = if root { IterState::Done } else { IterState::Advance };
            if let Some(c) = self.reducer.periodic_class() {
                if self.query.class.matches(c) {
                    return Some(self.current());
                }
            }
        }
    }
}

/// Closed-form count next to an optional enumerated count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    #[serde(rename = "M")]
    pub pairs: usize,
    pub n: usize,
    pub class: ClassFilter,
    #[serde(with = "decimal_string")]
    pub closed_form: BigUint,
    #[serde(with = "decimal_string_opt", skip_serializing_if = "Option::is_none", default)]
    pub enumerated: Option<BigUint>,
}

impl CountReport {
    pub fn closed_form(q: &PeriodicSetQuery) -> Self {
        CountReport {
            pairs: q.alphabet.pairs(),
            n: q.n,
            class: q.class,
            closed_form: count_closed_form(q),
            enumerated: None,
        }
    }

    pub fn with_enumeration(q: &PeriodicSetQuery, budget: u64) -> Result<Self> {
        let mut r = Self::closed_form(q);
        r.enumerated = Some(Enumerator::new(*q).with_budget(budget).count()?);
        Ok(r)
    }

    /// `true` unless both counts are present and disagree.
    pub fn consistent(&self) -> bool {
        self.enumerated.as_ref().is_none_or(|e| *e == self.closed_form)
    }
}

/// Whether `(1/3)(M+1)^n ≤ #Per_{γ,n} < (M+1)^n` holds at this `n`.
pub fn verify_count_bounds(pairs: usize, n: usize) -> bool {
    let count = count_signed_class(pairs, n);
    let full = BigUint::from(pairs + 1).pow(n as u32);
    &count * 3u32 >= full && count < full
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub n: usize,
    #[serde(with = "decimal_string")]
    pub count: BigUint,
    #[serde(with = "decimal_string")]
    pub full_shift: BigUint,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundScan {
    #[serde(rename = "M")]
    pub pairs: usize,
    pub rows: Vec<BoundRow>,
    /// Smallest `n` from which both bounds hold for the rest of the range.
    pub holds_from: Option<usize>,
}

pub fn scan_count_bounds(pairs: usize, ns: std::ops::RangeInclusive<usize>) -> BoundScan {
    let rows: Vec<BoundRow> = ns
        .map(|n| {
            let count = count_signed_class(pairs, n);
            let full_shift = BigUint::from(pairs + 1).pow(n as u32);
            BoundRow {
                n,
                lower_holds: &count * 3u32 >= full_shift,
                upper_holds: count < full_shift,
                count,
                full_shift,
            }
        })
        .collect();
    let mut holds_from = None;
    for row in rows.iter().rev() {
        if row.lower_holds && row.upper_holds {
            holds_from = Some(row.n);
        } else {
            break;
        }
    }
    BoundScan { pairs, rows, holds_from }
}

pub(crate) mod decimal_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) mod decimal_string_opt {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let text = Option::<String>::deserialize(d)?;
        text.map(|t| t.parse().map_err(serde::de::Error::custom)).transpose()
    }
}
