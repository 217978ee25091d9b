//! Empirical measures of periodic-point ensembles, compared on cylinders
//! against the exact measures of maximal entropy.
//!
//! Frequencies are accumulated as integer occurrence counts straight from the
//! enumeration stream, so memory is `O((2M)^m)` whatever the ensemble size.
//! Every ensemble here is closed under rotation, so averaging the indicator
//! of "`w` starts with `v`" over the ensemble equals averaging the cyclic
//! occurrence rate of `v` in `w`; the latter is what gets counted.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dyck::{reduce, PeriodClass};
use crate::enumeration::{ClassFilter, Enumerator, PeriodicSetQuery, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::krieger::{mixture_cylinder, mme_cylinder, Side};
use crate::word::{Alphabet, Symbol, Word};

/// A set of periodic points of period `n` weighted uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Alpha,
    Beta,
    Zero,
    /// `Per_{α,n} ∪ Per_{β,n}`.
    Union,
}

impl Ensemble {
    pub fn includes(&self, c: PeriodClass) -> bool {
        match self {
            Ensemble::Alpha => c == PeriodClass::Alpha,
            Ensemble::Beta => c == PeriodClass::Beta,
            Ensemble::Zero => c == PeriodClass::Zero,
            Ensemble::Union => c != PeriodClass::Zero,
        }
    }

    fn filter(&self) -> ClassFilter {
        match self {
            Ensemble::Alpha => ClassFilter::Alpha,
            Ensemble::Beta => ClassFilter::Beta,
            Ensemble::Zero => ClassFilter::Zero,
            Ensemble::Union => ClassFilter::All,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Ensemble::Alpha => "alpha",
            Ensemble::Beta => "beta",
            Ensemble::Zero => "zero",
            Ensemble::Union => "union",
        }
    }
}

impl From<PeriodClass> for Ensemble {
    fn from(c: PeriodClass) -> Self {
        match c {
            PeriodClass::Alpha => Ensemble::Alpha,
            PeriodClass::Beta => Ensemble::Beta,
            PeriodClass::Zero => Ensemble::Zero,
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Ensemble {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "union" | "all" => Ok(Ensemble::Union),
            other => other.parse::<PeriodClass>().map(Ensemble::from),
        }
    }
}

/// Reference measure for a comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Alpha,
    Beta,
    /// `(ν_α + ν_β)/2`.
    Mixture,
}

impl Target {
    pub fn cylinder(&self, alphabet: &Alphabet, v: &[Symbol]) -> BigRational {
        match self {
            Target::Alpha => mme_cylinder(alphabet, Side::Alpha, v).0,
            Target::Beta => mme_cylinder(alphabet, Side::Beta, v).0,
            Target::Mixture => mixture_cylinder(alphabet, v).0,
        }
    }

    /// The limit predicted for an ensemble, when there is one.
    pub fn for_ensemble(e: Ensemble) -> Option<Target> {
        match e {
            Ensemble::Alpha => Some(Target::Alpha),
            Ensemble::Beta => Some(Target::Beta),
            Ensemble::Union => Some(Target::Mixture),
            Ensemble::Zero => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Target::Alpha => "alpha",
            Target::Beta => "beta",
            Target::Mixture => "mixture",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "alpha" => Ok(Target::Alpha),
            "beta" => Ok(Target::Beta),
            "mixture" | "mix" => Ok(Target::Mixture),
            other => Err(Error::InvalidArgument(format!("unknown target {other:?}"))),
        }
    }
}

/// Distribution of length-`m` blocks under the uniform measure on an
/// ensemble of periodic points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalDistribution {
    alphabet: Alphabet,
    n: usize,
    ensemble: Ensemble,
    m: usize,
    /// Points in the ensemble.
    points: u64,
    /// Cyclic occurrences, indexed by canonical rank of the block.
    occurrences: Vec<u64>,
}

impl EmpiricalDistribution {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn period(&self) -> usize {
        self.n
    }

    pub fn ensemble(&self) -> Ensemble {
        self.ensemble
    }

    pub fn cylinder_len(&self) -> usize {
        self.m
    }

    pub fn points(&self) -> u64 {
        self.points
    }

    fn rank(&self, v: &[Symbol]) -> usize {
        v.iter().fold(0, |r, &s| r * self.alphabet.size() + self.alphabet.code(s))
    }

    /// Exact frequency of the position-0 cylinder of `v`, `|v| = m`.
    pub fn frequency(&self, v: &[Symbol]) -> BigRational {
        assert_eq!(v.len(), self.m, "cylinder length mismatch");
        BigRational::new(
            BigInt::from(self.occurrences[self.rank(v)]),
            BigInt::from(self.points) * BigInt::from(self.n),
        )
    }

    /// Every length-`m` word that is not zero in the monoid, in canonical
    /// order, with its frequency.
    pub fn table(&self) -> Vec<(Word, BigRational)> {
        admissible_words(&self.alphabet, self.m)
            .into_iter()
            .map(|v| {
                let f = self.frequency(&v);
                (v, f)
            })
            .collect()
    }

    /// Blocks that occur but reduce to zero; always empty for a valid
    /// ensemble.
    pub fn inadmissible_support(&self) -> Vec<Word> {
        (0..self.occurrences.len())
            .filter(|&r| self.occurrences[r] > 0)
            .map(|r| self.alphabet.word_from_rank(r as u64, self.m))
            .filter(|v| reduce(v).is_zero())
            .collect()
    }
}

/// Length-`m` words with nonzero reduction, in canonical order.
pub fn admissible_words(alphabet: &Alphabet, m: usize) -> Vec<Word> {
    let size = alphabet.size() as u64;
    (0..size.pow(m as u32))
        .map(|r| alphabet.word_from_rank(r, m))
        .filter(|v| !reduce(v).is_zero())
        .collect()
}

#[derive(Clone)]
struct Tally {
    points: u64,
    occurrences: Vec<u64>,
}

impl Tally {
    fn new(size: usize, m: usize) -> Self {
        Tally { points: 0, occurrences: vec![0; size.pow(m as u32)] }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.points += other.points;
        for (a, b) in self.occurrences.iter_mut().zip(other.occurrences) {
            *a += b;
        }
        self
    }

    fn add_cyclic(&mut self, alphabet: &Alphabet, w: &[Symbol], m: usize) {
        let size = alphabet.size();
        let n = w.len();
        let modulus = size.pow(m as u32 - 1);
        // rolling rank of the window w[j..j+m] (cyclically)
        let mut rank = w[..m - 1].iter().fold(0usize, |r, &s| r * size + alphabet.code(s));
        for j in 0..n {
            let s = w[(j + m - 1) % n];
            rank = (rank % modulus) * size + alphabet.code(s);
            self.occurrences[rank] += 1;
        }
        self.points += 1;
    }
}

fn check_lengths(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::InvalidArgument(format!("cylinder length must satisfy 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// Empirical block distribution of the uniform measure on an ensemble.
pub fn build_empirical(alphabet: &Alphabet, n: usize, ensemble: Ensemble, m: usize) -> Result<EmpiricalDistribution> {
    build_empirical_with_budget(alphabet, n, ensemble, m, DEFAULT_BUDGET)
}

pub fn build_empirical_with_budget(
    alphabet: &Alphabet,
    n: usize,
    ensemble: Ensemble,
    m: usize,
    budget: u64,
) -> Result<EmpiricalDistribution> {
    check_lengths(n, m)?;
    let q = PeriodicSetQuery { alphabet: *alphabet, n, class: ensemble.filter() };
    let size = alphabet.size();
    let ab = *alphabet;
    // Alpha and beta tallies are kept apart so the union can be checked
    // against the average of the two classes.
    let (alpha, beta, zero) = Enumerator::new(q).with_budget(budget).par_fold(
        || (Tally::new(size, m), Tally::new(size, m), Tally::new(size, m)),
        |(a, b, z), w, c| match c {
            PeriodClass::Alpha => a.add_cyclic(&ab, w, m),
            PeriodClass::Beta => b.add_cyclic(&ab, w, m),
            PeriodClass::Zero => z.add_cyclic(&ab, w, m),
        },
        |(a1, b1, z1), (a2, b2, z2)| (a1.merge(a2), b1.merge(b2), z1.merge(z2)),
    )?;
    let tally = match ensemble {
        Ensemble::Alpha => alpha,
        Ensemble::Beta => beta,
        Ensemble::Zero => zero,
        Ensemble::Union => {
            assert_eq!(alpha.points, beta.points, "alpha and beta classes have equal size");
            alpha.merge(beta)
        }
    };
    if tally.points == 0 {
        return Err(Error::EmptyEnsemble { class: ensemble.to_string(), n });
    }
    Ok(EmpiricalDistribution { alphabet: *alphabet, n, ensemble, m, points: tally.points, occurrences: tally.occurrences })
}

/// Empirical distribution over `Per_{α,n} ∪ Per_{β,n}`.
pub fn union_empirical(alphabet: &Alphabet, n: usize, m: usize) -> Result<EmpiricalDistribution> {
    build_empirical(alphabet, n, Ensemble::Union, m)
}

/// The same frequencies computed the slow way: fraction of points whose
/// first `m` symbols spell each block. Used to cross-check the cyclic count.
pub fn prefix_frequencies(alphabet: &Alphabet, n: usize, ensemble: Ensemble, m: usize) -> Result<Vec<(Word, BigRational)>> {
    check_lengths(n, m)?;
    let q = PeriodicSetQuery { alphabet: *alphabet, n, class: ensemble.filter() };
    let mut counts = vec![0u64; alphabet.size().pow(m as u32)];
    let mut points = 0u64;
    Enumerator::new(q).for_each(|w, c| {
        if ensemble.includes(c) {
            points += 1;
            let r = w[..m].iter().fold(0usize, |r, &s| r * alphabet.size() + alphabet.code(s));
            counts[r] += 1;
        }
    })?;
    if points == 0 {
        return Err(Error::EmptyEnsemble { class: ensemble.to_string(), n });
    }
    Ok(admissible_words(alphabet, m)
        .into_iter()
        .map(|v| {
            let r = v.iter().fold(0usize, |r, &s| r * alphabet.size() + alphabet.code(s));
            (v, BigRational::new(BigInt::from(counts[r]), BigInt::from(points)))
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub cylinder: Word,
    pub empirical: BigRational,
    pub exact: BigRational,
    pub abs_error: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub points: u64,
    pub sup_distance: BigRational,
    pub residuals: Vec<Residual>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub pairs: usize,
    pub ensemble: Ensemble,
    pub target: Target,
    pub cylinder_len: usize,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn row(&self, n: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

fn compare_row(e: &EmpiricalDistribution, target: Target) -> ConvergenceRow {
    let residuals: Vec<Residual> = e
        .table()
        .into_iter()
        .map(|(cylinder, empirical)| {
            let exact = target.cylinder(&e.alphabet, &cylinder);
            let abs_error = (&empirical - &exact).abs();
            Residual { cylinder, empirical, exact, abs_error }
        })
        .collect();
    let sup_distance = residuals.iter().map(|r| r.abs_error.clone()).max().unwrap_or_else(BigRational::zero);
    ConvergenceRow { n: e.n, points: e.points, sup_distance, residuals }
}

/// Sup-distance over length-`m` cylinders between an empirical distribution
/// and a target measure, with the full residual table.
pub fn compare_to_target(e: &EmpiricalDistribution, target: Target) -> ConvergenceReport {
    ConvergenceReport {
        pairs: e.alphabet.pairs(),
        ensemble: e.ensemble,
        target,
        cylinder_len: e.m,
        rows: vec![compare_row(e, target)],
    }
}

/// [`compare_to_target`] for a sequence of periods.
pub fn convergence_series(
    alphabet: &Alphabet,
    ensemble: Ensemble,
    m: usize,
    periods: &[usize],
    target: Target,
) -> Result<ConvergenceReport> {
    let rows = periods
        .iter()
        .map(|&n| build_empirical(alphabet, n, ensemble, m).map(|e| compare_row(&e, target)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceReport { pairs: alphabet.pairs(), ensemble, target, cylinder_len: m, rows })
}
