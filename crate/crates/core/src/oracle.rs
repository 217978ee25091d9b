//! Slow, independent reference implementations.
//!
//! Nothing here shares code with the fast paths it checks: reduction is done
//! by literal rewriting, periodic points by reducing `w·w`, and the measures
//! of maximal entropy by simulating the decoration map on random sequences
//! using the height functions directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dyck::{PeriodClass, ReducedForm};
use crate::error::{Error, Result};
use crate::krieger::Side;
use crate::word::{Alphabet, Bracket, Symbol, Word};

pub const DEFAULT_SEED: u64 = 0x5EED;
pub const DEFAULT_WINDOW_RADIUS: usize = 512;
pub const DEFAULT_SAMPLES: u64 = 1_000_000;
/// Number of independent generator streams a Monte Carlo run is split into.
pub const MC_SHARDS: u64 = 64;
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = shard index";

/// Reduce by repeatedly rewriting the leftmost adjacent `a_i b_j` pair.
pub fn naive_reduce(w: &[Symbol]) -> ReducedForm {
    let mut v: Vec<Symbol> = w.to_vec();
    loop {
        let pair = v.windows(2).position(|p| p[0].kind == Bracket::Left && p[1].kind == Bracket::Right);
        match pair {
            None => break,
            Some(i) if v[i].index == v[i + 1].index => {
                v.drain(i..i + 2);
            }
            Some(_) => return ReducedForm::Zero,
        }
    }
    // no a·b adjacency left, so the word is b…b a…a
    let split = v.iter().position(|s| s.is_left()).unwrap_or(v.len());
    ReducedForm::Normal {
        beta: v[..split].iter().map(|s| s.index).collect(),
        alpha: v[split..].iter().map(|s| s.index).collect(),
    }
}

/// Periodic-point test by brute force: `w^∞ ∈ Σ_D` iff `w·w` does not reduce
/// to zero.
pub fn naive_periodic_class(w: &[Symbol]) -> Option<PeriodClass> {
    let ww: Vec<Symbol> = w.iter().chain(w.iter()).copied().collect();
    if naive_reduce(&ww).is_zero() {
        return None;
    }
    let h: i64 = w.iter().map(|s| if s.is_left() { 1 } else { -1 }).sum();
    Some(PeriodClass::from_height(h))
}

/// All `(2M)^n` words of length `n` that are periodic points, with classes.
pub fn brute_periodic(alphabet: &Alphabet, n: usize, budget: u64) -> Result<Vec<(Word, PeriodClass)>> {
    let size = alphabet.size() as u64;
    let total = size
        .checked_pow(n as u32)
        .filter(|&t| t <= budget)
        .ok_or_else(|| Error::ResourceLimit { projected: format!("{}^{n}", size), budget })?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|r| {
            let w = alphabet.word_from_rank(r, n);
            naive_periodic_class(&w).map(|c| (w, c))
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub samples: u64,
    pub window_radius: usize,
    pub seed: u64,
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig { samples: DEFAULT_SAMPLES, window_radius: DEFAULT_WINDOW_RADIUS, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub accepted: u64,
    pub discarded: u64,
}

/// Frequencies of every decoded block of length `1..=max_len` starting at
/// position 0, from one batch of samples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McCylinderTable {
    pub side: Side,
    pub pairs: usize,
    pub max_len: usize,
    pub config: MonteCarloConfig,
    /// `counts[len - 1][rank]`, `rank` the canonical rank of the block.
    pub counts: Vec<Vec<u64>>,
    pub accepted: u64,
    pub discarded: u64,
}

impl McCylinderTable {
    pub fn estimate(&self, v: &[Symbol]) -> McEstimate {
        let ab = Alphabet::new(self.pairs).expect("table built from a valid alphabet");
        let hits = if v.is_empty() {
            self.accepted
        } else if v.len() > self.max_len {
            panic!("cylinder longer than the sampled block length {}", self.max_len);
        } else {
            let rank = v.iter().fold(0usize, |r, &s| r * ab.size() + ab.code(s));
            self.counts[v.len() - 1][rank]
        };
        let n = self.accepted.max(1) as f64;
        let p = hits as f64 / n;
        McEstimate {
            estimate: p,
            stderr: (p * (1.0 - p) / n).sqrt(),
            hits,
            accepted: self.accepted,
            discarded: self.discarded,
        }
    }

    pub fn discarded_fraction(&self) -> f64 {
        self.discarded as f64 / (self.accepted + self.discarded).max(1) as f64
    }
}

/// Estimate `ν_side` on all cylinders of length `≤ max_len` at position 0 by
/// sampling the uniform Bernoulli measure on the `(M+1)`-letter collapsed
/// alphabet and decoding positions `0..max_len`.
pub fn mc_cylinder_table(alphabet: &Alphabet, side: Side, max_len: usize, cfg: &MonteCarloConfig) -> Result<McCylinderTable> {
    if cfg.samples == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    if max_len == 0 {
        return Err(Error::InvalidArgument("block length must be at least 1".into()));
    }
    let size = alphabet.size();
    let empty_counts = || (1..=max_len).map(|l| vec![0u64; size.pow(l as u32)]).collect::<Vec<_>>();

    let shards: Vec<(Vec<Vec<u64>>, u64, u64)> = (0..MC_SHARDS)
        .into_par_iter()
        .map(|shard| {
            let quota = cfg.samples / MC_SHARDS + u64::from(shard < cfg.samples % MC_SHARDS);
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(shard);
            let mut counts = empty_counts();
            let (mut accepted, mut discarded) = (0u64, 0u64);
            let mut sampler = WindowSampler::new(*alphabet, side, cfg.window_radius);
            for _ in 0..quota {
                match sampler.decode_block(&mut rng, max_len) {
                    Some(block) => {
                        accepted += 1;
                        let mut rank = 0usize;
                        for (l, &code) in block.iter().enumerate() {
                            rank = rank * size + code;
                            counts[l][rank] += 1;
                        }
                    }
                    None => discarded += 1,
                }
            }
            (counts, accepted, discarded)
        })
        .collect();

    let mut counts = empty_counts();
    let (mut accepted, mut discarded) = (0, 0);
    for (c, a, d) in shards {
        for (acc, part) in counts.iter_mut().zip(c) {
            for (x, y) in acc.iter_mut().zip(part) {
                *x += y;
            }
        }
        accepted += a;
        discarded += d;
    }
    Ok(McCylinderTable { side, pairs: alphabet.pairs(), max_len, config: *cfg, counts, accepted, discarded })
}

/// Monte Carlo estimate of `ν_side([v]_0)`.
pub fn mc_mme_cylinder(alphabet: &Alphabet, side: Side, v: &[Symbol], cfg: &MonteCarloConfig) -> Result<McEstimate> {
    if v.is_empty() {
        return Ok(McEstimate { estimate: 1.0, stderr: 0.0, hits: cfg.samples, accepted: cfg.samples, discarded: 0 });
    }
    Ok(mc_cylinder_table(alphabet, side, v.len(), cfg)?.estimate(v))
}

/// One random collapsed sequence, generated lazily outward from the block.
///
/// Collapsed letters are stored as `0..M` for kept brackets of index `k+1`
/// and `M` for the wildcard.
struct WindowSampler {
    alphabet: Alphabet,
    side: Side,
    radius: usize,
    block: Vec<usize>,
    outside: Vec<usize>,
}

impl WindowSampler {
    fn new(alphabet: Alphabet, side: Side, radius: usize) -> Self {
        WindowSampler { alphabet, side, radius, block: Vec::new(), outside: Vec::new() }
    }

    fn wildcard(&self) -> usize {
        self.alphabet.pairs()
    }

    // H step of a collapsed letter: kept brackets +1 on the α side (left
    // brackets open); on the β side the wildcard is the opening letter.
    fn step(&self, letter: usize) -> i64 {
        let is_wild = letter == self.wildcard();
        match (self.side, is_wild) {
            (Side::Alpha, false) | (Side::Beta, true) => 1,
            _ => -1,
        }
    }

    fn letter_at<R: Rng>(&mut self, rng: &mut R, offset: usize) -> Option<usize> {
        while self.outside.len() <= offset {
            if self.outside.len() >= self.radius {
                return None;
            }
            self.outside.push(rng.random_range(0..=self.alphabet.pairs()));
        }
        Some(self.outside[offset])
    }

    /// Decoded symbol codes at positions `0..len`, or `None` if a partner
    /// search left the window.
    fn decode_block<R: Rng>(&mut self, rng: &mut R, len: usize) -> Option<Vec<usize>> {
        let m = self.alphabet.pairs();
        self.block.clear();
        self.outside.clear();
        for _ in 0..len {
            self.block.push(rng.random_range(0..=m));
        }
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            let y = self.block[i];
            let code = match (self.side, y == self.wildcard()) {
                (Side::Alpha, false) => y,
                (Side::Beta, false) => m + y,
                (Side::Alpha, true) => m + self.partner_alpha(rng, i)?,
                (Side::Beta, true) => self.partner_beta(rng, i, len)?,
            };
            out.push(code);
        }
        Some(out)
    }

    // s_α(i) = max{ j ≤ i : H_j = H_{i+1} }; y_j is the matching left bracket.
    // Positions below 0 come from `outside` (offset 0 is position -1).
    fn partner_alpha<R: Rng>(&mut self, rng: &mut R, i: usize) -> Option<usize> {
        let target = -1i64; // H_{i+1} - H_i for a wildcard at i, relative to H_i = 0
        let mut h = 0i64; // H_j relative to H_i, for j = i, i-1, …
        let mut j = i as i64;
        loop {
            if h == target {
                let y = self.letter_at_signed(rng, j)?;
                return Some(y);
            }
            j -= 1;
            let y = self.letter_at_signed(rng, j)?;
            h -= self.step(y);
        }
    }

    // s_β(i): first j > i with H_j = H_i; the matching right bracket is
    // y_{j-1}. Positions at or past `len` come from `outside`.
    fn partner_beta<R: Rng>(&mut self, rng: &mut R, i: usize, len: usize) -> Option<usize> {
        let mut h = 0i64; // H_j - H_i
        let mut j = i;
        loop {
            let y = if j < len { self.block[j] } else { self.letter_at(rng, j - len)? };
            h += self.step(y);
            j += 1;
            if h == 0 {
                return Some(y);
            }
        }
    }

    fn letter_at_signed<R: Rng>(&mut self, rng: &mut R, pos: i64) -> Option<usize> {
        if pos >= 0 {
            Some(self.block[pos as usize])
        } else {
            self.letter_at(rng, (-pos - 1) as usize)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    #[test]
    fn naive_reduce_examples() {
        assert!(naive_reduce(&word!["a1", "b1"]).is_identity());
        assert!(naive_reduce(&word!["a1", "b2"]).is_zero());
        assert_eq!(
            naive_reduce(&word!["b2", "a1", "a1", "b1"]),
            ReducedForm::Normal { beta: vec![2], alpha: vec![1] }
        );
    }

    #[test]
    fn brute_periodic_small() {
        let ab = Alphabet::new(2).unwrap();
        let one = brute_periodic(&ab, 1, 1 << 20).unwrap();
        let names: Vec<(String, PeriodClass)> = one.iter().map(|(w, c)| (w.to_string(), *c)).collect();
        assert_eq!(
            names,
            [
                ("a1".to_string(), PeriodClass::Alpha),
                ("a2".to_string(), PeriodClass::Alpha),
                ("b1".to_string(), PeriodClass::Beta),
                ("b2".to_string(), PeriodClass::Beta)
            ]
        );
        let two = brute_periodic(&ab, 2, 1 << 20).unwrap();
        assert_eq!(two.len(), 12);
        for c in PeriodClass::ALL {
            assert_eq!(two.iter().filter(|(_, k)| *k == c).count(), 4);
        }
        let three = brute_periodic(&ab, 3, 1 << 20).unwrap();
        assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Alpha).count(), 20);
        assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Beta).count(), 20);
        assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Zero).count(), 0);
        assert!(brute_periodic(&ab, 12, 1000).is_err());
    }

    #[test]
    fn monte_carlo_is_deterministic() {
        let ab = Alphabet::new(2).unwrap();
        let cfg = MonteCarloConfig { samples: 20_000, ..Default::default() };
        let a = mc_cylinder_table(&ab, Side::Alpha, 2, &cfg).unwrap();
        let b = mc_cylinder_table(&ab, Side::Alpha, 2, &cfg).unwrap();
        assert_eq!(a, b);
        let other = mc_cylinder_table(&ab, Side::Alpha, 2, &MonteCarloConfig { seed: 1, ..cfg }).unwrap();
        assert_ne!(a.counts, other.counts);
    }

    #[test]
    fn monte_carlo_rough_values() {
        let ab = Alphabet::new(2).unwrap();
        let cfg = MonteCarloConfig { samples: 60_000, ..Default::default() };
        let a1 = mc_mme_cylinder(&ab, Side::Alpha, &word!["a1"], &cfg).unwrap();
        assert!((a1.estimate - 1.0 / 3.0).abs() < 5.0 * a1.stderr, "{a1:?}");
        let b1 = mc_mme_cylinder(&ab, Side::Alpha, &word!["b1"], &cfg).unwrap();
        assert!((b1.estimate - 1.0 / 6.0).abs() < 5.0 * b1.stderr, "{b1:?}");
        let bad = mc_mme_cylinder(&ab, Side::Alpha, &word!["a1", "b2"], &cfg).unwrap();
        assert_eq!(bad.hits, 0);
        let beta_b1 = mc_mme_cylinder(&ab, Side::Beta, &word!["b1"], &cfg).unwrap();
        assert!((beta_b1.estimate - 1.0 / 3.0).abs() < 5.0 * beta_b1.stderr, "{beta_b1:?}");
    }

    #[test]
    fn tiny_window_discards() {
        let ab = Alphabet::new(2).unwrap();
        let cfg = MonteCarloConfig { samples: 5_000, window_radius: 0, seed: 7 };
        let t = mc_cylinder_table(&ab, Side::Alpha, 1, &cfg).unwrap();
        // every sample whose block is a wildcard needs the outside
        assert!(t.discarded > 0);
        assert_eq!(t.accepted + t.discarded, 5_000);
    }
}
