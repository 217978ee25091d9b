//! Self-checks that cross the fast algorithms against independent oracles and
//! against the exact formulas, producing [`VerificationReport`]s.
//!
//! Each `check_*` function is one gate with fixed desk-scale parameters;
//! [`run_suite`] groups them.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::baker::{solve_periodic_point, BakerParams, Moments, Point3};
use crate::dyck::{h_value, is_periodic_point, reduce, PeriodClass};
use crate::enumeration::{count_closed_form, scan_count_bounds, ClassFilter, Enumerator, PeriodicSetQuery};
use crate::error::{Error, Result};
use crate::krieger::{collapse, decorate_periodic, mme_cylinder, Side};
use crate::measures::{convergence_series, Ensemble, Target};
use crate::oracle::{brute_periodic, mc_cylinder_table, naive_reduce, MonteCarloConfig};
use crate::rational::{format_rational, ratio, to_decimal, to_f64};
use crate::report::VerificationReport;
use crate::word::{Alphabet, Bracket, Symbol, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Core,
    Counts,
    Measures,
    Baker,
    All,
}

impl Suite {
    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Counts => "counts",
            Suite::Measures => "measures",
            Suite::Baker => "baker",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "core" => Ok(Suite::Core),
            "counts" => Ok(Suite::Counts),
            "measures" => Ok(Suite::Measures),
            "baker" => Ok(Suite::Baker),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidArgument(format!("unknown suite {other:?}"))),
        }
    }
}

pub fn run_suite(suite: Suite, mc: &MonteCarloConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Core | Suite::All) {
        out.push(check_reduce_oracle(mc.seed, 10_000, 20));
        out.push(check_oracle_equivalence(8)?);
    }
    if matches!(suite, Suite::Counts | Suite::All) {
        out.push(check_count_exactness(&[2, 3], 12)?);
        out.push(check_count_bounds(2, 20));
    }
    if matches!(suite, Suite::Measures | Suite::All) {
        out.push(check_mme_identities(2, 4));
        out.push(check_monte_carlo(2, 3, mc)?);
        out.extend(check_convergence(2, 1, 6, 14, 0.05)?);
        out.push(check_krieger_round_trip(10, 10_000, mc.seed)?);
    }
    if matches!(suite, Suite::Baker | Suite::All) {
        out.push(check_baker_solver(ratio(1, 5), ratio(1, 5), 8)?);
        out.push(check_lebesgue_projection(ratio(1, 3), 13)?);
    }
    Ok(out)
}

fn alphabet(pairs: usize) -> Alphabet {
    Alphabet::new(pairs).expect("pairs validated by caller")
}

fn random_word(rng: &mut ChaCha8Rng, ab: &Alphabet, len: usize) -> Word {
    let size = ab.size();
    (0..len).map(|_| ab.symbol_from_code(rng.random_range(0..size))).collect()
}

/// `reduce` against the rewriting oracle on random words of length `≤ max_len`.
pub fn check_reduce_oracle(seed: u64, samples: u64, max_len: usize) -> VerificationReport {
    let ab = alphabet(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let len = rng.random_range(0..=max_len);
        let w = random_word(&mut rng, &ab, len);
        if reduce(&w) != naive_reduce(&w) {
            mismatches.push(w.to_string());
        }
    }
    VerificationReport::new(
        "reduce_oracle",
        mismatches.is_empty(),
        json!({ "M": 2, "max_len": max_len, "mismatches": mismatches }),
    )
    .with_sampling(seed, samples)
}

/// `is_periodic_point` and the class against `brute_periodic`, over every word
/// of length `1..=max_n`, `M = 2`.
pub fn check_oracle_equivalence(max_n: usize) -> Result<VerificationReport> {
    let ab = alphabet(2);
    let mut rows = Vec::new();
    let mut total_mismatches = 0usize;
    for n in 1..=max_n {
        let brute: HashMap<Word, PeriodClass> = brute_periodic(&ab, n, u64::MAX)?.into_iter().collect();
        let mut mismatches = 0usize;
        for r in 0..(ab.size() as u64).pow(n as u32) {
            let w = ab.word_from_rank(r, n);
            let fast = is_periodic_point(&w)?;
            let class = crate::dyck::periodic_class(&w)?;
            if fast != brute.contains_key(&w) || class != brute.get(&w).copied() {
                mismatches += 1;
            }
        }
        let enumerated: HashSet<Word> = Enumerator::new(PeriodicSetQuery::new(2, n, ClassFilter::All)?).collect()?.into_iter().collect();
        let brute_set: HashSet<Word> = brute.keys().cloned().collect();
        if enumerated != brute_set {
            mismatches += 1;
        }
        total_mismatches += mismatches;
        rows.push(json!({ "n": n, "words": ab.size().pow(n as u32), "periodic": brute.len(), "mismatches": mismatches }));
    }
    Ok(VerificationReport::new("oracle_equivalence", total_mismatches == 0, json!({ "M": 2, "rows": rows })))
}

/// Enumerated class sizes against the closed forms, every `n ≤ max_n`.
pub fn check_count_exactness(pairs: &[usize], max_n: usize) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for &m in pairs {
        for n in 1..=max_n {
            let q = PeriodicSetQuery::new(m, n, ClassFilter::All)?;
            let counts = Enumerator::new(q).par_fold(
                || [0u64; 3],
                |acc, _, c| acc[class_slot(c)] += 1,
                |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
            )?;
            let mut row = json!({ "M": m, "n": n });
            for c in PeriodClass::ALL {
                let expected = count_closed_form(&PeriodicSetQuery::new(m, n, c)?);
                let got = BigUint::from(counts[class_slot(c)]);
                ok &= got == expected;
                row[c.as_str()] = json!({ "enumerated": got.to_string(), "closed_form": expected.to_string() });
            }
            rows.push(row);
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    Ok(VerificationReport::new("count_exactness", ok, json!({ "rows": rows, "seconds": seconds })))
}

fn class_slot(c: PeriodClass) -> usize {
    match c {
        PeriodClass::Alpha => 0,
        PeriodClass::Beta => 1,
        PeriodClass::Zero => 2,
    }
}

/// `(1/3)(M+1)^n ≤ #Per_{γ,n} < (M+1)^n` for `n = 1..=max_n`.
pub fn check_count_bounds(pairs: usize, max_n: usize) -> VerificationReport {
    let scan = scan_count_bounds(pairs, 1..=max_n);
    let ok = scan.holds_from.is_some() && scan.rows.iter().all(|r| r.upper_holds);
    let failures: Vec<usize> = scan.rows.iter().filter(|r| !(r.lower_holds && r.upper_holds)).map(|r| r.n).collect();
    VerificationReport::new(
        "count_bounds",
        ok,
        json!({ "M": pairs, "range": [1, max_n], "holds_from": scan.holds_from, "failures": failures }),
    )
}

/// Balance identities, Kolmogorov consistency and normalization of `ν_α`,
/// `ν_β` on every cylinder of length `≤ max_len`, in exact arithmetic.
pub fn check_mme_identities(pairs: usize, max_len: usize) -> VerificationReport {
    let ab = alphabet(pairs);
    let third = BigRational::new(1.into(), (pairs as i64 + 1).into());
    let mut failures = Vec::new();
    for side in [Side::Alpha, Side::Beta] {
        let nu = |v: &[Symbol]| mme_cylinder(&ab, side, v).value().clone();
        let (kept, other) = match side {
            Side::Alpha => (Bracket::Left, Bracket::Right),
            Side::Beta => (Bracket::Right, Bracket::Left),
        };
        let mut other_total = BigRational::zero();
        for k in 1..=pairs as u16 {
            let single = nu(&[Symbol { kind: kept, index: k }]);
            if single != third {
                failures.push(format!("{side}: mass of {kept:?}{k} is {}", format_rational(&single)));
            }
            other_total += nu(&[Symbol { kind: other, index: k }]);
        }
        if other_total != third {
            failures.push(format!("{side}: total {other:?} mass is {}", format_rational(&other_total)));
        }
        for len in 0..=max_len {
            let words: Vec<Word> = (0..(ab.size() as u64).pow(len as u32)).map(|r| ab.word_from_rank(r, len)).collect();
            let total: BigRational = words.iter().map(|v| nu(v)).sum();
            if !total.is_one() {
                failures.push(format!("{side}: length-{len} cylinders sum to {}", format_rational(&total)));
            }
            if len == max_len {
                continue;
            }
            for v in &words {
                let mass = nu(v);
                let right: BigRational = ab.symbols().map(|s| nu(&v.concat(&Word::from(vec![s])))).sum();
                let left: BigRational = ab.symbols().map(|s| nu(&Word::from(vec![s]).concat(v))).sum();
                if right != mass || left != mass {
                    failures.push(format!("{side}: consistency fails at [{v}]"));
                }
            }
        }
    }
    VerificationReport::new("mme_identities", failures.is_empty(), json!({ "M": pairs, "max_len": max_len, "failures": failures }))
}

/// Exact cylinder masses against the sampled pushforward, within three
/// standard errors, with discarded samples below `10^-4`.
pub fn check_monte_carlo(pairs: usize, max_len: usize, cfg: &MonteCarloConfig) -> Result<VerificationReport> {
    let ab = alphabet(pairs);
    let mut ok = true;
    let mut sides = Vec::new();
    for side in [Side::Alpha, Side::Beta] {
        let table = mc_cylinder_table(&ab, side, max_len, cfg)?;
        let mut worst_z = 0.0f64;
        let mut outliers = Vec::new();
        for len in 1..=max_len {
            for r in 0..(ab.size() as u64).pow(len as u32) {
                let v = ab.word_from_rank(r, len);
                let exact = to_f64(mme_cylinder(&ab, side, &v).value());
                let est = table.estimate(&v);
                let within = if est.stderr > 0.0 {
                    let z = (est.estimate - exact).abs() / est.stderr;
                    worst_z = worst_z.max(z);
                    z <= 3.0
                } else {
                    est.estimate == exact
                };
                if !within {
                    outliers.push(json!({ "cylinder": v.to_string(), "exact": exact, "estimate": est.estimate, "stderr": est.stderr }));
                }
            }
        }
        let discarded = table.discarded_fraction();
        ok &= outliers.is_empty() && discarded < 1e-4;
        sides.push(json!({
            "side": side.as_str(),
            "worst_z": worst_z,
            "outliers": outliers,
            "accepted": table.accepted,
            "discarded": table.discarded,
            "discarded_fraction": discarded,
        }));
    }
    Ok(VerificationReport::new(
        "monte_carlo",
        ok,
        json!({ "M": pairs, "max_len": max_len, "window_radius": cfg.window_radius, "sides": sides }),
    )
    .with_sampling(cfg.seed, cfg.samples))
}

/// Sup-cylinder distance at periods `small` and `large` for the `α`, `β`
/// and union ensembles: each must be at most `tol` at `large` and strictly
/// smaller than at `small`.
pub fn check_convergence(pairs: usize, m: usize, small: usize, large: usize, tol: f64) -> Result<Vec<VerificationReport>> {
    let ab = alphabet(pairs);
    [(Ensemble::Alpha, Target::Alpha), (Ensemble::Beta, Target::Beta), (Ensemble::Union, Target::Mixture)]
        .into_iter()
        .map(|(ensemble, target)| {
            let report = convergence_series(&ab, ensemble, m, &[small, large], target)?;
            let d_small = &report.rows[0].sup_distance;
            let d_large = &report.rows[1].sup_distance;
            let ok = to_f64(d_large) <= tol && d_large < d_small;
            Ok(VerificationReport::new(
                format!("convergence_{}", ensemble.as_str()),
                ok,
                json!({
                    "M": pairs,
                    "cylinder_len": m,
                    "target": target.as_str(),
                    "periods": [small, large],
                    "sup_distance": [format_rational(d_small), format_rational(d_large)],
                    "sup_distance_decimal": [to_decimal(d_small, 6), to_decimal(d_large, 6)],
                    "tolerance": tol,
                }),
            ))
        })
        .collect()
}

/// `decorate ∘ collapse = id` on both signed classes for `n ≤ max_n`,
/// injectivity of the collapse, and shift-equivariance on random rotations.
pub fn check_krieger_round_trip(max_n: usize, rotations: u64, seed: u64) -> Result<VerificationReport> {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let mut pool: Vec<(Side, Word)> = Vec::new();
    for (class, side) in [(PeriodClass::Alpha, Side::Alpha), (PeriodClass::Beta, Side::Beta)] {
        for n in 1..=max_n {
            let words = Enumerator::new(PeriodicSetQuery::new(2, n, class)?).collect()?;
            let mut images = HashSet::with_capacity(words.len());
            for w in &words {
                let z = collapse(side, w);
                if decorate_periodic(&z)? != *w {
                    failures.push(format!("round trip fails on [{w}]"));
                }
                if !images.insert(z) {
                    failures.push(format!("collapse not injective at [{w}]"));
                }
                checked += 1;
            }
            if n == max_n {
                pool.extend(words.into_iter().map(|w| (side, w)));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..rotations {
        let (side, w) = &pool[rng.random_range(0..pool.len())];
        let k = rng.random_range(0..w.len());
        let z = collapse(*side, w);
        let rotated = w.rotate(k);
        if collapse(*side, &rotated) != z.rotate(k) || decorate_periodic(&z.rotate(k))? != rotated {
            failures.push(format!("shift-equivariance fails on [{w}] rotated by {k}"));
        }
    }
    Ok(VerificationReport::new(
        "krieger_round_trip",
        failures.is_empty(),
        json!({ "M": 2, "max_n": max_n, "words_checked": checked, "rotations": rotations, "failures": failures }),
    )
    .with_sampling(seed, rotations))
}

fn pow(x: &BigRational, k: usize) -> BigRational {
    num_traits::pow(x.clone(), k)
}

fn affine_f64(slope: &BigRational, intercept: &BigRational, x: f64) -> f64 {
    to_f64(slope) * x + to_f64(intercept)
}

/// Solver gate at parameters `(a, b)`, `M = 2`, every signed-class word of
/// length `≤ max_n`: exact periodicity, itinerary, unstable dimension,
/// multiplier laws, distinctness, float agreement and class counts under
/// closed-tile semantics.
pub fn check_baker_solver(a: BigRational, b: BigRational, max_n: usize) -> Result<VerificationReport> {
    let p = BakerParams::new(2, a.clone(), b.clone())?;
    let one = BigRational::one();
    let m = BigRational::from_integer(2.into());
    let (lu_a, lu_b) = (a.recip(), (&one - &m * &a).recip());
    let (ls_a, ls_b) = (&one - &m * &b, b.clone());

    let mut failures = Vec::new();
    let mut rows = Vec::new();
    let mut worst_float = 0.0f64;
    for n in 1..=max_n {
        let mut points: HashSet<Point3> = HashSet::new();
        for class in [PeriodClass::Alpha, PeriodClass::Beta] {
            let q = PeriodicSetQuery::new(2, n, class)?;
            let words = Enumerator::new(q).collect()?;
            let mut solved = 0u64;
            let mut boundary = Vec::new();
            for w in &words {
                let sol = match solve_periodic_point(&p, w) {
                    Ok(sol) => sol,
                    Err(e) => {
                        failures.push(format!("[{w}]: {e}"));
                        continue;
                    }
                };
                solved += 1;
                let h = h_value(w);
                let alphas = w.count_left();
                let betas = w.count_right();

                let mut x = sol.point.clone();
                let mut fx = sol.point.to_f64();
                let mut symbols = Vec::with_capacity(n);
                for &s in w.iter() {
                    let step = p.step(s);
                    let (_, hit) = p.apply(&x);
                    symbols.push(hit);
                    x = step.apply(&x);
                    fx = [
                        affine_f64(&step.u.slope, &step.u.intercept, fx[0]),
                        affine_f64(&step.c.slope, &step.c.intercept, fx[1]),
                        affine_f64(&step.s.slope, &step.s.intercept, fx[2]),
                    ];
                    for (e, f) in x.to_f64().iter().zip(fx) {
                        worst_float = worst_float.max((e - f).abs());
                    }
                }
                if x != sol.point {
                    failures.push(format!("[{w}]: orbit does not close"));
                }
                if sol.in_lambda && Word::from(symbols) != *w {
                    failures.push(format!("[{w}]: itinerary differs"));
                }
                if (sol.unstable_dim == 1) != (h > 0) {
                    failures.push(format!("[{w}]: unstable dimension {} with H = {h}", sol.unstable_dim));
                }
                let lc = if h >= 0 { pow(&m, h as usize).recip() } else { pow(&m, (-h) as usize) };
                if sol.lambda_u != pow(&lu_a, alphas) * pow(&lu_b, betas)
                    || sol.lambda_c != lc
                    || sol.lambda_s != pow(&ls_a, alphas) * pow(&ls_b, betas)
                    || sol.lambda_u <= one
                    || sol.lambda_s >= one
                {
                    failures.push(format!("[{w}]: multipliers"));
                }
                if !sol.in_lambda {
                    boundary.push(w.to_string());
                }
                if !points.insert(sol.point) {
                    failures.push(format!("[{w}]: point shared with another word"));
                }
            }
            let expected = count_closed_form(&q);
            if BigUint::from(solved) != expected {
                failures.push(format!("n = {n}, {class}: {solved} solved, {expected} expected"));
            }
            rows.push(json!({
                "n": n,
                "class": class.as_str(),
                "solved": solved,
                "closed_form": expected.to_string(),
                "in_lambda": solved - boundary.len() as u64,
                "boundary": boundary,
            }));
        }
    }
    if worst_float > 1e-9 {
        failures.push(format!("float iteration drifts by {worst_float:e}"));
    }
    Ok(VerificationReport::new(
        "baker_solver",
        failures.is_empty(),
        json!({
            "M": 2,
            "a": format_rational(&a),
            "b": format_rational(&b),
            "max_n": max_n,
            "worst_float_error": worst_float,
            "rows": rows,
            "failures": failures,
        }),
    ))
}

/// Moments of the planar `α` scatter against the Lebesgue values
/// (means `1/2`, second moments `1/3`, tolerance `0.05`), and the `β`
/// scatter as a witness that fails at least one of them by more than `0.02`
/// beyond the tolerance.
pub fn check_lebesgue_projection(a: BigRational, period: usize) -> Result<VerificationReport> {
    const TOL: f64 = 0.05;
    const MARGIN: f64 = 0.02;
    let p = BakerParams::planar(2, a.clone())?;
    let deviations = |m: &Moments| {
        [
            (m.mean_u - 0.5).abs(),
            (m.mean_c - 0.5).abs(),
            (m.second_u - 1.0 / 3.0).abs(),
            (m.second_c - 1.0 / 3.0).abs(),
        ]
    };
    let alpha = Moments::of(&crate::baker::scatter(&p, &[period], PeriodClass::Alpha, false)?);
    let beta = Moments::of(&crate::baker::scatter(&p, &[period], PeriodClass::Beta, false)?);
    let alpha_dev = deviations(&alpha);
    let beta_dev = deviations(&beta);
    let alpha_ok = alpha_dev.iter().all(|&d| d <= TOL);
    let beta_witness = beta_dev.iter().any(|&d| d > TOL + MARGIN);
    Ok(VerificationReport::new(
        "lebesgue_projection",
        alpha_ok && beta_witness,
        json!({
            "M": 2,
            "a": format_rational(&a),
            "period": period,
            "alpha": alpha,
            "beta": beta,
            "alpha_deviation": alpha_dev,
            "beta_deviation": beta_dev,
            "tolerance": TOL,
            "margin": MARGIN,
        }),
    ))
}
