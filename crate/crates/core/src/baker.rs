//! Heterochaos baker maps `f_{a,b}` on `[0,1]^3` and their projection `f_a`
//! on `[0,1]^2`, in exact rational arithmetic.
//!
//! Tiles for `M` pairs and parameter `a`:
//!
//! ```text
//! Ω(a_k) : x_u ∈ [(k-1)a, ka)             x_c ∈ [0, 1]
//! Ω(b_k) : x_u ∈ [Ma, 1]                  x_c ∈ [(k-1)/M, k/M)   (k < M)
//!                                         x_c ∈ [(M-1)/M, 1]     (k = M)
//! ```
//!
//! On `Ω(a_k)` the map is `(x_u, x_c, x_s) ↦ ((x_u-(k-1)a)/a, (x_c+k-1)/M, (1-Mb)x_s)`
//! and on `Ω(b_k)` it is `((x_u-Ma)/(1-Ma), Mx_c-k+1, bx_s+1+b(k-M-1))`.
//! The `x_s` coordinate does not constrain the tile.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::dyck::{h_value, periodic_class, PeriodClass};
use crate::enumeration::{Enumerator, PeriodicSetQuery, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::rational::{ratio, to_f64};
use crate::word::{Alphabet, Bracket, Symbol, Word};

type Q = BigRational;

fn int(k: i64) -> Q {
    Q::from_integer(BigInt::from(k))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BakerParams {
    alphabet: Alphabet,
    a: Q,
    b: Q,
}

impl BakerParams {
    /// Requires `0 < a < 1/M` and `0 < b < 1/M`.
    pub fn new(pairs: usize, a: Q, b: Q) -> Result<Self> {
        let alphabet = Alphabet::new(pairs)?;
        let upper = ratio(1, pairs as i64);
        for (name, v) in [("a", &a), ("b", &b)] {
            if !(v.is_positive() && *v < upper) {
                return Err(Error::InvalidParams(format!("{name} = {v} must lie in (0, 1/{pairs})")));
            }
        }
        Ok(BakerParams { alphabet, a, b })
    }

    /// Parameters for the planar map `f_a`; `b` only drives `x_s`, which the
    /// planar map drops, and is set to `a`.
    pub fn planar(pairs: usize, a: Q) -> Result<Self> {
        Self::new(pairs, a.clone(), a)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    fn m(&self) -> i64 {
        self.alphabet.pairs() as i64
    }

    /// Affine branch and tile of a symbol.
    pub fn step(&self, s: Symbol) -> AffineStep {
        let m = self.m();
        let k = s.index as i64;
        let one = Q::one();
        match s.kind {
            Bracket::Left => AffineStep {
                u: Affine::new(self.a.recip(), -int(k - 1)),
                c: Affine::new(ratio(1, m), ratio(k - 1, m)),
                s: Affine::new(&one - &self.b * int(m), Q::zero()),
                u_dom: Interval::half_open(&self.a * int(k - 1), &self.a * int(k)),
                c_dom: Interval::closed(Q::zero(), one),
            },
            Bracket::Right => {
                let ma = &self.a * int(m);
                let c_dom = if k < m {
                    Interval::half_open(ratio(k - 1, m), ratio(k, m))
                } else {
                    Interval::closed(ratio(k - 1, m), one.clone())
                };
                AffineStep {
                    u: Affine::new((&one - &ma).recip(), -&ma / (&one - &ma)),
                    c: Affine::new(int(m), int(1 - k)),
                    s: Affine::new(self.b.clone(), &one + &self.b * int(k - m - 1)),
                    u_dom: Interval::closed(ma, one),
                    c_dom,
                }
            }
        }
    }

    /// Tile containing `x`, by the half-open conventions.
    pub fn symbol_at(&self, x: &Point3) -> Symbol {
        let m = self.m();
        let ma = &self.a * int(m);
        if x.xu < ma {
            let k = (&x.xu / &self.a).floor().to_integer().to_i64().expect("small tile index") + 1;
            Symbol::left(k.clamp(1, m) as u16)
        } else {
            let k = (&x.xc * int(m)).floor().to_integer().to_i64().expect("small tile index") + 1;
            Symbol::right(k.clamp(1, m) as u16)
        }
    }

    /// `f_{a,b}(x)` and the symbol of the tile `x` lies in.
    pub fn apply(&self, x: &Point3) -> (Point3, Symbol) {
        let s = self.symbol_at(x);
        (self.step(s).apply(x), s)
    }

    /// Symbols of the first `length` iterates of `x`.
    pub fn itinerary(&self, x: &Point3, length: usize) -> Word {
        let mut x = x.clone();
        let mut out = Vec::with_capacity(length);
        for _ in 0..length {
            let (y, s) = self.apply(&x);
            out.push(s);
            x = y;
        }
        Word::from(out)
    }

    /// Float version of [`Self::apply`], used as an independent cross-check.
    pub fn apply_f64(&self, x: [f64; 3]) -> ([f64; 3], Symbol) {
        let m = self.m() as f64;
        let a = to_f64(&self.a);
        let b = to_f64(&self.b);
        let [xu, xc, xs] = x;
        if xu < m * a {
            let k = ((xu / a).floor() as i64 + 1).clamp(1, self.m());
            let kf = k as f64;
            ([(xu - (kf - 1.0) * a) / a, (xc + kf - 1.0) / m, (1.0 - m * b) * xs], Symbol::left(k as u16))
        } else {
            let k = ((xc * m).floor() as i64 + 1).clamp(1, self.m());
            let kf = k as f64;
            ([(xu - m * a) / (1.0 - m * a), m * xc - kf + 1.0, b * xs + 1.0 + b * (kf - m - 1.0)], Symbol::right(k as u16))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Point3 {
    #[serde(with = "crate::rational::serde_string")]
    pub xu: Q,
    #[serde(with = "crate::rational::serde_string")]
    pub xc: Q,
    #[serde(with = "crate::rational::serde_string")]
    pub xs: Q,
}

impl Point3 {
    pub fn new(xu: Q, xc: Q, xs: Q) -> Self {
        Point3 { xu, xc, xs }
    }

    pub fn origin() -> Self {
        Point3::new(Q::zero(), Q::zero(), Q::zero())
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [to_f64(&self.xu), to_f64(&self.xc), to_f64(&self.xs)]
    }
}

/// `x ↦ slope·x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub slope: Q,
    pub intercept: Q,
}

impl Affine {
    fn new(slope: Q, intercept: Q) -> Self {
        Affine { slope, intercept }
    }

    pub fn identity() -> Self {
        Affine::new(Q::one(), Q::zero())
    }

    pub fn apply(&self, x: &Q) -> Q {
        &self.slope * x + &self.intercept
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Affine) -> Affine {
        Affine::new(&next.slope * &self.slope, &next.slope * &self.intercept + &next.intercept)
    }

    /// The unique fixed point, if the slope is not one.
    pub fn fixed_point(&self) -> Option<Q> {
        let denom = Q::one() - &self.slope;
        (!denom.is_zero()).then(|| &self.intercept / denom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
    pub hi_closed: bool,
}

impl Interval {
    fn half_open(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, hi_closed: false }
    }

    fn closed(lo: Q, hi: Q) -> Self {
        Interval { lo, hi, hi_closed: true }
    }

    pub fn contains_closed(&self, x: &Q) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains(&self, x: &Q) -> bool {
        self.lo <= *x && (*x < self.hi || (self.hi_closed && *x == self.hi))
    }

    pub fn contains_open(&self, x: &Q) -> bool {
        self.lo < *x && *x < self.hi
    }
}

/// Branch of the map on one tile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineStep {
    pub u: Affine,
    pub c: Affine,
    pub s: Affine,
    pub u_dom: Interval,
    pub c_dom: Interval,
}

impl AffineStep {
    pub fn apply(&self, x: &Point3) -> Point3 {
        Point3::new(self.u.apply(&x.xu), self.c.apply(&x.xc), self.s.apply(&x.xs))
    }

    pub fn in_closed_tile(&self, x: &Point3) -> bool {
        self.u_dom.contains_closed(&x.xu) && self.c_dom.contains_closed(&x.xc)
    }

    /// Interior of the tile's `(x_u, x_c)` footprint in the plane.
    pub fn in_open_tile(&self, x: &Point3) -> bool {
        self.u_dom.contains_open(&x.xu) && self.c_dom.contains_open(&x.xc)
    }
}

/// Exact periodic point of `f_{a,b}` coded by a word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitSolution {
    pub word: Word,
    pub class: PeriodClass,
    pub point: Point3,
    #[serde(with = "crate::rational::serde_string")]
    pub lambda_u: Q,
    #[serde(with = "crate::rational::serde_string")]
    pub lambda_c: Q,
    #[serde(with = "crate::rational::serde_string")]
    pub lambda_s: Q,
    pub unstable_dim: u8,
    /// Iterate `i` lies in the open interior of its tile.
    pub interior: Vec<bool>,
    pub in_lambda: bool,
}

/// Compose the `n` affine branches of `w` and return the fixed point of the
/// composition, checking every iterate against its closed tile.
pub fn solve_periodic_point(p: &BakerParams, w: &[Symbol]) -> Result<OrbitSolution> {
    solve_with(p, w, true)
}

fn solve_with(p: &BakerParams, w: &[Symbol], with_xs: bool) -> Result<OrbitSolution> {
    let table = StepTable::new(p);
    solve_in(&table, w, with_xs)
}

fn solve_in(table: &StepTable, w: &[Symbol], with_xs: bool) -> Result<OrbitSolution> {
    let word = || Word::from(w).to_string();
    for s in w {
        if !table.alphabet.contains(*s) {
            return Err(Error::InvalidSymbol { token: s.to_string(), reason: "index outside the alphabet".into() });
        }
    }
    let class = periodic_class(w)?.ok_or_else(|| Error::NotPeriodicPoint(word()))?;
    if class == PeriodClass::Zero {
        return Err(Error::NonHyperbolic(word()));
    }
    let codes: Vec<usize> = w.iter().map(|&s| table.alphabet.code(s)).collect();
    let core = match table.small.as_ref().map(|steps| solve_core(steps, &codes, with_xs)) {
        Some(Ok(core)) => core.map(|x| Q::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))),
        Some(Err(CoreError::Overflow)) | None => match solve_core(&table.big, &codes, with_xs) {
            Ok(core) => core,
            Err(e) => return Err(e.into_error(word())),
        },
        Some(Err(e)) => return Err(e.into_error(word())),
    };

    let h = h_value(w);
    let in_lambda = core.interior.iter().all(|&f| f);
    let [xu, xc, xs] = core.point;
    let [lambda_u, lambda_c, lambda_s] = core.slopes;
    Ok(OrbitSolution {
        word: Word::from(w),
        class,
        point: Point3::new(xu, xc, xs),
        lambda_u,
        lambda_c,
        lambda_s,
        unstable_dim: if h > 0 { 1 } else { 2 },
        interior: core.interior,
        in_lambda,
    })
}

/// Exact arithmetic that may refuse an operation: machine-size rationals
/// report overflow, big rationals never do.
trait Field: Clone + PartialOrd + Sized {
    fn int(k: i32) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
}

impl Field for Q {
    fn int(k: i32) -> Self {
        Q::from_integer(k.into())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        (!o.is_zero()).then(|| self / o)
    }
}

type Small = Ratio<i128>;

impl Field for Small {
    fn int(k: i32) -> Self {
        Small::from_integer(k.into())
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            None
        } else {
            self.checked_div(o)
        }
    }
}

fn to_small(x: &Q) -> Option<Small> {
    Some(Small::new(x.numer().to_i128()?, x.denom().to_i128()?))
}

/// One tile branch in a given number type.
#[derive(Clone)]
struct Branch<T> {
    lin: [(T, T); 3],
    u_dom: (T, T),
    c_dom: (T, T),
}

impl<T: Field> Branch<T> {
    fn convert(st: &AffineStep, f: impl Fn(&Q) -> Option<T>) -> Option<Self> {
        Some(Branch {
            lin: [
                (f(&st.u.slope)?, f(&st.u.intercept)?),
                (f(&st.c.slope)?, f(&st.c.intercept)?),
                (f(&st.s.slope)?, f(&st.s.intercept)?),
            ],
            u_dom: (f(&st.u_dom.lo)?, f(&st.u_dom.hi)?),
            c_dom: (f(&st.c_dom.lo)?, f(&st.c_dom.hi)?),
        })
    }
}

/// Branches of every symbol, indexed by symbol code, in both number types.
struct StepTable {
    alphabet: Alphabet,
    small: Option<Vec<Branch<Small>>>,
    big: Vec<Branch<Q>>,
}

impl StepTable {
    fn new(p: &BakerParams) -> Self {
        let steps: Vec<AffineStep> = p.alphabet.symbols().map(|s| p.step(s)).collect();
        let big = steps.iter().map(|st| Branch::convert(st, |x| Some(x.clone())).expect("infallible")).collect();
        let small = steps.iter().map(|st| Branch::convert(st, to_small)).collect();
        StepTable { alphabet: p.alphabet, small, big }
    }
}

struct Core<T> {
    point: [T; 3],
    slopes: [T; 3],
    interior: Vec<bool>,
}

impl<T> Core<T> {
    fn map<U>(self, f: impl Fn(&T) -> U) -> Core<U> {
        Core { point: self.point.each_ref().map(&f), slopes: self.slopes.each_ref().map(&f), interior: self.interior }
    }
}

enum CoreError {
    Overflow,
    Degenerate,
    Violation(usize),
}

impl CoreError {
    fn into_error(self, word: String) -> Error {
        match self {
            CoreError::Violation(step) => Error::ConstraintViolation { word, step },
            CoreError::Degenerate | CoreError::Overflow => Error::NonHyperbolic(word),
        }
    }
}

fn solve_core<T: Field>(table: &[Branch<T>], codes: &[usize], with_xs: bool) -> Result<Core<T>, CoreError> {
    use CoreError::*;
    let coords = if with_xs { 3 } else { 2 };
    // compose x ↦ S x + C along the word
    let mut comp: [(T, T); 3] = std::array::from_fn(|_| (T::int(1), T::int(0)));
    for &c in codes {
        for (acc, (slope, icpt)) in comp.iter_mut().zip(&table[c].lin).take(coords) {
            let s = slope.mul(&acc.0).ok_or(Overflow)?;
            let i = slope.mul(&acc.1).ok_or(Overflow)?.add(icpt).ok_or(Overflow)?;
            *acc = (s, i);
        }
    }
    let mut point: [T; 3] = std::array::from_fn(|_| T::int(0));
    for k in 0..coords {
        let (s, c) = &comp[k];
        let denom = T::int(1).sub(s).ok_or(Overflow)?;
        if denom == T::int(0) {
            return Err(Degenerate);
        }
        point[k] = c.div(&denom).ok_or(Overflow)?;
    }

    let mut x = point.clone();
    let mut interior = Vec::with_capacity(codes.len());
    for (i, &c) in codes.iter().enumerate() {
        let b = &table[c];
        let (u, v) = (&x[0], &x[1]);
        let closed = b.u_dom.0 <= *u && *u <= b.u_dom.1 && b.c_dom.0 <= *v && *v <= b.c_dom.1;
        if !closed {
            return Err(Violation(i));
        }
        interior.push(b.u_dom.0 < *u && *u < b.u_dom.1 && b.c_dom.0 < *v && *v < b.c_dom.1);
        for (xk, (slope, icpt)) in x.iter_mut().zip(&b.lin).take(coords) {
            *xk = slope.mul(xk).ok_or(Overflow)?.add(icpt).ok_or(Overflow)?;
        }
    }
    debug_assert!(x[..coords] == point[..coords]);
    let slopes = comp.map(|(s, _)| s);
    let slopes = if with_xs { slopes } else { [slopes[0].clone(), slopes[1].clone(), T::int(1)] };
    Ok(Core { point, slopes, interior })
}

/// One periodic point projected to the `(x_u, x_c)` plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScatterRow {
    pub period: usize,
    pub class: PeriodClass,
    pub word: Word,
    pub xu: Q,
    pub xc: Q,
    pub xs: Option<Q>,
    pub in_lambda: bool,
}

/// Solve every periodic point of the given class and periods, in canonical
/// word order. `with_xs = false` gives the planar map `f_a`.
pub fn scatter(p: &BakerParams, periods: &[usize], class: PeriodClass, with_xs: bool) -> Result<Vec<ScatterRow>> {
    scatter_with_budget(p, periods, class, with_xs, DEFAULT_BUDGET)
}

pub fn scatter_with_budget(
    p: &BakerParams,
    periods: &[usize],
    class: PeriodClass,
    with_xs: bool,
    budget: u64,
) -> Result<Vec<ScatterRow>> {
    if class == PeriodClass::Zero {
        return Err(Error::InvalidArgument("scatter is defined for the alpha and beta classes".into()));
    }
    let table = StepTable::new(p);
    let mut rows = Vec::new();
    for &n in periods {
        let q = PeriodicSetQuery { alphabet: p.alphabet, n, class: class.into() };
        let words = Enumerator::new(q).with_budget(budget).collect()?;
        let mut part = words
            .par_iter()
            .map(|w| {
                solve_in(&table, w, with_xs).map(|sol| ScatterRow {
                    period: n,
                    class,
                    word: sol.word,
                    xu: sol.point.xu,
                    xc: sol.point.xc,
                    xs: with_xs.then_some(sol.point.xs),
                    in_lambda: sol.in_lambda,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.append(&mut part);
    }
    Ok(rows)
}

/// First and second moments of `x_u`, `x_c` over a point cloud.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub count: usize,
    pub mean_u: f64,
    pub mean_c: f64,
    pub second_u: f64,
    pub second_c: f64,
    /// Fraction of points with `x_c < 1/2`.
    pub lower_half_c: f64,
}

impl Moments {
    pub fn of(rows: &[ScatterRow]) -> Moments {
        let n = rows.len().max(1) as f64;
        let half = ratio(1, 2);
        let (mut su, mut sc, mut su2, mut sc2, mut low) = (0.0, 0.0, 0.0, 0.0, 0usize);
        for r in rows {
            let (u, c) = (to_f64(&r.xu), to_f64(&r.xc));
            su += u;
            sc += c;
            su2 += u * u;
            sc2 += c * c;
            if r.xc.cmp(&half) == Ordering::Less {
                low += 1;
            }
        }
        Moments {
            count: rows.len(),
            mean_u: su / n,
            mean_c: sc / n,
            second_u: su2 / n,
            second_c: sc2 / n,
            lower_half_c: low as f64 / n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word;

    fn params(a: (i64, i64), b: (i64, i64)) -> BakerParams {
        BakerParams::new(2, ratio(a.0, a.1), ratio(b.0, b.1)).unwrap()
    }

    fn pt(u: (i64, i64), c: (i64, i64), s: (i64, i64)) -> Point3 {
        Point3::new(ratio(u.0, u.1), ratio(c.0, c.1), ratio(s.0, s.1))
    }

    #[test]
    fn parameter_range() {
        assert!(BakerParams::new(2, ratio(1, 2), ratio(1, 5)).is_err());
        assert!(BakerParams::new(2, ratio(0, 1), ratio(1, 5)).is_err());
        assert!(BakerParams::new(2, ratio(1, 5), ratio(-1, 5)).is_err());
        assert!(BakerParams::new(3, ratio(1, 4), ratio(1, 4)).is_ok());
    }

    #[test]
    fn apply_examples() {
        let p = params((1, 5), (1, 5));
        assert_eq!(p.apply(&Point3::origin()), (Point3::origin(), Symbol::left(1)));

        let p = params((1, 3), (1, 5));
        let (y, s) = p.apply(&pt((1, 2), (0, 1), (0, 1)));
        assert_eq!(s, Symbol::left(2));
        // x_s image is (1 - 2b)·0 = 0
        assert_eq!(y, pt((1, 2), (1, 2), (0, 1)));

        let p = params((1, 5), (1, 5));
        let (y, s) = p.apply(&pt((9, 10), (1, 4), (1, 1)));
        assert_eq!(s, Symbol::right(1));
        assert_eq!(y.xc, ratio(1, 2));
        // (9/10 - 2/5)/(3/5) = 5/6, x_s = b + 1 + b(1-3) = 1 - b = 4/5
        assert_eq!(y.xu, ratio(5, 6));
        assert_eq!(y.xs, ratio(4, 5));
    }

    #[test]
    fn tile_boundaries() {
        let p = params((1, 5), (1, 5));
        assert_eq!(p.symbol_at(&pt((1, 5), (0, 1), (0, 1))), Symbol::left(2));
        assert_eq!(p.symbol_at(&pt((2, 5), (0, 1), (0, 1))), Symbol::right(1));
        assert_eq!(p.symbol_at(&pt((2, 5), (1, 2), (0, 1))), Symbol::right(2));
        assert_eq!(p.symbol_at(&pt((1, 1), (1, 1), (1, 1))), Symbol::right(2));
    }

    #[test]
    fn origin_orbit() {
        let p = params((1, 5), (1, 5));
        let sol = solve_periodic_point(&p, &word!["a1"]).unwrap();
        assert_eq!(sol.point, Point3::origin());
        assert_eq!(sol.lambda_u, ratio(5, 1));
        assert_eq!(sol.lambda_c, ratio(1, 2));
        assert_eq!(sol.lambda_s, ratio(3, 5));
        assert_eq!(sol.unstable_dim, 1);
        assert_eq!(sol.interior, vec![false]);
        assert!(!sol.in_lambda);
        assert_eq!(p.itinerary(&sol.point, 4), word!["a1", "a1", "a1", "a1"]);
    }

    #[test]
    fn two_cycle() {
        // x_c: a2 then a1 compose to x/4 + 1/4; x_u: 5(5x - 1) = 25x - 5
        let p = params((1, 5), (1, 5));
        let sol = solve_periodic_point(&p, &word!["a2", "a1"]).unwrap();
        assert_eq!(sol.point.xc, ratio(1, 3));
        assert_eq!(sol.point.xu, ratio(5, 24));
        assert_eq!(sol.point.xs, ratio(0, 1));
        assert!(sol.in_lambda);
        assert_eq!(p.itinerary(&sol.point, 4), word!["a2", "a1", "a2", "a1"]);

        // float iteration of the printed formulas lands on the same cycle
        let mut x = sol.point.to_f64();
        for _ in 0..2 {
            x = p.apply_f64(x).0;
        }
        assert!((x[1] - 1.0 / 3.0).abs() < 1e-12 && (x[0] - 5.0 / 24.0).abs() < 1e-12);
    }

    #[test]
    fn solver_errors() {
        let p = params((1, 5), (1, 5));
        assert!(matches!(solve_periodic_point(&p, &word!["a1", "b1"]), Err(Error::NonHyperbolic(_))));
        assert!(matches!(solve_periodic_point(&p, &word!["a1", "b2"]), Err(Error::NotPeriodicPoint(_))));
        assert!(matches!(solve_periodic_point(&p, &word![]), Err(Error::EmptyWord)));
        assert!(solve_periodic_point(&p, &word!["a3"]).is_err());
    }

    #[test]
    fn beta_class_is_two_unstable() {
        let p = params((1, 5), (1, 5));
        let q = PeriodicSetQuery::new(2, 4, PeriodClass::Beta).unwrap();
        for w in Enumerator::new(q).iter().unwrap() {
            let sol = solve_periodic_point(&p, &w).unwrap();
            assert_eq!(sol.unstable_dim, 2);
            let h = h_value(&w);
            assert_eq!(sol.lambda_c, Q::from_integer(BigInt::from(2).pow((-h) as u32)));
            assert!(sol.lambda_c > Q::one());
        }
    }

    #[test]
    fn scatter_rejects_zero_class() {
        let p = BakerParams::planar(2, ratio(1, 3)).unwrap();
        assert!(scatter(&p, &[4], PeriodClass::Zero, false).is_err());
        let rows = scatter(&p, &[3], PeriodClass::Alpha, false).unwrap();
        assert_eq!(rows.len(), 20);
        assert!(rows.iter().all(|r| r.xs.is_none()));
    }
}
