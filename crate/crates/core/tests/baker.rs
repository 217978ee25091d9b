use std::collections::HashSet;

use dyck_shift::baker::*;
use dyck_shift::enumeration::{count_signed_class, Enumerator, PeriodicSetQuery};
use dyck_shift::rational::{parse_rational, ratio, to_f64};
use dyck_shift::{h_value, word, Error, PeriodClass, Word};
use num_rational::BigRational;
use proptest::prelude::*;

fn q(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn pt(u: &str, c: &str, s: &str) -> Point3 {
    Point3::new(q(u), q(c), q(s))
}

#[test]
fn apply_examples() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    assert_eq!(p.apply(&Point3::origin()), (Point3::origin(), "a1".parse().unwrap()));

    let p = BakerParams::planar(2, ratio(1, 3)).unwrap();
    let (x, s) = p.apply(&pt("1/2", "0", "0"));
    assert_eq!(s.to_string(), "a2");
    assert_eq!((x.xu, x.xc, x.xs), (q("1/2"), q("1/2"), q("0")));

    let p = BakerParams::planar(2, ratio(1, 5)).unwrap();
    let (x, s) = p.apply(&pt("9/10", "1/4", "1"));
    assert_eq!(s.to_string(), "b1");
    assert_eq!(x.xc, q("1/2"));
}

#[test]
fn itinerary_of_origin_is_constant() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    assert_eq!(p.itinerary(&Point3::origin(), 5), word!["a1", "a1", "a1", "a1", "a1"]);
}

#[test]
fn solve_examples() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    let sol = solve_periodic_point(&p, &word!["a1"]).unwrap();
    assert_eq!(sol.point, Point3::origin());
    assert_eq!((sol.lambda_u.clone(), sol.lambda_c.clone(), sol.lambda_s.clone()), (q("5"), q("1/2"), q("3/5")));
    assert_eq!(sol.unstable_dim, 1);
    assert_eq!(sol.interior, vec![false]);
    assert!(!sol.in_lambda);

    let two = solve_periodic_point(&p, &word!["a2", "a1"]).unwrap();
    assert_eq!(two.point.xc, q("1/3"));
    assert_eq!(two.point.xu, q("5/24"));
    assert!(two.in_lambda);
    let mut x = two.point.to_f64();
    for _ in 0..2 {
        x = p.apply_f64(x).0;
    }
    assert!((x[1] - 1.0 / 3.0).abs() < 1e-12);

    for w in Enumerator::new(PeriodicSetQuery::new(2, 4, PeriodClass::Beta).unwrap()).collect().unwrap() {
        let sol = solve_periodic_point(&p, &w).unwrap();
        assert_eq!(sol.unstable_dim, 2);
        assert_eq!(sol.lambda_c, BigRational::from_integer(2.into()).pow(-h_value(&w) as i32));
    }
}

#[test]
fn solver_errors() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    assert!(matches!(solve_periodic_point(&p, &word!["a1", "b1"]), Err(Error::NonHyperbolic(_))));
    assert!(matches!(solve_periodic_point(&p, &word!["a1", "b2"]), Err(Error::NotPeriodicPoint(_))));
    assert!(solve_periodic_point(&p, &word!["a3"]).is_err());
    assert!(solve_periodic_point(&p, &Word::empty()).is_err());
}

#[test]
fn parameter_range() {
    assert!(BakerParams::new(2, ratio(1, 2), ratio(1, 5)).is_err());
    assert!(BakerParams::new(2, ratio(0, 1), ratio(1, 5)).is_err());
    assert!(BakerParams::new(2, ratio(1, 5), ratio(1, 2)).is_err());
    assert!(BakerParams::new(3, ratio(1, 4), ratio(1, 4)).is_ok());
}

#[test]
fn solved_counts_and_distinct_points() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    for n in 1..=7 {
        let mut points = HashSet::new();
        for class in [PeriodClass::Alpha, PeriodClass::Beta] {
            let rows = scatter(&p, &[n], class, true).unwrap();
            assert_eq!(num_bigint::BigUint::from(rows.len()), count_signed_class(2, n));
            for r in rows {
                assert!(points.insert((r.xu, r.xc, r.xs)), "n={n}");
            }
        }
    }
}

#[test]
fn boundary_cases_touch_tile_edges() {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5)).unwrap();
    for class in [PeriodClass::Alpha, PeriodClass::Beta] {
        for w in Enumerator::new(PeriodicSetQuery::new(2, 5, class).unwrap()).collect().unwrap() {
            let sol = solve_periodic_point(&p, &w).unwrap();
            let mut x = sol.point.clone();
            for (i, &s) in w.iter().enumerate() {
                let step = p.step(s);
                assert!(step.in_closed_tile(&x));
                assert_eq!(step.in_open_tile(&x), sol.interior[i]);
                x = step.apply(&x);
            }
        }
    }
}

#[test]
fn scatter_planar_has_no_xs() {
    let p = BakerParams::planar(2, ratio(1, 3)).unwrap();
    let rows = scatter(&p, &[5], PeriodClass::Alpha, false).unwrap();
    assert!(rows.iter().all(|r| r.xs.is_none()));
    assert!(scatter(&p, &[5], PeriodClass::Zero, false).is_err());
}

fn admissible(n: usize) -> impl Strategy<Value = Word> {
    let ab = dyck_shift::Alphabet::new(2).unwrap();
    prop::collection::vec(0usize..4, n..=n)
        .prop_map(move |c| c.into_iter().map(|k| ab.symbol_from_code(k)).collect::<Word>())
        .prop_filter("signed periodic class", |w| {
            matches!(dyck_shift::periodic_class(w), Ok(Some(c)) if c != PeriodClass::Zero)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn float_iteration_tracks_exact_orbit(w in (1usize..=10).prop_flat_map(admissible), a in 2i64..6) {
        let p = BakerParams::new(2, ratio(1, a + 1), ratio(1, a + 2)).unwrap();
        let sol = solve_periodic_point(&p, &w).unwrap();
        let mut x = sol.point.clone();
        let mut f = x.to_f64();
        for &s in w.iter() {
            let st = p.step(s);
            x = st.apply(&x);
            f = [
                to_f64(&st.u.slope) * f[0] + to_f64(&st.u.intercept),
                to_f64(&st.c.slope) * f[1] + to_f64(&st.c.intercept),
                to_f64(&st.s.slope) * f[2] + to_f64(&st.s.intercept),
            ];
            for (e, g) in x.to_f64().iter().zip(f) {
                prop_assert!((e - g).abs() < 1e-9);
            }
        }
        prop_assert_eq!(&x, &sol.point);
        if sol.in_lambda {
            prop_assert_eq!(p.itinerary(&sol.point, w.len()), w.clone());
        }
    }
}

#[test]
fn large_denominators_stay_exact() {
    let p = BakerParams::new(2, q("1000/3001"), q("999/2999")).unwrap();
    let w = word!["a2", "a1", "b1", "a1", "a2", "a2", "b2", "a1", "a1", "a2", "a2", "a1", "a2", "a1"];
    let sol = solve_periodic_point(&p, &w).unwrap();
    assert!(sol.point.xu.denom().bits() > 127);
    let mut x = sol.point.clone();
    for &s in w.iter() {
        x = p.step(s).apply(&x);
    }
    assert_eq!(x, sol.point);
}
