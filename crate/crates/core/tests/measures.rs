use dyck_shift::krieger::{block_entropy, mixture_cylinder, mme_cylinder, Side};
use dyck_shift::measures::*;
use dyck_shift::oracle::{mc_cylinder_table, mc_mme_cylinder, MonteCarloConfig};
use dyck_shift::rational::ratio;
use dyck_shift::{word, Alphabet, Word};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn ab2() -> Alphabet {
    Alphabet::new(2).unwrap()
}

fn nu(side: Side, v: &Word) -> BigRational {
    mme_cylinder(&ab2(), side, v).value().clone()
}

#[test]
fn balance_identities() {
    assert_eq!(nu(Side::Alpha, &word!["a1"]), ratio(1, 3));
    assert_eq!(nu(Side::Alpha, &word!["b1"]), ratio(1, 6));
    assert_eq!(nu(Side::Alpha, &word!["a1", "b2"]), ratio(0, 1));
    assert_eq!(nu(Side::Beta, &word!["b2"]), ratio(1, 3));
    assert_eq!(nu(Side::Beta, &word!["a2"]), ratio(1, 6));
    assert_eq!(nu(Side::Alpha, &Word::empty()), ratio(1, 1));
    assert_eq!(mixture_cylinder(&ab2(), &word!["a1"]).value(), &ratio(1, 4));
}

#[test]
fn reverse_mirror_exchanges_the_measures() {
    let ab = ab2();
    for len in 1..=4 {
        for r in 0..(ab.size() as u64).pow(len) {
            let v = ab.word_from_rank(r, len as usize);
            assert_eq!(nu(Side::Alpha, &v), nu(Side::Beta, &v.reverse_mirror()), "[{v}]");
        }
    }
}

#[test]
fn entropy_exceeds_log_of_full_shift() {
    let h: Vec<f64> = (1..=4).map(|m| block_entropy(&ab2(), Side::Alpha, m)).collect();
    assert!(h.iter().all(|&x| x >= 3f64.ln() - 1e-12));
    assert!(h.windows(2).all(|p| p[1] < p[0]));
}

fn cylinder(max_len: usize) -> impl Strategy<Value = Word> {
    let ab = ab2();
    prop::collection::vec(0..ab.size(), 0..=max_len).prop_map(move |c| c.into_iter().map(|k| ab.symbol_from_code(k)).collect())
}

proptest! {
    #[test]
    fn kolmogorov_consistency(v in cylinder(6), side in prop_oneof![Just(Side::Alpha), Just(Side::Beta)]) {
        let ab = ab2();
        let mass = nu(side, &v);
        let right: BigRational = ab.symbols().map(|s| nu(side, &v.concat(&Word::from(vec![s])))).sum();
        let left: BigRational = ab.symbols().map(|s| nu(side, &Word::from(vec![s]).concat(&v))).sum();
        prop_assert_eq!(&right, &mass);
        prop_assert_eq!(&left, &mass);
    }

    #[test]
    fn zero_words_are_null(v in cylinder(6)) {
        if dyck_shift::reduce(&v).is_zero() {
            prop_assert!(nu(Side::Alpha, &v).is_zero());
            prop_assert!(nu(Side::Beta, &v).is_zero());
        }
    }
}

#[test]
fn monte_carlo_examples() {
    let cfg = MonteCarloConfig::default();
    let ab = ab2();
    let a1 = mc_mme_cylinder(&ab, Side::Alpha, &word!["a1"], &cfg).unwrap();
    assert!((a1.estimate - 1.0 / 3.0).abs() <= 3.0 * a1.stderr, "{a1:?}");
    let b1 = mc_mme_cylinder(&ab, Side::Alpha, &word!["b1"], &cfg).unwrap();
    assert!((b1.estimate - 1.0 / 6.0).abs() <= 3.0 * b1.stderr, "{b1:?}");
    let zero = mc_mme_cylinder(&ab, Side::Alpha, &word!["a1", "b2"], &cfg).unwrap();
    assert_eq!(zero.hits, 0);
    assert_eq!(a1.discarded, 0);
}

#[test]
fn monte_carlo_is_deterministic() {
    let cfg = MonteCarloConfig { samples: 20_000, ..Default::default() };
    let a = mc_cylinder_table(&ab2(), Side::Beta, 2, &cfg).unwrap();
    let b = mc_cylinder_table(&ab2(), Side::Beta, 2, &cfg).unwrap();
    assert_eq!(a, b);
    let other = mc_cylinder_table(&ab2(), Side::Beta, 2, &MonteCarloConfig { seed: 1, ..cfg }).unwrap();
    assert_ne!(a.counts, other.counts);
}

#[test]
fn cyclic_counts_match_prefix_counts() {
    let ab = ab2();
    for ensemble in [Ensemble::Alpha, Ensemble::Beta, Ensemble::Zero, Ensemble::Union] {
        for (n, m) in [(4, 1), (6, 2), (7, 3)] {
            if ensemble == Ensemble::Zero && n % 2 == 1 {
                continue;
            }
            let e = build_empirical(&ab, n, ensemble, m).unwrap();
            assert_eq!(e.table(), prefix_frequencies(&ab, n, ensemble, m).unwrap(), "{ensemble} n={n} m={m}");
            assert!(e.inadmissible_support().is_empty());
            let total: BigRational = e.table().into_iter().map(|(_, f)| f).sum();
            assert!(total.is_one());
        }
    }
}

#[test]
fn zero_class_is_empty_at_odd_periods() {
    assert!(build_empirical(&ab2(), 5, Ensemble::Zero, 1).is_err());
}

#[test]
fn union_single_symbols_are_exactly_balanced() {
    let ab = ab2();
    for n in 1..=10 {
        let e = union_empirical(&ab, n, 1).unwrap();
        for s in ab.symbols() {
            assert_eq!(e.frequency(&[s]), ratio(1, 4), "n={n} {s}");
        }
    }
}

#[test]
fn signed_ensembles_approach_the_measures() {
    let ab = ab2();
    for (ensemble, target) in [(Ensemble::Alpha, Target::Alpha), (Ensemble::Beta, Target::Beta)] {
        for m in [1, 2] {
            let r = convergence_series(&ab, ensemble, m, &[4, 8, 12], target).unwrap();
            let d: Vec<&BigRational> = r.rows.iter().map(|row| &row.sup_distance).collect();
            assert!(d[0] > d[1] && d[1] > d[2], "{ensemble} m={m}: {d:?}");
        }
    }
    let union = convergence_series(&ab, Ensemble::Union, 2, &[6, 12], Target::Mixture).unwrap();
    assert!(union.rows[1].sup_distance < union.rows[0].sup_distance);
}
