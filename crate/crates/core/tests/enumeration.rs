use std::collections::HashSet;

use dyck_shift::enumeration::*;
use dyck_shift::oracle::brute_periodic;
use dyck_shift::{word, Alphabet, Error, PeriodClass, Word};
use num_bigint::BigUint;

fn words(pairs: usize, n: usize, class: impl Into<ClassFilter>) -> Vec<Word> {
    Enumerator::new(PeriodicSetQuery::new(pairs, n, class).unwrap()).collect().unwrap()
}

#[test]
fn brute_force_small_periods() {
    let ab = Alphabet::new(2).unwrap();
    let one = brute_periodic(&ab, 1, 1 << 20).unwrap();
    let expect = [("a1", PeriodClass::Alpha), ("a2", PeriodClass::Alpha), ("b1", PeriodClass::Beta), ("b2", PeriodClass::Beta)];
    assert_eq!(one.len(), 4);
    for (w, c) in expect {
        assert!(one.contains(&(ab.parse_word(w).unwrap(), c)));
    }

    let two = brute_periodic(&ab, 2, 1 << 20).unwrap();
    assert_eq!(two.len(), 12);
    for c in PeriodClass::ALL {
        assert_eq!(two.iter().filter(|(_, k)| *k == c).count(), 4);
    }

    let three = brute_periodic(&ab, 3, 1 << 20).unwrap();
    assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Alpha).count(), 20);
    assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Beta).count(), 20);
    assert_eq!(three.iter().filter(|(_, k)| *k == PeriodClass::Zero).count(), 0);
}

#[test]
fn enumeration_matches_brute_force() {
    for pairs in [2, 3] {
        let ab = Alphabet::new(pairs).unwrap();
        for n in 1..=6 {
            let brute: HashSet<Word> = brute_periodic(&ab, n, 1 << 24).unwrap().into_iter().map(|(w, _)| w).collect();
            let fast: HashSet<Word> = words(pairs, n, ClassFilter::All).into_iter().collect();
            assert_eq!(fast, brute, "M={pairs} n={n}");
        }
    }
}

#[test]
fn closed_forms() {
    assert_eq!(count_signed_class(2, 3), BigUint::from(20u32));
    assert_eq!(count_zero_class(2, 2), BigUint::from(4u32));
    assert_eq!(count_zero_class(2, 3), BigUint::from(0u32));
    for n in 1..=8 {
        for c in [PeriodClass::Alpha, PeriodClass::Beta, PeriodClass::Zero] {
            let q = PeriodicSetQuery::new(2, n, c).unwrap();
            assert_eq!(BigUint::from(words(2, n, c).len()), count_closed_form(&q), "n={n} {c}");
        }
    }
}

#[test]
fn canonical_order_and_streaming_agree() {
    let q = PeriodicSetQuery::new(2, 6, ClassFilter::All).unwrap();
    let e = Enumerator::new(q);
    let streamed: Vec<Word> = e.iter().unwrap().collect();
    let collected = e.collect().unwrap();
    assert_eq!(streamed, collected);
    let mut sequential = Vec::new();
    e.for_each(|w, _| sequential.push(Word::from(w))).unwrap();
    assert_eq!(sequential, collected);

    let ab = Alphabet::new(2).unwrap();
    let ranks: Vec<usize> = collected
        .iter()
        .map(|w| w.iter().fold(0, |r, &s| r * ab.size() + ab.code(s)))
        .collect();
    assert!(ranks.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn reverse_mirror_maps_alpha_onto_beta() {
    for n in 1..=8 {
        let alpha: HashSet<Word> = words(2, n, PeriodClass::Alpha).into_iter().collect();
        let beta: HashSet<Word> = words(2, n, PeriodClass::Beta).into_iter().collect();
        let image: HashSet<Word> = alpha.iter().map(Word::reverse_mirror).collect();
        assert_eq!(image, beta, "n={n}");
    }
}

#[test]
fn classes_are_shift_closed() {
    for c in PeriodClass::ALL {
        let set: HashSet<Word> = words(2, 7, c).into_iter().collect();
        for w in &set {
            for k in 1..w.len() {
                assert!(set.contains(&w.rotate(k)), "{c}: [{w}] rotated by {k}");
            }
        }
    }
}

#[test]
fn class_filters() {
    let all = words(2, 4, ClassFilter::All);
    let zero = words(2, 4, PeriodClass::Zero);
    assert!(zero.contains(&word!["a1", "b1", "b2", "a2"]));
    assert!(!all.contains(&word!["a1", "b2", "a1", "a1"]));
    assert_eq!(all.len(), 2 * words(2, 4, PeriodClass::Alpha).len() + zero.len());
}

#[test]
fn budget_is_enforced_before_work() {
    let q = PeriodicSetQuery::new(2, 40, PeriodClass::Alpha).unwrap();
    match Enumerator::new(q).with_budget(1000).count() {
        Err(Error::ResourceLimit { budget, .. }) => assert_eq!(budget, 1000),
        other => panic!("expected a resource limit, got {other:?}"),
    }
    assert!(PeriodicSetQuery::new(2, 0, ClassFilter::All).is_err());
    assert!(PeriodicSetQuery::new(1, 3, ClassFilter::All).is_err());
}

#[test]
fn projected_visits_counts_search_nodes() {
    let ab = Alphabet::new(2).unwrap();
    for n in 1..=6 {
        let mut nodes = 1u64;
        for len in 1..=n {
            nodes += (0..(ab.size() as u64).pow(len as u32))
                .filter(|&r| !dyck_shift::reduce(&ab.word_from_rank(r, len)).is_zero())
                .count() as u64;
        }
        assert_eq!(projected_visits(ab, n), BigUint::from(nodes), "n={n}");
    }
}

#[test]
fn bounds_hold_through_twenty() {
    let scan = scan_count_bounds(2, 1..=20);
    assert_eq!(scan.holds_from, Some(1));
    assert!((1..=20).all(|n| verify_count_bounds(2, n)));
}

#[test]
fn count_report_json() {
    let q = PeriodicSetQuery::new(2, 2, PeriodClass::Alpha).unwrap();
    let r = CountReport::with_enumeration(&q, DEFAULT_BUDGET).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["closed_form"], "4");
    assert_eq!(v["enumerated"], "4");
    assert_eq!(serde_json::from_value::<CountReport>(v).unwrap(), r);
}
