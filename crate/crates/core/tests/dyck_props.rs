use dyck_shift::oracle::{naive_periodic_class, naive_reduce};
use dyck_shift::{h_value, periodic_class, reduce, Alphabet, PeriodClass, ReducedForm, Word};
use proptest::prelude::*;

fn word(pairs: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let ab = Alphabet::new(pairs).unwrap();
    prop::collection::vec(0..ab.size(), 0..=max_len)
        .prop_map(move |codes| codes.into_iter().map(|c| ab.symbol_from_code(c)).collect())
}

fn nonempty(pairs: usize, max_len: usize) -> impl Strategy<Value = Word> {
    word(pairs, max_len).prop_filter("nonempty", |w| !w.is_empty())
}

fn combine(x: &ReducedForm, y: &ReducedForm) -> ReducedForm {
    match (x.to_word(), y.to_word()) {
        (Some(a), Some(b)) => reduce(&a.concat(&b)),
        _ => ReducedForm::Zero,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn reduce_matches_rewriting_oracle(w in word(3, 20)) {
        prop_assert_eq!(reduce(&w), naive_reduce(&w));
    }

    #[test]
    fn reduction_is_a_monoid_morphism(u in word(2, 12), v in word(2, 12), x in word(2, 12)) {
        let (ru, rv, rx) = (reduce(&u), reduce(&v), reduce(&x));
        prop_assert_eq!(reduce(&u.concat(&v)), combine(&ru, &rv));
        prop_assert_eq!(combine(&combine(&ru, &rv), &rx), combine(&ru, &combine(&rv, &rx)));
    }

    #[test]
    fn zero_is_absorbing(u in word(2, 12), v in word(2, 12)) {
        let zero = Word::from(vec!["a1".parse().unwrap(), "b2".parse().unwrap()]);
        prop_assert!(reduce(&u.concat(&zero).concat(&v)).is_zero());
    }

    #[test]
    fn normal_form_is_reduced(w in word(2, 20)) {
        if let Some(nf) = reduce(&w).to_word() {
            prop_assert_eq!(reduce(&nf), reduce(&w));
            let lefts_seen = nf.iter().position(|s| s.is_left()).unwrap_or(nf.len());
            prop_assert!(nf[lefts_seen..].iter().all(|s| s.is_left()));
        }
    }

    #[test]
    fn periodic_class_matches_oracle(w in nonempty(2, 16)) {
        prop_assert_eq!(periodic_class(&w).unwrap(), naive_periodic_class(&w));
    }

    #[test]
    fn periodicity_is_rotation_invariant(w in nonempty(2, 16), k in 0usize..16) {
        prop_assert_eq!(periodic_class(&w).unwrap(), periodic_class(&w.rotate(k)).unwrap());
    }

    #[test]
    fn class_follows_height(w in nonempty(3, 16)) {
        if let Some(c) = periodic_class(&w).unwrap() {
            prop_assert_eq!(c, PeriodClass::from_height(h_value(&w)));
        }
    }

    #[test]
    fn reverse_mirror_swaps_classes(w in nonempty(2, 16)) {
        let swapped = periodic_class(&w.reverse_mirror()).unwrap();
        let expected = periodic_class(&w).unwrap().map(|c| match c {
            PeriodClass::Alpha => PeriodClass::Beta,
            PeriodClass::Beta => PeriodClass::Alpha,
            PeriodClass::Zero => PeriodClass::Zero,
        });
        prop_assert_eq!(swapped, expected);
    }

    #[test]
    fn word_text_round_trip(w in word(3, 12)) {
        let ab = Alphabet::new(3).unwrap();
        prop_assert_eq!(ab.parse_word(&w.to_string()).unwrap(), w);
    }
}
