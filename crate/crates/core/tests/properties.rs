use episturm::morphism::matrix_product;
use episturm::palindromic::{justin_left, justin_right, pal_length};
use episturm::returns::{returns_closed_form, returns_oracle, Side};
use episturm::word::occurrences_kmp;
use episturm::*;
use proptest::prelude::*;

fn alphabet(size: usize) -> Alphabet {
    Alphabet::standard(size).unwrap()
}

fn word_over(size: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..size as u8, 0..=max_len).prop_map(Word::from_letters)
}

fn sized_word(max_len: usize) -> impl Strategy<Value = (usize, Word)> {
    (2usize..=4).prop_flat_map(move |k| (Just(k), word_over(k, max_len)))
}

fn spinned_word(size: usize, max_len: usize) -> impl Strategy<Value = SpinnedWord> {
    prop::collection::vec((0..size as u8, any::<bool>()), 0..=max_len).prop_map(|ls| {
        SpinnedWord::new(
            ls.into_iter()
                .map(|(letter, barred)| SpinnedLetter {
                    letter,
                    spin: if barred { Spin::Barred } else { Spin::Plain },
                })
                .collect(),
        )
    })
}

fn permutation(size: usize) -> impl Strategy<Value = Permutation> {
    let all = Permutation::all(size);
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// An episturmian morphism `ψ_v ∘ π` over 2 to 4 letters.
fn episturmian(max_len: usize) -> impl Strategy<Value = Morphism> {
    (2usize..=4).prop_flat_map(move |k| {
        (spinned_word(k, max_len), permutation(k)).prop_map(move |(v, p)| {
            let a = alphabet(k);
            Morphism::psi_spinned(&a, &v).compose(&Morphism::from_permutation(&a, &p)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn gcs_is_mirrored_gcp(u in word_over(3, 12), v in word_over(3, 12)) {
        prop_assert_eq!(gcs(&u, &v), gcp(&u.reverse(), &v.reverse()).reverse());
        let p = gcp(&u, &v);
        prop_assert!(p.is_prefix_of(&u) && p.is_prefix_of(&v));
    }

    #[test]
    fn occurrence_scans_agree(p in word_over(2, 4), t in word_over(2, 40)) {
        prop_assume!(!p.is_empty());
        prop_assert_eq!(occurrences(&p, &t).unwrap(), occurrences_kmp(&p, &t).unwrap());
    }

    #[test]
    fn permutation_commutes_with_psi((k, u) in sized_word(6), seed in any::<usize>()) {
        let a = alphabet(k);
        let perms = Permutation::all(k);
        let p = &perms[seed % perms.len()];
        let pm = Morphism::from_permutation(&a, p);
        let lhs = Morphism::psi_word(&a, &p.apply_word(&u)).compose(&pm).unwrap();
        let rhs = pm.compose(&Morphism::psi_word(&a, &u)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn morphisms_are_homomorphisms(sigma in episturmian(5), x in word_over(2, 8), y in word_over(2, 8)) {
        let xy = x.concat(&y);
        prop_assert_eq!(sigma.apply(&xy), sigma.apply(&x).concat(&sigma.apply(&y)));
    }

    #[test]
    fn decomposition_round_trips(sigma in episturmian(6)) {
        for order in [StripOrder::PlainFirst, StripOrder::BarredFirst] {
            let d = sigma.decompose_with(order).unwrap();
            prop_assert_eq!(d.reconstruct(sigma.alphabet()), sigma.clone());
        }
    }

    #[test]
    fn incidence_matrix_is_multiplicative(s in episturmian(4), seed in any::<u64>()) {
        let k = s.alphabet().len();
        let perms = Permutation::all(k);
        let a = s.alphabet().clone();
        let t = Morphism::psi(&a, (seed % k as u64) as u8, Spin::Barred)
            .compose(&Morphism::from_permutation(&a, &perms[seed as usize % perms.len()]))
            .unwrap();
        prop_assert_eq!(
            s.compose(&t).unwrap().incidence_matrix(),
            matrix_product(&s.incidence_matrix(), &t.incidence_matrix())
        );
    }

    #[test]
    fn conjugation_round_trips(sigma in episturmian(5)) {
        let class = enumerate_class(&sigma).unwrap();
        let (std, x) = standard_conjugate(&sigma).unwrap();
        prop_assert_eq!(&std, &class.members[0]);
        let back = sigma.conjugate_left(&x).unwrap();
        prop_assert_eq!(&back, &std);
        prop_assert_eq!(back.conjugate_right(&x).unwrap(), sigma.clone());
        prop_assert_eq!(conjugacy_index(&sigma).unwrap(), x.len());
        prop_assert_eq!(class.position(&sigma), Some(x.len()));
    }

    #[test]
    fn pal_is_a_nested_palindrome((k, u) in sized_word(9)) {
        let p = pal(&u);
        prop_assert!(p.is_palindrome());
        prop_assert_eq!(pal_inverse(&p).unwrap(), u.clone());
        prop_assert_eq!(pal_length(&alphabet(k), &u).unwrap(), p.len());
        if let Some(last) = u.last() {
            let shorter = pal(&u.prefix(u.len() - 1));
            prop_assert!(shorter.is_prefix_of(&p));
            prop_assert!(shorter.len() < p.len());
            prop_assert_eq!(p, pal_closure(&shorter.with(last)));
        }
    }

    #[test]
    fn pal_of_common_prefix(u in word_over(3, 7), v in word_over(3, 7)) {
        let common = pal(&gcp(&u, &v));
        prop_assert!(common.is_prefix_of(&gcp(&pal(&u), &pal(&v))));
    }

    #[test]
    fn justin_formulas_hold((k, u) in sized_word(6), seed in any::<u64>()) {
        let a = alphabet(k);
        let cut = (seed % (u.len() as u64 + 1)) as usize;
        let (x, y) = (u.prefix(cut), Word::from(&u[cut..]));
        let (l, r) = justin_left(&a, &x, &y);
        prop_assert_eq!(l, r);
        let (l, r) = justin_right(&a, &x, &y);
        prop_assert_eq!(l, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_form_matches_oracle(sigma in episturmian(3), start in 0usize..200, len in 1usize..7) {
        prop_assume!(sigma.is_primitive());
        let x = sigma.periodic_point_prefix(start + len).unwrap();
        let u = x.factor(start, len);
        let closed = returns_closed_form(&sigma, &u).unwrap();
        prop_assert_eq!(&closed.left, &returns_oracle(&sigma, &u, Side::Left).unwrap());
        prop_assert_eq!(&closed.right, &returns_oracle(&sigma, &u, Side::Right).unwrap());
        prop_assert_eq!(closed.left.len(), sigma.alphabet().len());
    }
}

#[test]
fn random_sampler_is_clean() {
    let outcome = episturm::verify::check_random(7, 300);
    assert!(outcome.passed(), "{:?}", outcome.violations);
}
