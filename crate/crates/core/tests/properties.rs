use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statecomp::constructions::{concat_nfa, dfa_to_nfa, product_dfa, reverse_nfa, star_nfa, BooleanOp};
use statecomp::minimize::{distinguishing_word, equivalent, minimize_moore};
use statecomp::oracle::Lang;
use statecomp::{determinize, minimize, Dfa, EpsNfa, LetterPermutation, Transformation};

const LETTERS: [char; 3] = ['a', 'b', 'c'];

fn arb_dfa(max_states: usize) -> impl Strategy<Value = Dfa> {
    (1..=max_states).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(0..n, n), LETTERS.len()),
            0..n,
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(images, initial, finals)| {
                let delta = images
                    .into_iter()
                    .map(|img| Transformation::from_image(img).unwrap())
                    .collect();
                let finals = (0..n).filter(|&s| finals[s]);
                Dfa::new(LETTERS.to_vec(), delta, initial, finals).unwrap()
            })
    })
}

fn arb_word(maxlen: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..LETTERS.len(), 0..=maxlen)
}

fn random_nfa(rng: &mut ChaCha8Rng, n: usize) -> EpsNfa {
    let mut nfa = EpsNfa::new(n, LETTERS.to_vec()).unwrap();
    for s in 0..n {
        for x in 0..LETTERS.len() {
            for t in 0..n {
                if rng.random_bool(0.25) {
                    nfa.add_move(s, x, t).unwrap();
                }
            }
        }
        if rng.random_bool(0.15) {
            nfa.add_epsilon(s, rng.random_range(0..n)).unwrap();
        }
        nfa.set_final(s, rng.random_bool(0.3)).unwrap();
    }
    nfa.add_initial(rng.random_range(0..n)).unwrap();
    nfa
}

fn random_words(rng: &mut ChaCha8Rng, count: usize, maxlen: usize) -> Vec<Vec<usize>> {
    (0..count)
        .map(|_| {
            let len = rng.random_range(0..=maxlen);
            (0..len).map(|_| rng.random_range(0..LETTERS.len())).collect()
        })
        .collect()
}

proptest! {
    #[test]
    fn complement_flips_membership(d in arb_dfa(6), w in arb_word(10)) {
        prop_assert_ne!(d.accepts(&w), d.complement().accepts(&w));
    }

    #[test]
    fn permutation_inverse_law(d in arb_dfa(6), image in Just(LETTERS.to_vec()).prop_shuffle()) {
        let image: String = image.into_iter().collect();
        let p = LetterPermutation::from_orders("abc", &image).unwrap();
        let there = d.permute_letters(&p).unwrap();
        prop_assert_eq!(there.permute_letters(&p.inverse()).unwrap(), d);
    }

    #[test]
    fn run_is_composition_of_letters(d in arb_dfa(6), w in arb_word(10)) {
        let mut t = Transformation::identity(d.size()).unwrap();
        for &x in &w {
            t = t.compose(&d.transformations()[x]).unwrap();
        }
        prop_assert_eq!(t.apply(d.initial()), d.state_after(d.initial(), &w));
    }

    #[test]
    fn minimize_is_idempotent_and_agrees_with_moore(d in arb_dfa(8)) {
        let m = minimize(&d);
        prop_assert_eq!(&minimize(&m), &m);
        prop_assert_eq!(&minimize_moore(&d), &m);
        prop_assert!(equivalent(&d, &m).unwrap());
    }

    #[test]
    fn distinguishing_word_separates(a in arb_dfa(5), b in arb_dfa(5)) {
        match distinguishing_word(&a, &b).unwrap() {
            Some(w) => prop_assert_ne!(a.run(&w).unwrap(), b.run(&w).unwrap()),
            None => prop_assert_eq!(minimize(&a), minimize(&b)),
        }
    }

    #[test]
    fn text_format_round_trip(d in arb_dfa(8)) {
        let back: Dfa = d.to_text().parse().unwrap();
        prop_assert_eq!(back, d);
    }
}

#[test]
fn subset_construction_preserves_language() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.random_range(1..=9);
        let nfa = random_nfa(&mut rng, n);
        let dfa = determinize(&nfa).into_dfa();
        let min = minimize(&dfa);
        for w in random_words(&mut rng, 1000, 12) {
            assert_eq!(nfa.accepts(&w), dfa.accepts(&w));
            assert_eq!(dfa.accepts(&w), min.accepts(&w));
        }
    }
}

fn random_dfa(rng: &mut ChaCha8Rng, n: usize) -> Dfa {
    let delta = LETTERS
        .iter()
        .map(|_| Transformation::from_image((0..n).map(|_| rng.random_range(0..n)).collect()).unwrap())
        .collect();
    let finals: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
    Dfa::new(LETTERS.to_vec(), delta, rng.random_range(0..n), finals).unwrap()
}

#[test]
fn constructions_match_direct_semantics() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let (nk, nl) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let k = random_dfa(&mut rng, nk);
        let l = random_dfa(&mut rng, nl);
        let star = minimize(determinize(&star_nfa(&l)).dfa());
        let cat = minimize(determinize(&concat_nfa(&dfa_to_nfa(&k), &dfa_to_nfa(&l)).unwrap()).dfa());
        let rev = minimize(determinize(&reverse_nfa(&l)).dfa());
        let star_lang = Lang::Atom(l.clone()).star();
        let cat_lang = Lang::Atom(k.clone()).concat(Lang::Atom(l.clone()));
        for w in random_words(&mut rng, 500, 10) {
            assert_eq!(star.accepts(&w), star_lang.contains(&w));
            assert_eq!(cat.accepts(&w), cat_lang.contains(&w));
            let back: Vec<usize> = w.iter().rev().copied().collect();
            assert_eq!(rev.accepts(&w), l.accepts(&back));
        }
        for op in BooleanOp::ALL {
            let p = product_dfa(&k, &l, op).unwrap();
            for w in random_words(&mut rng, 100, 10) {
                assert_eq!(p.accepts(&w), op.combine(k.accepts(&w), l.accepts(&w)));
            }
        }
        // reversing twice gives the language back
        let twice = minimize(determinize(&reverse_nfa(&rev)).dfa());
        assert_eq!(twice, minimize(&l));
    }
}

#[test]
fn canonical_forms_of_random_dfas() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let d = random_dfa(&mut rng, 8);
        let once = minimize(&d);
        assert_eq!(minimize(&once), once);
        assert_eq!(minimize(&d.canonical()), once);
        assert_eq!(minimize(&d.complement()), minimize(&once.complement()));
    }
}
