mod common;

use common::*;
use des_equiv::{Automaton, FiniteLanguage, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

const BOUND: usize = 6;

fn mem(a: &Automaton, w: &Word) -> bool {
    a.accepts(w).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boolean_operations_match_membership(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 8);
        let b = random_automaton(&mut rng, &alphabet, 8);
        let both = a.intersect(&b).unwrap();
        let either = a.union(&b).unwrap();
        let only = a.difference(&b).unwrap();
        for w in all_words(&alphabet, BOUND) {
            prop_assert_eq!(mem(&both, &w), mem(&a, &w) && mem(&b, &w));
            prop_assert_eq!(mem(&either, &w), mem(&a, &w) || mem(&b, &w));
            prop_assert_eq!(mem(&only, &w), mem(&a, &w) && !mem(&b, &w));
        }
    }

    #[test]
    fn minimize_and_trim_preserve_the_language(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 10);
        let m = a.minimize();
        prop_assert!(m.num_states() <= a.num_states().max(1));
        prop_assert!(m.are_equivalent(&a).unwrap());
        prop_assert!(a.trim_dead().are_equivalent(&a).unwrap());
        prop_assert_eq!(m.minimize().num_states(), m.num_states());
    }

    #[test]
    fn equivalence_witnesses_are_genuine(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 6);
        let b = random_automaton(&mut rng, &alphabet, 6);
        match a.distinguishing_word(&b).unwrap() {
            Some(w) => prop_assert_ne!(mem(&a, &w), mem(&b, &w)),
            None => {
                for w in all_words(&alphabet, BOUND) {
                    prop_assert_eq!(mem(&a, &w), mem(&b, &w));
                }
            }
        }
        if let Some(w) = a.inclusion_witness(&b).unwrap() {
            prop_assert!(mem(&a, &w) && !mem(&b, &w));
        }
    }

    #[test]
    fn prefix_closure_is_closed_and_minimal(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 8);
        let p = a.prefix_closure();
        prop_assert!(p.is_prefix_closed());
        prop_assert!(a.inclusion_witness(&p).unwrap().is_none());
        for w in all_words(&alphabet, BOUND) {
            prop_assert_eq!(mem(&p, &w), prefix_member(&a, &w));
        }
        if let Some(w) = a.prefix_closure_witness() {
            prop_assert!(!mem(&a, &w));
            prop_assert!(prefix_member(&a, &w));
        }
    }

    #[test]
    fn projection_matches_silent_reading(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 8);
        let observed = random_subset(&mut rng, &alphabet);
        let p = a.project(&observed).unwrap();
        for u in all_words(&observed, BOUND) {
            prop_assert_eq!(mem(&p, &u), projection_member(&a, &observed, &u));
        }
        for w in a.enumerate_upto(BOUND).iter() {
            prop_assert!(mem(&p, &w.project(&observed)));
        }
    }

    #[test]
    fn inverse_projection_matches_projected_membership(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let observed = random_subset(&mut rng, &alphabet);
        let a = random_automaton(&mut rng, &observed, 8);
        let lifted = a.inverse_project(&alphabet).unwrap();
        for w in all_words(&alphabet, BOUND) {
            prop_assert_eq!(mem(&lifted, &w), mem(&a, &w.project(&observed)));
        }
        prop_assert!(lifted.project(&observed).unwrap().are_equivalent(&a).unwrap());
    }

    #[test]
    fn concat_letter_appends_exactly_one_letter(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 8);
        let g = alphabet.fresh("#g");
        let ag = a.concat_letter(&g);
        for w in all_words(ag.alphabet(), BOUND) {
            let expected = w.strip_suffix(&g).is_some_and(|s| !s.iter().any(|x| x == &g) && mem(&a, &s));
            prop_assert_eq!(mem(&ag, &w), expected);
        }
    }

    #[test]
    fn finite_words_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 4);
        let words = random_words(&mut rng, &alphabet, 8, 4);
        let lang = FiniteLanguage::new(alphabet.clone(), words.clone()).unwrap();
        let a = Automaton::from_words(&lang);
        prop_assert!(a.is_finite());
        prop_assert_eq!(a.enumerate_upto(4), lang.clone());
        prop_assert_eq!(a.longest_word_len(), words.iter().map(Word::len).max());
        for w in all_words(&alphabet, 5) {
            prop_assert_eq!(mem(&a, &w), lang.contains(&w));
        }
    }

    #[test]
    fn enumeration_is_sorted_and_complete(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 3);
        let a = random_automaton(&mut rng, &alphabet, 8);
        let listed: Vec<Word> = all_words(&alphabet, BOUND).into_iter().filter(|w| mem(&a, w)).collect();
        let enumerated = a.enumerate_upto(BOUND);
        prop_assert_eq!(enumerated.words(), listed.as_slice());
        match (listed.first(), a.shortest_word()) {
            (Some(first), shortest) => prop_assert_eq!(shortest.as_ref(), Some(first)),
            (None, shortest) => prop_assert!(shortest.is_none_or(|w| w.len() > BOUND)),
        }
    }

    #[test]
    fn finiteness_agrees_with_longest_word(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let alphabet = random_alphabet(&mut rng, 1, 2);
        let a = random_automaton(&mut rng, &alphabet, 5);
        let n = a.num_states();
        // A regular language is infinite iff it has a word of length in [n, 2n).
        let long = (n..2 * n).any(|k| a.enumerate_upto(k).iter().any(|w| w.len() == k));
        prop_assert_eq!(a.is_finite(), !long);
        if let Some(max) = a.longest_word_len() {
            prop_assert!(a.enumerate_upto(max).iter().any(|w| w.len() == max));
            prop_assert_eq!(a.enumerate_upto(max + n), a.enumerate_upto(max));
        }
    }
}
