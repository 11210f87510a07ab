//! Seeded generators shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use des_equiv::{
    Alphabet, Automaton, ConInstance, DxInstance, FiniteLanguage, FusionRule, ObsInstance, Symbol, Word,
};
use rand::rngs::StdRng;
use rand::Rng;

pub const NAMES: [&str; 4] = ["a", "b", "c", "d"];

pub fn sym(name: &str) -> Symbol {
    Symbol::new(name).unwrap()
}

pub fn sigma(names: &[&str]) -> Alphabet {
    Alphabet::from_names(names).unwrap()
}

pub fn lang(alphabet: &Alphabet, words: &[&str]) -> Automaton {
    Automaton::from_words(&FiniteLanguage::parse(alphabet, words).unwrap())
}

pub fn random_alphabet(rng: &mut StdRng, min: usize, max: usize) -> Alphabet {
    let k = rng.gen_range(min..=max);
    sigma(&NAMES[..k])
}

pub fn random_subset(rng: &mut StdRng, alphabet: &Alphabet) -> Alphabet {
    Alphabet::new(alphabet.iter().filter(|_| rng.gen_bool(0.5)).cloned()).unwrap()
}

pub fn random_word(rng: &mut StdRng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| alphabet.get(rng.gen_range(0..alphabet.len())).clone()).collect())
}

/// Up to `max_words` distinct words of length at most `max_len`.
pub fn random_words(rng: &mut StdRng, alphabet: &Alphabet, max_words: usize, max_len: usize) -> Vec<Word> {
    let target = rng.gen_range(1..=max_words);
    let mut out: Vec<Word> = Vec::new();
    for _ in 0..4 * max_words {
        if out.len() == target {
            break;
        }
        let w = random_word(rng, alphabet, max_len);
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

/// A prefix-closed set of at most `max_words` words, grown as a random tree.
pub fn random_prefix_closed(rng: &mut StdRng, alphabet: &Alphabet, max_words: usize, max_len: usize) -> Vec<Word> {
    let target = rng.gen_range(1..=max_words);
    let mut out = vec![Word::epsilon()];
    for _ in 0..8 * max_words {
        if out.len() == target {
            break;
        }
        let parent = out[rng.gen_range(0..out.len())].clone();
        if parent.len() >= max_len {
            continue;
        }
        let child = parent.then(alphabet.get(rng.gen_range(0..alphabet.len())));
        if !out.contains(&child) {
            out.push(child);
        }
    }
    out
}

pub fn automaton_of(alphabet: &Alphabet, words: &[Word]) -> Automaton {
    Automaton::from_words(&FiniteLanguage::new(alphabet.clone(), words.iter().cloned()).unwrap())
}

pub fn random_fusion(rng: &mut StdRng) -> FusionRule {
    FusionRule::ALL[rng.gen_range(0..FusionRule::ALL.len())]
}

pub fn random_observed(rng: &mut StdRng, alphabet: &Alphabet, max_agents: usize) -> Vec<Alphabet> {
    let n = rng.gen_range(1..=max_agents);
    (0..n).map(|_| random_subset(rng, alphabet)).collect()
}

/// Finite observation instance: `|Σ| ≤ 4`, at most 8 words of length at most 4,
/// at most 3 agents.
pub fn random_obs(rng: &mut StdRng) -> ObsInstance {
    let alphabet = random_alphabet(rng, 1, 4);
    let words = random_words(rng, &alphabet, 8, 4);
    let spec: Vec<Word> = words.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    ObsInstance {
        plant: automaton_of(&alphabet, &words),
        spec: automaton_of(&alphabet, &spec),
        observed: random_observed(rng, &alphabet, 3),
        fusion: random_fusion(rng),
    }
}

/// Finite diagnosis instance whose fault `f` is one of at most four symbols.
pub fn random_dx(rng: &mut StdRng) -> DxInstance {
    let visible = random_alphabet(rng, 1, 3);
    let fault = sym("f");
    let alphabet = visible.with(fault.clone());
    let words = random_words(rng, &alphabet, 8, 4);
    DxInstance {
        plant: automaton_of(&alphabet, &words),
        observed: random_observed(rng, &visible, 3),
        fault,
        delay: rng.gen_range(0..=2),
        fusion: random_fusion(rng),
    }
}

/// Finite control instance: prefix-closed plant of at most 8 words and a
/// prefix-closed spec closed under uncontrollable continuations.
pub fn random_con(rng: &mut StdRng) -> ConInstance {
    let alphabet = random_alphabet(rng, 1, 4);
    let plant_words = random_prefix_closed(rng, &alphabet, 8, 4);
    let observed = random_observed(rng, &alphabet, 3);
    let controllable: Vec<Alphabet> = observed.iter().map(|_| random_subset(rng, &alphabet)).collect();
    let ctrl: HashSet<Symbol> = controllable.iter().flat_map(|c| c.iter().cloned()).collect();
    let plant_set: HashSet<Word> = plant_words.iter().cloned().collect();

    let mut spec: BTreeSet<Word> = BTreeSet::new();
    for w in plant_words.iter().filter(|_| rng.gen_bool(0.5)) {
        spec.extend(w.prefixes());
    }
    spec.insert(Word::epsilon());
    let mut queue: VecDeque<Word> = spec.iter().cloned().collect();
    while let Some(s) = queue.pop_front() {
        for u in alphabet.iter().filter(|u| !ctrl.contains(*u)) {
            let next = s.then(u);
            if plant_set.contains(&next) && spec.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let spec: Vec<Word> = spec.into_iter().collect();
    ConInstance {
        plant: automaton_of(&alphabet, &plant_words),
        spec: automaton_of(&alphabet, &spec),
        observed,
        controllable,
        fusion: random_fusion(rng),
    }
}

/// A random partial DFA with at most `max_states` states.
pub fn random_automaton(rng: &mut StdRng, alphabet: &Alphabet, max_states: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    let accepting: Vec<String> = names.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect();
    let mut transitions = Vec::new();
    for src in &names {
        for a in alphabet.iter() {
            if rng.gen_bool(0.7) {
                transitions.push((src.clone(), a.clone(), names[rng.gen_range(0..n)].clone()));
            }
        }
    }
    Automaton::from_transitions(alphabet.clone(), &names, "s0", &accepting, &transitions).unwrap()
}

/// Every word over `alphabet` of length at most `n`, shortest first.
pub fn all_words(alphabet: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Word::epsilon()];
    let mut layer = vec![Word::epsilon()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w| alphabet.iter().map(move |a| w.then(a))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Word-level membership in `P(L)` for `L` given by `a`: reads `u` while
/// letting unobserved symbols move silently.
pub fn projection_member(a: &Automaton, observed: &Alphabet, u: &Word) -> bool {
    let silent: Vec<usize> = (0..a.alphabet().len())
        .filter(|&i| !observed.contains(a.alphabet().get(i)))
        .collect();
    let closure = |set: BTreeSet<usize>| {
        let mut seen = set.clone();
        let mut stack: Vec<usize> = set.into_iter().collect();
        while let Some(q) = stack.pop() {
            for &i in &silent {
                if let Some(r) = a.successor(q, i) {
                    if seen.insert(r) {
                        stack.push(r);
                    }
                }
            }
        }
        seen
    };
    let mut current = closure(BTreeSet::from([a.initial()]));
    for s in u.iter() {
        let Some(i) = a.alphabet().index_of(s) else { return false };
        let next = current.iter().filter_map(|&q| a.successor(q, i)).collect();
        current = closure(next);
    }
    current.iter().any(|&q| a.is_accepting(q))
}

/// Word-level membership in `pr(L)`: some accepting state is reachable after `w`.
pub fn prefix_member(a: &Automaton, w: &Word) -> bool {
    let Some(start) = a.run(w) else { return false };
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(q) = stack.pop() {
        if a.is_accepting(q) {
            return true;
        }
        for i in 0..a.alphabet().len() {
            if let Some(r) = a.successor(q, i) {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
    }
    false
}

pub fn finite_language(a: &Automaton) -> FiniteLanguage {
    match a.longest_word_len() {
        Some(n) => a.enumerate_upto(n),
        None if a.is_empty() => FiniteLanguage::empty(a.alphabet().clone()),
        None => panic!("language is infinite"),
    }
}
