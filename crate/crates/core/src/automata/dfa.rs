use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::nfa::Nfa;
use super::{Alphabet, FiniteLanguage, Symbol, Word};
use crate::error::{Error, Result};

/// A deterministic finite automaton over an [`Alphabet`].
///
/// States are numbered `0..num_states()`, state `0` is initial, and every
/// state is reachable from it: each construction ends with a pass that
/// renumbers states in breadth-first order (alphabet order on ties) and drops
/// the unreachable ones. The transition map is partial; a missing transition
/// means the run dies.
#[derive(Clone)]
pub struct Automaton {
    alphabet: Alphabet,
    delta: Vec<Vec<Option<usize>>>,
    accepting: Vec<bool>,
}

/// How far a word can still be extended from a state and stay in the language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extension {
    /// No accepting state is reachable.
    Dead,
    /// Longest `t` such that the run over `t` ends accepting.
    Bounded(usize),
    Unbounded,
}

impl Automaton {
    pub(crate) fn from_raw(
        alphabet: Alphabet,
        delta: Vec<Vec<Option<usize>>>,
        accepting: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(delta.len(), accepting.len());
        debug_assert!(!delta.is_empty());
        Automaton { alphabet, delta, accepting }.normalized()
    }

    fn normalized(self) -> Self {
        let k = self.alphabet.len();
        let mut order = vec![usize::MAX; self.delta.len()];
        let mut visit = vec![0usize];
        order[0] = 0;
        let mut head = 0;
        while head < visit.len() {
            let q = visit[head];
            head += 1;
            for r in self.delta[q].iter().flatten() {
                if order[*r] == usize::MAX {
                    order[*r] = visit.len();
                    visit.push(*r);
                }
            }
        }
        let delta = visit
            .iter()
            .map(|&q| {
                (0..k)
                    .map(|s| self.delta[q][s].map(|r| order[r]))
                    .collect::<Vec<_>>()
            })
            .collect();
        let accepting = visit.iter().map(|&q| self.accepting[q]).collect();
        Automaton { alphabet: self.alphabet, delta, accepting }
    }

    /// The empty language.
    pub fn empty(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Automaton { alphabet, delta: vec![vec![None; k]], accepting: vec![false] }
    }

    /// `{ε}`.
    pub fn epsilon(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Automaton { alphabet, delta: vec![vec![None; k]], accepting: vec![true] }
    }

    /// `Σ*`.
    pub fn universal(alphabet: Alphabet) -> Self {
        let k = alphabet.len();
        Automaton { alphabet, delta: vec![vec![Some(0); k]], accepting: vec![true] }
    }

    /// Trie over the words of `lang`, accepting exactly at word ends.
    pub fn from_words(lang: &FiniteLanguage) -> Self {
        let alphabet = lang.alphabet().clone();
        let k = alphabet.len();
        let mut delta = vec![vec![None; k]];
        let mut accepting = vec![false];
        for w in lang.iter() {
            let mut q = 0;
            for sym in w.iter() {
                let s = alphabet.index_of(sym).expect("FiniteLanguage words are over its alphabet");
                q = match delta[q][s] {
                    Some(r) => r,
                    None => {
                        delta.push(vec![None; k]);
                        accepting.push(false);
                        let r = delta.len() - 1;
                        delta[q][s] = Some(r);
                        r
                    }
                };
            }
            accepting[q] = true;
        }
        Automaton::from_raw(alphabet, delta, accepting)
    }

    /// Builds an automaton from named states and `(source, symbol, target)` triples.
    pub fn from_transitions<S: AsRef<str>>(
        alphabet: Alphabet,
        states: &[S],
        initial: &str,
        accepting: &[S],
        transitions: &[(S, Symbol, S)],
    ) -> Result<Self> {
        let mut ids: HashMap<&str, usize> = HashMap::new();
        for s in states {
            let name = s.as_ref();
            if ids.insert(name, ids.len()).is_some() {
                return Err(Error::Contract(format!("duplicate state name {name:?}")));
            }
        }
        let lookup = |name: &str| ids.get(name).copied().ok_or_else(|| Error::UnknownState(name.into()));
        let n = ids.len();
        let k = alphabet.len();
        let init = lookup(initial)?;
        let mut delta = vec![vec![None; k]; n];
        for (src, sym, dst) in transitions {
            let q = lookup(src.as_ref())?;
            let r = lookup(dst.as_ref())?;
            let s = alphabet
                .index_of(sym)
                .ok_or_else(|| Error::UnknownSymbol(sym.name().into()))?;
            match delta[q][s] {
                Some(prev) if prev != r => {
                    return Err(Error::Nondeterministic {
                        state: src.as_ref().into(),
                        symbol: sym.name().into(),
                    })
                }
                _ => delta[q][s] = Some(r),
            }
        }
        let mut acc = vec![false; n];
        for s in accepting {
            acc[lookup(s.as_ref())?] = true;
        }
        // Move the initial state to slot 0 before normalizing.
        delta.swap(0, init);
        acc.swap(0, init);
        let swap = |q: usize| if q == 0 { init } else if q == init { 0 } else { q };
        for row in &mut delta {
            for t in row.iter_mut().flatten() {
                *t = swap(*t);
            }
        }
        Ok(Automaton::from_raw(alphabet, delta, acc))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    /// Successor of `q` on the `sym`-th alphabet symbol.
    pub fn successor(&self, q: usize, sym: usize) -> Option<usize> {
        self.delta[q][sym]
    }

    pub fn step(&self, q: usize, sym: &Symbol) -> Option<usize> {
        self.alphabet.index_of(sym).and_then(|s| self.delta[q][s])
    }

    /// All transitions as `(source, symbol index, target)`, in state then alphabet order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter().enumerate().filter_map(move |(s, t)| t.map(|r| (q, s, r)))
        })
    }

    /// The state reached by `w` from the initial state, if the run is defined.
    /// Symbols outside the alphabet kill the run.
    pub fn run(&self, w: &Word) -> Option<usize> {
        w.iter().try_fold(0usize, |q, sym| self.step(q, sym))
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        if let Some(bad) = w.iter().find(|s| !self.alphabet.contains(s)) {
            return Err(Error::UnknownSymbol(bad.name().into()));
        }
        Ok(self.run(w).is_some_and(|q| self.accepting[q]))
    }

    /// Same language over a larger alphabet (no transitions on the new symbols).
    pub fn embed(&self, wider: &Alphabet) -> Result<Automaton> {
        if !self.alphabet.is_subset_of(wider) {
            return Err(Error::NotSubset {
                sub: self.alphabet.to_string(),
                sup: wider.to_string(),
            });
        }
        let cols: Vec<Option<usize>> = wider.iter().map(|s| self.alphabet.index_of(s)).collect();
        let delta = self
            .delta
            .iter()
            .map(|row| cols.iter().map(|c| c.and_then(|i| row[i])).collect())
            .collect();
        Ok(Automaton::from_raw(wider.clone(), delta, self.accepting.clone()))
    }

    fn require_same_alphabet(&self, other: &Automaton) -> Result<Vec<usize>> {
        if !self.alphabet.same_set(&other.alphabet) {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(self
            .alphabet
            .iter()
            .map(|s| other.alphabet.index_of(s).expect("same set"))
            .collect())
    }

    /// Synchronous product with implicit sink completion on both sides.
    fn product(&self, other: &Automaton, accept: impl Fn(bool, bool) -> bool) -> Result<Automaton> {
        let cols = self.require_same_alphabet(other)?;
        let k = self.alphabet.len();
        type Pair = (Option<usize>, Option<usize>);
        let mut ids: HashMap<Pair, usize> = HashMap::new();
        let mut pairs: Vec<Pair> = vec![(Some(0), Some(0))];
        ids.insert((Some(0), Some(0)), 0);
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = vec![None; k];
            for (s, slot) in row.iter_mut().enumerate() {
                let next = (
                    p.and_then(|p| self.delta[p][s]),
                    q.and_then(|q| other.delta[q][cols[s]]),
                );
                if next == (None, None) {
                    continue;
                }
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                *slot = Some(id);
            }
            delta.push(row);
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(p, q)| {
                accept(
                    p.is_some_and(|p| self.accepting[p]),
                    q.is_some_and(|q| other.accepting[q]),
                )
            })
            .collect();
        Ok(Automaton::from_raw(self.alphabet.clone(), delta, accepting).trim_dead())
    }

    pub fn intersect(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, |a, b| a && b)
    }

    pub fn union(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, |a, b| a || b)
    }

    pub fn difference(&self, other: &Automaton) -> Result<Automaton> {
        self.product(other, |a, b| a && !b)
    }

    /// `{ w·g : w ∈ L }`; `g` is added to the alphabet if absent.
    pub fn concat_letter(&self, g: &Symbol) -> Automaton {
        let alphabet = self.alphabet.with(g.clone());
        let gi = alphabet.index_of(g).expect("just added");
        let n = self.num_states();
        let mut nfa = Nfa::with_states(alphabet, n + 1);
        for (q, s, r) in self.transitions() {
            nfa.delta[q][s].push(r);
        }
        for q in 0..n {
            if self.accepting[q] {
                nfa.delta[q][gi].push(n);
            }
        }
        nfa.initial.push(0);
        nfa.accepting[n] = true;
        nfa.determinize().trim_dead()
    }

    /// `pr(L)`: every state from which an accepting state is reachable
    /// becomes accepting.
    pub fn prefix_closure(&self) -> Automaton {
        let live = self.coreachable();
        Automaton::from_raw(self.alphabet.clone(), self.delta.clone(), live).trim_dead()
    }

    /// Natural projection onto `observed`, determinized by subset construction.
    pub fn project(&self, observed: &Alphabet) -> Result<Automaton> {
        if !observed.is_subset_of(&self.alphabet) {
            return Err(Error::NotSubset {
                sub: observed.to_string(),
                sup: self.alphabet.to_string(),
            });
        }
        let trimmed = self.trim_dead();
        let mut nfa = Nfa::with_states(observed.clone(), trimmed.num_states());
        for (q, s, r) in trimmed.transitions() {
            match observed.index_of(trimmed.alphabet.get(s)) {
                Some(o) => nfa.delta[q][o].push(r),
                None => nfa.silent[q].push(r),
            }
        }
        nfa.initial.push(0);
        nfa.accepting.clone_from(&trimmed.accepting);
        Ok(nfa.determinize().trim_dead())
    }

    /// `P⁻¹(L)` over `full`: self-loops on every symbol of `full` outside
    /// this automaton's alphabet.
    pub fn inverse_project(&self, full: &Alphabet) -> Result<Automaton> {
        if !self.alphabet.is_subset_of(full) {
            return Err(Error::NotSubset {
                sub: self.alphabet.to_string(),
                sup: full.to_string(),
            });
        }
        let cols: Vec<Option<usize>> = full.iter().map(|s| self.alphabet.index_of(s)).collect();
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(q, row)| {
                cols.iter()
                    .map(|c| match c {
                        Some(i) => row[*i],
                        None => Some(q),
                    })
                    .collect()
            })
            .collect();
        Ok(Automaton::from_raw(full.clone(), delta, self.accepting.clone()))
    }

    /// Every state is reachable, so the language is empty iff nothing accepts.
    pub fn is_empty(&self) -> bool {
        !self.accepting.iter().any(|&a| a)
    }

    /// Shortest accepted word, smallest in alphabet order among equals.
    pub fn shortest_word(&self) -> Option<Word> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            if self.accepting[q] {
                let mut syms = Vec::new();
                let mut cur = q;
                while let Some((p, s)) = parent[cur] {
                    syms.push(self.alphabet.get(s).clone());
                    cur = p;
                }
                syms.reverse();
                return Some(Word::new(syms));
            }
            for (s, t) in self.delta[q].iter().enumerate() {
                if let Some(r) = *t {
                    if !seen[r] {
                        seen[r] = true;
                        parent[r] = Some((q, s));
                        queue.push_back(r);
                    }
                }
            }
        }
        None
    }

    /// Shortest word in exactly one of the two languages, or `None` if they
    /// are equal.
    pub fn distinguishing_word(&self, other: &Automaton) -> Result<Option<Word>> {
        Ok(self.product(other, |a, b| a != b)?.shortest_word())
    }

    pub fn are_equivalent(&self, other: &Automaton) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// A word of `self` missing from `other`, or `None` if `L(self) ⊆ L(other)`.
    pub fn inclusion_witness(&self, other: &Automaton) -> Result<Option<Word>> {
        Ok(self.difference(other)?.shortest_word())
    }

    /// A word of `pr(L)` that is not in `L`, or `None` if `L` is prefix-closed.
    pub fn prefix_closure_witness(&self) -> Option<Word> {
        self.prefix_closure()
            .difference(self)
            .expect("same alphabet")
            .shortest_word()
    }

    pub fn is_prefix_closed(&self) -> bool {
        self.prefix_closure_witness().is_none()
    }

    /// All accepted words of length at most `n`, ordered by length then by
    /// alphabet order.
    pub fn enumerate_upto(&self, n: usize) -> FiniteLanguage {
        let live = self.coreachable();
        let mut out = Vec::new();
        let mut frontier: Vec<(Word, usize)> = if live[0] { vec![(Word::epsilon(), 0)] } else { vec![] };
        for len in 0..=n {
            for (w, q) in &frontier {
                if self.accepting[*q] {
                    out.push(w.clone());
                }
            }
            if len == n {
                break;
            }
            let mut next = Vec::new();
            for (w, q) in &frontier {
                for (s, t) in self.delta[*q].iter().enumerate() {
                    if let Some(r) = *t {
                        if live[r] {
                            next.push((w.then(self.alphabet.get(s)), r));
                        }
                    }
                }
            }
            frontier = next;
        }
        FiniteLanguage::new(self.alphabet.clone(), out).expect("words over own alphabet")
    }

    /// States from which some accepting state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, _, r) in self.transitions() {
            rev[r].push(q);
        }
        let mut live = self.accepting.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Drops states that cannot reach an accepting state (keeps the initial
    /// state, so the empty language is a single rejecting state).
    pub fn trim_dead(&self) -> Automaton {
        let live = self.coreachable();
        let delta = self
            .delta
            .iter()
            .map(|row| row.iter().map(|t| t.filter(|&r| live[r])).collect())
            .collect();
        Automaton { alphabet: self.alphabet.clone(), delta, accepting: self.accepting.clone() }
            .normalized()
    }

    /// For each state, how long an accepted continuation can be.
    pub fn extension_bounds(&self) -> Vec<Extension> {
        let n = self.num_states();
        let live = self.coreachable();
        let succs = |q: usize| -> Vec<usize> {
            self.delta[q].iter().flatten().copied().filter(|&r| live[r]).collect()
        };
        // A live state lies on a cycle iff it can reach itself through live states.
        let on_cycle: Vec<bool> = (0..n)
            .map(|q| {
                if !live[q] {
                    return false;
                }
                let mut seen = vec![false; n];
                let mut stack = succs(q);
                while let Some(r) = stack.pop() {
                    if r == q {
                        return true;
                    }
                    if !seen[r] {
                        seen[r] = true;
                        stack.extend(succs(r));
                    }
                }
                false
            })
            .collect();
        let mut unbounded = on_cycle.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| on_cycle[q]).collect();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, _, r) in self.transitions() {
            if live[q] && live[r] {
                rev[r].push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !unbounded[p] {
                    unbounded[p] = true;
                    stack.push(p);
                }
            }
        }

        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn longest(
            q: usize,
            a: &Automaton,
            live: &[bool],
            memo: &mut Vec<Option<usize>>,
        ) -> usize {
            if let Some(v) = memo[q] {
                return v;
            }
            // Only called on live, acyclic states, so recursion terminates and
            // at least one branch yields a value.
            let mut best: Option<usize> = a.accepting[q].then_some(0);
            for r in a.delta[q].iter().flatten().copied().filter(|&r| live[r]) {
                let v = 1 + longest(r, a, live, memo);
                best = Some(best.map_or(v, |b| b.max(v)));
            }
            let v = best.expect("live state has an accepted continuation");
            memo[q] = Some(v);
            v
        }
        (0..n)
            .map(|q| {
                if !live[q] {
                    Extension::Dead
                } else if unbounded[q] {
                    Extension::Unbounded
                } else {
                    Extension::Bounded(longest(q, self, &live, &mut memo))
                }
            })
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.extension_bounds()[0], Extension::Unbounded)
    }

    /// Length of the longest accepted word, `None` if the language is empty or infinite.
    pub fn longest_word_len(&self) -> Option<usize> {
        match self.extension_bounds()[0] {
            Extension::Bounded(n) => Some(n),
            _ => None,
        }
    }

    /// Moore partition refinement followed by removal of dead states.
    pub fn minimize(&self) -> Automaton {
        let a = self.trim_dead();
        let n = a.num_states();
        let k = a.alphabet.len();
        // Class `n` stands for the implicit sink.
        let mut class: Vec<usize> = a.accepting.iter().map(|&x| usize::from(x)).collect();
        let sink_class = |c: &Vec<usize>, t: Option<usize>| t.map_or(usize::MAX, |r| c[r]);
        loop {
            let mut sig_ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (
                        class[q],
                        (0..k).map(|s| sink_class(&class, a.delta[q][s])).collect(),
                    );
                    let fresh = sig_ids.len();
                    *sig_ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let stable = sig_ids.len() == class.iter().collect::<std::collections::HashSet<_>>().len();
            class = next;
            if stable {
                break;
            }
        }
        let m = class.iter().max().map_or(0, |c| c + 1);
        let mut delta = vec![vec![None; k]; m];
        let mut accepting = vec![false; m];
        for q in 0..n {
            let c = class[q];
            accepting[c] = a.accepting[q];
            for (slot, t) in delta[c].iter_mut().zip(&a.delta[q]) {
                *slot = t.map(|r| class[r]);
            }
        }
        // Move the initial class to slot 0.
        let init = class[0];
        delta.swap(0, init);
        accepting.swap(0, init);
        let swap = |c: usize| if c == 0 { init } else if c == init { 0 } else { c };
        for row in &mut delta {
            for t in row.iter_mut().flatten() {
                *t = swap(*t);
            }
        }
        Automaton::from_raw(a.alphabet.clone(), delta, accepting)
    }

    /// Canonical state name used by the textual form.
    pub fn state_name(q: usize) -> String {
        format!("q{q}")
    }
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Automaton over {} ({} states)", self.alphabet, self.num_states())?;
        for q in 0..self.num_states() {
            let mark = if self.accepting[q] { "*" } else { " " };
            write!(f, "  {mark}q{q}:")?;
            for (s, t) in self.delta[q].iter().enumerate() {
                if let Some(r) = t {
                    write!(f, " {}->q{r}", self.alphabet.get(s))?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
