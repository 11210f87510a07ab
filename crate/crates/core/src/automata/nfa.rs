//! Nondeterministic intermediate form used by the constructions that can
//! introduce choice (letter concatenation, projection), and the subset
//! construction that turns it back into an [`Automaton`].

use std::collections::{HashMap, VecDeque};

use super::{Alphabet, Automaton};

pub(crate) struct Nfa {
    pub alphabet: Alphabet,
    /// `delta[q][i]` = successors of `q` on the `i`-th symbol.
    pub delta: Vec<Vec<Vec<usize>>>,
    /// Silent moves (erased symbols).
    pub silent: Vec<Vec<usize>>,
    pub initial: Vec<usize>,
    pub accepting: Vec<bool>,
}

impl Nfa {
    pub fn with_states(alphabet: Alphabet, n: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            delta: vec![vec![Vec::new(); k]; n],
            silent: vec![Vec::new(); n],
            initial: Vec::new(),
            accepting: vec![false; n],
        }
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.delta.len()];
        let mut stack: Vec<usize> = Vec::new();
        for q in seed {
            if !seen[q] {
                seen[q] = true;
                stack.push(q);
            }
        }
        while let Some(q) = stack.pop() {
            for &r in &self.silent[q] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        (0..seen.len()).filter(|&q| seen[q]).collect()
    }

    /// Subset construction. Subsets are identified by their sorted member
    /// lists and numbered in breadth-first discovery order.
    pub fn determinize(&self) -> Automaton {
        let k = self.alphabet.len();
        let start = self.closure(self.initial.iter().copied());
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut subsets: Vec<Vec<usize>> = Vec::new();
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let mut queue = VecDeque::new();

        ids.insert(start.clone(), 0);
        subsets.push(start);
        delta.push(vec![None; k]);
        queue.push_back(0usize);

        while let Some(id) = queue.pop_front() {
            for sym in 0..k {
                let mut step: Vec<usize> = subsets[id]
                    .iter()
                    .flat_map(|&q| self.delta[q][sym].iter().copied())
                    .collect();
                if step.is_empty() {
                    continue;
                }
                step.sort_unstable();
                step.dedup();
                let target = self.closure(step);
                let next = match ids.get(&target) {
                    Some(&t) => t,
                    None => {
                        let t = subsets.len();
                        ids.insert(target.clone(), t);
                        subsets.push(target);
                        delta.push(vec![None; k]);
                        queue.push_back(t);
                        t
                    }
                };
                delta[id][sym] = Some(next);
            }
        }

        let accepting = subsets
            .iter()
            .map(|s| s.iter().any(|&q| self.accepting[q]))
            .collect();
        Automaton::from_raw(self.alphabet.clone(), delta, accepting)
    }
}
