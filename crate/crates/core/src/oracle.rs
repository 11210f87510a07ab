//! Brute-force reference deciders over explicit finite languages.
//!
//! Nothing here touches automata or the solvers: words are compared as plain
//! name sequences, projections are recomputed locally, and every verdict comes
//! from literally evaluating the defining condition over an enumerated space
//! of local observers.
//!
//! Observer spaces:
//!
//! * Conjunctive and disjunctive fusion: every boolean function on each
//!   agent's set of observations.
//! * Unrestricted fusion: every observer `f_i` up to kernel equivalence, i.e.
//!   every partition of agent `i`'s observation set. Any observer with any
//!   codomain induces such a partition, and the fused verdict depends only on
//!   the tuple of block indices, so nothing is lost. For each observer tuple
//!   the fusion rule ranges over all boolean functions of the block-index
//!   tuples, which exists iff no tuple is required to be both 0 and 1.
//!
//! The search size is checked against a budget before enumerating; an
//! oversized instance is an error, never a guess.

use std::collections::{HashMap, HashSet};

use crate::automata::{Alphabet, FiniteLanguage, Symbol, Word};
use crate::error::{Error, Result};
use crate::problems::FusionRule;
use crate::solvers::SolveReport;

pub const DEFAULT_BUDGET: u64 = 1 << 20;
pub const METHOD_ORACLE: &str = "oracle-exhaustive";

fn erase(w: &Word, observed: &HashSet<&str>) -> Vec<String> {
    w.iter()
        .map(Symbol::name)
        .filter(|n| observed.contains(n))
        .map(str::to_string)
        .collect()
}

/// Required outputs: `positives` must be fused to 1, `negatives` to 0.
struct Problem<'a> {
    positives: Vec<&'a Word>,
    negatives: Vec<&'a Word>,
    /// `obs[i][j]`: index of word j's observation for agent i (positives first).
    obs: Vec<Vec<usize>>,
    /// Number of distinct observations per agent.
    sizes: Vec<usize>,
}

impl<'a> Problem<'a> {
    fn new(positives: Vec<&'a Word>, negatives: Vec<&'a Word>, observed: &[Alphabet]) -> Self {
        let mut obs = Vec::new();
        let mut sizes = Vec::new();
        for alphabet in observed {
            let names: HashSet<&str> = alphabet.iter().map(Symbol::name).collect();
            let mut ids: HashMap<Vec<String>, usize> = HashMap::new();
            let row = positives
                .iter()
                .chain(negatives.iter())
                .map(|w| {
                    let key = erase(w, &names);
                    let fresh = ids.len();
                    *ids.entry(key).or_insert(fresh)
                })
                .collect();
            obs.push(row);
            sizes.push(ids.len());
        }
        Problem { positives, negatives, obs, sizes }
    }

    fn word(&self, j: usize) -> &'a Word {
        if j < self.positives.len() {
            self.positives[j]
        } else {
            self.negatives[j - self.positives.len()]
        }
    }

    fn count(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    fn is_positive(&self, j: usize) -> bool {
        j < self.positives.len()
    }
}

fn check_budget(required: u128, budget: u64) -> Result<()> {
    if required > u128::from(budget) {
        return Err(Error::OracleBudget { required: required.to_string(), budget });
    }
    Ok(())
}

fn bell(n: usize) -> u128 {
    // Bell triangle.
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("non-empty")];
        for v in &row {
            let add = next.last().expect("non-empty").saturating_add(*v);
            next.push(add);
        }
        row = next;
    }
    row[0]
}

/// Restricted-growth strings of length `n`: every set partition exactly once,
/// from the coarsest `[0, 0, ..]` to the finest `[0, 1, 2, ..]`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; n];
    fn rec(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max + 1 {
            if i == 0 && v > 0 {
                break;
            }
            cur[i] = v;
            rec(i + 1, max.max(v), cur, out);
        }
    }
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(0, 0, &mut cur, &mut out);
    }
    out
}

/// Every function from `n` observations into `{0..n-1}` (no kernel pruning).
fn all_functions(n: usize) -> Vec<Vec<usize>> {
    let total = n.checked_pow(n as u32).unwrap_or(usize::MAX);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect()
        })
        .collect()
}

/// For one choice of observers, does some fusion function satisfy all
/// requirements? Returns the conflicting pair otherwise.
fn fusion_exists(p: &Problem<'_>, choice: &[&Vec<usize>]) -> std::result::Result<(), (usize, usize)> {
    let mut label: HashMap<Vec<usize>, usize> = HashMap::new();
    for j in 0..p.count() {
        let tuple: Vec<usize> = choice.iter().enumerate().map(|(i, f)| f[p.obs[i][j]]).collect();
        match label.get(&tuple) {
            Some(&k) if p.is_positive(k) != p.is_positive(j) => return Err((k, j)),
            Some(_) => {}
            None => {
                label.insert(tuple, j);
            }
        }
    }
    Ok(())
}

fn search_observer_tuples(p: &Problem<'_>, spaces: Vec<Vec<Vec<usize>>>) -> SolveReport {
    let mut idx = vec![0usize; spaces.len()];
    let mut last_conflict;
    loop {
        let choice: Vec<&Vec<usize>> = spaces.iter().zip(&idx).map(|(s, &i)| &s[i]).collect();
        match fusion_exists(p, &choice) {
            Ok(()) => return SolveReport::solvable(METHOD_ORACLE),
            Err(pair) => last_conflict = Some(pair),
        }
        // Odometer over the agents' observer spaces.
        let mut a = 0;
        loop {
            if a == spaces.len() {
                let (k, j) = last_conflict.expect("at least one tuple was tried");
                let (s, s2) = if p.is_positive(k) { (k, j) } else { (j, k) };
                return SolveReport::unsolvable(vec![p.word(s).clone(), p.word(s2).clone()], METHOD_ORACLE);
            }
            idx[a] += 1;
            if idx[a] < spaces[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

fn unrestricted(p: &Problem<'_>, budget: u64) -> Result<SolveReport> {
    let required = p.sizes.iter().fold(1u128, |acc, &n| acc.saturating_mul(bell(n)));
    check_budget(required, budget)?;
    // The odometer ends on the finest partition of every agent, so an
    // unsolvable verdict reports a pair with identical projection tuples.
    Ok(search_observer_tuples(p, p.sizes.iter().map(|&n| partitions(n)).collect()))
}

fn boolean(p: &Problem<'_>, fusion: FusionRule, budget: u64) -> Result<SolveReport> {
    let bits: usize = p.sizes.iter().sum();
    check_budget(1u128.checked_shl(bits as u32).unwrap_or(u128::MAX), budget)?;
    let offsets: Vec<usize> = p
        .sizes
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n;
            Some(o)
        })
        .collect();
    let conj = fusion == FusionRule::Conjunctive;
    let verdict = |mask: u64, j: usize| -> bool {
        let mut it = (0..p.sizes.len()).map(|i| mask >> (offsets[i] + p.obs[i][j]) & 1 == 1);
        if conj {
            it.all(|b| b)
        } else {
            it.any(|b| b)
        }
    };
    // Witness: the violated requirement under the least committal assignment
    // that still satisfies the side the fusion rule makes universal. For AND
    // that is the first mask (numerically) accepting every positive, for OR
    // the last mask rejecting every negative.
    let mut witness: Option<usize> = None;
    for mask in 0..(1u64 << bits) {
        let pos_ok = (0..p.positives.len()).all(|j| verdict(mask, j));
        let neg_ok = (p.positives.len()..p.count()).all(|j| !verdict(mask, j));
        if pos_ok && neg_ok {
            return Ok(SolveReport::solvable(METHOD_ORACLE));
        }
        if conj && pos_ok && witness.is_none() {
            witness = (p.positives.len()..p.count()).find(|&j| verdict(mask, j));
        }
        if !conj && neg_ok {
            witness = (0..p.positives.len()).find(|&j| !verdict(mask, j));
        }
    }
    let w = witness.expect("the all-ones or all-zeros assignment satisfies one side");
    Ok(SolveReport::unsolvable(vec![p.word(w).clone()], METHOD_ORACLE))
}

fn decide(
    positives: Vec<&Word>,
    negatives: Vec<&Word>,
    observed: &[Alphabet],
    fusion: FusionRule,
    budget: u64,
) -> Result<SolveReport> {
    let p = Problem::new(positives, negatives, observed);
    match fusion {
        FusionRule::Unrestricted => unrestricted(&p, budget),
        _ => boolean(&p, fusion, budget),
    }
}

fn same_names(a: &Word, b: &Word) -> bool {
    a.len() == b.len() && a.iter().zip(b.iter()).all(|(x, y)| x.name() == y.name())
}

/// Observation problem over explicit languages. `spec` must be a subset of `plant`.
pub fn oracle_solve_obs(
    plant: &FiniteLanguage,
    spec: &FiniteLanguage,
    observed: &[Alphabet],
    fusion: FusionRule,
    budget: u64,
) -> Result<SolveReport> {
    let in_spec = |w: &Word| spec.iter().any(|v| same_names(v, w));
    if let Some(extra) = spec.iter().find(|w| !plant.iter().any(|v| same_names(v, w))) {
        return Err(Error::NotIncluded { witness: extra.clone() });
    }
    let (positives, negatives): (Vec<&Word>, Vec<&Word>) = plant.iter().partition(|w| in_spec(w));
    decide(positives, negatives, observed, fusion, budget)
}

/// Observation search without kernel pruning: every observer is an arbitrary
/// function into a codomain as large as its domain. Only meant for tiny
/// instances, as a check on the pruned search.
pub fn oracle_solve_obs_unpruned(
    plant: &FiniteLanguage,
    spec: &FiniteLanguage,
    observed: &[Alphabet],
    budget: u64,
) -> Result<SolveReport> {
    let in_spec = |w: &Word| spec.iter().any(|v| same_names(v, w));
    let (positives, negatives): (Vec<&Word>, Vec<&Word>) = plant.iter().partition(|w| in_spec(w));
    let p = Problem::new(positives, negatives, observed);
    let required = p
        .sizes
        .iter()
        .fold(1u128, |acc, &n| acc.saturating_mul((n as u128).saturating_pow(n as u32)));
    check_budget(required, budget)?;
    Ok(search_observer_tuples(&p, p.sizes.iter().map(|&n| all_functions(n)).collect()))
}

/// Diagnosis problem over an explicit plant. A word is positive when it has
/// the fault followed by at least `delay` events, or has the fault and no
/// extension inside the plant reaching `delay` post-fault events; negative
/// when fault-free; otherwise unconstrained.
pub fn oracle_solve_dx(
    plant: &FiniteLanguage,
    observed: &[Alphabet],
    fault: &Symbol,
    delay: usize,
    fusion: FusionRule,
    budget: u64,
) -> Result<SolveReport> {
    let after_fault = |w: &Word| {
        w.iter()
            .position(|s| s.name() == fault.name())
            .map(|p| w.len() - p - 1)
    };
    let extends = |long: &Word, short: &Word| {
        long.len() >= short.len() && long.iter().zip(short.iter()).all(|(x, y)| x.name() == y.name())
    };
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for w in plant.iter() {
        match after_fault(w) {
            None => negatives.push(w),
            Some(tau) if tau >= delay => positives.push(w),
            Some(_) => {
                let reaches = plant
                    .iter()
                    .any(|v| extends(v, w) && after_fault(v).is_some_and(|t| t >= delay));
                if !reaches {
                    positives.push(w);
                }
            }
        }
    }
    decide(positives, negatives, observed, fusion, budget)
}

/// Control problem over explicit prefix-closed languages, evaluated event by
/// event: after `s ∈ K`, controllable σ must be enabled if `sσ ∈ K` and
/// disabled if `sσ ∈ L − K`, using only the agents that control σ.
///
/// The budget applies to each event separately.
pub fn oracle_solve_con(
    plant: &FiniteLanguage,
    spec: &FiniteLanguage,
    observed: &[Alphabet],
    controllable: &[Alphabet],
    fusion: FusionRule,
    budget: u64,
) -> Result<SolveReport> {
    let mem = |lang: &FiniteLanguage, w: &Word| lang.iter().any(|v| same_names(v, w));
    let mut events: Vec<&Symbol> = Vec::new();
    for sym in plant.alphabet().iter() {
        if controllable.iter().any(|c| c.iter().any(|x| x.name() == sym.name())) {
            events.push(sym);
        }
    }
    for sigma in events {
        let agents: Vec<Alphabet> = controllable
            .iter()
            .zip(observed)
            .filter(|(c, _)| c.iter().any(|x| x.name() == sigma.name()))
            .map(|(_, o)| o.clone())
            .collect();
        let mut enable = Vec::new();
        let mut disable = Vec::new();
        for s in spec.iter() {
            let mut next = s.clone();
            next.push(sigma.clone());
            if mem(spec, &next) {
                enable.push(s);
            } else if mem(plant, &next) {
                disable.push(s);
            }
        }
        let report = decide(enable, disable, &agents, fusion, budget)?;
        if report.is_unsolvable() {
            return Ok(report);
        }
    }
    Ok(SolveReport::solvable(METHOD_ORACLE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::Verdict;

    fn sigma(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().map(|n| Symbol::parse(*n).unwrap())).unwrap()
    }

    fn fl(alphabet: &Alphabet, words: &[&str]) -> FiniteLanguage {
        FiniteLanguage::parse(alphabet, words).unwrap()
    }

    fn agents() -> Vec<Alphabet> {
        vec![sigma(&["a"]), sigma(&["b"])]
    }

    #[test]
    fn bell_numbers_and_partitions() {
        let expected = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, b) in expected.iter().enumerate() {
            assert_eq!(bell(n), *b);
            assert_eq!(partitions(n).len() as u128, *b);
        }
        assert_eq!(partitions(3).last().unwrap(), &vec![0, 1, 2]);
        assert_eq!(all_functions(3).len(), 27);
    }

    #[test]
    fn joint_observability_example() {
        let ab = sigma(&["a", "b"]);
        let r = oracle_solve_obs(&fl(&ab, &["a b", "b a"]), &fl(&ab, &["a b"]), &agents(), FusionRule::Unrestricted, DEFAULT_BUDGET)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Unsolvable);
        assert_eq!(r.witness.iter().map(Word::compact).collect::<Vec<_>>(), ["ab", "ba"]);
    }

    #[test]
    fn fusion_kinds_differ() {
        let ab = sigma(&["a", "b"]);
        let plant = fl(&ab, &["a", "b", "a b"]);
        let spec = fl(&ab, &["a", "b"]);
        let run = |spec: &FiniteLanguage, f| oracle_solve_obs(&plant, spec, &agents(), f, DEFAULT_BUDGET).unwrap();
        assert!(run(&spec, FusionRule::Unrestricted).is_solvable());
        let conj = run(&spec, FusionRule::Conjunctive);
        assert_eq!(conj.verdict, Verdict::Unsolvable);
        assert_eq!(conj.witness[0].compact(), "ab");

        let spec2 = fl(&ab, &["a b"]);
        assert!(run(&spec2, FusionRule::Conjunctive).is_solvable());
        let disj = run(&spec2, FusionRule::Disjunctive);
        assert_eq!(disj.verdict, Verdict::Unsolvable);
        assert_eq!(disj.witness[0].compact(), "ab");

        for f in FusionRule::ALL {
            assert!(run(&plant, f).is_solvable());
        }
    }

    #[test]
    fn diagnosis_examples() {
        let s = sigma(&["#f", "a", "b"]);
        let f = Symbol::parse("#f").unwrap();
        let plant = fl(&s, &["", "#f", "#f a", "b", "b a"]);
        let r = oracle_solve_dx(&plant, &[sigma(&["a"])], &f, 1, FusionRule::Unrestricted, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Unsolvable);

        let clean = fl(&s, &["", "a", "a b"]);
        assert!(oracle_solve_dx(&clean, &[sigma(&["a"])], &f, 1, FusionRule::Unrestricted, DEFAULT_BUDGET)
            .unwrap()
            .is_solvable());

        // {#f} alone with m = 2 must still be flagged; ε-observation collides with "" .
        let lone = fl(&s, &["", "#f"]);
        let r = oracle_solve_dx(&lone, &[sigma(&["a"])], &f, 2, FusionRule::Unrestricted, DEFAULT_BUDGET).unwrap();
        assert_eq!(r.verdict, Verdict::Unsolvable);
        let only_fault = fl(&s, &["#f"]);
        assert!(oracle_solve_dx(&only_fault, &[sigma(&["a"])], &f, 2, FusionRule::Unrestricted, DEFAULT_BUDGET)
            .unwrap()
            .is_solvable());
    }

    #[test]
    fn control_examples() {
        let ab = sigma(&["a", "b"]);
        let r = oracle_solve_con(
            &fl(&ab, &["", "a", "a b"]),
            &fl(&ab, &["", "a"]),
            &[sigma(&["a"])],
            &[sigma(&["b"])],
            FusionRule::Unrestricted,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(r.is_solvable());

        let r = oracle_solve_con(
            &fl(&ab, &["", "a", "a b", "b", "b b"]),
            &fl(&ab, &["", "a", "a b"]),
            &[Alphabet::empty()],
            &[sigma(&["b"])],
            FusionRule::Unrestricted,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Unsolvable);
    }

    #[test]
    fn budget_is_enforced() {
        let ab = sigma(&["a", "b"]);
        let plant = fl(&ab, &["", "a", "b", "a a", "a b", "b a", "b b"]);
        let spec = fl(&ab, &["a"]);
        let err = oracle_solve_obs(&plant, &spec, &[ab.clone(), ab.clone()], FusionRule::Conjunctive, 1 << 10)
            .unwrap_err();
        assert!(matches!(err, Error::OracleBudget { .. }));
    }

    #[test]
    fn pruning_matches_unpruned_search_on_micro_instances() {
        let ab = sigma(&["a", "b"]);
        let plant = fl(&ab, &["a", "b", "a b", "b a"]);
        let subsets: [&[&str]; 5] = [&[], &["a"], &["a b"], &["a", "b a"], &["a b", "b a"]];
        for spec in subsets {
            for observed in [agents(), vec![sigma(&["a"])], vec![Alphabet::empty(), ab.clone()]] {
                let spec = fl(&ab, spec);
                let pruned = oracle_solve_obs(&plant, &spec, &observed, FusionRule::Unrestricted, DEFAULT_BUDGET).unwrap();
                let full = oracle_solve_obs_unpruned(&plant, &spec, &observed, DEFAULT_BUDGET).unwrap();
                assert_eq!(pruned.verdict, full.verdict);
            }
        }
    }
}
