//! Solvability of observation, diagnosis and control instances.
//!
//! Exact procedures:
//!
//! * unrestricted fusion with one agent: the projections of `K` and `L − K`
//!   must be disjoint;
//! * unrestricted fusion on a finite plant: no string of `K` may share its
//!   whole tuple of projections with a string of `L − K`;
//! * conjunctive fusion: every string of `L − K` must leave `P_i(K)` for some
//!   agent `i`;
//! * disjunctive fusion: every string of `K` must leave `P_i(L − K)` for some
//!   agent `i`.
//!
//! The remaining case, unrestricted fusion with several agents on an infinite
//! plant, is not decidable in general. It is handled by a bounded search for a
//! colliding pair, which can prove unsolvability but never solvability.

use std::collections::HashMap;
use std::fmt;

use crate::automata::{Alphabet, Automaton, Word};
use crate::error::{Error, Result};
use crate::problems::{validate_con, validate_obs, ConInstance, DxInstance, FusionRule, ObsInstance};
use crate::reductions::{con_to_obs, dx_to_obs};

/// Depth used by front ends when the caller does not pick one.
pub const DEFAULT_DEPTH: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Solvable,
    Unsolvable,
    /// No counterexample among strings up to this length; nothing more is known.
    UnknownUpToDepth(usize),
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Solvable => "solvable",
            Verdict::Unsolvable => "unsolvable",
            Verdict::UnknownUpToDepth(_) => "unknown_up_to_depth",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::UnknownUpToDepth(n) => write!(f, "unknown up to depth {n}"),
            v => f.write_str(v.name()),
        }
    }
}

/// A verdict together with the evidence behind it.
///
/// For an unsolvable instance `witness` holds either a pair `(s, s')` with
/// `s ∈ K`, `s' ∈ L − K` that no admissible observers can tell apart, or a
/// single string that the fusion rule necessarily misclassifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub witness: Vec<Word>,
    pub method: String,
}

impl SolveReport {
    pub fn solvable(method: impl Into<String>) -> Self {
        SolveReport { verdict: Verdict::Solvable, witness: Vec::new(), method: method.into() }
    }

    pub fn unsolvable(witness: Vec<Word>, method: impl Into<String>) -> Self {
        SolveReport { verdict: Verdict::Unsolvable, witness, method: method.into() }
    }

    pub fn unknown(depth: usize, method: impl Into<String>) -> Self {
        SolveReport { verdict: Verdict::UnknownUpToDepth(depth), witness: Vec::new(), method: method.into() }
    }

    pub fn is_solvable(&self) -> bool {
        self.verdict == Verdict::Solvable
    }

    pub fn is_unsolvable(&self) -> bool {
        self.verdict == Verdict::Unsolvable
    }

    fn via(mut self, prefix: &str) -> Self {
        self.method = format!("{prefix}/{}", self.method);
        self
    }
}

pub const METHOD_CENTRALIZED: &str = "centralized-projection";
pub const METHOD_TUPLE_FINITE: &str = "joint-observability-finite";
pub const METHOD_TUPLE_BOUNDED: &str = "joint-observability-bounded";
pub const METHOD_CONJUNCTIVE: &str = "conjunctive-product";
pub const METHOD_DISJUNCTIVE: &str = "disjunctive-product";

/// Decides (or semi-decides) an observation instance according to its fusion rule.
///
/// `depth` is only consulted on the bounded path and is required there.
pub fn solve_obs(o: &ObsInstance, depth: Option<usize>) -> Result<SolveReport> {
    validate_obs(o).into_result()?;
    let sigma = o.alphabet();
    let spec = o.spec.embed(sigma)?;
    let negatives = o.complement_in_plant()?;
    match o.fusion {
        FusionRule::Unrestricted if o.observed.len() <= 1 => {
            let observed = o.observed.first().cloned().unwrap_or_default();
            centralized(&spec, &negatives, &observed)
        }
        FusionRule::Unrestricted => match o.plant.longest_word_len() {
            Some(n) => tuple_search(&spec, &negatives, &o.observed, n, METHOD_TUPLE_FINITE),
            None if o.plant.is_empty() => Ok(SolveReport::solvable(METHOD_TUPLE_FINITE)),
            None => {
                let depth = depth.ok_or(Error::DepthRequired)?;
                let report = tuple_search(&spec, &negatives, &o.observed, depth, METHOD_TUPLE_BOUNDED)?;
                Ok(match report.verdict {
                    Verdict::Solvable => SolveReport::unknown(depth, METHOD_TUPLE_BOUNDED),
                    _ => report,
                })
            }
        },
        FusionRule::Conjunctive => {
            let bad = confusable(&negatives, &spec, &o.observed, sigma)?;
            Ok(match bad.shortest_word() {
                None => SolveReport::solvable(METHOD_CONJUNCTIVE),
                Some(w) => SolveReport::unsolvable(vec![w], METHOD_CONJUNCTIVE),
            })
        }
        FusionRule::Disjunctive => {
            let bad = confusable(&spec, &negatives, &o.observed, sigma)?;
            Ok(match bad.shortest_word() {
                None => SolveReport::solvable(METHOD_DISJUNCTIVE),
                Some(w) => SolveReport::unsolvable(vec![w], METHOD_DISJUNCTIVE),
            })
        }
    }
}

/// Strings of `subject` whose every projection is also a projection of some
/// string of `reference`: `subject ∩ ⋂_i P_i⁻¹(P_i(reference))`.
fn confusable(
    subject: &Automaton,
    reference: &Automaton,
    observed: &[Alphabet],
    sigma: &Alphabet,
) -> Result<Automaton> {
    observed.iter().try_fold(subject.clone(), |acc, obs| {
        let image = reference.project(obs)?.inverse_project(sigma)?;
        acc.intersect(&image)
    })
}

fn centralized(spec: &Automaton, negatives: &Automaton, observed: &Alphabet) -> Result<SolveReport> {
    let clash = spec.project(observed)?.intersect(&negatives.project(observed)?)?;
    let Some(x) = clash.shortest_word() else {
        return Ok(SolveReport::solvable(METHOD_CENTRALIZED));
    };
    let sigma = spec.alphabet();
    let single = Automaton::from_words(
        &crate::automata::FiniteLanguage::new(observed.clone(), [x]).expect("projection is over observed"),
    );
    let preimage = single.inverse_project(sigma)?;
    let s = spec.intersect(&preimage)?.shortest_word().expect("x ∈ P(K)");
    let s2 = negatives.intersect(&preimage)?.shortest_word().expect("x ∈ P(L − K)");
    Ok(SolveReport::unsolvable(vec![s, s2], METHOD_CENTRALIZED))
}

fn tuple_of(w: &Word, observed: &[Alphabet]) -> Vec<Word> {
    observed.iter().map(|o| w.project(o)).collect()
}

/// Looks for `s ∈ K`, `s' ∈ L − K` up to length `depth` with equal projection
/// tuples. The smallest `s` (length, then alphabet order) wins, paired with
/// the smallest matching `s'`.
fn tuple_search(
    spec: &Automaton,
    negatives: &Automaton,
    observed: &[Alphabet],
    depth: usize,
    method: &str,
) -> Result<SolveReport> {
    let mut first_negative: HashMap<Vec<Word>, Word> = HashMap::new();
    for w in negatives.enumerate_upto(depth).iter() {
        first_negative.entry(tuple_of(w, observed)).or_insert_with(|| w.clone());
    }
    for s in spec.enumerate_upto(depth).iter() {
        if let Some(s2) = first_negative.get(&tuple_of(s, observed)) {
            return Ok(SolveReport::unsolvable(vec![s.clone(), s2.clone()], method));
        }
    }
    Ok(SolveReport::solvable(method))
}

/// Solves a diagnosis instance through [`dx_to_obs`].
pub fn solve_dx(d: &DxInstance, depth: Option<usize>) -> Result<SolveReport> {
    Ok(solve_obs(&dx_to_obs(d)?, depth)?.via("dx_to_obs"))
}

/// Per-event reports of a control instance plus the combined verdict.
#[derive(Clone, Debug)]
pub struct ConSolveReport {
    pub overall: SolveReport,
    /// The first event (in alphabet order) whose member is unsolvable.
    pub failing_event: Option<crate::automata::Symbol>,
    pub per_sigma: Vec<(crate::automata::Symbol, SolveReport)>,
}

/// Solves every member of [`con_to_obs`]; solvable iff all members are.
pub fn solve_con(c: &ConInstance, depth: Option<usize>) -> Result<ConSolveReport> {
    let members = con_to_obs(c)?;
    let per_sigma = members
        .iter()
        .map(|m| Ok((m.event.clone(), solve_obs(&m.instance, depth)?)))
        .collect::<Result<Vec<_>>>()?;
    let failing = per_sigma.iter().find(|(_, r)| r.is_unsolvable());
    let unknown = per_sigma.iter().find_map(|(_, r)| match r.verdict {
        Verdict::UnknownUpToDepth(n) => Some(n),
        _ => None,
    });
    let (overall, failing_event) = match (failing, unknown) {
        (Some((ev, r)), _) => (SolveReport::unsolvable(r.witness.clone(), "con_to_obs"), Some(ev.clone())),
        (None, Some(n)) => (SolveReport::unknown(n, "con_to_obs"), None),
        (None, None) => (SolveReport::solvable("con_to_obs"), None),
    };
    Ok(ConSolveReport { overall, failing_event, per_sigma })
}

/// Local observers for a conjunctively solvable instance: agent `i` outputs 1
/// on observation `x` iff `x ∈ P_i(K)`. Each automaton is over `Σ_{i,o}`.
pub fn synthesize_conjunctive(o: &ObsInstance) -> Result<Vec<Automaton>> {
    let report = solve_obs(&o.with_fusion(FusionRule::Conjunctive), None)?;
    if !report.is_solvable() {
        return Err(Error::Contract(format!(
            "instance is not conjunctively solvable (witness {})",
            report.witness.iter().map(Word::to_string).collect::<Vec<_>>().join(", ")
        )));
    }
    let spec = o.spec.embed(o.alphabet())?;
    o.observed.iter().map(|obs| spec.project(obs)).collect()
}

/// Word-level separation check shared by the direct checkers below.
fn separate(
    positives: &[Word],
    negatives: &[Word],
    observed: &[Alphabet],
    fusion: FusionRule,
    method: &str,
) -> SolveReport {
    use std::collections::HashSet;
    match fusion {
        FusionRule::Unrestricted => {
            let mut seen: HashMap<Vec<Word>, &Word> = HashMap::new();
            for w in negatives {
                seen.entry(tuple_of(w, observed)).or_insert(w);
            }
            for s in positives {
                if let Some(s2) = seen.get(&tuple_of(s, observed)) {
                    return SolveReport::unsolvable(vec![s.clone(), (*s2).clone()], method);
                }
            }
            SolveReport::solvable(method)
        }
        FusionRule::Conjunctive | FusionRule::Disjunctive => {
            let (reference, subject) = if fusion == FusionRule::Conjunctive {
                (positives, negatives)
            } else {
                (negatives, positives)
            };
            let images: Vec<HashSet<Word>> = observed
                .iter()
                .map(|o| reference.iter().map(|w| w.project(o)).collect())
                .collect();
            match subject
                .iter()
                .find(|w| observed.iter().zip(&images).all(|(o, img)| img.contains(&w.project(o))))
            {
                Some(w) => SolveReport::unsolvable(vec![w.clone()], method),
                None => SolveReport::solvable(method),
            }
        }
    }
}

/// Direct check of a diagnosis instance on a finite plant, classifying every
/// string by the diagnosis condition itself rather than through [`dx_to_obs`].
pub fn check_dx_direct(d: &DxInstance) -> Result<SolveReport> {
    crate::problems::validate_dx(d).into_result()?;
    let n = d.plant.longest_word_len().unwrap_or(0);
    if !d.plant.is_finite() {
        return Err(Error::InfiniteLanguage("the direct diagnosis checker"));
    }
    let words = d.plant.enumerate_upto(n);
    let post_fault = |w: &Word| w.iter().position(|s| *s == d.fault).map(|p| w.len() - p - 1);
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    for w in words.iter() {
        match post_fault(w) {
            None => negatives.push(w.clone()),
            Some(tau) if tau >= d.delay => positives.push(w.clone()),
            Some(tau) => {
                let reaches = words.iter().any(|v| {
                    v.len() >= w.len() + (d.delay - tau) && v.symbols().starts_with(w.symbols())
                });
                if !reaches {
                    positives.push(w.clone());
                }
            }
        }
    }
    Ok(separate(&positives, &negatives, &d.observed, d.fusion, "direct-diagnosis"))
}

/// Direct per-event check of a control instance with finite languages: for
/// each controllable σ, strings `s ∈ K` with `sσ ∈ K` must be enabled and
/// those with `sσ ∈ L − K` disabled.
pub fn check_con_direct(c: &ConInstance) -> Result<ConSolveReport> {
    validate_con(c).into_result()?;
    let Some(n) = c.plant.longest_word_len().or(c.plant.is_empty().then_some(0)) else {
        return Err(Error::InfiniteLanguage("the direct control checker"));
    };
    let spec = c.spec.embed(c.alphabet())?;
    let k_words = spec.enumerate_upto(n);
    let mut per_sigma = Vec::new();
    for sigma in c.controllable_events().iter() {
        let agents = c.agents_of(sigma);
        let observed: Vec<Alphabet> = agents.iter().map(|&i| c.observed[i].clone()).collect();
        let mut enable = Vec::new();
        let mut disable = Vec::new();
        for s in k_words.iter() {
            let next = s.then(sigma);
            if spec.accepts(&next)? {
                enable.push(s.clone());
            } else if c.plant.accepts(&next)? {
                disable.push(s.clone());
            }
        }
        per_sigma.push((sigma.clone(), separate(&enable, &disable, &observed, c.fusion, "direct-control")));
    }
    let failing = per_sigma.iter().find(|(_, r)| r.is_unsolvable());
    Ok(ConSolveReport {
        overall: match failing {
            Some((_, r)) => SolveReport::unsolvable(r.witness.clone(), "direct-control"),
            None => SolveReport::solvable("direct-control"),
        },
        failing_event: failing.map(|(e, _)| e.clone()),
        per_sigma,
    })
}
