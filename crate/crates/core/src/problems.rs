//! The three problem classes, their validation rules, and the diagnosis
//! language of strings that must be flagged.

use std::fmt;

use crate::automata::{Alphabet, Automaton, Extension, Symbol, Word};
use crate::error::{Error, Result};

/// How local verdicts are combined into the global one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FusionRule {
    /// Any function of the tuple of local observer outputs.
    Unrestricted,
    /// AND of boolean local verdicts.
    Conjunctive,
    /// OR of boolean local verdicts.
    Disjunctive,
}

impl FusionRule {
    pub const ALL: [FusionRule; 3] =
        [FusionRule::Unrestricted, FusionRule::Conjunctive, FusionRule::Disjunctive];

    pub fn name(self) -> &'static str {
        match self {
            FusionRule::Unrestricted => "unrestricted",
            FusionRule::Conjunctive => "conjunctive",
            FusionRule::Disjunctive => "disjunctive",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for FusionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

/// Observation problem: separate `spec` (K) from `plant − spec` (L − K)
/// using one observer per agent and a fusion rule.
#[derive(Clone, Debug)]
pub struct ObsInstance {
    pub plant: Automaton,
    pub spec: Automaton,
    /// Σ_{i,o}, one entry per agent.
    pub observed: Vec<Alphabet>,
    pub fusion: FusionRule,
}

/// Diagnosis problem: flag strings that contain `fault` within `delay`
/// events of its first occurrence, never flag fault-free strings.
#[derive(Clone, Debug)]
pub struct DxInstance {
    pub plant: Automaton,
    pub observed: Vec<Alphabet>,
    pub fault: Symbol,
    pub delay: usize,
    pub fusion: FusionRule,
}

/// Control problem: per controllable event σ, enable σ after `s` exactly when
/// `sσ` stays in `spec`. Both languages are prefix-closed.
#[derive(Clone, Debug)]
pub struct ConInstance {
    pub plant: Automaton,
    pub spec: Automaton,
    pub observed: Vec<Alphabet>,
    /// Σ_{i,c}, one entry per agent.
    pub controllable: Vec<Alphabet>,
    pub fusion: FusionRule,
}

impl ObsInstance {
    pub fn alphabet(&self) -> &Alphabet {
        self.plant.alphabet()
    }

    /// `L − K`.
    pub fn complement_in_plant(&self) -> Result<Automaton> {
        self.plant.difference(&self.spec)
    }

    pub fn with_fusion(&self, fusion: FusionRule) -> Self {
        ObsInstance { fusion, ..self.clone() }
    }
}

impl DxInstance {
    pub fn alphabet(&self) -> &Alphabet {
        self.plant.alphabet()
    }

    pub fn with_fusion(&self, fusion: FusionRule) -> Self {
        DxInstance { fusion, ..self.clone() }
    }
}

impl ConInstance {
    pub fn alphabet(&self) -> &Alphabet {
        self.plant.alphabet()
    }

    /// Σ_c = ∪_i Σ_{i,c}, in plant alphabet order.
    pub fn controllable_events(&self) -> Alphabet {
        let all = self
            .controllable
            .iter()
            .fold(Alphabet::empty(), |acc, c| acc.union(c));
        self.alphabet().intersection(&all)
    }

    /// Σ_uc = Σ − Σ_c.
    pub fn uncontrollable_events(&self) -> Alphabet {
        self.alphabet().difference(&self.controllable_events())
    }

    /// Indices of the agents that control `sigma`.
    pub fn agents_of(&self, sigma: &Symbol) -> Vec<usize> {
        self.controllable
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(sigma))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn with_fusion(&self, fusion: FusionRule) -> Self {
        ConInstance { fusion, ..self.clone() }
    }
}

/// One reason an instance is ill-formed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    AlphabetMismatch { plant: String, spec: String },
    SpecNotInPlant { witness: Word },
    ObservedOutsideAlphabet { agent: usize, symbol: Symbol },
    ControllableOutsideAlphabet { agent: usize, symbol: Symbol },
    AgentCountMismatch { observed: usize, controllable: usize },
    FaultNotInAlphabet { fault: Symbol },
    FaultObservable { agent: usize, fault: Symbol },
    NotPrefixClosed { language: &'static str, witness: Word },
    NotControllable { prefix: Word, event: Symbol },
}

impl Violation {
    pub fn witness(&self) -> Option<Word> {
        match self {
            Violation::SpecNotInPlant { witness } | Violation::NotPrefixClosed { witness, .. } => {
                Some(witness.clone())
            }
            Violation::NotControllable { prefix, event } => Some(prefix.then(event)),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AlphabetMismatch { plant, spec } => {
                write!(f, "spec alphabet {spec} differs from plant alphabet {plant}")
            }
            Violation::SpecNotInPlant { witness } => {
                write!(f, "spec is not contained in plant: {witness} is in spec only")
            }
            Violation::ObservedOutsideAlphabet { agent, symbol } => {
                write!(f, "agent {agent} observes {symbol}, which is not in the alphabet")
            }
            Violation::ControllableOutsideAlphabet { agent, symbol } => {
                write!(f, "agent {agent} controls {symbol}, which is not in the alphabet")
            }
            Violation::AgentCountMismatch { observed, controllable } => write!(
                f,
                "{observed} observed alphabets but {controllable} controllable alphabets"
            ),
            Violation::FaultNotInAlphabet { fault } => {
                write!(f, "fault {fault} is not in the alphabet")
            }
            Violation::FaultObservable { agent, fault } => {
                write!(f, "fault must be unobservable: agent {agent} observes {fault}")
            }
            Violation::NotPrefixClosed { language, witness } => {
                write!(f, "{language} is not prefix-closed: prefix {witness} is missing")
            }
            Violation::NotControllable { prefix, event } => write!(
                f,
                "spec is not controllable: {prefix} is in spec and {event} is uncontrollable, \
                 but only the plant allows {}",
                prefix.then(event)
            ),
        }
    }
}

/// Result of validating an instance; violations are data, not errors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn into_result(self) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(Error::InvalidInstance(self.violations))
        }
    }
}

fn check_spec_in_plant(plant: &Automaton, spec: &Automaton, out: &mut Vec<Violation>) -> bool {
    if !spec.alphabet().same_set(plant.alphabet()) {
        out.push(Violation::AlphabetMismatch {
            plant: plant.alphabet().to_string(),
            spec: spec.alphabet().to_string(),
        });
        return false;
    }
    if let Some(witness) = spec.inclusion_witness(plant).expect("alphabets checked") {
        out.push(Violation::SpecNotInPlant { witness });
        return false;
    }
    true
}

fn check_observed(alphabet: &Alphabet, observed: &[Alphabet], out: &mut Vec<Violation>) {
    for (agent, obs) in observed.iter().enumerate() {
        for symbol in obs.iter().filter(|s| !alphabet.contains(s)) {
            out.push(Violation::ObservedOutsideAlphabet { agent, symbol: symbol.clone() });
        }
    }
}

pub fn validate_obs(i: &ObsInstance) -> ValidationReport {
    let mut violations = Vec::new();
    check_spec_in_plant(&i.plant, &i.spec, &mut violations);
    check_observed(i.alphabet(), &i.observed, &mut violations);
    ValidationReport { violations }
}

pub fn validate_dx(i: &DxInstance) -> ValidationReport {
    let mut violations = Vec::new();
    check_observed(i.alphabet(), &i.observed, &mut violations);
    if !i.alphabet().contains(&i.fault) {
        violations.push(Violation::FaultNotInAlphabet { fault: i.fault.clone() });
    }
    for (agent, obs) in i.observed.iter().enumerate() {
        if obs.contains(&i.fault) {
            violations.push(Violation::FaultObservable { agent, fault: i.fault.clone() });
        }
    }
    ValidationReport { violations }
}

pub fn validate_con(i: &ConInstance) -> ValidationReport {
    let mut violations = Vec::new();
    let sigma = i.alphabet();
    if i.observed.len() != i.controllable.len() {
        violations.push(Violation::AgentCountMismatch {
            observed: i.observed.len(),
            controllable: i.controllable.len(),
        });
    }
    check_observed(sigma, &i.observed, &mut violations);
    for (agent, ctrl) in i.controllable.iter().enumerate() {
        for symbol in ctrl.iter().filter(|s| !sigma.contains(s)) {
            violations.push(Violation::ControllableOutsideAlphabet { agent, symbol: symbol.clone() });
        }
    }
    let mut closed = true;
    if let Some(witness) = i.plant.prefix_closure_witness() {
        violations.push(Violation::NotPrefixClosed { language: "plant", witness });
        closed = false;
    }
    if i.spec.alphabet().same_set(sigma) {
        if let Some(witness) = i.spec.prefix_closure_witness() {
            violations.push(Violation::NotPrefixClosed { language: "spec", witness });
            closed = false;
        }
    }
    let included = check_spec_in_plant(&i.plant, &i.spec, &mut violations);
    if closed && included {
        if let Some((prefix, event)) =
            is_controllable(&i.plant, &i.spec, &i.uncontrollable_events()).expect("preconditions checked")
        {
            violations.push(Violation::NotControllable { prefix, event });
        }
    }
    ValidationReport { violations }
}

/// Checks controllability of prefix-closed `spec ⊆ plant` with respect to the
/// `uncontrollable` events: for every `s` in spec and uncontrollable σ, `sσ`
/// in plant implies `sσ` in spec.
///
/// Returns `None` when controllable, otherwise the shortest violating `(s, σ)`.
pub fn is_controllable(
    plant: &Automaton,
    spec: &Automaton,
    uncontrollable: &Alphabet,
) -> Result<Option<(Word, Symbol)>> {
    if let Some(witness) = plant.prefix_closure_witness() {
        return Err(Error::NotPrefixClosed { which: "plant", witness });
    }
    if let Some(witness) = spec.prefix_closure_witness() {
        return Err(Error::NotPrefixClosed { which: "spec", witness });
    }
    if let Some(witness) = spec.inclusion_witness(plant)? {
        return Err(Error::NotIncluded { witness });
    }
    if !uncontrollable.is_subset_of(plant.alphabet()) {
        return Err(Error::NotSubset {
            sub: uncontrollable.to_string(),
            sup: plant.alphabet().to_string(),
        });
    }
    Ok(controllability_walk(plant, spec, uncontrollable))
}

/// The controllability condition alone, without the inclusion precondition.
pub(crate) fn controllability_walk(
    plant: &Automaton,
    spec: &Automaton,
    uncontrollable: &Alphabet,
) -> Option<(Word, Symbol)> {
    // Breadth-first walk of the product, restricted to strings of spec.
    let mut seen = std::collections::HashSet::new();
    let mut queue = std::collections::VecDeque::from([(Word::epsilon(), Some(0usize), Some(0usize))]);
    seen.insert((Some(0usize), Some(0usize)));
    while let Some((s, kq, lq)) = queue.pop_front() {
        if !kq.is_some_and(|q| spec.is_accepting(q)) {
            continue;
        }
        for sym in spec.alphabet().iter() {
            let k_next = kq.and_then(|q| spec.step(q, sym));
            let l_next = lq.and_then(|q| plant.step(q, sym));
            let in_plant = l_next.is_some_and(|q| plant.is_accepting(q));
            let in_spec = k_next.is_some_and(|q| spec.is_accepting(q));
            if uncontrollable.contains(sym) && in_plant && !in_spec {
                return Some((s, sym.clone()));
            }
            if in_spec && seen.insert((k_next, l_next)) {
                queue.push_back((s.then(sym), k_next, l_next));
            }
        }
    }
    None
}

/// Strings that must be flagged by a diagnoser with delay bound `delay`.
///
/// A string of the plant is included when it contains the fault followed by
/// at least `delay` events, or when it contains the fault but neither it nor
/// any extension in the plant reaches `delay` post-fault events.
///
/// Built as the product of the plant with a saturating post-fault counter.
pub fn positive_for_m_steps(i: &DxInstance) -> Result<Automaton> {
    validate_dx(i).into_result()?;
    let plant = i.plant.trim_dead();
    let m = i.delay;
    let ext = plant.extension_bounds();
    let fault = plant.alphabet().index_of(&i.fault).expect("validated");
    let k = plant.alphabet().len();

    // Counter value: None = no fault yet, Some(c) = c events since the first
    // fault, saturating at m.
    type Node = (usize, Option<usize>);
    let mut ids: std::collections::HashMap<Node, usize> = std::collections::HashMap::new();
    let mut nodes: Vec<Node> = vec![(0, None)];
    ids.insert((0, None), 0);
    let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
    let mut idx = 0;
    while idx < nodes.len() {
        let (q, c) = nodes[idx];
        let mut row = vec![None; k];
        for (s, slot) in row.iter_mut().enumerate() {
            let Some(r) = plant.successor(q, s) else { continue };
            let c2 = match c {
                None if s == fault => Some(0),
                None => None,
                Some(c) => Some((c + 1).min(m)),
            };
            let id = *ids.entry((r, c2)).or_insert_with(|| {
                nodes.push((r, c2));
                nodes.len() - 1
            });
            *slot = Some(id);
        }
        delta.push(row);
        idx += 1;
    }
    let accepting = nodes
        .iter()
        .map(|&(q, c)| match c {
            _ if !plant.is_accepting(q) => false,
            None => false,
            Some(c) if c >= m => true,
            Some(c) => match ext[q] {
                Extension::Bounded(longest) => longest < m - c,
                Extension::Unbounded => false,
                Extension::Dead => unreachable!("accepting state is live"),
            },
        })
        .collect();
    Ok(Automaton::from_raw(plant.alphabet().clone(), delta, accepting).trim_dead())
}
