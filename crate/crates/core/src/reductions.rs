//! Constructive reductions between the three problem classes.
//!
//! * [`dx_to_obs`]: the diagnosis language becomes the observation spec.
//! * [`obs_to_dx`]: strings of `K` are marked by appending a fresh,
//!   unobservable fault symbol, with zero delay.
//! * [`con_to_obs`]: one observation problem per controllable event, built
//!   from [`control_sublanguages`].
//! * [`obs_to_con`]: a fresh controllable letter γ is appended to the plant;
//!   `K` is recovered as the strings after which γ must be enabled.
//!
//! [`verify_obs_to_con`] re-checks the well-posedness obligations of the last
//! construction on a concrete instance.

use crate::automata::{Alphabet, Automaton, Symbol, Word};
use crate::error::{Error, Result};
use crate::problems::{
    controllability_walk, positive_for_m_steps, validate_con, validate_dx, validate_obs, ConInstance,
    DxInstance, ObsInstance, Violation,
};
use crate::solvers::SolveReport;

/// Base name of the fault symbol introduced by [`obs_to_dx`].
pub const FAULT_BASE: &str = "#f";
/// Base name of the controllable letter introduced by [`obs_to_con`].
pub const GAMMA_BASE: &str = "#g";

pub fn dx_to_obs(d: &DxInstance) -> Result<ObsInstance> {
    validate_dx(d).into_result()?;
    Ok(ObsInstance {
        plant: d.plant.clone(),
        spec: positive_for_m_steps(d)?,
        observed: d.observed.clone(),
        fusion: d.fusion,
    })
}

/// `L' = (L − K) ∪ K·#f`, delay 0.
pub fn obs_to_dx(o: &ObsInstance) -> Result<DxInstance> {
    validate_obs(o).into_result()?;
    let fault = o.alphabet().fresh(FAULT_BASE);
    let sigma = o.alphabet().with(fault.clone());
    let negatives = o.complement_in_plant()?.embed(&sigma)?;
    let marked = o.spec.concat_letter(&fault).embed(&sigma)?;
    Ok(DxInstance {
        plant: negatives.union(&marked)?,
        observed: o.observed.clone(),
        fault,
        delay: 0,
        fusion: o.fusion,
    })
}

/// `(L_σ, K_σ)` with `L_σ = { s ∈ K : sσ ∈ L }` and `K_σ = { s ∈ K : sσ ∈ K }`.
pub fn control_sublanguages(c: &ConInstance, sigma: &Symbol) -> Result<(Automaton, Automaton)> {
    if !c.controllable_events().contains(sigma) {
        return Err(Error::NotControllable(sigma.to_string()));
    }
    let alphabet = c.alphabet().clone();
    let spec = c.spec.embed(&alphabet)?;
    let plant = &c.plant;
    // Product of spec and plant restricted to spec strings; two acceptance
    // conditions over the same transition structure.
    let k = alphabet.len();
    let mut ids = std::collections::HashMap::new();
    let mut nodes: Vec<(usize, Option<usize>)> = vec![(0, Some(0))];
    ids.insert((0usize, Some(0usize)), 0usize);
    let mut delta = Vec::new();
    let mut i = 0;
    while i < nodes.len() {
        let (kq, lq) = nodes[i];
        let mut row = vec![None; k];
        for (s, slot) in row.iter_mut().enumerate() {
            let Some(kr) = spec.successor(kq, s) else { continue };
            let lr = lq.and_then(|q| plant.successor(q, s));
            let id = *ids.entry((kr, lr)).or_insert_with(|| {
                nodes.push((kr, lr));
                nodes.len() - 1
            });
            *slot = Some(id);
        }
        delta.push(row);
        i += 1;
    }
    let accepts_after = |a: &Automaton, q: Option<usize>| {
        q.and_then(|q| a.step(q, sigma)).is_some_and(|r| a.is_accepting(r))
    };
    let in_l: Vec<bool> = nodes
        .iter()
        .map(|&(kq, lq)| spec.is_accepting(kq) && accepts_after(plant, lq))
        .collect();
    let in_k: Vec<bool> = nodes
        .iter()
        .map(|&(kq, _)| spec.is_accepting(kq) && accepts_after(&spec, Some(kq)))
        .collect();
    let l_sigma = Automaton::from_raw(alphabet.clone(), delta.clone(), in_l).trim_dead();
    let k_sigma = Automaton::from_raw(alphabet, delta, in_k).trim_dead();
    Ok((l_sigma, k_sigma))
}

/// One member of [`con_to_obs`]: the observation problem for `event`,
/// restricted to the agents that control it.
#[derive(Clone, Debug)]
pub struct ControlMember {
    pub event: Symbol,
    /// Indices (into the control instance's agent list) of the agents kept.
    pub agents: Vec<usize>,
    pub instance: ObsInstance,
}

/// Decomposes a control problem into one observation problem per
/// controllable event, in alphabet order. The control problem is solvable
/// iff every member is.
pub fn con_to_obs(c: &ConInstance) -> Result<Vec<ControlMember>> {
    validate_con(c).into_result()?;
    con_members(c)
}

/// The per-event construction of [`con_to_obs`] without validating `c`.
pub(crate) fn con_members(c: &ConInstance) -> Result<Vec<ControlMember>> {
    c.controllable_events()
        .iter()
        .map(|sigma| {
            let (l_sigma, k_sigma) = control_sublanguages(c, sigma)?;
            let agents = c.agents_of(sigma);
            Ok(ControlMember {
                event: sigma.clone(),
                instance: ObsInstance {
                    plant: l_sigma,
                    spec: k_sigma,
                    observed: agents.iter().map(|&i| c.observed[i].clone()).collect(),
                    fusion: c.fusion,
                },
                agents,
            })
        })
        .collect()
}

/// `L' = pr(L·γ)`, `K' = pr(K·γ ∪ L)`, every agent controls exactly `{γ}`.
pub fn obs_to_con(o: &ObsInstance) -> Result<ConInstance> {
    // The construction recovers L and K even when K ⊄ L, so only the
    // alphabet checks apply here.
    let violations: Vec<Violation> = validate_obs(o)
        .violations
        .into_iter()
        .filter(|v| !matches!(v, Violation::SpecNotInPlant { .. }))
        .collect();
    if !violations.is_empty() {
        return Err(Error::InvalidInstance(violations));
    }
    let gamma = o.alphabet().fresh(GAMMA_BASE);
    let sigma = o.alphabet().with(gamma.clone());
    let plant = o.plant.concat_letter(&gamma).embed(&sigma)?.prefix_closure();
    let spec_core = o.spec.concat_letter(&gamma).embed(&sigma)?;
    let spec = spec_core.union(&o.plant.embed(&sigma)?)?.prefix_closure();
    let gamma_only = Alphabet::new([gamma])?;
    Ok(ConInstance {
        plant,
        spec,
        observed: o.observed.clone(),
        controllable: vec![gamma_only; o.observed.len()],
        fusion: o.fusion,
    })
}

/// One proof obligation checked by [`verify_obs_to_con`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obligation {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
    pub witness: Option<Word>,
}

impl Obligation {
    fn pass(name: &'static str, detail: impl Into<String>) -> Self {
        Obligation { name, holds: true, detail: detail.into(), witness: None }
    }

    fn fail(name: &'static str, detail: impl Into<String>, witness: Option<Word>) -> Self {
        Obligation { name, holds: false, detail: detail.into(), witness }
    }
}

#[derive(Clone, Debug)]
pub struct ObsToConReport {
    /// The distinguished letter, when it could be identified.
    pub gamma: Option<Symbol>,
    pub obligations: Vec<Obligation>,
}

impl ObsToConReport {
    pub fn all_hold(&self) -> bool {
        self.obligations.iter().all(|o| o.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Obligation> {
        self.obligations.iter().filter(|o| !o.holds)
    }
}

pub const OBLIGATION_SHAPE: &str = "construction_shape";
pub const OBLIGATION_PREFIX_CLOSED: &str = "prefix_closed";
pub const OBLIGATION_CONTROLLABLE: &str = "controllable";
pub const OBLIGATION_RECOVERY: &str = "recovery";

/// Checks that `c` is a well-posed image of `o` under [`obs_to_con`]:
///
/// 0. the construction shape: exactly one fresh letter γ, every agent keeps
///    its observed alphabet and controls exactly `{γ}`;
/// 1. `L'` and `K'` are prefix-closed;
/// 2. `K'` is controllable with every symbol except γ uncontrollable;
/// 3. `L'_γ ≡ L` and `K'_γ ≡ K`.
pub fn verify_obs_to_con(c: &ConInstance, o: &ObsInstance) -> ObsToConReport {
    let mut obligations = Vec::new();
    let sigma = o.alphabet();
    let extra = c.alphabet().difference(sigma);
    let gamma = (extra.len() == 1 && sigma.is_subset_of(c.alphabet())).then(|| extra.get(0).clone());

    let shape = match &gamma {
        None => Obligation::fail(
            OBLIGATION_SHAPE,
            format!("expected exactly one new letter, found {extra}"),
            None,
        ),
        Some(g) if sigma.contains(g) => {
            Obligation::fail(OBLIGATION_SHAPE, format!("{g} is not fresh"), None)
        }
        Some(g) => {
            let expected = Alphabet::new([g.clone()]).expect("single symbol");
            let mut problems = Vec::new();
            if c.observed.len() != o.observed.len() {
                problems.push(format!(
                    "{} agents instead of {}",
                    c.observed.len(),
                    o.observed.len()
                ));
            }
            for (i, (got, want)) in c.observed.iter().zip(&o.observed).enumerate() {
                if !got.same_set(want) {
                    problems.push(format!("agent {i} observes {got} instead of {want}"));
                }
            }
            if c.controllable.len() != o.observed.len() {
                problems.push(format!("{} controllable alphabets", c.controllable.len()));
            }
            for (i, ctrl) in c.controllable.iter().enumerate() {
                if !ctrl.same_set(&expected) {
                    problems.push(format!("agent {i} controls {ctrl} instead of {expected}"));
                }
            }
            if c.fusion != o.fusion {
                problems.push(format!("fusion {} instead of {}", c.fusion, o.fusion));
            }
            if problems.is_empty() {
                Obligation::pass(OBLIGATION_SHAPE, format!("every agent controls exactly {{{g}}}"))
            } else {
                Obligation::fail(OBLIGATION_SHAPE, problems.join("; "), None)
            }
        }
    };
    obligations.push(shape);

    let plant_gap = c.plant.prefix_closure_witness();
    let spec_gap = c.spec.prefix_closure_witness();
    obligations.push(match (&plant_gap, &spec_gap) {
        (None, None) => Obligation::pass(OBLIGATION_PREFIX_CLOSED, "L' and K' are prefix-closed"),
        (Some(w), _) => Obligation::fail(
            OBLIGATION_PREFIX_CLOSED,
            "L' is not prefix-closed",
            Some(w.clone()),
        ),
        (None, Some(w)) => Obligation::fail(
            OBLIGATION_PREFIX_CLOSED,
            "K' is not prefix-closed",
            Some(w.clone()),
        ),
    });

    let Some(gamma) = gamma else {
        for name in [OBLIGATION_CONTROLLABLE, OBLIGATION_RECOVERY] {
            obligations.push(Obligation::fail(name, "distinguished letter not identified", None));
        }
        return ObsToConReport { gamma: None, obligations };
    };

    let uncontrollable = c.alphabet().difference(&Alphabet::new([gamma.clone()]).expect("one symbol"));
    let controllable = if plant_gap.is_some() || spec_gap.is_some() {
        Obligation::fail(OBLIGATION_CONTROLLABLE, "needs prefix-closed L' and K'", None)
    } else if !uncontrollable.is_subset_of(c.plant.alphabet()) || !c.spec.alphabet().same_set(c.plant.alphabet()) {
        Obligation::fail(OBLIGATION_CONTROLLABLE, "L' and K' use different alphabets", None)
    } else {
        match controllability_walk(&c.plant, &c.spec, &uncontrollable) {
            None => Obligation::pass(
                OBLIGATION_CONTROLLABLE,
                format!("K' is controllable with Σ_uc = {uncontrollable}"),
            ),
            Some((s, ev)) => Obligation::fail(
                OBLIGATION_CONTROLLABLE,
                format!("uncontrollable {ev} leaves K' after {s}"),
                Some(s.then(&ev)),
            ),
        }
    };
    obligations.push(controllable);

    obligations.push(recovery_obligation(c, o, &gamma));
    ObsToConReport { gamma: Some(gamma), obligations }
}

fn recovery_obligation(c: &ConInstance, o: &ObsInstance, gamma: &Symbol) -> Obligation {
    // control_sublanguages needs γ in Σ_c; compute on a copy where it is, so a
    // tampered controllable set does not hide the language check.
    let mut probe = c.clone();
    if !probe.controllable_events().contains(gamma) {
        probe.controllable.push(Alphabet::new([gamma.clone()]).expect("one symbol"));
    }
    let (l_gamma, k_gamma) = match control_sublanguages(&probe, gamma) {
        Ok(pair) => pair,
        Err(e) => return Obligation::fail(OBLIGATION_RECOVERY, e.to_string(), None),
    };
    let compare = |lhs: &Automaton, rhs: &Automaton| -> Result<Option<Word>> {
        lhs.distinguishing_word(&rhs.embed(c.alphabet())?)
    };
    match (compare(&l_gamma, &o.plant), compare(&k_gamma, &o.spec)) {
        (Ok(None), Ok(None)) => Obligation::pass(OBLIGATION_RECOVERY, "L'_γ ≡ L and K'_γ ≡ K"),
        (Ok(Some(w)), _) => Obligation::fail(OBLIGATION_RECOVERY, "L'_γ differs from L", Some(w)),
        (_, Ok(Some(w))) => Obligation::fail(OBLIGATION_RECOVERY, "K'_γ differs from K", Some(w)),
        (Err(e), _) | (_, Err(e)) => Obligation::fail(OBLIGATION_RECOVERY, e.to_string(), None),
    }
}

/// Maps witness words of a generated instance back to the original one by
/// stripping a trailing generated symbol.
pub fn lift_witness(report: &SolveReport, generated: &Symbol) -> SolveReport {
    let mut out = report.clone();
    for w in &mut out.witness {
        if let Some(stripped) = w.strip_suffix(generated) {
            *w = stripped;
        }
    }
    out
}
