//! JSON instance files.
//!
//! One envelope serves all three classes:
//!
//! ```json
//! {
//!   "class": "obs" | "dx" | "con",
//!   "alphabet": ["a", "b"],
//!   "agents": [ { "observed": ["a"], "controllable": ["b"] } ],
//!   "fusion": "unrestricted" | "conjunctive" | "disjunctive",
//!   "plant": <language>,
//!   "spec": <language>,
//!   "fault": "#f",
//!   "delay": 0
//! }
//! ```
//!
//! A `<language>` is either `{ "words": [["a", "b"], []] }` (the empty array
//! is ε) or an automaton
//! `{ "states": [..], "initial": q, "accepting": [..], "transitions": [[src, symbol, dst], ..] }`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::automata::{Alphabet, Automaton, FiniteLanguage, Symbol, Word};
use crate::problems::{ConInstance, DxInstance, FusionRule, ObsInstance};

/// Languages with at most this many words are written in word-list form.
const MAX_LISTED_WORDS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {} column {}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

impl FormatError {
    fn semantic(message: impl Into<String>) -> Self {
        FormatError { message: message.into(), line: 0, column: 0 }
    }
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError { message: e.to_string(), line: e.line(), column: e.column() }
    }
}

impl From<crate::Error> for FormatError {
    fn from(e: crate::Error) -> Self {
        FormatError::semantic(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Class {
    Obs,
    Dx,
    Con,
}

impl Class {
    pub fn name(self) -> &'static str {
        match self {
            Class::Obs => "obs",
            Class::Dx => "dx",
            Class::Con => "con",
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSpec {
    pub observed: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub controllable: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LanguageSpec {
    Words {
        words: Vec<Vec<String>>,
    },
    Automaton {
        states: Vec<String>,
        initial: String,
        accepting: Vec<String>,
        transitions: Vec<(String, String, String)>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub class: Class,
    pub alphabet: Vec<String>,
    pub agents: Vec<AgentSpec>,
    pub fusion: String,
    pub plant: LanguageSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<LanguageSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fault: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay: Option<usize>,
}

/// A parsed instance of any class.
#[derive(Clone, Debug)]
pub enum Instance {
    Obs(ObsInstance),
    Dx(DxInstance),
    Con(ConInstance),
}

impl Instance {
    pub fn class(&self) -> Class {
        match self {
            Instance::Obs(_) => Class::Obs,
            Instance::Dx(_) => Class::Dx,
            Instance::Con(_) => Class::Con,
        }
    }

    pub fn fusion(&self) -> FusionRule {
        match self {
            Instance::Obs(i) => i.fusion,
            Instance::Dx(i) => i.fusion,
            Instance::Con(i) => i.fusion,
        }
    }

    pub fn with_fusion(&self, fusion: FusionRule) -> Instance {
        match self {
            Instance::Obs(i) => Instance::Obs(i.with_fusion(fusion)),
            Instance::Dx(i) => Instance::Dx(i.with_fusion(fusion)),
            Instance::Con(i) => Instance::Con(i.with_fusion(fusion)),
        }
    }
}

fn symbols(names: &[String]) -> Result<Alphabet, FormatError> {
    let syms = names
        .iter()
        .map(|n| Symbol::parse(n.as_str()))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(Alphabet::new(syms)?)
}

fn language(spec: &LanguageSpec, alphabet: &Alphabet, what: &str) -> Result<Automaton, FormatError> {
    let lookup = |name: &str| -> Result<Symbol, FormatError> {
        let sym = Symbol::parse(name)?;
        if alphabet.contains(&sym) {
            Ok(sym)
        } else {
            Err(FormatError::semantic(format!("{what}: symbol {name:?} is not in the alphabet")))
        }
    };
    match spec {
        LanguageSpec::Words { words } => {
            let words = words
                .iter()
                .map(|w| w.iter().map(|n| lookup(n)).collect::<Result<Word, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Automaton::from_words(&FiniteLanguage::new(alphabet.clone(), words)?))
        }
        LanguageSpec::Automaton { states, initial, accepting, transitions } => {
            let transitions = transitions
                .iter()
                .map(|(s, a, d)| Ok((s.clone(), lookup(a)?, d.clone())))
                .collect::<Result<Vec<_>, FormatError>>()?;
            Automaton::from_transitions(alphabet.clone(), states, initial, accepting, &transitions)
                .map_err(|e| FormatError::semantic(format!("{what}: {e}")))
        }
    }
}

fn fusion(name: &str) -> Result<FusionRule, FormatError> {
    FusionRule::from_name(name)
        .ok_or_else(|| FormatError::semantic(format!("unknown fusion rule {name:?}")))
}

/// Parses an instance file. Structural problems (bad JSON, unknown symbols in
/// languages, nondeterministic automata, missing fields) are format errors;
/// well-formed but invalid instances parse fine and are caught by validation.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    from_file(&file)
}

pub fn from_file(file: &InstanceFile) -> Result<Instance, FormatError> {
    let alphabet = symbols(&file.alphabet)?;
    let fusion = fusion(&file.fusion)?;
    let plant = language(&file.plant, &alphabet, "plant")?;
    let observed = file
        .agents
        .iter()
        .map(|a| symbols(&a.observed))
        .collect::<Result<Vec<_>, _>>()?;
    let require = |field: &str, present: bool| {
        if present {
            Ok(())
        } else {
            Err(FormatError::semantic(format!("class {} requires field {field:?}", file.class.name())))
        }
    };
    let forbid = |field: &str, present: bool| {
        if present {
            Err(FormatError::semantic(format!("class {} does not take field {field:?}", file.class.name())))
        } else {
            Ok(())
        }
    };
    let has_ctrl = file.agents.iter().any(|a| a.controllable.is_some());
    match file.class {
        Class::Obs => {
            require("spec", file.spec.is_some())?;
            forbid("fault", file.fault.is_some())?;
            forbid("delay", file.delay.is_some())?;
            forbid("controllable", has_ctrl)?;
            let spec = language(file.spec.as_ref().expect("checked"), &alphabet, "spec")?;
            Ok(Instance::Obs(ObsInstance { plant, spec, observed, fusion }))
        }
        Class::Dx => {
            require("fault", file.fault.is_some())?;
            forbid("spec", file.spec.is_some())?;
            forbid("controllable", has_ctrl)?;
            let fault = Symbol::parse(file.fault.clone().expect("checked"))?;
            Ok(Instance::Dx(DxInstance {
                plant,
                observed,
                fault,
                delay: file.delay.unwrap_or(0),
                fusion,
            }))
        }
        Class::Con => {
            require("spec", file.spec.is_some())?;
            forbid("fault", file.fault.is_some())?;
            forbid("delay", file.delay.is_some())?;
            let spec = language(file.spec.as_ref().expect("checked"), &alphabet, "spec")?;
            let controllable = file
                .agents
                .iter()
                .map(|a| symbols(a.controllable.as_deref().unwrap_or(&[])))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Instance::Con(ConInstance { plant, spec, observed, controllable, fusion }))
        }
    }
}

/// Word list when the language is small and finite, automaton otherwise.
pub fn language_spec(a: &Automaton) -> LanguageSpec {
    let a = a.minimize();
    if let Some(n) = a.longest_word_len().or(a.is_empty().then_some(0)) {
        let words = a.enumerate_upto(n);
        if words.len() <= MAX_LISTED_WORDS {
            return LanguageSpec::Words { words: words.iter().map(Word::names).collect() };
        }
    }
    LanguageSpec::Automaton {
        states: (0..a.num_states()).map(Automaton::state_name).collect(),
        initial: Automaton::state_name(0),
        accepting: (0..a.num_states())
            .filter(|&q| a.is_accepting(q))
            .map(Automaton::state_name)
            .collect(),
        transitions: a
            .transitions()
            .map(|(q, s, r)| {
                (
                    Automaton::state_name(q),
                    a.alphabet().get(s).name().to_string(),
                    Automaton::state_name(r),
                )
            })
            .collect(),
    }
}

pub fn to_file(instance: &Instance) -> InstanceFile {
    let agents = |observed: &[Alphabet], controllable: Option<&[Alphabet]>| -> Vec<AgentSpec> {
        observed
            .iter()
            .enumerate()
            .map(|(i, o)| AgentSpec {
                observed: o.names(),
                controllable: controllable.map(|c| c.get(i).map(Alphabet::names).unwrap_or_default()),
            })
            .collect()
    };
    match instance {
        Instance::Obs(o) => InstanceFile {
            class: Class::Obs,
            alphabet: o.alphabet().names(),
            agents: agents(&o.observed, None),
            fusion: o.fusion.name().into(),
            plant: language_spec(&o.plant),
            spec: Some(language_spec(&o.spec)),
            fault: None,
            delay: None,
        },
        Instance::Dx(d) => InstanceFile {
            class: Class::Dx,
            alphabet: d.alphabet().names(),
            agents: agents(&d.observed, None),
            fusion: d.fusion.name().into(),
            plant: language_spec(&d.plant),
            spec: None,
            fault: Some(d.fault.name().into()),
            delay: Some(d.delay),
        },
        Instance::Con(c) => InstanceFile {
            class: Class::Con,
            alphabet: c.alphabet().names(),
            agents: agents(&c.observed, Some(&c.controllable)),
            fusion: c.fusion.name().into(),
            plant: language_spec(&c.plant),
            spec: Some(language_spec(&c.spec)),
            fault: None,
            delay: None,
        },
    }
}

pub fn to_json(instance: &Instance) -> String {
    serde_json::to_string_pretty(&to_file(instance)).expect("instance files always serialize")
}

/// Compact display form used in reports: symbol names concatenated.
pub fn word_text(w: &Word) -> String {
    w.compact()
}

#[cfg(test)]
mod tests {
    use super::*;

    const OBS: &str = r#"{
        "class": "obs",
        "alphabet": ["a", "b"],
        "agents": [ { "observed": ["a"] }, { "observed": ["b"] } ],
        "fusion": "unrestricted",
        "plant": { "words": [["a", "b"], ["b", "a"]] },
        "spec": { "words": [["a", "b"]] }
    }"#;

    #[test]
    fn parses_word_lists() {
        let Instance::Obs(o) = parse_instance(OBS).unwrap() else { panic!("class") };
        assert_eq!(o.observed.len(), 2);
        assert!(o.plant.accepts(&"b a".parse().unwrap()).unwrap());
        assert!(!o.spec.accepts(&"b a".parse().unwrap()).unwrap());
    }

    #[test]
    fn parses_automaton_form() {
        let text = r##"{
            "class": "dx", "alphabet": ["#f", "a"], "agents": [{"observed": ["a"]}],
            "fusion": "conjunctive", "fault": "#f", "delay": 2,
            "plant": { "states": ["s", "t"], "initial": "s", "accepting": ["s", "t"],
                       "transitions": [["s", "#f", "t"], ["t", "a", "t"]] }
        }"##;
        let Instance::Dx(d) = parse_instance(text).unwrap() else { panic!("class") };
        assert_eq!(d.delay, 2);
        assert!(!d.plant.is_finite());
        assert_eq!(d.fusion, FusionRule::Conjunctive);
    }

    #[test]
    fn reports_positions_and_semantic_errors() {
        let err = parse_instance("{\n  \"class\": \"obs\",\n  oops").unwrap_err();
        assert_eq!(err.line, 3);
        let bad_symbol = OBS.replace(r#"[["a", "b"]] }"#, r#"[["a", "c"]] }"#);
        assert!(parse_instance(&bad_symbol).unwrap_err().message.contains("\"c\""));
        let no_spec = OBS.replace(r#""spec": { "words": [["a", "b"]] }"#, r#""delay": 1"#);
        assert!(parse_instance(&no_spec).is_err());
    }

    #[test]
    fn observed_symbols_outside_alphabet_still_parse() {
        let text = OBS.replace(r#"{ "observed": ["b"] }"#, r#"{ "observed": ["z"] }"#);
        let Instance::Obs(o) = parse_instance(&text).unwrap() else { panic!("class") };
        assert!(!crate::problems::validate_obs(&o).is_ok());
    }

    #[test]
    fn serialization_reparses_to_equivalent_languages() {
        let inst = parse_instance(OBS).unwrap();
        let again = parse_instance(&to_json(&inst)).unwrap();
        let (Instance::Obs(a), Instance::Obs(b)) = (inst, again) else { panic!("class") };
        assert!(a.plant.are_equivalent(&b.plant).unwrap());
        assert!(a.spec.are_equivalent(&b.spec).unwrap());
    }
}
