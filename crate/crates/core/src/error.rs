use thiserror::Error;

use crate::automata::Word;
use crate::problems::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid symbol name {0:?}")]
    InvalidSymbol(String),

    #[error("symbol {0:?} is reserved for generated symbols (\"#\" prefix)")]
    ReservedSymbol(String),

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),

    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(String),

    #[error("alphabets differ: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },

    #[error("alphabet {sub} is not a subset of {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("automaton is not deterministic: state {state} has two {symbol:?} transitions")]
    Nondeterministic { state: String, symbol: String },

    #[error("unknown state {0:?}")]
    UnknownState(String),

    #[error("{which} is not prefix-closed (missing prefix {witness})")]
    NotPrefixClosed { which: &'static str, witness: Word },

    #[error("language inclusion fails, witness {witness}")]
    NotIncluded { witness: Word },

    #[error("{0} is not a controllable event")]
    NotControllable(String),

    #[error("invalid instance: {}", render_violations(.0))]
    InvalidInstance(Vec<Violation>),

    #[error("a depth bound is required for the bounded semi-decision procedure")]
    DepthRequired,

    #[error("plant language is infinite; {0} needs a finite plant")]
    InfiniteLanguage(&'static str),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("instance too large for oracle: {required} assignments exceed budget {budget}")]
    OracleBudget { required: String, budget: u64 },
}

fn render_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
