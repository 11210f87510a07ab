//! Regular-language algebra over explicit alphabets.
//!
//! Languages are carried by deterministic, trimmed [`Automaton`]s. The
//! operations needed by the problem reductions are provided as methods:
//! boolean combinations, single-letter concatenation, prefix closure, natural
//! projection and its inverse, equivalence with a distinguishing word, and
//! bounded enumeration into a [`FiniteLanguage`].

mod alphabet;
mod dfa;
mod nfa;

pub use alphabet::{project_word, Alphabet, FiniteLanguage, Symbol, Word, RESERVED_PREFIX};
pub use dfa::{Automaton, Extension};
