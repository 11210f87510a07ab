//! Decentralized observation, diagnosis and control problems for
//! discrete-event systems, with the constructive reductions between them.
//!
//! The three problem classes ([`ObsInstance`], [`DxInstance`],
//! [`ConInstance`]) are stated over regular languages. [`reductions`] maps
//! instances between classes so that solvability is preserved, [`solvers`]
//! decides solvability wherever it is decidable (and runs a bounded search
//! otherwise), and [`oracle`] re-checks everything by brute force on finite
//! instances.

pub mod automata;
pub mod cli;
mod error;
pub mod format;
pub mod oracle;
pub mod problems;
pub mod reductions;
pub mod solvers;

pub use automata::{Alphabet, Automaton, FiniteLanguage, Symbol, Word};
pub use error::{Error, Result};
pub use problems::{ConInstance, DxInstance, FusionRule, ObsInstance};
pub use solvers::{SolveReport, Verdict};
