//! Exact typical hesitant fuzzy sets, languages and automata.
//!
//! Degrees are exact rationals in `[0, 1]`; hesitant elements are finite non-empty
//! sets of them ([`Thfe`]). Three automaton classes compute hesitant languages:
//! weighted [`Nthfa`], crisp nondeterministic [`Cnthfa`] and crisp deterministic
//! [`Cdthfa`]. The [`constructions`] module converts between them and implements
//! union, intersection, level decomposition and an equivalence decision procedure;
//! [`oracle`] holds brute-force references used to check all of it.

pub mod classic;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod format;
pub mod hesitant;
pub mod hfe;
pub mod oracle;

pub use classic::{Alphabet, Dfa, Nfa, States, Word};
pub use constructions::{EquivalenceVerdict, LevelDecomposition};
pub use error::{Error, Result};
pub use hesitant::{Cdthfa, Cnthfa, HesitantAutomaton, HesitantLanguage, Nthfa, StateValueVector};
pub use hfe::{Degree, Thfe};
