//! Pattern matching with variables against finite regular and
//! context-free languages, plus the reductions that make the hard cases
//! hard.
//!
//! Words are sequences of named symbols; patterns are words over variables
//! matched through non-erasing morphisms. Regular languages are given by
//! [`Dfa`]/[`Nfa`], context-free ones by [`Cfg`] or [`Pda`].

pub mod automata;
pub mod error;
pub mod grammars;
pub mod limits;
pub mod matcher;
pub mod pda;
pub mod reductions;
pub mod text;
pub mod words;

pub use automata::{shortest_common_word, Dfa, Nfa};
pub use error::{Error, Result};
pub use grammars::{Cfg, CfgBuilder};
pub use limits::Limits;
pub use matcher::{match_exact, match_factor, nfa_pattern_accept, nfa_pattern_factor_accept, MatchWitness};
pub use pda::{cfg_pattern_factor_search, cfg_pattern_search, cfg_square_search, cfg_to_pda, Pda};
pub use words::{apply_morphism, is_k_power, shortest_square_factor, Alphabet, Morphism, Pattern, Symbol, Word};
