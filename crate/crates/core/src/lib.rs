//! Combinatorics of closed braid diagrams: syllable words, the all-A state,
//! family membership tests, volume bound formulas, the Schreier normal form
//! of 3-braids, and a Kauffman bracket oracle.

pub mod allastate;
pub mod bounds;
pub mod braidword;
mod dsu;
pub mod error;
pub mod hypotheses;
pub mod jonesoracle;
pub mod schreier;

pub use allastate::{AllAState, Census, CircleClass, ReducedStateGraph, TwistCounts};
pub use braidword::{parse_braid, BraidWord, Syllable, SyllableWord};
pub use error::{BoundsError, OracleError, PreconditionError, SchreierError, WordError};
pub use hypotheses::{check_main_lemma, MainLemmaReport};
pub use schreier::{schreier_normal_form, SchreierForm};
