//! Computational pure braid groups.
//!
//! Words ([`word`]), braid groups and their faithful free-group action
//! ([`braid`]), combed normal forms for pure braids ([`comb`]), a catalog of
//! (anti)automorphisms with a relation-verification engine ([`auto`]),
//! abelianization invariants ([`abelian`]), folded subgroup graphs
//! ([`stallings`]) and the claim suites behind the CLI ([`suite`]).

pub mod abelian;
pub mod auto;
pub mod braid;
pub mod comb;
pub mod error;
pub mod parse;
pub mod stallings;
pub mod suite;
pub mod word;

pub use error::{Error, Result};
pub use word::{Alphabet, AlphabetKind, FreeWord, Gen};
