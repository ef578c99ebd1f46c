use thiserror::Error;

/// Everything that can go wrong while parsing or computing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {at}: {reason}")]
    Parse { at: usize, reason: String },

    #[error("generator {gen} does not belong to the {alphabet} alphabet")]
    OutsideAlphabet { gen: String, alphabet: String },

    #[error("zero exponent at byte {at} (use the empty word `1` instead)")]
    ZeroExponent { at: usize },

    #[error("strand index out of range: {what}")]
    BadIndex { what: String },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: u16, right: u16 },

    #[error("syllable budget of {budget} exceeded (word grew to {reached} syllables)")]
    BudgetExceeded { budget: usize, reached: usize },

    #[error("the braid is not pure: it induces the permutation {permutation}")]
    NotPure { permutation: String },

    #[error("band rewriting failed: {0}")]
    Rewrite(String),

    #[error("unknown automorphism {name:?}")]
    UnknownAutomorphism { name: String },

    #[error("automorphism {name}: {reason}")]
    BadAutomorphismArgs { name: String, reason: String },

    #[error("expression error: {0}")]
    Expr(String),
}

pub type Result<T> = std::result::Result<T, Error>;
