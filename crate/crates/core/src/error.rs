use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must have at least one bracket pair, got M = {0}")]
    InvalidAlphabet(usize),

    #[error("cannot parse symbol {token:?}: {reason}")]
    InvalidSymbol { token: String, reason: String },

    #[error("operation requires a nonempty word")]
    EmptyWord,

    #[error("word {0} is not a periodic point of the Dyck shift")]
    NotPeriodicPoint(String),

    #[error("projected work {projected} exceeds budget {budget}")]
    ResourceLimit { projected: String, budget: u64 },

    #[error("ensemble is empty (no periodic points of class {class} and period {n})")]
    EmptyEnsemble { class: String, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("collapsed word has no height drift of the required sign for the {0} side")]
    NoDrift(String),

    #[error("matching partner for position {position} not found within {bound} steps")]
    MatchSearchExceeded { position: usize, bound: usize },

    #[error("word {0} has zero height over one period; its periodic points are not hyperbolic")]
    NonHyperbolic(String),

    #[error("iterate {step} of word {word} misses its closed tile")]
    ConstraintViolation { word: String, step: usize },

    #[error("invalid baker parameters: {0}")]
    InvalidParams(String),

    #[error("cannot parse rational {0:?}")]
    InvalidRational(String),
}
