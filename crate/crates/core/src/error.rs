use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid case parameters: {0}")]
    InvalidCase(String),

    #[error("cannot parse case `{input}`: {reason}")]
    ParseCase { input: String, reason: String },

    #[error("malformed rational `{0}`")]
    ParseRational(String),

    #[error("malformed weight `{0}`")]
    ParseWeight(String),

    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("weight {0} has {1} entries but the split rank is {2}")]
    RankMismatch(String, usize, usize),

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("box bound M = {bound} is insufficient: need M >= |nu| + p/2 = {needed}")]
    InsufficientBox { bound: u32, needed: String },

    #[error("I(nu) is irreducible at nu = {0}")]
    Irreducible(String),

    #[error("operation requires a real rational nu")]
    NotRealRational,

    #[error("degenerate instance: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("no closed form: {0}")]
    NoClosedForm(String),

    #[error("obstructed: {0}")]
    Obstructed(String),

    #[error("condensation is not a chain: {0}")]
    NotAChain(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
