use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Polynomial witnesses are carried in canonical text form so the error stays
/// cheap to clone and compare.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable sets differ: {left} vs {right}")]
    VarsetMismatch { left: String, right: String },

    #[error("variable index {0} out of range")]
    BadVariable(usize),

    #[error("variable `{0}` left unassigned")]
    Unassigned(String),

    #[error("division is not exact, remainder witness: {remainder}")]
    NotDivisible { remainder: String },

    #[error("the zero polynomial has no weight")]
    ZeroWeight,

    #[error("not w-homogeneous: `{first}` has weight {first_weight}, `{second}` has weight {second_weight}")]
    NotHomogeneous {
        first: String,
        first_weight: u32,
        second: String,
        second_weight: u32,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{what} exceeds cap: rank {rank} > {cap}")]
    CapExceeded {
        what: String,
        rank: usize,
        cap: usize,
    },

    #[error("polynomial is not invariant: {0}")]
    NotInvariant(String),

    #[error("solver failed at {step}: {reason}")]
    Solver { step: String, reason: String },

    #[error("not an allowed basis transformation: {0}")]
    NotAllowed(String),

    #[error("group mismatch: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("linear system: {0}")]
    Linear(String),
}

pub type Result<T> = std::result::Result<T, Error>;
