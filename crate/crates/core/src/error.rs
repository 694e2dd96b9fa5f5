//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A query outside the range covered by a sieve table.
    #[error("n = {n} is outside the table range 1..={limit}")]
    Range { n: u64, limit: u64 },

    /// A precondition on an argument value was violated.
    #[error("{0}")]
    Domain(String),

    /// An offset tuple failed its construction invariants.
    #[error("invalid offset tuple: {0}")]
    InvalidTuple(String),

    /// Requested sieve would exceed the memory budget.
    #[error("sieve limit {limit} needs {needed} bytes, exceeding the {budget}-byte memory budget")]
    Resource { limit: u64, needed: u64, budget: u64 },

    /// No admissible extension found within the allowed powers. Each entry
    /// records the power tried and the prime whose residue classes were
    /// fully covered.
    #[error("no power of {base} up to exponent {max_power} extends the tuple admissibly; obstructions: {obstructions:?}")]
    ExtensionFailed {
        base: u64,
        max_power: u32,
        obstructions: Vec<(u32, u64)>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } | Error::Io(_) => 3,
            _ => 2,
        }
    }
}
