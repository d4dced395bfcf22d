//! Crate-wide error type.
//!
//! Guard violations (dimension/enumeration budgets) are kept distinct from
//! ordinary usage errors so the CLI can map them to a dedicated exit code.

use thiserror::Error;

/// Errors produced by construction, parsing, and the analysis algorithms.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed text input (.pcm files, vector files, inline vectors, grids).
    #[error("parse error: {0}")]
    Parse(String),

    /// Shape or length mismatch between operands.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A resource guard tripped; `guard` names which one.
    #[error("guard `{guard}` exceeded: {detail}")]
    Guard {
        guard: &'static str,
        detail: String,
    },

    /// A modulus of zero was supplied where a positive one is required.
    #[error("modulus must be a positive integer")]
    ZeroModulus,

    /// An exponent at or past the modulus in a matrix declared with one.
    #[error("exponent {exponent} out of range for modulus {modulus}")]
    ExponentRange { exponent: usize, modulus: usize },

    /// A negative coefficient where a non-negative vector is required.
    #[error("negative coefficient at component {component}, degree {degree}")]
    NegativeCoefficient { component: usize, degree: usize },

    /// An operation that requires every matrix entry to be a single monomial.
    #[error("entry ({row},{col}) is not a monomial")]
    NonMonomial { row: usize, col: usize },

    /// A vector that must lie in a fundamental cone does not.
    #[error("vector is not in the fundamental cone (violated row {row})")]
    NotInCone { row: usize },

    /// The request is outside what the operation supports.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Linear program has no feasible point.
    #[error("linear program infeasible")]
    Infeasible,

    /// Linear program objective unbounded below.
    #[error("linear program unbounded")]
    Unbounded,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI uses for this error: 2 for usage/parse
    /// problems, 3 for guard violations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::Guard { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
