use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants fall into three families that callers (the CLI in particular)
/// map onto distinct exit codes: malformed input, violated mathematical
/// preconditions, and exhausted resource budgets. See [`Error::kind`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular matrix")]
    Singular,
    #[error("matrix is not in GL(n,Z): determinant {det}")]
    NotUnimodular { det: String },
    #[error("element is not semisimple")]
    NotSemisimple,
    #[error("element has infinite order")]
    NotTorsion,
    #[error("denominator {denominator} is not a unit modulo {modulus}")]
    DenominatorNotUnit { denominator: String, modulus: u32 },
    #[error("matrix is not invertible modulo {modulus}")]
    NotInvertibleMod { modulus: u32 },
    #[error("invalid modulus {0} (must be between 2 and 2^32-1)")]
    InvalidModulus(u64),
    #[error("entry size exceeded the bound of {bound} bits")]
    BitBound { bound: u64 },
    #[error("element budget of {cap} exceeded (reached {reached} elements)")]
    BudgetExceeded { cap: usize, reached: usize },
    #[error("no certificate found below budget (largest modulus tried: {largest_tried}{})",
        match budget_hit { Some(m) => format!(", element budget hit at modulus {m}"), None => String::new() })]
    ScheduleExhausted {
        largest_tried: u64,
        budget_hit: Option<u64>,
    },
    #[error("no witness prime found within the level budget (largest modulus tried: {largest_tried})")]
    NoWitness { largest_tried: u64 },
    #[error("no builtin torsion table for dimension {0}")]
    UnsupportedDimension(usize),
    #[error("holonomy not finite: input invalid")]
    HolonomyNotFinite,
    #[error("base case only: translation subgroup is not abelian (step size > 1)")]
    BaseCaseOnly,
    #[error("malformed input: {0}")]
    Malformed(String),
}

/// Coarse classification of an [`Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Budget,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::DimensionMismatch(_)
            | Error::NotSquare { .. }
            | Error::InvalidModulus(_)
            | Error::UnsupportedDimension(_)
            | Error::HolonomyNotFinite
            | Error::BaseCaseOnly
            | Error::NotTorsion
            | Error::Malformed(_) => ErrorKind::Input,
            Error::Singular
            | Error::NotUnimodular { .. }
            | Error::NotSemisimple
            | Error::DenominatorNotUnit { .. }
            | Error::NotInvertibleMod { .. } => ErrorKind::Precondition,
            Error::BitBound { .. }
            | Error::BudgetExceeded { .. }
            | Error::ScheduleExhausted { .. }
            | Error::NoWitness { .. } => ErrorKind::Budget,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
