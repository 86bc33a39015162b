use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    Structural(String),

    #[error("{0} of zero input")]
    ZeroInput(&'static str),

    #[error("system is not D-finite: no head term is a pure power of d{0}")]
    NotDFinite(usize),

    #[error("the origin is not an ordinary point of the system")]
    OrdinaryPointRequired,

    #[error("the origin is not an apparent singularity of the system")]
    NotApparent,

    #[error("truncation loop exceeded the cap s <= {cap}")]
    ConvergenceCap { cap: u32 },

    #[error("coefficient cannot be expanded at the origin: denominator {0} vanishes there")]
    Expansion(String),

    #[error("series truncated at degree {have} but degree {need} is required")]
    InsufficientTruncation { have: u32, need: u32 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::VariableMismatch { .. } | Error::Structural(_) | Error::ZeroInput(_) => {
                "structural"
            }
            Error::NotDFinite(_) => "not_d_finite",
            Error::OrdinaryPointRequired => "ordinary_point_required",
            Error::NotApparent => "not_apparent",
            Error::ConvergenceCap { .. } => "convergence_cap",
            Error::Expansion(_) => "expansion",
            Error::InsufficientTruncation { .. } => "insufficient_truncation",
            Error::Parse { .. } => "parse",
            Error::Invariant(_) => "invariant",
        }
    }

    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::NotDFinite(_) => 3,
            Error::OrdinaryPointRequired => 4,
            Error::ConvergenceCap { .. } => 5,
            Error::NotApparent => 6,
            Error::VariableMismatch { .. } | Error::Structural(_) | Error::ZeroInput(_) => 7,
            Error::Expansion(_) | Error::InsufficientTruncation { .. } => 8,
            Error::Invariant(_) => 70,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_nvars(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::VariableMismatch { expected, found })
    }
}
