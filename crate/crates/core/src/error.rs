use thiserror::Error;

/// Errors raised by the library. Negative mathematical verdicts (a set that
/// is not a SIC, a compatible triple) are results, not errors.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("not a SIC: max Gram residual {residual:e}")]
    NotSic { residual: f64 },

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("states {0} and {1} are identical as projectors")]
    IdenticalStates(usize, usize),

    #[error("triple {0:?} is not a line of the 3x3 grid")]
    NotALine([usize; 3]),

    #[error("graph has {0} vertices; exact coloring is capped at {1}")]
    TooManyVertices(usize, usize),

    #[error("validation failed for {what}: {detail}")]
    Validation { what: &'static str, detail: String },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn validation(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Validation {
            what,
            detail: detail.into(),
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
