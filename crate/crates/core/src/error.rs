use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families: malformed input (dimension, domain and
/// parse problems) and violated mathematical preconditions (cone membership,
/// hyperbolicity direction, majorization). The CLI maps the first family to
/// exit code 2 and the second to exit code 3.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input at {field}: {reason}")]
    Parse { field: String, reason: String },

    #[error("leading coefficient vanishes (|c_k| = {leading:e}, max |c_j| = {max:e})")]
    DegenerateLeadingCoefficient { leading: f64, max: f64 },

    #[error("P(a) = {value} is not positive; a is not a hyperbolicity direction")]
    NotHyperbolicDirection { value: f64 },

    #[error("cone membership precondition failed: {0}")]
    ConeMembership(String),

    #[error("majorization precondition failed: {0}")]
    Majorization(String),

    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),

    #[error("group has 2^{blocks} elements; at most 2^{max} supported")]
    GroupTooLarge { blocks: usize, max: usize },

    #[error("polynomial is not symmetric")]
    Symmetry,

    #[error("lpm polynomial is inhomogeneous")]
    Inhomogeneous,
}

impl Error {
    /// True for errors caused by malformed input rather than by a violated
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Dimension { .. } | Error::Domain(_) | Error::Parse { .. }
        )
    }

    pub(crate) fn parse(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
