use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants split into two families: data/parameter faults that a caller
/// can correct ([`Error::is_domain`]) and internal-consistency faults that
/// indicate a defect in the computation itself.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("hypergeometric series does not terminate: no upper parameter is a nonpositive integer")]
    NonTerminating,

    #[error("hypergeometric pole: lower parameter vanishes at term {index}")]
    Pole { index: usize },

    #[error("singular matrix (rank {rank} of {dim}){context}")]
    Singular {
        rank: usize,
        dim: usize,
        context: String,
    },

    #[error("series coefficient at order {requested} requested beyond truncation order {order}")]
    Truncation { requested: i64, order: i64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("density convention check failed: {0}")]
    Convention(String),

    #[error("eigensolver did not converge after {iterations} iterations")]
    Convergence { iterations: usize },

    #[error("sampling failed: {0}")]
    Sampling(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for faults caused by the caller's parameters or data.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Unsupported(_)
                | Error::Input(_)
                | Error::NonTerminating
                | Error::Pole { .. }
                | Error::Singular { .. }
                | Error::Sampling(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
