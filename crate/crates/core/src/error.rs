use thiserror::Error;

/// Errors raised across the library.
///
/// The CLI maps [`Error::Numeric`] to exit status 3 and everything else that
/// stems from bad input to exit status 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("quiver has an oriented cycle through vertices {0:?}")]
    Cycle(Vec<usize>),

    #[error("total dimension {total} exceeds the enumeration bound {bound}")]
    SizeBound { total: usize, bound: usize },

    #[error("numeric failure at iteration {iteration}: {message}")]
    Numeric { iteration: usize, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Numeric { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
