use thiserror::Error;

/// Errors surfaced by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid argument to a constructor or operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Evaluation requested outside an operator's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Degenerate element or broken mesh topology.
    #[error("geometry error: {0}")]
    Geometry(String),
    /// A per-element linear system could not be solved.
    #[error("singular local system on element {element}: {detail}")]
    SingularLocal { element: usize, detail: String },
    /// Global solver setup failed (bad τ/σ combination, indefinite matrix, ...).
    #[error("configuration error: {0}")]
    Configuration(String),
    /// NaN or other numerical breakdown during time stepping.
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// Malformed input file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
