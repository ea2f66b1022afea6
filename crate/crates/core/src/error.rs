use thiserror::Error;

/// Errors produced by the library. Solver failures, validation failures and
/// IO failures are kept apart so the CLI can map them onto distinct exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (|a_ij - a_ji| = {deviation:e} at ({row}, {col}))")]
    NonSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("variance cap {cap} is below the minimum attainable variance {min_variance}")]
    InfeasibleCap { cap: f64, min_variance: f64 },

    #[error("return floor {target} exceeds the maximum attainable return {max_return}")]
    InfeasibleReturn { target: f64, max_return: f64 },

    #[error("solver did not converge: {0}")]
    NotConverged(String),

    #[error("zero-variance portfolio encountered; the return/variance ratio is undefined")]
    DegenerateRisk,

    #[error("return range is degenerate (width {width:e})")]
    DegenerateRange { width: f64 },

    #[error("scenario keys do not match: {0}")]
    KeyMismatch(String),

    #[error("hypervolume ratio undefined for scenario {0}: front hypervolume is zero")]
    UndefinedRatio(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("regime {label}: correlation matrix is not positive semidefinite (minimum eigenvalue {min_eigenvalue:e})")]
    Psd { label: String, min_eigenvalue: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("scenario {label}: {source}")]
    Scenario {
        label: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Strips any [`Error::Scenario`] wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Scenario { source, .. } => source.root(),
            e => e,
        }
    }

    pub(crate) fn in_scenario(self, label: &str) -> Error {
        Error::Scenario {
            label: label.to_string(),
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
