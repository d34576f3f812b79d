use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("simplex word {word:#b} is not a {k}-simplex on {n} vertices")]
    MalformedSimplex { word: u64, n: usize, k: usize },

    #[error("dimension {k} out of range (allowed 0..={max})")]
    DimensionOutOfRange { k: usize, max: usize },

    #[error("dimension {0} of the complex has not been built")]
    Unbuilt(usize),

    #[error("no {0}-simplices in the complex")]
    EmptySimplexSet(usize),

    #[error("singular extraction system (|det| = {det:e}); choose a different observable pair")]
    SingularSystem { det: f64 },

    #[error("operator norm {norm} exceeds 1")]
    NormViolation { norm: f64 },

    #[error("phase scale invalid: tau * lambda_max = {0} is not below 2*pi")]
    PhaseScale(f64),

    #[error("block encoding verification failed: max deviation {0:e}")]
    Verification(f64),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures that come from the numerics rather than from the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularSystem { .. } | Error::Verification(_) | Error::Numerical(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
