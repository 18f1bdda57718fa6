use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    /// Coincident nodes or similarly degenerate input.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("index {index} out of range for basis of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("operation not supported for the {0} basis")]
    UnsupportedBasis(&'static str),
    #[error("perturbation model violated: {0}")]
    ModelViolation(String),
    /// Multiple root; the first-order root condition is infinite.
    #[error("singular root: {0}")]
    Singularity(String),
    #[error("weights are all zero or vanish at the evaluation point")]
    DegenerateWeights,
    #[error("precision too low: {0}")]
    Precision(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
