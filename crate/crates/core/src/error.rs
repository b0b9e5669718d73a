use thiserror::Error;

/// Errors raised by geometric kernels, samplers and optimizers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("empty input")]
    EmptyInput,

    #[error("objective returned a non-finite value {value} at direction {direction:?}")]
    ObjectiveError { direction: Vec<f64>, value: f64 },

    #[error("degenerate input: points span an affine subspace of dimension {affine_dim}, expected {expected}")]
    DegenerateInput { affine_dim: usize, expected: usize },

    #[error("origin is not an interior point of the body")]
    OriginNotInterior,

    #[error("singular matrix (|det| = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("generators do not span the ambient space")]
    DegenerateZonotope,

    #[error("too many generators: {count} (limit {limit})")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("optimizer did not converge after {iterations} iterations (residual {residual:e})")]
    NonConverged { iterations: usize, residual: f64 },

    #[error("hull construction failed: {0}")]
    Hull(String),

    #[error("linear program failed: {0}")]
    LinearProgram(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Inadmissible(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

impl From<std::io::Error> for GeomError {
    fn from(err: std::io::Error) -> Self {
        GeomError::Io(err.to_string())
    }
}

impl From<serde_json::Error> for GeomError {
    fn from(err: serde_json::Error) -> Self {
        GeomError::Parse(err.to_string())
    }
}
