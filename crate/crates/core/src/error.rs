use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFiniteParam { name: &'static str, value: f64 },

    /// An operator product left the two-electron sector.
    #[error("state has weight {weight:e} outside the N=2 sector")]
    SectorViolation { weight: f64 },

    #[error("matrix entry ({row}, {col}) couples different S_z sectors")]
    BlockStructure { row: usize, col: usize },

    #[error("{0}")]
    NotApplicable(&'static str),

    #[error("value is not an eigenvalue of the S_z=0 block (residual {residual:e})")]
    NotAnEigenvalue { residual: f64 },

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:e})")]
    NoConvergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("invalid scan request: {0}")]
    InvalidScan(String),
}
