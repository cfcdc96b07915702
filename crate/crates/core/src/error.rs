use thiserror::Error;

/// Errors raised by the decomposition, synthesis and I/O layers.
///
/// Residuals are reported in double precision regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary (max |M†M - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("matrix is not symmetric (max |W - Wᵀ| = {deviation:e})")]
    NotSymmetric { deviation: f64 },

    #[error("eigen-solver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("matrix is not a tensor product (residual {residual:e})")]
    NotAProduct { residual: f64 },

    #[error("matrix is not in SO(4): {0}")]
    NotSpecialOrthogonal(String),

    #[error("matrix is not an orthogonal matrix with determinant -1: {0}")]
    NotNegOrthogonal(String),

    #[error("diagonal phases do not sum to 0 mod 2π (sum = {sum})")]
    InconsistentPhases { sum: f64 },

    #[error("gates are not locally equivalent: {0}")]
    NotLocallyEquivalent(String),

    #[error("synthesized circuit failed verification (residual {residual:e})")]
    VerificationFailure { residual: f64 },

    #[error("state is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
