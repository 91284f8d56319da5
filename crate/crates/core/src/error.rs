use thiserror::Error;

/// Errors raised by the rotation algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite component in input")]
    NonFinite,

    #[error("quaternion is not unit: norm squared {norm_sq}")]
    NotUnit { norm_sq: f64 },

    /// The vector part vanishes so no rotation axis is defined.
    #[error("axis is undefined (vector part norm {vector_norm:e})")]
    DegenerateAxis { vector_norm: f64 },

    /// A Gibbs-vector denominator (a cosine, or `1 - g2·g1`) vanished.
    #[error("Gibbs chart is singular (denominator {denominator:e})")]
    GibbsSingular { denominator: f64 },

    /// Scalar parts of the two factors differ, so the rotation is not simple.
    #[error("rotation is not simple (|Sa - Sb| = {residual:e})")]
    NotSimple { residual: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("eigenvalues {eigenvalues:?} do not split into two near-equal pairs")]
    PairingFailure { eigenvalues: [f64; 4] },
}

pub type Result<T> = std::result::Result<T, Error>;
