//! Error type shared across the library.

use thiserror::Error;

/// Errors produced by geometric, algebraic, and numerical operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input shape does not match the declared dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Malformed or schema-violating input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The defining function has (numerically) vanishing differential at the
    /// queried point, so no boundary normalization exists there.
    #[error("degenerate boundary: ‖dr(p)‖ = {norm:.3e} is below tolerance")]
    DegenerateBoundary { norm: f64 },

    /// The queried point does not lie on the zero set of the defining
    /// function to within the surface tolerance.
    #[error("point is not on the boundary: r(p) = {value:.3e} exceeds tolerance {tol:.1e}")]
    NotOnBoundary { value: f64, tol: f64 },

    /// A Levi eigenvalue sits inside the zero tolerance, so signature-based
    /// classification is ill-defined.
    #[error("degenerate Levi form: min |λ| = {min_abs:.3e} is within the zero tolerance")]
    DegenerateLevi { min_abs: f64 },

    /// A phase construction received a zero model eigenvalue.
    #[error("zero eigenvalue at position {index} (1-based); phase jets need λ_j ≠ 0")]
    ZeroEigenvalue { index: usize },

    /// The requested form degree is incompatible with the computed signature.
    #[error("wrong form degree q = {q} for signature (n₋, n₊) = ({n_minus}, {n_plus})")]
    WrongDegree {
        q: usize,
        n_minus: usize,
        n_plus: usize,
    },

    /// The metric is not positive definite at the queried point.
    #[error("metric is not positive definite at the queried point (min eigenvalue {min_eig:.3e})")]
    MetricNotPositive { min_eig: f64 },

    /// The metric matrix could not be inverted at the queried point.
    #[error("metric is not invertible at the queried point")]
    MetricNotInvertible,

    /// A model generator has an eigenvalue with non-positive real part.
    #[error("model matrix has an eigenvalue with real part {real_part:.3e} ≤ 0")]
    UnstableSpectrum { real_part: f64 },

    /// Other mathematical domain violations (branch points, singular
    /// denominators, out-of-domain evaluation points).
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
