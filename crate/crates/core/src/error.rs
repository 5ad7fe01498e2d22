use thiserror::Error;

/// Errors raised by the geometry pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NcgError {
    /// A square linear system (or a metric) is numerically rank deficient.
    #[error("singular system: numerical rank {rank} < dimension {dim}")]
    SingularSystem { rank: usize, dim: usize },

    /// The brute-force oracles scale as (dim A)^2 and refuse cutoffs above the cap.
    #[error("cutoff N = {n} exceeds the oracle cap {cap}")]
    Feasibility { n: usize, cap: usize },

    /// A one-form could not be written as a finite sum of a [D, b].
    #[error("element is not in the span of a[D, b] (residual {residual:.3e})")]
    Representation { residual: f64 },

    /// Ricci coordinates are not multiples of the identity, so Scal is undefined.
    #[error("Ricci coordinate ({row}, {col}) deviates from a scalar by {deviation:.3e}")]
    NonCentralRicci {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown connection strategy `{0}`")]
    UnknownStrategy(String),
}

pub type Result<T, E = NcgError> = std::result::Result<T, E>;
