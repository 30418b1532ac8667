use thiserror::Error;

/// Crate-wide error type.
///
/// Contract violations (bad modes, mismatched shapes, invalid partitions) are
/// reported eagerly, before any numeric work starts. Numerical failures
/// (rank-deficient systems, ill-conditioned subspace bases, LAPACK
/// non-convergence) carry enough context to diagnose the offending input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("mode {mode} out of range for order-{order} tensor")]
    ModeOutOfRange { mode: usize, order: usize },

    #[error("duplicate mode {0} in mode list")]
    DuplicateMode(usize),

    #[error("invalid mode set: {0}")]
    InvalidModeSet(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid rank request: {0}")]
    InvalidRanks(String),

    #[error("invalid block partition: {0}")]
    InvalidPartition(String),

    #[error("matrix is rank deficient: {0}")]
    RankDeficient(String),

    #[error(
        "mode-{mode} linking residual {residual:.3e} exceeds tolerance; \
         the second tensor is not generated by the first tensor's terms"
    )]
    InclusionFailed { mode: usize, residual: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invariant-subspace basis is ill-conditioned (cond = {cond:.3e}, ceiling = {ceiling:.3e})")]
    IllConditioned { cond: f64, ceiling: f64 },

    #[error("eigenvalue clusters do not align across modes: {0}")]
    ClusterAlignment(String),

    #[error("off-block mass {mass:.3e} exceeds tolerance {tol:.3e}; block-diagonalization failed")]
    OffBlockMass { mass: f64, tol: f64 },

    #[error("LAPACK {routine} failed with info = {info}")]
    Lapack { routine: &'static str, info: i32 },

    #[error("numerical backend error: {0}")]
    Numerical(String),

    #[error("invalid signal model: {0}")]
    InvalidSignal(String),

    #[error("invalid experiment parameters: {0}")]
    InvalidExperiment(String),

    #[error("graph vertex counts differ: {a} vs {b}")]
    VertexCountMismatch { a: usize, b: usize },

    #[error("invalid graph edge: {0}")]
    InvalidEdge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Numerical(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
