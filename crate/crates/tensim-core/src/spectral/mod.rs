//! Spectral building blocks: numerical rank decisions, eigenvalue
//! clustering, linking matrices between unfoldings, invariant-subspace
//! (primary) decompositions, and subspace inclusion tests.
//!
//! These are the scalar- and matrix-level tools the similarity engine is
//! assembled from. They make the judgement calls — what counts as zero,
//! which eigenvalues are "the same", when a basis is too ill-conditioned to
//! trust — so the tensor-level code can stay purely structural. Every
//! tolerance is an explicit parameter with a documented default; nothing is
//! hidden in the numerics.

mod cluster;
mod linking;
mod primary;
mod schur;
mod subspace;

pub use cluster::{cluster_eigenvalues, estimate_rank, EigenCluster};
pub use linking::{solve_linking, LinkingMatrix};
pub use primary::{is_scalar_block, primary_decomposition, PrimaryDecomposition};
pub use subspace::subspace_inclusion;

pub(crate) use primary::{blocks_for_eigenvalue_groups, concat_bases};
pub(crate) use schur::{schur_decompose, Schur};

/// Default ratio `σ_k / σ_{k+1}` that counts as a rank gap.
pub const DEFAULT_GAP_RATIO: f64 = 2.3;

/// Default absolute floor for singular values, relative to `σ₁`: values
/// below `RANK_FLOOR_REL · σ₁` are treated as numerically zero.
pub const RANK_FLOOR_REL: f64 = 1e-10;

/// Default ceiling on the condition number of a concatenated
/// invariant-subspace basis; above it a decomposition is reported as
/// unreliable instead of silently wrong.
pub const DEFAULT_COND_CEILING: f64 = 1e8;
