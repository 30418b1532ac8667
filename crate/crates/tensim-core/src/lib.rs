//! Core library for tensor similarity analysis.
//!
//! The central capability: decide whether two tensors of the same shape are
//! built from the same multilinear terms — each term possibly rescaled —
//! *without* computing a decomposition of either tensor, by comparing the
//! eigenstructure of per-mode linking matrices. See [`similarity`] for the
//! pipeline, [`tensor`] for the dense-tensor algebra it runs on,
//! [`spectral`] for the matrix machinery (rank estimation, eigenvalue
//! clustering, invariant subspaces, subspace-inclusion tests), [`hankel`]
//! for turning sampled exponential-polynomial signals into low-rank
//! tensors, and [`bss`] for the signal-mixture classification pipeline
//! built on top of all of it.

mod error;
pub mod bss;
pub mod hankel;
pub mod similarity;
pub mod spectral;
pub mod tensor;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use similarity::{
    analyze_and_recover, analyze_similarity, SimilarityConfig, SimilarityReport,
    TermDecomposition, Verdict,
};
pub use tensor::{DenseTensor, Matrix, Mlsvd, ModeSet};
