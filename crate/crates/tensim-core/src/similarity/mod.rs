//! Tensor-pair similarity analysis.
//!
//! The question answered here: given two tensors of the same shape, is the
//! second built from the same multilinear terms as the first — each term
//! possibly rescaled — without ever computing a decomposition of either
//! tensor? The analysis works entirely with *linking matrices*: after
//! compressing both tensors onto the first one's mode row spaces
//! ([`compress_pair`]), each mode yields a square matrix `M_n` with
//! `B_(n) = A_(n) · M_n`. The eigenstructure of these matrices carries the
//! shared term structure:
//!
//! * every `M_n` has the same distinct eigenvalues — one per shared term —
//!   and the eigenvalue is the term's scaling factor;
//! * the multiplicity of eigenvalue `λ_r` in `M_n` is the term's mode-`n`
//!   multilinear rank `L_nr`;
//! * splitting each `M_n` into its invariant subspaces block-diagonalizes
//!   the pair simultaneously and recovers the terms themselves
//!   ([`recover_terms`]).
//!
//! [`analyze_similarity`] runs the pipeline and condenses the outcome into
//! a [`SimilarityReport`] with one of four verdicts:
//!
//! * [`Verdict::SameScaledTerms`] — the second tensor is a per-term
//!   rescaling of the first: for every term some mode's restriction block
//!   is a scalar matrix `λ_r I`.
//! * [`Verdict::SharedStructureNonScalar`] — all linking systems are
//!   consistent, but at least one term is transformed by a non-scalar
//!   block in every analyzed mode.
//! * [`Verdict::InclusionFailed`] — a mode's row space of the second
//!   tensor is not contained in the first one's, or a linking system has
//!   no solution within tolerance. The second tensor cannot be generated
//!   from the first one's terms.
//! * [`Verdict::Unreliable`] — the invariant-subspace bases are too
//!   ill-conditioned, or the modes disagree on the spectrum; nothing
//!   downstream of the linking matrices should be trusted.
//!
//! Verdicts are *claims about the given pair at the given tolerances*, not
//! decompositions: the engine certifies the sufficient direction (shared
//! structure produces these spectral fingerprints) and never claims the
//! recovered decomposition is unique.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod compress;
pub mod engine;
pub mod recover;
pub mod redundancy;
pub mod synth;

pub use compress::{compress_pair, CompressedPair};
pub use engine::{analyze_and_recover, analyze_similarity, linking_matrices};
pub use recover::{recover_terms, TermDecomposition};
pub use redundancy::check_redundant_inclusions;

/// Schema tag written into every serialized report.
pub const REPORT_SCHEMA: &str = "tensim-report/1";

/// Default ceiling on the relative residual of each mode's linking system.
pub const DEFAULT_RESIDUAL_TOL: f64 = 1e-8;

/// Default tolerance for declaring a restriction block scalar.
pub const DEFAULT_SCALAR_TOL: f64 = 1e-8;

/// Default threshold on the subspace-inclusion score (a singular value in
/// `[0, 1]`) below which a containment is accepted.
pub const DEFAULT_INCLUSION_THRESH: f64 = 0.1;

// When no explicit eigenvalue-clustering tolerance is given, it is derived
// from the linking matrices as max(EIG_TOL_ABS, EIG_TOL_REL · max‖M_n‖₂).
pub(crate) const EIG_TOL_ABS: f64 = 1e-8;
pub(crate) const EIG_TOL_REL: f64 = 1e-6;

/// Tuning knobs of the similarity analysis.
///
/// Only `n_hat` — the number of leading modes to compress, link and
/// cluster — is mandatory; [`SimilarityConfig::new`] fills in the
/// documented defaults for everything else. Analyzing fewer than two modes
/// is rejected: with a single mode every matrix pair with compatible
/// column spaces is trivially "similar" and the block structure carries no
/// information.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimilarityConfig {
    /// Number of leading modes to analyze (`2 ≤ n_hat ≤ order`).
    pub n_hat: usize,
    /// Maximum relative residual of each mode's linking system.
    pub residual_tol: f64,
    /// Eigenvalue-clustering tolerance; `None` derives it from the linking
    /// matrices as `max(1e-8, 1e-6 · max_n ‖M_n‖₂)`.
    pub eig_tol: Option<f64>,
    /// Tolerance for declaring a restriction block scalar.
    pub scalar_tol: f64,
    /// Threshold on subspace-inclusion scores during compression.
    pub inclusion_thresh: f64,
    /// Condition-number ceiling for stacked invariant-subspace bases.
    pub cond_ceiling: f64,
}

impl SimilarityConfig {
    /// Configuration with the documented defaults, analyzing the first
    /// `n_hat` modes.
    pub fn new(n_hat: usize) -> Self {
        SimilarityConfig {
            n_hat,
            residual_tol: DEFAULT_RESIDUAL_TOL,
            eig_tol: None,
            scalar_tol: DEFAULT_SCALAR_TOL,
            inclusion_thresh: DEFAULT_INCLUSION_THRESH,
            cond_ceiling: crate::spectral::DEFAULT_COND_CEILING,
        }
    }

    /// Checks the configuration against a tensor of the given order.
    pub fn validate(&self, order: usize) -> Result<()> {
        check_n_hat(order, self.n_hat)?;
        let positives = [
            ("residual_tol", self.residual_tol),
            ("scalar_tol", self.scalar_tol),
            ("inclusion_thresh", self.inclusion_thresh),
            ("cond_ceiling", self.cond_ceiling),
        ];
        for (name, value) in positives {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be a positive finite number, got {value}"
                )));
            }
        }
        if let Some(t) = self.eig_tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "eig_tol must be a positive finite number, got {t}"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_n_hat(order: usize, n_hat: usize) -> Result<()> {
    if n_hat < 2 {
        return Err(Error::InvalidConfig(format!(
            "n_hat = {n_hat}: at least two modes must be analyzed; a single \
             mode carries no cross-mode block structure"
        )));
    }
    if n_hat > order {
        return Err(Error::InvalidConfig(format!(
            "n_hat = {n_hat} exceeds the tensor order {order}"
        )));
    }
    Ok(())
}

/// Outcome of a similarity analysis. See the module docs for semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SameScaledTerms,
    SharedStructureNonScalar,
    InclusionFailed,
    Unreliable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Verdict::SameScaledTerms => "SameScaledTerms",
            Verdict::SharedStructureNonScalar => "SharedStructureNonScalar",
            Verdict::InclusionFailed => "InclusionFailed",
            Verdict::Unreliable => "Unreliable",
        };
        f.write_str(name)
    }
}

/// Full account of one similarity analysis.
///
/// Term-indexed fields (`lambdas`, the inner vectors of `L` and
/// `eig_deviations`, `zero_scalings`) share one ordering: terms sorted by
/// descending scaling magnitude, ties by ascending phase. Mode-indexed
/// fields run over the analyzed modes `0..n_hat`. On an
/// [`Verdict::InclusionFailed`] verdict the term-indexed fields are empty
/// and `diagnostics.failed_mode` points at the offending mode.
///
/// `Σ_r L[n][r]` always equals the compressed mode-`n` dimension: the
/// eigenvalues of a linking matrix are distributed over the terms without
/// remainder.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimilarityReport {
    /// Schema tag, [`REPORT_SCHEMA`].
    pub schema: String,
    pub verdict: Verdict,
    /// Number of distinct shared terms (eigenvalue clusters).
    #[serde(rename = "R")]
    pub r: usize,
    /// Per-term scaling factors as `[re, im]` pairs, averaged over modes.
    pub lambdas: Vec<[f64; 2]>,
    /// `L[n][r]`: multiplicity of term `r` in mode `n` — the term's
    /// mode-`n` multilinear rank.
    #[serde(rename = "L")]
    pub multiplicities: Vec<Vec<usize>>,
    /// Relative least-squares residual of each mode's linking system.
    pub linking_residuals: Vec<f64>,
    /// `|center_nr − λ_r|`: distance from each mode's cluster center to the
    /// averaged scaling. Modes missing a term entirely report infinity
    /// (serialized as `null`).
    pub eig_deviations: Vec<Vec<f64>>,
    /// Frobenius mass outside the diagonal blocks of the transformed core,
    /// relative to the core's norm; `None` when the transform was not
    /// attempted (failed or unreliable analyses).
    pub off_block_mass: Option<f64>,
    /// Indices of terms whose scaling is numerically zero — present in the
    /// first tensor but absent from the second, so the second tensor's own
    /// decomposition drops them.
    pub zero_scalings: Vec<usize>,
    pub diagnostics: Diagnostics,
}

impl SimilarityReport {
    /// Report for an analysis that stopped before any term structure was
    /// established.
    pub(crate) fn failed(verdict: Verdict, diagnostics: Diagnostics) -> Self {
        SimilarityReport {
            schema: REPORT_SCHEMA.to_string(),
            verdict,
            r: 0,
            lambdas: Vec::new(),
            multiplicities: Vec::new(),
            linking_residuals: Vec::new(),
            eig_deviations: Vec::new(),
            off_block_mass: None,
            zero_scalings: Vec::new(),
            diagnostics,
        }
    }

    /// Pretty-printed JSON rendering of the report.
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Numerical evidence backing a report's verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Diagnostics {
    /// Tensor dimensions after compression (all modes, analyzed or not).
    pub compressed_dims: Vec<usize>,
    /// Numerical row-space rank of each analyzed mode of the first tensor.
    pub compression_ranks: Vec<usize>,
    /// Per-mode outcome of the row-space containment test.
    pub row_inclusion_ok: Vec<bool>,
    /// Per-mode inclusion scores (singular values in `[0, 1]`, small is
    /// contained).
    pub row_inclusion_scores: Vec<f64>,
    /// Condition number of each mode's stacked invariant-subspace basis.
    pub cond_s: Vec<f64>,
    /// Whether all modes produced the same cluster centers within the
    /// eigenvalue tolerance; `None` when the analysis stopped earlier.
    pub spectra_agree: Option<bool>,
    /// `scalar_blocks[n][r]`: whether term `r`'s restriction block in mode
    /// `n` is numerically scalar.
    pub scalar_blocks: Vec<Vec<bool>>,
    /// The eigenvalue-clustering tolerance actually used.
    pub eig_tol: Option<f64>,
    /// Mode at which an inclusion failure was detected, if any.
    pub failed_mode: Option<usize>,
    /// The failing score or residual at `failed_mode`.
    pub failed_residual: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_are_the_documented_values() {
        let c = SimilarityConfig::new(3);
        assert_eq!(c.n_hat, 3);
        assert_eq!(c.residual_tol, DEFAULT_RESIDUAL_TOL);
        assert_eq!(c.eig_tol, None);
        assert_eq!(c.scalar_tol, DEFAULT_SCALAR_TOL);
        assert_eq!(c.inclusion_thresh, DEFAULT_INCLUSION_THRESH);
        assert!(c.validate(3).is_ok());
    }

    #[test]
    fn single_mode_analysis_is_rejected() {
        assert!(SimilarityConfig::new(1).validate(3).is_err());
    }

    #[test]
    fn n_hat_larger_than_order_is_rejected() {
        assert!(SimilarityConfig::new(4).validate(3).is_err());
    }

    #[test]
    fn nonpositive_tolerances_are_rejected() {
        let mut c = SimilarityConfig::new(2);
        c.scalar_tol = 0.0;
        assert!(c.validate(3).is_err());
        let mut c = SimilarityConfig::new(2);
        c.eig_tol = Some(-1.0);
        assert!(c.validate(3).is_err());
    }

    #[test]
    fn verdict_serializes_as_its_name() {
        let json = serde_json::to_string(&Verdict::SameScaledTerms).unwrap();
        assert_eq!(json, "\"SameScaledTerms\"");
        assert_eq!(Verdict::Unreliable.to_string(), "Unreliable");
    }

    #[test]
    fn failed_report_serializes_with_schema_and_empty_terms() {
        let diag = Diagnostics {
            compressed_dims: vec![2, 2],
            compression_ranks: vec![2, 2],
            row_inclusion_ok: vec![true, false],
            row_inclusion_scores: vec![0.0, 0.9],
            cond_s: Vec::new(),
            spectra_agree: None,
            scalar_blocks: Vec::new(),
            eig_tol: None,
            failed_mode: Some(1),
            failed_residual: Some(0.9),
        };
        let report = SimilarityReport::failed(Verdict::InclusionFailed, diag);
        let json = report.to_json_pretty();
        assert!(json.contains("\"schema\": \"tensim-report/1\""));
        assert!(json.contains("\"R\": 0"));
        assert!(json.contains("\"InclusionFailed\""));
    }
}
