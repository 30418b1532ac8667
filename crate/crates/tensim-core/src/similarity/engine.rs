//! The end-to-end similarity pipeline: linking systems, cross-mode
//! spectrum alignment, and verdict assembly.
//!
//! After compression, every analyzed mode contributes one square linking
//! matrix `M_n` with `B_(n) = A_(n)·M_n`. When the pair genuinely shares
//! terms, all `M_n` have the same distinct eigenvalues — the per-term
//! scalings — while the multiplicities differ per mode (they are the
//! terms' mode-wise multilinear ranks). The alignment step therefore pools
//! the eigenvalues of *all* modes into one clustering: an eigenvalue chain
//! that noise split between two modes is reconnected by the pooled
//! single-linkage pass, and each mode's eigenvalues inherit their cluster
//! membership directly, with no nearest-center heuristics. One cluster =
//! one term, across every mode at once.
//!
//! Per mode, the cluster's eigenvalue positions in a Schur factorization
//! are reordered to the front, giving an orthonormal basis `S_nr` of the
//! invariant subspace and the restriction block `T_nr`. Stacking the bases
//! gives `S_n` with `S_n⁻¹ M_n S_n` block-diagonal; the same `S_n`,
//! applied as `Sₙᵀ` mode products, block-diagonalizes the *tensor pair*,
//! which is how the off-diagonal mass diagnostic and the term recovery
//! (see [`recover_terms`](crate::similarity::recover_terms)) get their
//! transform.

use ndarray_linalg::{Inverse, SVD};
use num_complex::Complex64;

use super::compress::{compress_pair, CompressedPair};
use super::recover::{recover_terms, TermDecomposition};
use super::{
    check_n_hat, Diagnostics, SimilarityConfig, SimilarityReport, Verdict,
    EIG_TOL_ABS, EIG_TOL_REL,
};
use crate::error::{Error, Result};
use crate::spectral::{
    blocks_for_eigenvalue_groups, cluster_eigenvalues, concat_bases, is_scalar_block,
    schur_decompose, solve_linking, LinkingMatrix, Schur,
};
use crate::tensor::{owned_matrix, DenseTensor, Matrix};

/// Solves the linking system of every analyzed mode of a compressed pair.
///
/// Returns [`Error::InclusionFailed`] as soon as one mode's relative
/// residual exceeds `residual_tol` — the second tensor then cannot be
/// generated from the first tensor's terms, and the residual quantifies by
/// how much. The inputs must be compressed (full-column-rank unfoldings);
/// a rank-deficient left-hand side is reported as
/// [`Error::RankDeficient`], not as an inclusion failure.
pub fn linking_matrices(
    a: &DenseTensor,
    b: &DenseTensor,
    n_hat: usize,
    residual_tol: f64,
) -> Result<Vec<LinkingMatrix>> {
    a.check_same_dims(b)?;
    check_n_hat(a.order(), n_hat)?;
    let mut out = Vec::with_capacity(n_hat);
    for n in 0..n_hat {
        let link = solve_linking(&a.unfold_mode(n)?, &b.unfold_mode(n)?, n)?;
        if link.residual > residual_tol {
            return Err(Error::InclusionFailed { mode: n, residual: link.residual });
        }
        out.push(link);
    }
    Ok(out)
}

/// One mode's share of the aligned spectral picture.
pub(crate) struct ModeSpectrum {
    /// Stacked invariant-subspace bases `[S_n1 … S_nR]`, square.
    pub s: Matrix,
    /// Inverse of `s`; `None` when `cond_s` exceeded the ceiling and the
    /// inverse would be numerically meaningless.
    pub s_inv: Option<Matrix>,
    /// Restriction blocks `T_nr`, one per term, `counts[r]` square each.
    pub blocks: Vec<Matrix>,
    pub cond_s: f64,
    /// `L_nr`: how many of this mode's eigenvalues fell into each term's
    /// cluster. Sums to the compressed mode dimension.
    pub counts: Vec<usize>,
    /// Mean of this mode's eigenvalues in each cluster (zero if none).
    pub centers: Vec<Complex64>,
}

/// Cross-mode aligned eigenvalue clusters of a set of linking matrices.
pub(crate) struct AlignedSpectra {
    /// Per-term scalings, averaged over the modes that carry the term.
    pub lambdas: Vec<Complex64>,
    pub modes: Vec<ModeSpectrum>,
    /// `deviations[n][r] = |centers[n][r] − lambdas[r]|`, infinite where a
    /// mode has no eigenvalue in the cluster.
    pub deviations: Vec<Vec<f64>>,
    /// Whether every mode carries every term with a center within the
    /// clustering tolerance of the average.
    pub agree: bool,
}

impl AlignedSpectra {
    pub fn r(&self) -> usize {
        self.lambdas.len()
    }
}

/// Pools the eigenvalues of all linking matrices, clusters them once, and
/// splits every matrix along the shared clusters.
///
/// Membership in the pooled clustering is what assigns a mode's eigenvalue
/// to a term: because single linkage over a superset can only merge —
/// never split — the groups of a subset, every per-mode cluster lands
/// wholly inside one pooled cluster, making the assignment unambiguous.
pub(crate) fn align_spectra(
    linking: &[LinkingMatrix],
    eig_tol: f64,
    cond_ceiling: f64,
) -> Result<AlignedSpectra> {
    let schurs: Vec<Schur> = linking
        .iter()
        .map(|l| schur_decompose(&l.matrix))
        .collect::<Result<_>>()?;

    let mut pooled: Vec<Complex64> = Vec::new();
    let mut offsets = vec![0usize];
    for schur in &schurs {
        pooled.extend_from_slice(&schur.eigenvalues);
        offsets.push(pooled.len());
    }
    let clusters = cluster_eigenvalues(&pooled, eig_tol);
    let r = clusters.len();

    let mut modes = Vec::with_capacity(schurs.len());
    for (n, schur) in schurs.iter().enumerate() {
        let (lo, hi) = (offsets[n], offsets[n + 1]);
        let groups: Vec<Vec<usize>> = clusters
            .iter()
            .map(|c| {
                c.members
                    .iter()
                    .filter(|&&g| g >= lo && g < hi)
                    .map(|&g| g - lo)
                    .collect()
            })
            .collect();
        let counts: Vec<usize> = groups.iter().map(Vec::len).collect();
        let centers: Vec<Complex64> = groups
            .iter()
            .map(|members| {
                if members.is_empty() {
                    Complex64::new(0.0, 0.0)
                } else {
                    members.iter().map(|&i| schur.eigenvalues[i]).sum::<Complex64>()
                        / members.len() as f64
                }
            })
            .collect();

        let (subspaces, blocks) = blocks_for_eigenvalue_groups(schur, &groups)?;
        let s = concat_bases(&subspaces, schur.t.nrows());
        let (_, svals, _) = s.svd(false, false)?;
        let smax = svals.first().copied().unwrap_or(0.0);
        let smin = svals.iter().copied().fold(f64::INFINITY, f64::min);
        let cond_s = if smin == 0.0 { f64::INFINITY } else { smax / smin };
        let s_inv = if cond_s <= cond_ceiling { Some(s.inv()?) } else { None };

        modes.push(ModeSpectrum { s, s_inv, blocks, cond_s, counts, centers });
    }

    let mut lambdas = Vec::with_capacity(r);
    for term in 0..r {
        let carriers: Vec<Complex64> = modes
            .iter()
            .filter(|m| m.counts[term] > 0)
            .map(|m| m.centers[term])
            .collect();
        // Every pooled cluster has at least one member, so some mode
        // carries the term.
        lambdas.push(carriers.iter().sum::<Complex64>() / carriers.len() as f64);
    }
    let deviations: Vec<Vec<f64>> = modes
        .iter()
        .map(|m| {
            (0..r)
                .map(|term| {
                    if m.counts[term] == 0 {
                        f64::INFINITY
                    } else {
                        (m.centers[term] - lambdas[term]).norm()
                    }
                })
                .collect()
        })
        .collect();
    let agree = deviations.iter().flatten().all(|&d| d <= eig_tol);

    Ok(AlignedSpectra { lambdas, modes, deviations, agree })
}

/// The clustering tolerance actually used: the explicit one if set,
/// otherwise scaled to the largest linking-matrix spectral norm.
pub(crate) fn resolved_eig_tol(
    config: &SimilarityConfig,
    linking: &[LinkingMatrix],
) -> Result<f64> {
    if let Some(tol) = config.eig_tol {
        return Ok(tol);
    }
    let mut max_norm: f64 = 0.0;
    for link in linking {
        let (_, svals, _) = link.matrix.svd(false, false)?;
        max_norm = max_norm.max(svals.first().copied().unwrap_or(0.0));
    }
    Ok(EIG_TOL_ABS.max(EIG_TOL_REL * max_norm))
}

/// Runs the full analysis: compression, linking, spectrum alignment,
/// verdict.
///
/// Inclusion failures — at the row-space stage or as an unsolvable linking
/// system — are verdicts, not errors; so are unreliable splittings. Only
/// contract violations (shape mismatch, bad configuration) and backend
/// failures surface as `Err`.
pub fn analyze_similarity(
    a: &DenseTensor,
    b: &DenseTensor,
    config: &SimilarityConfig,
) -> Result<SimilarityReport> {
    a.check_same_dims(b)?;
    config.validate(a.order())?;
    let pair = compress_pair(a, b, config.n_hat, config.inclusion_thresh)?;
    Ok(analyze_compressed(&pair, config)?.0)
}

/// Like [`analyze_similarity`], but also recovers the term decomposition
/// whenever the verdict supports one (shared structure with at least one
/// term), attaching the compression bases to it.
pub fn analyze_and_recover(
    a: &DenseTensor,
    b: &DenseTensor,
    config: &SimilarityConfig,
) -> Result<(SimilarityReport, Option<TermDecomposition>)> {
    a.check_same_dims(b)?;
    config.validate(a.order())?;
    let pair = compress_pair(a, b, config.n_hat, config.inclusion_thresh)?;
    let (report, linking) = analyze_compressed(&pair, config)?;
    let recoverable = matches!(
        report.verdict,
        Verdict::SameScaledTerms | Verdict::SharedStructureNonScalar
    ) && report.r >= 1;
    if !recoverable {
        return Ok((report, None));
    }
    let linking = linking.expect("linking matrices exist for shared-structure verdicts");
    let mut decomposition = recover_terms(&pair.a, &pair.b, &linking, config)?;
    decomposition.compression = pair.bases.clone();
    Ok((report, Some(decomposition)))
}

/// Analysis of an already-compressed pair; returns the linking matrices
/// alongside the report so callers can reuse them for recovery.
pub(crate) fn analyze_compressed(
    pair: &CompressedPair,
    config: &SimilarityConfig,
) -> Result<(SimilarityReport, Option<Vec<LinkingMatrix>>)> {
    let mut diagnostics = Diagnostics {
        compressed_dims: pair.a.dims().to_vec(),
        compression_ranks: pair.ranks.clone(),
        row_inclusion_ok: pair.row_inclusion_ok.clone(),
        row_inclusion_scores: pair.row_inclusion_scores.clone(),
        cond_s: Vec::new(),
        spectra_agree: None,
        scalar_blocks: Vec::new(),
        eig_tol: None,
        failed_mode: None,
        failed_residual: None,
    };

    if let Some(mode) = pair.row_inclusion_ok.iter().position(|&ok| !ok) {
        diagnostics.failed_mode = Some(mode);
        diagnostics.failed_residual = Some(pair.row_inclusion_scores[mode]);
        return Ok((SimilarityReport::failed(Verdict::InclusionFailed, diagnostics), None));
    }

    let linking =
        match linking_matrices(&pair.a, &pair.b, config.n_hat, config.residual_tol) {
            Ok(linking) => linking,
            Err(Error::InclusionFailed { mode, residual }) => {
                diagnostics.failed_mode = Some(mode);
                diagnostics.failed_residual = Some(residual);
                return Ok((
                    SimilarityReport::failed(Verdict::InclusionFailed, diagnostics),
                    None,
                ));
            }
            Err(other) => return Err(other),
        };
    let linking_residuals: Vec<f64> = linking.iter().map(|l| l.residual).collect();

    let eig_tol = resolved_eig_tol(config, &linking)?;
    diagnostics.eig_tol = Some(eig_tol);
    let aligned = align_spectra(&linking, eig_tol, config.cond_ceiling)?;
    let r = aligned.r();
    diagnostics.cond_s = aligned.modes.iter().map(|m| m.cond_s).collect();
    diagnostics.spectra_agree = Some(aligned.agree);

    let lambdas: Vec<[f64; 2]> = aligned.lambdas.iter().map(|z| [z.re, z.im]).collect();
    let multiplicities: Vec<Vec<usize>> =
        aligned.modes.iter().map(|m| m.counts.clone()).collect();
    let zero_scalings: Vec<usize> = aligned
        .lambdas
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() <= eig_tol)
        .map(|(i, _)| i)
        .collect();

    // Scalar structure is judged against each mode's own cluster center:
    // a block can be exactly scalar even when the mode's center deviates
    // slightly from the cross-mode average.
    let scalar_blocks: Vec<Vec<bool>> = aligned
        .modes
        .iter()
        .map(|m| {
            (0..r)
                .map(|term| {
                    m.counts[term] > 0
                        && is_scalar_block(&m.blocks[term], m.centers[term], config.scalar_tol)
                })
                .collect()
        })
        .collect();
    diagnostics.scalar_blocks = scalar_blocks.clone();

    let ill_conditioned = aligned.modes.iter().any(|m| m.cond_s > config.cond_ceiling);
    let (verdict, off_block_mass) = if ill_conditioned || !aligned.agree {
        (Verdict::Unreliable, None)
    } else {
        let transposed: Vec<Matrix> =
            aligned.modes.iter().map(|m| owned_matrix(m.s.t())).collect();
        let factors: Vec<(&Matrix, usize)> =
            transposed.iter().enumerate().map(|(n, s_t)| (s_t, n)).collect();
        let core = pair.a.multi_mode_product(&factors)?;
        let (_, off_abs) = core.extract_diag_blocks(&multiplicities)?;
        let core_norm = core.frob_norm();
        let off_rel = if core_norm == 0.0 { 0.0 } else { off_abs / core_norm };

        let every_term_scaled = (0..r).all(|term| {
            (0..config.n_hat)
                .any(|n| aligned.modes[n].counts[term] > 0 && scalar_blocks[n][term])
        });
        let verdict = if every_term_scaled {
            Verdict::SameScaledTerms
        } else {
            Verdict::SharedStructureNonScalar
        };
        (verdict, Some(off_rel))
    };

    let report = SimilarityReport {
        schema: super::REPORT_SCHEMA.to_string(),
        verdict,
        r,
        lambdas,
        multiplicities,
        linking_residuals,
        eig_deviations: aligned.deviations,
        off_block_mass,
        zero_scalings,
        diagnostics,
    };
    Ok((report, Some(linking)))
}
