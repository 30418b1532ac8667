//! Primary decomposition of a matrix: orthonormal bases of the invariant
//! subspaces belonging to each eigenvalue cluster, with the restriction of
//! the matrix to each of them.

use ndarray::s;
use ndarray_linalg::SVD;
use num_complex::Complex64;

use super::cluster::{cluster_eigenvalues, EigenCluster};
use super::schur::{schur_decompose, Schur};
use crate::error::{Error, Result};
use crate::tensor::Matrix;

/// Invariant-subspace decomposition of a square matrix, one component per
/// eigenvalue cluster.
///
/// `subspaces[r]` has orthonormal columns spanning the invariant subspace of
/// cluster `r`; `blocks[r] = S_rᴴ M S_r` is the matrix restricted to it.
/// Stacking the bases gives `M·S ≈ S·blockdiag(T_r)` up to
/// `recon_residual`. `cond_s` is the condition number of the stacked basis
/// `S = [S_1 … S_R]` — near-parallel invariant subspaces make it blow up,
/// and with it the reliability of anything computed from the splitting.
#[derive(Debug, Clone)]
pub struct PrimaryDecomposition {
    pub clusters: Vec<EigenCluster>,
    pub subspaces: Vec<Matrix>,
    pub blocks: Vec<Matrix>,
    pub cond_s: f64,
    pub recon_residual: f64,
}

/// Splits `M` into invariant subspaces, one per eigenvalue cluster at
/// tolerance `tol`.
///
/// Eigenvalues are clustered by single linkage ([`cluster_eigenvalues`]);
/// each cluster's subspace is obtained by reordering a complex Schur
/// factorization so the cluster's eigenvalues lead, and taking the leading
/// Schur vectors. The nilpotency index of each cluster is measured on its
/// block by rank stabilization of `(T_r − λ_r I)^k` (ranks at tolerance
/// `tol · ‖M‖₂`), capped at the cluster multiplicity.
///
/// Fails with [`Error::IllConditioned`] when the stacked basis has condition
/// number above `cond_ceiling`: the splitting is then numerically
/// meaningless and no downstream quantity should be trusted.
pub fn primary_decomposition(
    m: &Matrix,
    tol: f64,
    cond_ceiling: f64,
) -> Result<PrimaryDecomposition> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::ShapeMismatch(format!(
            "primary decomposition needs a nonempty square matrix, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let schur = schur_decompose(m)?;
    let mut clusters = cluster_eigenvalues(&schur.eigenvalues, tol);
    let groups: Vec<Vec<usize>> = clusters.iter().map(|c| c.members.clone()).collect();
    let (subspaces, blocks) = blocks_for_eigenvalue_groups(&schur, &groups)?;

    let stacked = concat_bases(&subspaces, m.nrows());
    let (_, svals, _) = stacked.svd(false, false)?;
    let smax = svals.first().copied().unwrap_or(0.0);
    let smin = svals.iter().copied().fold(f64::INFINITY, f64::min);
    let cond_s = if smin == 0.0 { f64::INFINITY } else { smax / smin };
    if cond_s > cond_ceiling {
        return Err(Error::IllConditioned { cond: cond_s, ceiling: cond_ceiling });
    }

    let (_, m_svals, _) = m.svd(false, false)?;
    let m_norm2 = m_svals.first().copied().unwrap_or(0.0);
    let rank_thresh = tol * m_norm2;
    for (cluster, block) in clusters.iter_mut().zip(&blocks) {
        cluster.nilpotency = nilpotency_index(block, cluster.center, rank_thresh);
    }

    let bd = block_diag(&blocks);
    let m_frob = frob(m);
    let recon_residual = if m_frob == 0.0 {
        0.0
    } else {
        frob(&(m.dot(&stacked) - stacked.dot(&bd))) / m_frob
    };

    Ok(PrimaryDecomposition { clusters, subspaces, blocks, cond_s, recon_residual })
}

/// Whether `T` is numerically the scalar matrix `λ I`:
/// `‖T − λI‖_F ≤ tol · max(1, |λ|) · √size`.
///
/// A scalar block means the matrix acts on that invariant subspace as plain
/// multiplication by `λ`. An empty block is vacuously scalar.
pub fn is_scalar_block(t: &Matrix, lambda: Complex64, tol: f64) -> bool {
    let n = t.nrows();
    if t.ncols() != n {
        return false;
    }
    let mut diff_sq = 0.0;
    for i in 0..n {
        for j in 0..n {
            let expected = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
            diff_sq += (t[[i, j]] - expected).norm_sqr();
        }
    }
    diff_sq.sqrt() <= tol * lambda.norm().max(1.0) * (n as f64).sqrt()
}

/// Invariant-subspace bases and restriction blocks for explicit groups of
/// Schur eigenvalue positions. Used by the similarity engine, which groups
/// each mode's eigenvalues against shared cross-mode clusters instead of
/// re-clustering per matrix. Empty groups yield empty bases/blocks.
pub(crate) fn blocks_for_eigenvalue_groups(
    schur: &Schur,
    groups: &[Vec<usize>],
) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let n = schur.t.nrows();
    let mut subspaces = Vec::with_capacity(groups.len());
    let mut blocks = Vec::with_capacity(groups.len());
    for group in groups {
        if group.is_empty() {
            subspaces.push(Matrix::zeros((n, 0)));
            blocks.push(Matrix::zeros((0, 0)));
            continue;
        }
        let (t2, z2) = schur.reorder_to_leading(group)?;
        let l = group.len();
        subspaces.push(crate::tensor::owned_matrix(z2.slice(s![.., ..l])));
        blocks.push(crate::tensor::owned_matrix(t2.slice(s![..l, ..l])));
    }
    Ok((subspaces, blocks))
}

pub(crate) fn concat_bases(subspaces: &[Matrix], rows: usize) -> Matrix {
    let total: usize = subspaces.iter().map(|s| s.ncols()).sum();
    let mut out = Matrix::zeros((rows, total));
    let mut at = 0;
    for sub in subspaces {
        if sub.ncols() > 0 {
            out.slice_mut(s![.., at..at + sub.ncols()]).assign(sub);
            at += sub.ncols();
        }
    }
    out
}

pub(crate) fn block_diag(blocks: &[Matrix]) -> Matrix {
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = Matrix::zeros((total, total));
    let mut at = 0;
    for b in blocks {
        let l = b.nrows();
        if l > 0 {
            out.slice_mut(s![at..at + l, at..at + l]).assign(b);
            at += l;
        }
    }
    out
}

/// Smallest `k ≥ 1` with `rank(N^k) = rank(N^{k+1})` for `N = T − λI`,
/// capped at the block size.
fn nilpotency_index(block: &Matrix, lambda: Complex64, rank_thresh: f64) -> usize {
    let l = block.nrows();
    if l == 0 {
        return 1;
    }
    let mut n_mat = block.clone();
    for i in 0..l {
        n_mat[[i, i]] -= lambda;
    }
    let rank = |m: &Matrix| -> usize {
        let (_, svals, _) = m.svd(false, false).expect("svd of a small block");
        svals.iter().filter(|&&s| s > rank_thresh).count()
    };
    let mut power = n_mat.clone();
    let mut prev = rank(&power);
    for k in 1..=l {
        if k == l {
            return l;
        }
        power = power.dot(&n_mat);
        let next = rank(&power);
        if next == prev {
            return k;
        }
        prev = next;
    }
    l.max(1)
}

fn frob(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use ndarray::array;

    use super::*;
    use crate::spectral::DEFAULT_COND_CEILING;
    use crate::tensor::adjoint;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn max_abs(m: &Matrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// M = P D P⁻¹ with a fixed non-orthogonal P (inverse checked exactly).
    fn similar_to_diag(diag: &[Complex64]) -> Matrix {
        let p = array![
            [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.5)],
            [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        let p_inv = array![
            [c(1.0, 0.0), c(-1.0, 0.0), c(1.0, -0.5)],
            [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
            [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ];
        assert!(max_abs(&(p.dot(&p_inv) - Matrix::eye(3))) < 1e-15);
        let d = Matrix::from_diag(&ndarray::arr1(diag));
        p.dot(&d).dot(&p_inv)
    }

    #[test]
    fn distinct_eigenvalues_split_into_scalar_blocks() {
        let m = similar_to_diag(&[c(3.0, 0.0), c(1.0, 1.0), c(-2.0, 0.0)]);
        let pd = primary_decomposition(&m, 1e-8, DEFAULT_COND_CEILING).unwrap();
        assert_eq!(pd.clusters.len(), 3);
        assert!(pd.recon_residual < 1e-12);
        for (cluster, block) in pd.clusters.iter().zip(&pd.blocks) {
            assert_eq!(cluster.multiplicity, 1);
            assert_eq!(cluster.nilpotency, 1);
            assert!(is_scalar_block(block, cluster.center, 1e-10));
        }
        // order: |3| ≥ |−2| ≥ |1+i|? magnitudes 3, 2, √2
        assert!((pd.clusters[0].center - c(3.0, 0.0)).norm() < 1e-10);
        assert!((pd.clusters[1].center - c(-2.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn repeated_semisimple_eigenvalue_gives_exact_scalar_block() {
        let m = similar_to_diag(&[c(2.0, 0.0), c(2.0, 0.0), c(5.0, 0.0)]);
        let pd = primary_decomposition(&m, 1e-8, DEFAULT_COND_CEILING).unwrap();
        assert_eq!(pd.clusters.len(), 2);
        assert!((pd.clusters[0].center - c(5.0, 0.0)).norm() < 1e-10);
        assert_eq!(pd.clusters[1].multiplicity, 2);
        assert_eq!(pd.clusters[1].nilpotency, 1);
        assert!(is_scalar_block(&pd.blocks[1], pd.clusters[1].center, 1e-9));
        // subspace bases are orthonormal
        for sub in &pd.subspaces {
            let gram = adjoint(sub).dot(sub);
            assert!(max_abs(&(gram - Matrix::eye(sub.ncols()))) < 1e-12);
        }
    }

    #[test]
    fn jordan_block_reports_nilpotency_two() {
        let m = array![[c(2.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(2.0, 0.0)]];
        let pd = primary_decomposition(&m, 1e-8, DEFAULT_COND_CEILING).unwrap();
        assert_eq!(pd.clusters.len(), 1);
        assert_eq!(pd.clusters[0].multiplicity, 2);
        assert_eq!(pd.clusters[0].nilpotency, 2);
        assert!(!is_scalar_block(&pd.blocks[0], pd.clusters[0].center, 1e-8));
    }

    #[test]
    fn near_parallel_invariant_subspaces_are_rejected() {
        // eigenvalues 1 and 1+1e-10 with eigenvectors ~1e-10 apart
        let m = array![[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0 + 1e-10, 0.0)]];
        let err = primary_decomposition(&m, 1e-12, DEFAULT_COND_CEILING).unwrap_err();
        match err {
            Error::IllConditioned { cond, .. } => assert!(cond > DEFAULT_COND_CEILING),
            other => panic!("expected IllConditioned, got {other:?}"),
        }
    }

    #[test]
    fn zero_matrix_is_one_scalar_cluster_at_zero() {
        let m = Matrix::zeros((3, 3));
        let pd = primary_decomposition(&m, 1e-8, DEFAULT_COND_CEILING).unwrap();
        assert_eq!(pd.clusters.len(), 1);
        assert_eq!(pd.clusters[0].multiplicity, 3);
        assert!(pd.clusters[0].center.norm() < 1e-15);
        assert!(is_scalar_block(&pd.blocks[0], pd.clusters[0].center, 1e-12));
        assert!((pd.cond_s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_block_test_examples() {
        let t = array![[c(2.0, 0.0), c(1e-12, 0.0)], [c(0.0, 0.0), c(2.0, 0.0)]];
        assert!(is_scalar_block(&t, c(2.0, 0.0), 1e-8));
        let t2 = array![[c(2.0, 0.0), c(1e-3, 0.0)], [c(0.0, 0.0), c(2.0, 0.0)]];
        assert!(!is_scalar_block(&t2, c(2.0, 0.0), 1e-8));
        // tolerance scales with |λ|
        let big = array![[c(1e9, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1e9, 0.0)]];
        assert!(is_scalar_block(&big, c(1e9, 0.0), 1e-8));
    }
}
