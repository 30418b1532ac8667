//! Multilinear ranks and truncated orthogonal Tucker compression.

use ndarray_linalg::SVD;

use super::{DenseTensor, Matrix};
use crate::error::{Error, Result};
use crate::spectral::{estimate_rank, RANK_FLOOR_REL};

/// Result of [`DenseTensor::mlsvd_truncate`]: orthonormal per-mode factors,
/// the core of coordinates in those bases, and the relative reconstruction
/// error `‖A − core ×₀ U₀ … ×_{N-1} U_{N-1}‖ / ‖A‖`.
#[derive(Debug, Clone)]
pub struct Mlsvd {
    pub core: DenseTensor,
    pub factors: Vec<Matrix>,
    pub rel_error: f64,
}

impl Mlsvd {
    /// Reconstructs the (possibly truncated) tensor from core and factors.
    pub fn reconstruct(&self) -> Result<DenseTensor> {
        let factors: Vec<(&Matrix, usize)> =
            self.factors.iter().enumerate().map(|(n, u)| (u, n)).collect();
        self.core.multi_mode_product(&factors)
    }
}

impl DenseTensor {
    /// Multilinear rank estimate: for every mode, the numerical rank of the
    /// mode-`n` unfolding under the gap-ratio rule of
    /// [`estimate_rank`](crate::spectral::estimate_rank).
    ///
    /// `abs_floor` is an absolute cutoff below which singular values are
    /// treated as zero; when `None`, each mode uses `1e-10 · σ₁` of its own
    /// unfolding.
    pub fn ml_rank(&self, gap_ratio: f64, abs_floor: Option<f64>) -> Result<Vec<usize>> {
        let mut ranks = Vec::with_capacity(self.order());
        for n in 0..self.order() {
            let (_, svals, _) = self.unfold_mode(n)?.svd(false, false)?;
            let floor = abs_floor
                .unwrap_or_else(|| RANK_FLOOR_REL * svals.first().copied().unwrap_or(0.0));
            ranks.push(estimate_rank(svals.as_slice().unwrap(), gap_ratio, floor));
        }
        Ok(ranks)
    }

    /// Rank-truncated orthogonal Tucker compression.
    ///
    /// Factor `U_n` starts as the `target_ranks[n]` dominant right singular
    /// vectors of the mode-`n` unfolding (an orthonormal basis of the
    /// dominant mode-`n` fiber subspace). With `refine_iters > 0`, the bases
    /// are then improved by alternating subspace iteration: each pass
    /// re-derives `U_n` from the tensor compressed in every other mode. The
    /// iteration count is fixed — no convergence test — so results are
    /// deterministic; the approximation error is non-increasing in the
    /// iteration count.
    pub fn mlsvd_truncate(&self, target_ranks: &[usize], refine_iters: usize) -> Result<Mlsvd> {
        let order = self.order();
        if target_ranks.len() != order {
            return Err(Error::InvalidRanks(format!(
                "need one target rank per mode: got {} for an order-{} tensor",
                target_ranks.len(),
                order
            )));
        }
        for (n, &r) in target_ranks.iter().enumerate() {
            if r == 0 || r > self.dims()[n] {
                return Err(Error::InvalidRanks(format!(
                    "target rank {} for mode {} of length {}",
                    r,
                    n,
                    self.dims()[n]
                )));
            }
        }

        let mut factors: Vec<Matrix> = Vec::with_capacity(order);
        for (n, &r) in target_ranks.iter().enumerate() {
            factors.push(dominant_fiber_basis(&self.unfold_mode(n)?, r)?);
        }

        for _ in 0..refine_iters {
            for n in 0..order {
                let others: Vec<(Matrix, usize)> = (0..order)
                    .filter(|&k| k != n)
                    .map(|k| (adjoint(&factors[k]), k))
                    .collect();
                let refs: Vec<(&Matrix, usize)> = others.iter().map(|(m, k)| (m, *k)).collect();
                let projected = self.multi_mode_product(&refs)?;
                factors[n] = dominant_fiber_basis(&projected.unfold_mode(n)?, target_ranks[n])?;
            }
        }

        let compress: Vec<(Matrix, usize)> =
            factors.iter().enumerate().map(|(n, u)| (adjoint(u), n)).collect();
        let refs: Vec<(&Matrix, usize)> = compress.iter().map(|(m, n)| (m, *n)).collect();
        let core = self.multi_mode_product(&refs)?;

        let norm = self.frob_norm();
        let rel_error = if norm == 0.0 {
            0.0
        } else {
            let recon_refs: Vec<(&Matrix, usize)> =
                factors.iter().enumerate().map(|(n, u)| (u, n)).collect();
            let recon = core.multi_mode_product(&recon_refs)?;
            self.sub(&recon)?.frob_norm() / norm
        };

        Ok(Mlsvd { core, factors, rel_error })
    }
}

/// Conjugate transpose.
pub(crate) fn adjoint(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

/// Orthonormal basis (as columns) of the span of the `r` dominant fibers
/// enumerated by the rows of `m`.
///
/// The rows of an unfolding are the (transposed, unconjugated) fibers, so
/// the wanted basis is the *plain* transpose of the leading rows of the
/// LAPACK `Vᴴ` factor — i.e. `conj(V)`, not `V`. Using `V` itself looks
/// right on real data but silently conjugates the subspace on complex data.
fn dominant_fiber_basis(m: &Matrix, r: usize) -> Result<Matrix> {
    let (_, _, vt) = m.svd(false, true)?;
    let vt = vt.expect("requested vt");
    if vt.nrows() < r {
        return Err(Error::InvalidRanks(format!(
            "cannot extract {} basis vectors from a {}×{} unfolding",
            r,
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(crate::tensor::owned_matrix(vt.slice(ndarray::s![..r, ..]).t()))
}
