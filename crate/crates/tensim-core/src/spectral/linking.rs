//! Linking matrices: least-squares solutions of `A_unf · M = B_unf`.

use ndarray_linalg::{LeastSquaresSvd, SVD};

use crate::error::{Error, Result};
use crate::spectral::RANK_FLOOR_REL;
use crate::tensor::Matrix;

/// The matrix that maps one tensor's mode-`n` unfolding onto another's,
/// with the relative residual of the fit.
///
/// `B_(n) ≈ A_(n) · M` exactly (residual at rounding level) precisely when
/// every column of `B_(n)` lies in the column space of `A_(n)`; the
/// residual is the quantitative inclusion failure otherwise. The spectrum
/// of `M` is what the similarity analysis consumes.
#[derive(Debug, Clone)]
pub struct LinkingMatrix {
    /// The mode this matrix links (0-based), recorded for reporting.
    pub mode: usize,
    pub matrix: Matrix,
    /// `‖A_unf · M − B_unf‖_F / ‖B_unf‖_F` (0 for a zero `B_unf`).
    pub residual: f64,
}

/// Solves `A_unf · M = B_unf` in the least-squares sense.
///
/// `A_unf` must have full column rank — its smallest singular value must
/// exceed `1e-10 · σ₁` — otherwise the linking matrix is not determined and
/// an error is returned. The inputs are typically unfoldings of a compressed
/// tensor pair, where full column rank holds by construction.
pub fn solve_linking(a_unf: &Matrix, b_unf: &Matrix, mode: usize) -> Result<LinkingMatrix> {
    if a_unf.nrows() != b_unf.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "unfoldings have {} vs {} rows",
            a_unf.nrows(),
            b_unf.nrows()
        )));
    }
    let (_, svals, _) = a_unf.svd(false, false)?;
    let smax = svals.first().copied().unwrap_or(0.0);
    let smin = if svals.len() < a_unf.ncols() {
        0.0 // wider than tall: cannot have full column rank
    } else {
        svals.iter().copied().fold(f64::INFINITY, f64::min)
    };
    if smax == 0.0 || smin <= RANK_FLOOR_REL * smax {
        return Err(Error::RankDeficient(format!(
            "left-hand unfolding of mode {} has σ_min/σ_max = {:.3e}",
            mode,
            if smax == 0.0 { 0.0 } else { smin / smax }
        )));
    }

    let solution = a_unf.least_squares(b_unf)?.solution;
    let b_norm = frob(b_unf);
    let residual = if b_norm == 0.0 {
        0.0
    } else {
        frob(&(a_unf.dot(&solution) - b_unf)) / b_norm
    };
    Ok(LinkingMatrix { mode, matrix: solution, residual })
}

fn frob(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
