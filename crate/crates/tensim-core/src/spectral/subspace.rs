//! Subspace inclusion testing via singular values of stacked bases.

use ndarray::s;
use ndarray_linalg::SVD;

use crate::error::{Error, Result};
use crate::tensor::Matrix;

/// Tests whether `col(U) ⊆ col(V)` for matrices with orthonormal columns.
///
/// The score is `σ_{r_V + 1}([U V])`, the `(r_V + 1)`-th singular value of
/// the horizontally stacked bases (`r_V` = number of columns of `V`). If the
/// span of `U` adds nothing beyond `col(V)`, the stack has rank `r_V` and
/// the score vanishes; a direction of `U` orthogonal to `col(V)` pushes the
/// score up to 1. Inclusion is declared when `score < thresh`. Returns
/// `(included, score)`.
///
/// Both inputs must have orthonormal columns for the score to be calibrated
/// to `[0, 1]`; an empty `U` is trivially included.
pub fn subspace_inclusion(u: &Matrix, v: &Matrix, thresh: f64) -> Result<(bool, f64)> {
    if u.ncols() > 0 && u.nrows() != v.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "subspace bases live in different spaces: {} vs {} rows",
            u.nrows(),
            v.nrows()
        )));
    }
    if u.ncols() == 0 {
        return Ok((true, 0.0));
    }
    let stacked = stack_columns(u, v);
    let (_, svals, _) = stacked.svd(false, false)?;
    let score = svals.get(v.ncols()).copied().unwrap_or(0.0);
    Ok((score < thresh, score))
}

/// `[a b]`: horizontal concatenation.
pub(crate) fn stack_columns(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.nrows().max(b.nrows());
    let mut out = Matrix::zeros((rows, a.ncols() + b.ncols()));
    if a.ncols() > 0 {
        out.slice_mut(s![..a.nrows(), ..a.ncols()]).assign(a);
    }
    if b.ncols() > 0 {
        out.slice_mut(s![..b.nrows(), a.ncols()..]).assign(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn basis(rows: usize, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros((rows, cols.len()));
        for (j, &i) in cols.iter().enumerate() {
            m[[i, j]] = c(1.0);
        }
        m
    }

    #[test]
    fn a_subspace_is_included_in_itself() {
        let u = basis(5, &[0, 2]);
        let (ok, score) = subspace_inclusion(&u, &u, 0.1).unwrap();
        assert!(ok);
        assert!(score < 1e-12);
    }

    #[test]
    fn smaller_basis_inside_larger_scores_zero() {
        let u = basis(5, &[0, 1]);
        let v = basis(5, &[0, 1, 2]);
        let (ok, score) = subspace_inclusion(&u, &v, 0.1).unwrap();
        assert!(ok);
        assert!(score < 1e-12);
    }

    #[test]
    fn orthogonal_direction_scores_one() {
        let u = basis(4, &[3]);
        let v = basis(4, &[0, 1, 2]);
        let (ok, score) = subspace_inclusion(&u, &v, 0.1).unwrap();
        assert!(!ok);
        assert!((score - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tilted_direction_scores_by_tilt_angle() {
        // u = cos θ · e0 + sin θ · e2 against V = span{e0, e1}: the stacked
        // Gram matrix has eigenvalues 1 ± cos θ and 1, so the score is
        // √(1 − cos θ) — strictly increasing in the tilt, 0 at inclusion.
        let theta = 0.3f64;
        let mut u = Matrix::zeros((3, 1));
        u[[0, 0]] = c(theta.cos());
        u[[2, 0]] = c(theta.sin());
        let v = basis(3, &[0, 1]);
        let (_, score) = subspace_inclusion(&u, &v, 0.1).unwrap();
        assert!((score - (1.0 - theta.cos()).sqrt()).abs() < 1e-12, "score {score}");
    }

    #[test]
    fn empty_u_is_trivially_included() {
        let u = Matrix::zeros((4, 0));
        let v = basis(4, &[0]);
        let (ok, score) = subspace_inclusion(&u, &v, 0.1).unwrap();
        assert!(ok);
        assert_eq!(score, 0.0);
    }

    #[test]
    fn full_space_v_absorbs_everything() {
        let u = basis(3, &[0, 1, 2]);
        let v = basis(3, &[0, 1, 2]);
        // [U V] is 3×6; σ₄ does not exist, so the score defaults to 0
        let (ok, score) = subspace_inclusion(&u, &v, 0.1).unwrap();
        assert!(ok);
        assert_eq!(score, 0.0);
    }
}
