//! Numerical confirmation that multi-mode matricization conditions are
//! implied by the single-mode ones.
//!
//! A pair linked in mode `n` by `B_(n) = A_(n)·M_n` is automatically linked
//! in every mode set `S ∋ n`: the mode-`S` matricizations satisfy
//! `B_(S) = A_(S)·M_S` where `M_S` acts as `M_n` on the mode-`n` coordinate
//! of the column multi-index and as the identity on all other coordinates
//! of `S`. Checking pairs mode by mode therefore loses nothing against
//! checking all `2^N − 2` proper mode subsets.
//!
//! `M_S` is a Kronecker product of `M_n` with identity factors, but
//! Kronecker conventions (which factor runs fastest) are a classic source
//! of silent index bugs. The matrix is built entrywise from its defining
//! rule instead — `M_S[(…, k, …), (…, c, …)] = M_n[k, c]` whenever all
//! other coordinates agree — in the same first-listed-mode-fastest column
//! layout that [`unfold_modeset`](crate::tensor::DenseTensor::unfold_modeset)
//! uses, so the two can never drift apart.

use crate::error::{Error, Result};
use crate::spectral::LinkingMatrix;
use crate::tensor::{DenseTensor, Matrix, ModeSet};

/// Relative residual `‖A_(S)·M_S − B_(S)‖_F / ‖B_(S)‖_F` of the mode-`S`
/// linking condition induced by a single-mode linking matrix.
///
/// `S` must be a proper, nonempty subset of the modes and contain the
/// linking matrix's mode. A near-zero residual (at the level of the
/// single-mode residual) confirms the redundancy numerically; for a zero
/// `B_(S)` the absolute residual is returned.
pub fn check_redundant_inclusions(
    a: &DenseTensor,
    b: &DenseTensor,
    m_n: &LinkingMatrix,
    s: &ModeSet,
) -> Result<f64> {
    a.check_same_dims(b)?;
    s.check_order(a.order())?;
    if !s.contains(m_n.mode) {
        return Err(Error::InvalidModeSet(format!(
            "mode set {:?} does not contain the linking mode {}",
            s.modes(),
            m_n.mode
        )));
    }
    let mode_len = a.dims()[m_n.mode];
    if m_n.matrix.nrows() != mode_len || m_n.matrix.ncols() != mode_len {
        return Err(Error::ShapeMismatch(format!(
            "linking matrix is {}×{} but mode {} has length {}",
            m_n.matrix.nrows(),
            m_n.matrix.ncols(),
            m_n.mode,
            mode_len
        )));
    }

    let a_s = a.unfold_modeset(s)?;
    let b_s = b.unfold_modeset(s)?;
    let m_s = embed_linking(&m_n.matrix, a.dims(), s, m_n.mode);

    let product = a_s.dot(&m_s);
    let diff_norm = (&product - &b_s).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let b_norm = b_s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(if b_norm == 0.0 { diff_norm } else { diff_norm / b_norm })
}

/// The matrix acting as `m` on mode `n`'s coordinate and as the identity on
/// the other coordinates of `s`, in the column layout of `unfold_modeset`
/// (modes ascending, first-listed coordinate fastest).
fn embed_linking(m: &Matrix, dims: &[usize], s: &ModeSet, n: usize) -> Matrix {
    let sizes: Vec<usize> = s.modes().iter().map(|&q| dims[q]).collect();
    let position = s.modes().iter().position(|&q| q == n).expect("checked: n ∈ S");
    let total: usize = sizes.iter().product();

    // Stride of each S-coordinate in the linearized column index.
    let mut strides = vec![1usize; sizes.len()];
    for v in 1..sizes.len() {
        strides[v] = strides[v - 1] * sizes[v - 1];
    }

    let mode_len = sizes[position];
    let context_sizes: Vec<usize> =
        sizes.iter().enumerate().filter(|&(v, _)| v != position).map(|(_, &l)| l).collect();
    let context_strides: Vec<usize> = strides
        .iter()
        .enumerate()
        .filter(|&(v, _)| v != position)
        .map(|(_, &st)| st)
        .collect();

    let mut out = Matrix::zeros((total, total));
    let context_total: usize = context_sizes.iter().product();
    for flat in 0..context_total {
        // Unrank the context (all S-coordinates except mode n's) and
        // compute its contribution to the linear index.
        let mut base = 0;
        let mut rest = flat;
        for (size, stride) in context_sizes.iter().zip(&context_strides) {
            base += (rest % size) * stride;
            rest /= size;
        }
        for k in 0..mode_len {
            let row = base + k * strides[position];
            for c in 0..mode_len {
                let col = base + c * strides[position];
                out[[row, col]] = m[[k, c]];
            }
        }
    }
    out
}
