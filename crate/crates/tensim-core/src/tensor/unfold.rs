//! Matricizations: single-mode and mode-set unfoldings, and their inverse.

use ndarray::Array2;

use super::{strides_of, DenseTensor, Matrix, ModeSet};
use crate::error::{Error, Result};

impl DenseTensor {
    /// Mode-`n` unfolding.
    ///
    /// Returns the `(∏_{k≠n} I_k) × I_n` matrix whose column `i_n` collects
    /// the elements with that mode-`n` index, rows ordered by the remaining
    /// indices in ascending mode order, first index fastest. Column `i_n` is
    /// therefore the vectorized order-(N−1) slice at mode-`n` index `i_n`,
    /// and the column space of the unfolding is the span of those slices.
    pub fn unfold_mode(&self, n: usize) -> Result<Matrix> {
        self.check_mode(n)?;
        self.unfold_modeset(&ModeSet::new([n]).expect("single mode"))
    }

    /// Mode-set unfolding.
    ///
    /// Columns are indexed by the modes in `s` (ascending, first fastest),
    /// rows by the complementary modes (ascending, first fastest). With
    /// `s = {n}` this reduces to [`DenseTensor::unfold_mode`]. `s` must be a
    /// proper subset of the modes so that both index groups are nonempty.
    pub fn unfold_modeset(&self, s: &ModeSet) -> Result<Matrix> {
        s.check_order(self.order())?;
        if !s.is_proper_subset(self.order()) {
            return Err(Error::InvalidModeSet(format!(
                "mode set {:?} must be a proper subset of the modes of an order-{} tensor",
                s.modes(),
                self.order()
            )));
        }
        let (in_s, row_strides, col_strides, rows, cols) = self.split_strides(s);
        let strides = self.strides();
        let mut m = Array2::zeros((rows, cols));
        for (lin, &v) in self.data.iter().enumerate() {
            let mut row = 0;
            let mut col = 0;
            for k in 0..self.order() {
                let i_k = (lin / strides[k]) % self.dims[k];
                if in_s[k] {
                    col += i_k * col_strides[k];
                } else {
                    row += i_k * row_strides[k];
                }
            }
            m[[row, col]] = v;
        }
        Ok(m)
    }

    /// Inverse of [`DenseTensor::unfold_mode`]: rebuilds the tensor of shape
    /// `dims` from its mode-`n` unfolding.
    pub fn fold_mode(m: &Matrix, dims: &[usize], n: usize) -> Result<DenseTensor> {
        let mut t = DenseTensor::zeros(dims.to_vec())?;
        t.check_mode(n)?;
        let rest: usize = dims.iter().enumerate().filter(|&(k, _)| k != n).map(|(_, &d)| d).product();
        if m.nrows() != rest || m.ncols() != dims[n] {
            return Err(Error::ShapeMismatch(format!(
                "mode-{} unfolding of dims {:?} must be {}×{}, got {}×{}",
                n,
                dims,
                rest,
                dims[n],
                m.nrows(),
                m.ncols()
            )));
        }
        let s = ModeSet::new([n]).expect("single mode");
        let (in_s, row_strides, col_strides, _, _) = t.split_strides(&s);
        let strides = t.strides();
        for lin in 0..t.data.len() {
            let mut row = 0;
            let mut col = 0;
            for k in 0..t.order() {
                let i_k = (lin / strides[k]) % t.dims[k];
                if in_s[k] {
                    col += i_k * col_strides[k];
                } else {
                    row += i_k * row_strides[k];
                }
            }
            t.data[lin] = m[[row, col]];
        }
        Ok(t)
    }

    /// Per-mode membership flags and packed strides for the row/column index
    /// groups of an unfolding by `s`.
    fn split_strides(&self, s: &ModeSet) -> (Vec<bool>, Vec<usize>, Vec<usize>, usize, usize) {
        let order = self.order();
        let in_s: Vec<bool> = (0..order).map(|k| s.contains(k)).collect();
        let col_dims: Vec<usize> =
            (0..order).filter(|&k| in_s[k]).map(|k| self.dims[k]).collect();
        let row_dims: Vec<usize> =
            (0..order).filter(|&k| !in_s[k]).map(|k| self.dims[k]).collect();
        let col_packed = strides_of(&col_dims);
        let row_packed = strides_of(&row_dims);
        let mut col_strides = vec![0usize; order];
        let mut row_strides = vec![0usize; order];
        let (mut ci, mut ri) = (0, 0);
        for k in 0..order {
            if in_s[k] {
                col_strides[k] = col_packed[ci];
                ci += 1;
            } else {
                row_strides[k] = row_packed[ri];
                ri += 1;
            }
        }
        let rows = row_dims.iter().product();
        let cols = col_dims.iter().product();
        (in_s, row_strides, col_strides, rows, cols)
    }
}
