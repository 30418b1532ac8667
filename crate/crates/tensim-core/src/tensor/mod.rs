//! Dense tensors with a fixed linear layout, unfoldings, and mode products.
//!
//! Everything in this crate is built on one storage convention: an
//! order-`N` tensor with dimensions `(I_0, …, I_{N-1})` is stored as a flat
//! vector in *first-index-fastest* order, i.e. element `(i_0, …, i_{N-1})`
//! lives at linear position
//!
//! ```text
//! i_0 + I_0 * (i_1 + I_1 * (i_2 + … ))
//! ```
//!
//! Unfoldings ([`DenseTensor::unfold_mode`], [`DenseTensor::unfold_modeset`])
//! and the text serialization format use the same ordering, so a tensor, its
//! mode-0 unfolding read column by column, and its serialized value stream
//! all enumerate elements identically. Keeping one convention everywhere is
//! what makes the column-space arguments used by the similarity engine hold
//! at the matrix level without hidden permutations.
//!
//! Modes are zero-indexed throughout the library. Command-line interfaces
//! that accept one-based mode numbers translate at the boundary.

mod blocks;
mod format;
mod mlsvd;
mod product;
mod unfold;

pub use mlsvd::Mlsvd;

#[cfg(test)]
pub(crate) use mlsvd::adjoint;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix. All two-dimensional intermediates (unfoldings,
/// factors, linking matrices) use this type.
pub type Matrix = ndarray::Array2<Complex64>;

/// Dense complex tensor of order ≥ 2 with first-index-fastest storage.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    dims: Vec<usize>,
    data: Vec<Complex64>,
}

impl DenseTensor {
    /// Builds a tensor from its dimensions and flat data in
    /// first-index-fastest order.
    pub fn new(dims: Vec<usize>, data: Vec<Complex64>) -> Result<Self> {
        Self::validate_dims(&dims)?;
        let len: usize = dims.iter().product();
        if data.len() != len {
            return Err(Error::InvalidDims(format!(
                "dims {:?} require {} elements, got {}",
                dims,
                len,
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    /// All-zero tensor of the given shape.
    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        Self::validate_dims(&dims)?;
        let len = dims.iter().product();
        Ok(Self { dims, data: vec![Complex64::new(0.0, 0.0); len] })
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> Complex64) -> Result<Self> {
        Self::validate_dims(&dims)?;
        let len: usize = dims.iter().product();
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; dims.len()];
        for _ in 0..len {
            data.push(f(&idx));
            // first index advances fastest
            for (k, i) in idx.iter_mut().enumerate() {
                *i += 1;
                if *i < dims[k] {
                    break;
                }
                *i = 0;
            }
        }
        Ok(Self { dims, data })
    }

    fn validate_dims(dims: &[usize]) -> Result<()> {
        if dims.len() < 2 {
            return Err(Error::InvalidDims(format!(
                "tensor order must be at least 2, got {}",
                dims.len()
            )));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidDims(format!("zero-length mode in dims {:?}", dims)));
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Per-mode strides of the linear layout: `stride[k] = I_0 · … · I_{k-1}`.
    pub(crate) fn strides(&self) -> Vec<usize> {
        strides_of(&self.dims)
    }

    /// Linear position of a multi-index. Panics on out-of-range indices in
    /// debug builds; callers validate shapes at API boundaries.
    #[inline]
    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut lin = 0;
        let mut stride = 1;
        for (k, &i) in idx.iter().enumerate() {
            debug_assert!(i < self.dims[k]);
            lin += i * stride;
            stride *= self.dims[k];
        }
        lin
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> Complex64 {
        self.data[self.linear_index(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], value: Complex64) {
        let lin = self.linear_index(idx);
        self.data[lin] = value;
    }

    /// Frobenius norm.
    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise scaling by a complex scalar.
    pub fn scaled(&self, s: Complex64) -> Self {
        Self { dims: self.dims.clone(), data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Entrywise sum; shapes must match.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { dims: self.dims.clone(), data })
    }

    /// Entrywise difference; shapes must match.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { dims: self.dims.clone(), data })
    }

    /// In-place `self += s · other`; shapes must match.
    pub fn add_scaled_assign(&mut self, s: Complex64, other: &Self) -> Result<()> {
        self.check_same_dims(other)?;
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
        Ok(())
    }

    pub(crate) fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dims != other.dims {
            return Err(Error::ShapeMismatch(format!(
                "tensor dims {:?} vs {:?}",
                self.dims, other.dims
            )));
        }
        Ok(())
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            return Err(Error::ModeOutOfRange { mode, order: self.order() });
        }
        Ok(())
    }
}

/// Owned standard-layout copy of a matrix view. `to_owned()` on a sliced
/// view can keep degenerate strides (e.g. `[0, 0]` for 1×1 results), which
/// the LAPACK bindings reject; this always produces a fresh C-layout array.
pub(crate) fn owned_matrix(view: ndarray::ArrayView2<'_, Complex64>) -> Matrix {
    Matrix::from_shape_fn(view.dim(), |(i, j)| view[[i, j]])
}

pub(crate) fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = Vec::with_capacity(dims.len());
    let mut s = 1;
    for &d in dims {
        strides.push(s);
        s *= d;
    }
    strides
}

/// A set of distinct modes, kept sorted ascending.
///
/// Used to select the row/column index groups of a multi-mode unfolding and
/// to name the modes a single-mode linking relation extends to. Modes are
/// zero-indexed; range checks against a concrete tensor order happen at the
/// operations that receive both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSet {
    modes: Vec<usize>,
}

impl ModeSet {
    /// Builds a mode set, sorting the input and rejecting duplicates.
    pub fn new(modes: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut modes: Vec<usize> = modes.into_iter().collect();
        modes.sort_unstable();
        for w in modes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateMode(w[0]));
            }
        }
        if modes.is_empty() {
            return Err(Error::InvalidModeSet("mode set must be nonempty".into()));
        }
        Ok(Self { modes })
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn contains(&self, mode: usize) -> bool {
        self.modes.binary_search(&mode).is_ok()
    }

    /// The complementary modes of an order-`order` tensor, ascending.
    pub fn complement(&self, order: usize) -> Result<ModeSet> {
        self.check_order(order)?;
        let modes: Vec<usize> = (0..order).filter(|m| !self.contains(*m)).collect();
        if modes.is_empty() {
            return Err(Error::InvalidModeSet(format!(
                "mode set {:?} covers every mode of an order-{} tensor",
                self.modes, order
            )));
        }
        Ok(ModeSet { modes })
    }

    /// Checks that every mode fits an order-`order` tensor.
    pub fn check_order(&self, order: usize) -> Result<()> {
        if let Some(&m) = self.modes.iter().find(|&&m| m >= order) {
            return Err(Error::ModeOutOfRange { mode: m, order });
        }
        Ok(())
    }

    /// True when the set is a nonempty proper subset of `{0, …, order-1}`.
    pub fn is_proper_subset(&self, order: usize) -> bool {
        self.check_order(order).is_ok() && !self.modes.is_empty() && self.modes.len() < order
    }
}
