//! The Hankelization map: sampled signal → third-order tensor whose entries
//! depend only on the index sum.

use num_complex::Complex64;

use super::model::SampledSignal;
use crate::error::{Error, Result};
use crate::tensor::DenseTensor;

/// Hankelizes a sampled signal into an `I₁×I₂×I₃` tensor with entry
/// `(i₁,i₂,i₃) = values[i₁+i₂+i₃]` (zero-based indices).
///
/// The dimensions must satisfy `I₁+I₂+I₃ = N+2` so the largest index sum
/// addresses the last sample. Every anti-diagonal slab holds one sample, so
/// the map is linear in the signal and, for cubical dimensions, symmetric
/// under mode permutation.
pub fn hankelize(signal: &SampledSignal, dims: (usize, usize, usize)) -> Result<DenseTensor> {
    hankelize_values(signal.values(), dims)
}

/// [`hankelize`] on a bare sample slice (no sampling-time metadata needed —
/// the map touches only the values).
pub fn hankelize_values(values: &[Complex64], dims: (usize, usize, usize)) -> Result<DenseTensor> {
    let (i1, i2, i3) = dims;
    if i1 == 0 || i2 == 0 || i3 == 0 {
        return Err(Error::InvalidDims("Hankel dimensions must all be positive".into()));
    }
    if i1 + i2 + i3 != values.len() + 2 {
        return Err(Error::InvalidDims(format!(
            "Hankel dimensions {i1}×{i2}×{i3} sum to {}, need N+2 = {} for {} samples",
            i1 + i2 + i3,
            values.len() + 2,
            values.len()
        )));
    }
    DenseTensor::from_fn(vec![i1, i2, i3], |idx| values[idx[0] + idx[1] + idx[2]])
}

/// Picks the most balanced `(I₁,I₂,I₃)` with `I₁+I₂+I₃ = N+2` and
/// `min ≥ min_dim`, largest first.
///
/// Balanced dimensions maximize the smallest mode length, which is what
/// bounds the multilinear rank the tensor can express; `min_dim` is
/// typically the expected rank of the signal at hand.
pub fn balanced_hankel_dims(n: usize, min_dim: usize) -> Result<(usize, usize, usize)> {
    let total = n + 2;
    let q = total / 3;
    let rem = total % 3;
    let dims = (q + usize::from(rem > 0), q + usize::from(rem > 1), q);
    if q < min_dim.max(1) {
        return Err(Error::InvalidDims(format!(
            "{n} samples give at best a minimum Hankel dimension of {q}, below {}",
            min_dim.max(1)
        )));
    }
    Ok(dims)
}
