//! Randomized construction of tensor pairs with known shared structure.
//!
//! A structured pair is built the way the analysis assumes it was: a sum of
//! terms, each a small dense core multiplied by a tall random factor matrix
//! in every analyzed mode, with the second tensor using the same terms
//! scaled by known factors. Gaussian entries make the genericity
//! assumptions — full-column-rank stacked factors, full-rank core
//! unfoldings, well-separated cluster geometry — hold with probability one,
//! so the construction parameters double as the exact expected analysis
//! output. Tests and benchmarks both draw from here; a seeded generator
//! makes every instance reproducible.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::tensor::{DenseTensor, Matrix};

/// A generated pair with its construction ground truth.
#[derive(Debug, Clone)]
pub struct SynthPair {
    pub a: DenseTensor,
    pub b: DenseTensor,
    /// Scaling of each term in `b` (the analysis recovers these, sorted by
    /// descending magnitude).
    pub lambdas: Vec<Complex64>,
    /// `term_ranks[r][n]`: multilinear rank of term `r` in analyzed mode
    /// `n` (the analysis recovers these as the multiplicities `L_nr`).
    pub term_ranks: Vec<Vec<usize>>,
    /// Number of leading modes the construction structured.
    pub n_hat: usize,
    /// The individual unscaled terms; they sum to `a`.
    pub terms: Vec<DenseTensor>,
}

/// Builds a pair `a = Σ_r 𝒯_r`, `b = Σ_r λ_r 𝒯_r` with
/// `𝒯_r = 𝒞_r ×₀ X_r⁰ ⋯ ×_{n̂-1} X_r^{n̂-1}`, Gaussian cores and factors.
///
/// `term_ranks[r]` gives term `r`'s rank in each of the first `n_hat`
/// modes; the ranks of each mode must sum to at most that mode's dimension
/// so the stacked factors can be linearly independent. Scalings must be
/// pairwise distinct — equal scalings would merge two terms into one
/// eigenvalue cluster and the ground truth would no longer match.
pub fn random_structured_pair<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
    n_hat: usize,
    term_ranks: &[Vec<usize>],
    lambdas: &[Complex64],
) -> Result<SynthPair> {
    crate::similarity::check_n_hat(dims.len(), n_hat)?;
    if term_ranks.is_empty() || term_ranks.len() != lambdas.len() {
        return Err(Error::InvalidRanks(format!(
            "{} terms but {} scalings",
            term_ranks.len(),
            lambdas.len()
        )));
    }
    for (r, ranks) in term_ranks.iter().enumerate() {
        if ranks.len() != n_hat {
            return Err(Error::InvalidRanks(format!(
                "term {} specifies {} mode ranks, expected {}",
                r,
                ranks.len(),
                n_hat
            )));
        }
        if ranks.iter().any(|&l| l == 0) {
            return Err(Error::InvalidRanks(format!("term {r} has a zero mode rank")));
        }
        // Multilinear ranks obey r_n ≤ ∏_{k≠n} r_k: the mode-n unfolding of
        // the term's core has only that many rows. An infeasible request
        // would silently realize a smaller rank and the ground truth would
        // be wrong.
        let trailing: usize = dims[n_hat..].iter().product();
        for n in 0..n_hat {
            let cap = trailing
                * ranks
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != n)
                    .map(|(_, &l)| l)
                    .product::<usize>();
            if ranks[n] > cap {
                return Err(Error::InvalidRanks(format!(
                    "term {r} requests mode-{n} rank {} but its core can hold \
                     at most {cap}",
                    ranks[n]
                )));
            }
        }
    }
    for n in 0..n_hat {
        let total: usize = term_ranks.iter().map(|ranks| ranks[n]).sum();
        if total > dims[n] {
            return Err(Error::InvalidRanks(format!(
                "mode-{} term ranks sum to {} but the mode has length {}",
                n, total, dims[n]
            )));
        }
    }
    for i in 0..lambdas.len() {
        for j in (i + 1)..lambdas.len() {
            if lambdas[i] == lambdas[j] {
                return Err(Error::InvalidConfig(format!(
                    "scalings {i} and {j} coincide; terms must have pairwise \
                     distinct scalings to stay separable"
                )));
            }
        }
    }

    let mut terms = Vec::with_capacity(term_ranks.len());
    let mut a = DenseTensor::zeros(dims.to_vec())?;
    let mut b = DenseTensor::zeros(dims.to_vec())?;
    for (ranks, &lambda) in term_ranks.iter().zip(lambdas) {
        let mut core_dims: Vec<usize> = ranks.clone();
        core_dims.extend_from_slice(&dims[n_hat..]);
        let core = random_dense(rng, &core_dims)?;
        let factors: Vec<Matrix> =
            (0..n_hat).map(|n| random_matrix(rng, dims[n], ranks[n])).collect();
        let refs: Vec<(&Matrix, usize)> =
            factors.iter().enumerate().map(|(n, x)| (x, n)).collect();
        let term = core.multi_mode_product(&refs)?;
        a.add_scaled_assign(Complex64::new(1.0, 0.0), &term)?;
        b.add_scaled_assign(lambda, &term)?;
        terms.push(term);
    }

    Ok(SynthPair {
        a,
        b,
        lambdas: lambdas.to_vec(),
        term_ranks: term_ranks.to_vec(),
        n_hat,
        terms,
    })
}

/// Draws `count` pairwise well-separated scalings with magnitudes in
/// `[0.5, 2]`.
///
/// Separation of at least `min_sep` (in the complex plane) keeps the
/// eigenvalue clusters of every linking matrix disjoint at the default
/// clustering tolerance, so recovered term counts match the construction.
pub fn random_scalings<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    min_sep: f64,
) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::with_capacity(count);
    while out.len() < count {
        let magnitude = rng.random_range(0.5..2.0);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let candidate = Complex64::from_polar(magnitude, phase);
        if out.iter().all(|z| (z - candidate).norm() >= min_sep) {
            out.push(candidate);
        }
    }
    out
}

/// Tensor with i.i.d. standard complex Gaussian entries.
pub fn random_dense<R: Rng + ?Sized>(rng: &mut R, dims: &[usize]) -> Result<DenseTensor> {
    let len: usize = dims.iter().product();
    let data: Vec<Complex64> = (0..len).map(|_| gaussian(rng)).collect();
    DenseTensor::new(dims.to_vec(), data)
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_shape_fn((rows, cols), |_| gaussian(rng))
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}
