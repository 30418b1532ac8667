//! Seeded synthesis of sparse random mixtures, and the support-containment
//! ground truth their mixing matrix implies.

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::graph::MixtureGraph;
use crate::error::{Error, Result};
use crate::hankel::{sample, ExpPolySignal};
use crate::tensor::Matrix;

/// Knobs for [`generate_experiment`]. Defaults reproduce the standard demo
/// setup: 25 mixtures of the 8-source bank, 3–6 zeros per mixing column,
/// magnitudes in `[0.5, 2.5]` with random sign, 10% relative noise, 100
/// samples at `T_s = 0.05`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentParams {
    /// Number of mixtures `J` (columns of the mixing matrix).
    pub mixtures: usize,
    /// Fewest zero entries per mixing column.
    pub min_zeros: usize,
    /// Most zero entries per mixing column; must leave at least one nonzero.
    pub max_zeros: usize,
    /// Closed range for nonzero mixing magnitudes; signs are drawn fairly.
    pub magnitude_range: (f64, f64),
    /// Noise level relative to the clean observations:
    /// `σ = sigma_rel·‖Y‖_F/‖N‖_F`.
    pub sigma_rel: f64,
    /// Sampling interval.
    pub t_s: f64,
    /// Samples per mixture `N`.
    pub samples: usize,
    /// RNG seed; the experiment is a pure function of `(sources, params)`.
    pub seed: u64,
}

impl Default for ExperimentParams {
    fn default() -> Self {
        Self {
            mixtures: 25,
            min_zeros: 3,
            max_zeros: 6,
            magnitude_range: (0.5, 2.5),
            sigma_rel: 0.1,
            t_s: 0.05,
            samples: 100,
            seed: 0,
        }
    }
}

impl ExperimentParams {
    fn validate(&self, num_sources: usize) -> Result<()> {
        if num_sources == 0 {
            return Err(Error::InvalidExperiment("need at least one source".into()));
        }
        if self.mixtures == 0 {
            return Err(Error::InvalidExperiment("need at least one mixture".into()));
        }
        if self.min_zeros > self.max_zeros {
            return Err(Error::InvalidExperiment(format!(
                "zero range {}..={} is empty",
                self.min_zeros, self.max_zeros
            )));
        }
        if self.max_zeros >= num_sources {
            return Err(Error::InvalidExperiment(format!(
                "up to {} zeros per column would allow an all-zero mixture of {} sources",
                self.max_zeros, num_sources
            )));
        }
        let (lo, hi) = self.magnitude_range;
        if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo <= hi) {
            return Err(Error::InvalidExperiment(format!(
                "magnitude range [{lo}, {hi}] must be positive and ordered"
            )));
        }
        if !(self.sigma_rel.is_finite() && self.sigma_rel >= 0.0) {
            return Err(Error::InvalidExperiment(format!(
                "relative noise level {} must be nonnegative",
                self.sigma_rel
            )));
        }
        if self.samples == 0 || !(self.t_s.is_finite() && self.t_s > 0.0) {
            return Err(Error::InvalidExperiment("need a positive sample count and T_s".into()));
        }
        Ok(())
    }
}

/// A fully materialized experiment: sources, their samples, the sparse
/// mixing, and both clean and noisy observations.
#[derive(Debug, Clone)]
pub struct MixtureExperiment {
    /// The source bank used, in column order of `source_samples`.
    pub sources: Vec<ExpPolySignal>,
    /// `N×R` matrix of sampled sources (column `i` = source `i`).
    pub source_samples: Matrix,
    /// `R×J` real mixing matrix with the drawn sparsity pattern.
    pub mixing: Array2<f64>,
    /// Clean observations `Y = source_samples·G`, `N×J`.
    pub clean: Matrix,
    /// Noisy observations `Yⁿ = Y + σ·noise`.
    pub observed: Matrix,
    /// The absolute noise scale actually applied.
    pub sigma: f64,
    /// The parameters that produced all of the above.
    pub params: ExperimentParams,
}

/// Generates a sparse random mixing of `sources` with calibrated additive
/// noise, deterministically from `params.seed`.
///
/// Draw order (fixed, so a seed pins the experiment bit-for-bit): first the
/// mixing matrix, one column at a time — the number of zeros (uniform in
/// `min_zeros..=max_zeros`), the zero positions (uniform without
/// replacement), then for each remaining row in ascending order a magnitude
/// (uniform in the closed magnitude range) and a fair sign flip. After the
/// mixing, the `N×J` noise matrix is drawn column by column from the
/// standard normal distribution. The noise is then scaled to
/// `σ = sigma_rel·‖Y‖_F/‖noise‖_F` and added to the clean mixtures.
pub fn generate_experiment(
    sources: &[ExpPolySignal],
    params: &ExperimentParams,
) -> Result<MixtureExperiment> {
    params.validate(sources.len())?;
    let r = sources.len();
    let j = params.mixtures;
    let n = params.samples;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let mut mixing = Array2::<f64>::zeros((r, j));
    let (lo, hi) = params.magnitude_range;
    for col in 0..j {
        let zeros = rng.random_range(params.min_zeros..=params.max_zeros);
        let mut is_zero = vec![false; r];
        for row in rand::seq::index::sample(&mut rng, r, zeros) {
            is_zero[row] = true;
        }
        for row in 0..r {
            if !is_zero[row] {
                let magnitude = rng.random_range(lo..=hi);
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                mixing[[row, col]] = sign * magnitude;
            }
        }
    }

    let mut noise = Array2::<f64>::zeros((n, j));
    for col in 0..j {
        for row in 0..n {
            noise[[row, col]] = rng.sample(StandardNormal);
        }
    }

    let mut source_samples = Matrix::zeros((n, r));
    for (i, sig) in sources.iter().enumerate() {
        let sampled = sample(sig, params.t_s, n)?;
        for (k, &v) in sampled.values().iter().enumerate() {
            source_samples[[k, i]] = v;
        }
    }

    let clean = source_samples.dot(&mixing.mapv(|g| Complex64::new(g, 0.0)));
    let noise_norm = noise.iter().map(|x| x * x).sum::<f64>().sqrt();
    let clean_norm = clean.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let sigma =
        if noise_norm == 0.0 { 0.0 } else { params.sigma_rel * clean_norm / noise_norm };
    let observed = if sigma == 0.0 {
        clean.clone()
    } else {
        &clean + &noise.mapv(|x| Complex64::new(sigma * x, 0.0))
    };

    Ok(MixtureExperiment {
        sources: sources.to_vec(),
        source_samples,
        mixing,
        clean,
        observed,
        sigma,
        params: params.clone(),
    })
}

/// The reference answer implied by a mixing matrix: edge `i→j` exactly when
/// the support of column `i` is contained in the support of column `j`
/// (entries count as nonzero when `|g| > zero_tol`; use `0.0` on generated
/// data, whose zeros are exact).
///
/// Columns with equal support get both directed edges; an all-zero column
/// is vacuously contained in every other one.
pub fn ground_truth_graph(mixing: &Array2<f64>, zero_tol: f64) -> MixtureGraph {
    let j = mixing.ncols();
    let supports: Vec<Vec<bool>> = (0..j)
        .map(|col| mixing.column(col).iter().map(|g| g.abs() > zero_tol).collect())
        .collect();
    let mut graph = MixtureGraph::new(j);
    for a in 0..j {
        for b in 0..j {
            if a == b {
                continue;
            }
            let contained =
                supports[a].iter().zip(&supports[b]).all(|(&ia, &ib)| !ia || ib);
            if contained {
                graph.add_edge(a, b).expect("distinct in-range vertices");
            }
        }
    }
    graph
}
