//! Flat key-value configuration for the mixture experiment.
//!
//! Format: one `key = value` pair per line; `#` starts a comment; blank
//! lines are ignored; a repeated key overwrites the earlier value. Keys:
//!
//! | key                  | meaning                                  | default   |
//! |----------------------|------------------------------------------|-----------|
//! | `sources`            | leading sources of the benchmark bank    | 8         |
//! | `mixtures`           | number of mixtures J                     | 25        |
//! | `min_zeros`/`max_zeros` | zero entries per mixing column        | 3 / 6     |
//! | `mag_min`/`mag_max`  | nonzero mixing magnitude range           | 0.5 / 2.5 |
//! | `sigma_rel`          | noise level relative to `‖Y‖_F`          | 0.1       |
//! | `seed`               | RNG seed                                 | 0         |
//! | `ts`                 | sampling interval                        | 0.05      |
//! | `n`                  | samples per mixture                      | 100       |
//! | `dims`               | Hankel dimensions `I1,I2,I3`             | balanced  |
//! | `tau`                | singular-value gap ratio                 | 2.3       |
//! | `thresh`             | subspace-inclusion threshold             | 0.1       |

use super::experiment::ExperimentParams;
use crate::error::{Error, Result};
use crate::similarity::DEFAULT_INCLUSION_THRESH;
use crate::spectral::DEFAULT_GAP_RATIO;

/// Everything needed to run the demo pipeline: how many bank sources to
/// mix, how to mix them, and how to classify the result.
#[derive(Debug, Clone, PartialEq)]
pub struct BssConfig {
    /// How many leading sources of the benchmark bank participate.
    pub num_sources: usize,
    pub experiment: ExperimentParams,
    /// Hankel dimensions; `None` picks the most balanced split of `N+2`.
    pub dims: Option<(usize, usize, usize)>,
    /// Gap ratio for per-mixture rank estimation.
    pub tau: f64,
    /// Subspace-inclusion threshold for drawing an edge.
    pub inclusion_thresh: f64,
}

impl Default for BssConfig {
    fn default() -> Self {
        Self {
            num_sources: 8,
            experiment: ExperimentParams::default(),
            dims: None,
            tau: DEFAULT_GAP_RATIO,
            inclusion_thresh: DEFAULT_INCLUSION_THRESH,
        }
    }
}

/// Parses the key-value format documented at module level, starting from
/// defaults. Unknown keys and malformed values are errors; semantic
/// validation (feasible sparsity and the like) happens when the experiment
/// runs.
pub fn parse_experiment_config(text: &str) -> Result<BssConfig> {
    let mut config = BssConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!("line {}: expected `key = value`, got `{line}`", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        let fail = |what: &str| {
            Error::Parse(format!("line {}: bad {what} `{value}` for key `{key}`", lineno + 1))
        };
        match key {
            "sources" => config.num_sources = value.parse().map_err(|_| fail("count"))?,
            "mixtures" => config.experiment.mixtures = value.parse().map_err(|_| fail("count"))?,
            "min_zeros" => {
                config.experiment.min_zeros = value.parse().map_err(|_| fail("count"))?
            }
            "max_zeros" => {
                config.experiment.max_zeros = value.parse().map_err(|_| fail("count"))?
            }
            "mag_min" => {
                config.experiment.magnitude_range.0 = value.parse().map_err(|_| fail("number"))?
            }
            "mag_max" => {
                config.experiment.magnitude_range.1 = value.parse().map_err(|_| fail("number"))?
            }
            "sigma_rel" => {
                config.experiment.sigma_rel = value.parse().map_err(|_| fail("number"))?
            }
            "seed" => config.experiment.seed = value.parse().map_err(|_| fail("seed"))?,
            "ts" => config.experiment.t_s = value.parse().map_err(|_| fail("number"))?,
            "n" => config.experiment.samples = value.parse().map_err(|_| fail("count"))?,
            "dims" => config.dims = Some(parse_dims(value).ok_or_else(|| fail("dimensions"))?),
            "tau" => config.tau = value.parse().map_err(|_| fail("number"))?,
            "thresh" => {
                config.inclusion_thresh = value.parse().map_err(|_| fail("number"))?
            }
            _ => {
                return Err(Error::Parse(format!("line {}: unknown key `{key}`", lineno + 1)));
            }
        }
    }
    Ok(config)
}

fn parse_dims(value: &str) -> Option<(usize, usize, usize)> {
    let mut parts = value.split(',').map(|p| p.trim().parse::<usize>());
    let dims = (parts.next()?.ok()?, parts.next()?.ok()?, parts.next()?.ok()?);
    if parts.next().is_some() {
        return None;
    }
    Some(dims)
}
