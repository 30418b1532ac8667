//! Mixture classification: grouping linear mixtures of exponential-polynomial
//! sources by which sources they contain.
//!
//! Given observations `Yⁿ = S·G + σN` — columns of `S` are sampled sources,
//! `G` a sparse mixing matrix, `N` noise — the classifier Hankelizes each
//! mixture, extracts the dominant subspace spanned by its Hankel fibers, and
//! tests every ordered pair of mixtures for subspace inclusion. The result is
//! a directed [`MixtureGraph`] in which an edge `i→j` asserts that every
//! source feeding mixture `i` also feeds mixture `j`; connected groups of
//! that graph are the subproblems a blind-source-separation backend could
//! then attack independently.
//!
//! The module ships:
//!
//! * [`benchmark_sources`] — a fixed eight-signal bank (decay, cosines,
//!   modulated cosines) with Hankel ranks 1–4;
//! * [`generate_experiment`] — seeded synthesis of sparse random mixtures
//!   with calibrated noise;
//! * [`classify_mixtures`] — the Hankelization + subspace-inclusion
//!   classifier;
//! * [`ground_truth_graph`] / [`score_graph`] — the support-containment
//!   reference answer and precision/recall against it;
//! * [`parse_experiment_config`] — a flat key-value config format for
//!   driving the whole pipeline from a file.

mod classify;
mod config;
mod experiment;
mod graph;
mod sources;

pub use classify::classify_mixtures;
pub use config::{parse_experiment_config, BssConfig};
pub use experiment::{
    generate_experiment, ground_truth_graph, ExperimentParams, MixtureExperiment,
};
pub use graph::{score_graph, GraphScore, MixtureGraph};
pub use sources::benchmark_sources;
