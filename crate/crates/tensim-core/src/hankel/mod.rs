//! Hankelization of exponential-polynomial signals.
//!
//! A signal of the form `s(t) = Σ_f p_f(t)·e^{ℓ_f t}` — polynomial envelopes
//! times complex exponentials — becomes, after sampling and Hankelization, a
//! third-order tensor whose multilinear rank equals `F + Σ_f deg p_f`
//! regardless of how the tensor dimensions are chosen. That rank is a
//! fingerprint of the signal's exponential content, and subspace comparisons
//! between Hankelized signals reveal when one signal's exponentials are a
//! subset of another's. The mixture classifier in [`crate::bss`] is built on
//! exactly this.
//!
//! The pieces:
//!
//! * [`ExpPolyTerm`] / [`ExpPolySignal`] — the signal model, with
//!   constructors for pure exponentials, cosines, and polynomially
//!   modulated cosines (all expressed as conjugate exponential pairs);
//! * [`sample`] / [`theoretical_l`] — evaluation on a uniform grid and the
//!   predicted multilinear rank;
//! * [`hankelize`] / [`balanced_hankel_dims`] — the tensorization map and a
//!   helper that picks near-cubical dimensions;
//! * CSV import/export of sampled signals ([`read_signals_csv`],
//!   [`write_signals_csv`]) with a small complex-literal format.

mod io;
mod model;
mod tensorize;

pub use io::{
    columns_to_matrix, format_complex, matrix_columns, parse_complex, read_signals_csv,
    write_signals_csv,
};
pub use model::{sample, theoretical_l, ExpPolySignal, ExpPolyTerm, SampledSignal};
pub use tensorize::{balanced_hankel_dims, hankelize, hankelize_values};
