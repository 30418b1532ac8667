//! The eight-signal benchmark bank.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;
use crate::hankel::ExpPolySignal;

/// Eight benchmark sources mixing decay, plain oscillation, and linearly
/// modulated oscillation:
///
/// 1. `3·2^(−t/5)` — geometric decay, Hankel rank 1;
/// 2. `3·cos(πt + 1/2)` — rank 2;
/// 3. `3·cos(2πt + 2)` — rank 2;
/// 4. `3·cos(3πt − 2)` — rank 2;
/// 5. `(5 − t)·cos(10πt + 1/2)` — rank 4;
/// 6. `(5 − t)·cos(12πt − 3/2)` — rank 4;
/// 7. `t·cos(8πt + 1)` — rank 4;
/// 8. `t·cos(14πt − 1/2)` — rank 4.
///
/// All frequencies are distinct, so any subset mixes to a signal whose
/// Hankel rank is the sum of the members' ranks (up to 23 for all eight) —
/// which is what lets subspace comparisons recover which sources a mixture
/// contains.
pub fn benchmark_sources() -> Vec<ExpPolySignal> {
    build().expect("benchmark bank constants are valid")
}

fn build() -> Result<Vec<ExpPolySignal>> {
    let half_life_rate = Complex64::new(-(2.0_f64.ln()) / 5.0, 0.0);
    Ok(vec![
        ExpPolySignal::exponential(Complex64::from(3.0), half_life_rate)?,
        ExpPolySignal::cosine(3.0, PI, 0.5)?,
        ExpPolySignal::cosine(3.0, 2.0 * PI, 2.0)?,
        ExpPolySignal::cosine(3.0, 3.0 * PI, -2.0)?,
        ExpPolySignal::poly_cosine(&[5.0, -1.0], 10.0 * PI, 0.5)?,
        ExpPolySignal::poly_cosine(&[5.0, -1.0], 12.0 * PI, -1.5)?,
        ExpPolySignal::poly_cosine(&[0.0, 1.0], 8.0 * PI, 1.0)?,
        ExpPolySignal::poly_cosine(&[0.0, 1.0], 14.0 * PI, -0.5)?,
    ])
}
