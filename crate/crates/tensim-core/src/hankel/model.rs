//! Exponential-polynomial signal model: terms, signals, sampling, and the
//! predicted multilinear rank of the Hankelized samples.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One term `p(t)·e^{ℓt}`: a polynomial envelope times a complex exponential.
///
/// The *rate* `ℓ` is stored instead of the per-unit base `e^ℓ`. Bases carry
/// oscillation frequencies only modulo 2π — `e^{iπt}` and `e^{3iπt}` share
/// the base −1 — and the signals of interest here oscillate at up to 14π
/// rad/s, so recovering the rate from a base would be ambiguous. A term with
/// base `a` has rate `ln a` (any branch; they describe different continuous
/// signals that agree on integers).
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolyTerm {
    poly: Vec<Complex64>,
    rate: Complex64,
}

impl ExpPolyTerm {
    /// Builds a term from envelope coefficients (ascending degree: `poly[k]`
    /// multiplies `t^k`) and a rate.
    ///
    /// The envelope must be non-empty with a nonzero leading coefficient, so
    /// that the degree is well defined; all values must be finite.
    pub fn new(poly: Vec<Complex64>, rate: Complex64) -> Result<Self> {
        if poly.is_empty() {
            return Err(Error::InvalidSignal("empty polynomial envelope".into()));
        }
        if poly.iter().any(|c| !c.is_finite()) || !rate.is_finite() {
            return Err(Error::InvalidSignal("non-finite coefficient or rate".into()));
        }
        if poly.last().unwrap().norm() == 0.0 {
            return Err(Error::InvalidSignal(
                "leading envelope coefficient is zero; drop it instead".into(),
            ));
        }
        Ok(Self { poly, rate })
    }

    /// Envelope coefficients, ascending degree.
    pub fn poly(&self) -> &[Complex64] {
        &self.poly
    }

    /// The rate `ℓ`; the term contributes `p(t)·e^{ℓt}`.
    pub fn rate(&self) -> Complex64 {
        self.rate
    }

    /// Per-unit-time base `e^ℓ` of the exponential part.
    pub fn base(&self) -> Complex64 {
        self.rate.exp()
    }

    /// Degree of the envelope polynomial.
    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    /// Value of the whole term at time `t`.
    pub fn eval(&self, t: f64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.poly.iter().rev() {
            p = p * t + c;
        }
        p * (self.rate * t).exp()
    }
}

/// A finite sum of [`ExpPolyTerm`]s with pairwise-distinct rates.
///
/// Distinct rates keep the terms linearly independent as functions of `t`,
/// which is what makes [`theoretical_l`] (the multilinear rank of the
/// Hankelized samples) equal to `F + Σ deg p_f`. Note that distinctness is a
/// property of the continuous-time model; sampling can still alias two rates
/// onto the same discrete exponential when `T_s` is too coarse (the sampled
/// bases `e^{ℓT_s}` coincide), and then the observed rank drops.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolySignal {
    terms: Vec<ExpPolyTerm>,
}

impl ExpPolySignal {
    /// Wraps a non-empty list of terms, rejecting repeated rates.
    pub fn new(terms: Vec<ExpPolyTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidSignal("signal needs at least one term".into()));
        }
        for (i, a) in terms.iter().enumerate() {
            for b in terms.iter().skip(i + 1) {
                if a.rate == b.rate {
                    return Err(Error::InvalidSignal(format!(
                        "two terms share the rate {}; merge their envelopes",
                        a.rate
                    )));
                }
            }
        }
        Ok(Self { terms })
    }

    /// Single pure exponential `c·e^{ℓt}`.
    pub fn exponential(amplitude: Complex64, rate: Complex64) -> Result<Self> {
        if amplitude.norm() == 0.0 {
            return Err(Error::InvalidSignal("zero amplitude".into()));
        }
        Self::new(vec![ExpPolyTerm::new(vec![amplitude], rate)?])
    }

    /// Real cosine `a·cos(ωt + φ)` as the conjugate pair
    /// `(a/2)e^{iφ}e^{iωt} + (a/2)e^{−iφ}e^{−iωt}`.
    ///
    /// `ω` must be nonzero (otherwise both rates collapse to 0; a constant is
    /// a single [`Self::exponential`] with rate 0).
    pub fn cosine(amplitude: f64, omega: f64, phase: f64) -> Result<Self> {
        Self::poly_cosine(&[amplitude], omega, phase)
    }

    /// Polynomially modulated cosine `p(t)·cos(ωt + φ)` with a real envelope
    /// `p` given by ascending coefficients.
    ///
    /// Expands via Euler's identity into two terms with envelopes
    /// `p(t)/2·e^{±iφ}` and rates `±iω`, so a degree-`d` envelope contributes
    /// `2(d+1)` to the Hankelized multilinear rank.
    pub fn poly_cosine(envelope: &[f64], omega: f64, phase: f64) -> Result<Self> {
        if omega == 0.0 || !omega.is_finite() {
            return Err(Error::InvalidSignal(
                "cosine frequency must be nonzero and finite".into(),
            ));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidSignal("non-finite phase".into()));
        }
        let half_shift = Complex64::from_polar(0.5, phase);
        let plus: Vec<Complex64> = envelope.iter().map(|&c| half_shift * c).collect();
        let minus: Vec<Complex64> = envelope.iter().map(|&c| half_shift.conj() * c).collect();
        Self::new(vec![
            ExpPolyTerm::new(plus, Complex64::new(0.0, omega))?,
            ExpPolyTerm::new(minus, Complex64::new(0.0, -omega))?,
        ])
    }

    /// The terms, in construction order.
    pub fn terms(&self) -> &[ExpPolyTerm] {
        &self.terms
    }

    /// Number of terms `F`.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Value of the signal at time `t`.
    pub fn eval(&self, t: f64) -> Complex64 {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }
}

/// Predicted multilinear rank of the Hankelized samples: `F + Σ_f deg p_f`.
///
/// Attained whenever the Hankel dimensions all reach this value and the
/// sampled bases `e^{ℓ_f T_s}` stay pairwise distinct.
pub fn theoretical_l(sig: &ExpPolySignal) -> usize {
    sig.num_terms() + sig.terms().iter().map(ExpPolyTerm::degree).sum::<usize>()
}

/// Uniform samples of a signal: `values[k] = s(k·T_s)` for `k = 0..N−1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    values: Vec<Complex64>,
    t_s: f64,
}

impl SampledSignal {
    /// Wraps raw samples taken at spacing `t_s`.
    pub fn new(values: Vec<Complex64>, t_s: f64) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSignal("empty sample vector".into()));
        }
        if !(t_s.is_finite() && t_s > 0.0) {
            return Err(Error::InvalidSignal(format!("sampling time {t_s} must be positive")));
        }
        Ok(Self { values, t_s })
    }

    /// The samples.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Sampling interval.
    pub fn t_s(&self) -> f64 {
        self.t_s
    }

    /// Number of samples `N`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// True when there are no samples (never, for validated instances).
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest `|Im|` over the samples — a residual check for signals that
    /// are real by construction (cosines), where the conjugate-pair
    /// representation cancels imaginary parts only up to rounding.
    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Samples `sig` at `0, T_s, …, (N−1)·T_s`.
pub fn sample(sig: &ExpPolySignal, t_s: f64, n: usize) -> Result<SampledSignal> {
    if n == 0 {
        return Err(Error::InvalidSignal("need at least one sample".into()));
    }
    let values = (0..n).map(|k| sig.eval(k as f64 * t_s)).collect();
    SampledSignal::new(values, t_s)
}
