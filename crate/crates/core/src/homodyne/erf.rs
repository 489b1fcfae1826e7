//! Error function evaluation for the closed-form CDF.

/// Which error function the CDF uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErfMode {
    /// Three-term rational approximation, absolute error below 2.5e-5.
    #[default]
    Rational,
    /// Correctly rounded to within a few ulp.
    Precise,
}

impl ErfMode {
    pub fn eval(self, t: f64) -> f64 {
        match self {
            ErfMode::Rational => erf_approx(t),
            ErfMode::Precise => erf_precise(t),
        }
    }
}

const P: f64 = 0.470_47;
const A1: f64 = 0.348_024_2;
const A2: f64 = -0.095_879_8;
const A3: f64 = 0.747_855_6;

/// Abramowitz–Stegun 7.1.25: `erf(x) ≈ 1 − (a₁τ + a₂τ² + a₃τ³) e^{−x²}` with
/// `τ = 1/(1 + p x)` for `x ≥ 0`, extended by odd symmetry.
pub fn erf_approx(t: f64) -> f64 {
    let x = t.abs();
    let tau = 1.0 / (1.0 + P * x);
    let y = 1.0 - tau * (A1 + tau * (A2 + tau * A3)) * (-x * x).exp();
    if t < 0.0 {
        -y
    } else {
        y
    }
}

pub fn erf_precise(t: f64) -> f64 {
    libm::erf(t)
}
