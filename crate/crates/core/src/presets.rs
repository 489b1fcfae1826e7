//! Reference circuits for the bundled training and benchmark experiments.
//!
//! Each returns a circuit whose trainable weights start at zero; the
//! matching target weights are exported as constants.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_6};

use crate::error::{Error, Result};
use crate::fock::CutoffSpec;
use crate::gates::{Circuit, Gate, Param};

/// Target weights `(squeezing r, displacement r, beamsplitter θ)` of
/// [`two_mode_reference`].
pub const TWO_MODE_TARGET: [f64; 3] = [1.0, 0.1, FRAC_PI_6];

/// Squeezing by `r ≈ 2` (target plus shift) pushes a sizeable part of the
/// norm past a cutoff of 10, so this circuit tolerates more leakage than
/// the default.
pub const TWO_MODE_MAX_LEAKAGE: f64 = 0.6;

/// Padding for [`two_mode_reference`]. Squeezed columns converge slowly in
/// the padded space; 40 extra levels bring the low-lying columns at `r = 1`
/// to about 1e-6 of the exact operator.
pub const TWO_MODE_PAD: usize = 40;

/// Target beamsplitter angles of [`chain_reference`].
pub const CHAIN_TARGET: [f64; 2] = [FRAC_PI_4, -FRAC_PI_4];

/// Fixed displacement on mode 0 that gives the chain circuits a signal to
/// route; without it the output is close to vacuum for every weight.
pub const CHAIN_DISPLACEMENT: f64 = 1.0;

const CUBIC: f64 = 0.1;
const KERR: f64 = 0.1;

/// Cubic phase on both modes and a cross-Kerr coupling, followed by
/// trainable squeezing on mode 0, displacement on mode 1 and a beamsplitter.
pub fn two_mode_reference(cutoff: usize) -> Result<Circuit> {
    Circuit::builder(CutoffSpec::new(2, cutoff)?)
        .gate(Gate::cubic_phase(0, CUBIC))
        .gate(Gate::cubic_phase(1, CUBIC))
        .gate(Gate::cross_kerr(0, 1, KERR))
        .trainable(Gate::squeezing(0, 0.0), Param::R)
        .trainable(Gate::displacement(1, 0.0, 0.0), Param::R)
        .trainable(Gate::beamsplitter(0, 1, 0.0, 0.0), Param::Theta)
        .build()?
        .with_pad(TWO_MODE_PAD)
        .with_max_leakage(TWO_MODE_MAX_LEAKAGE)
}

/// Displacement on mode 0, cubic phase on every mode, cross-Kerr on
/// neighbours, then trainable beamsplitters on `(0, 1)` and `(1, 2)`.
pub fn chain_reference(modes: usize, cutoff: usize) -> Result<Circuit> {
    if modes < 3 {
        return Err(Error::Usage(format!(
            "chain circuit needs at least 3 modes, got {modes}"
        )));
    }
    let mut b = Circuit::builder(CutoffSpec::new(modes, cutoff)?).gate(Gate::displacement(
        0,
        CHAIN_DISPLACEMENT,
        0.0,
    ));
    for m in 0..modes {
        b = b.gate(Gate::cubic_phase(m, CUBIC));
    }
    for m in 0..modes - 1 {
        b = b.gate(Gate::cross_kerr(m, m + 1, KERR));
    }
    b.trainable(Gate::beamsplitter(0, 1, 0.0, 0.0), Param::Theta)
        .trainable(Gate::beamsplitter(1, 2, 0.0, 0.0), Param::Theta)
        .build()
}

/// Fixed non-Gaussian state preparation used for timing the sampler.
pub fn benchmark_reference(modes: usize, cutoff: usize) -> Result<Circuit> {
    let mut b =
        Circuit::builder(CutoffSpec::new(modes, cutoff)?).gate(Gate::displacement(0, 0.5, 0.0));
    for m in 0..modes {
        b = b.gate(Gate::cubic_phase(m, CUBIC));
    }
    for m in 0..modes.saturating_sub(1) {
        b = b.gate(Gate::cross_kerr(m, m + 1, KERR));
        b = b.gate(Gate::beamsplitter(m, m + 1, FRAC_PI_4, 0.0));
    }
    b.build()
}
