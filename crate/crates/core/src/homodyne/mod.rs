//! Homodyne (position-quadrature) sampling of truncated Fock states.
//!
//! Samples are drawn one mode at a time: the first mode from its reduced
//! state, each later mode from its state conditioned on the values already
//! drawn. Every single-mode draw inverts a closed-form CDF with Brent's
//! method.

mod brent;
mod conditional;
mod distribution;
mod erf;
mod hermite;
mod sampler;

pub use brent::{brent, BrentOptions};
pub use conditional::{conditional_density, HomodyneSource};
pub use distribution::{
    a_coeffs_closed_form, a_coeffs_from_q, cdf_eval, invert_cdf, mode_distribution, ModeBasis,
    ModeDistribution, BRACKET_LIMIT,
};
pub use erf::{erf_approx, erf_precise, ErfMode};
pub use hermite::{hermite_coefficients, wavefunction, wavefunctions_natural, HermiteTable};
pub use sampler::{sample_homodyne, HomodyneSampler, SampleMatrix, SampleOptions};
