//! Single-mode position distribution and its closed-form CDF.
//!
//! In natural units a single-mode density matrix `ρ` on `c` levels has
//! position density `p(x) = Q(x) e^{−x²}` with
//!
//! ```text
//! Q(x) = Σ_{n,m<c} ρ_{n,m} H_n(x) H_m(x) / √(2^{n+m} n! m! π)
//! ```
//!
//! and cumulative distribution `F(t) = (erf(t) + 1)/2 − e^{−t²} A(t)` for a
//! polynomial `A` fixed by `Q`. Everything here works at `ħ = 1`; the
//! sampler rescales roots by `√ħ`.

use std::f64::consts::PI;

use ndarray::ArrayView2;
use num_complex::Complex64;

use super::brent::{brent, BrentOptions};
use super::erf::ErfMode;
use super::hermite::{poly_eval, poly_mul, HermiteTable};
use crate::error::{Error, Result};
use crate::fock::DensityMatrix;

/// Largest |t| (natural units) the quantile bracket may grow to.
pub const BRACKET_LIMIT: f64 = 64.0;

/// Normalized products `H_n H_m / √(2^{n+m} n! m! π)` for `n ≤ m < c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    cutoff: usize,
    products: Vec<Vec<f64>>,
}

impl ModeBasis {
    pub fn new(cutoff: usize) -> Self {
        let hermite = HermiteTable::new(cutoff.saturating_sub(1));
        let norms = norm_factors(cutoff);
        let mut products = vec![Vec::new(); cutoff * cutoff];
        for n in 0..cutoff {
            for m in n..cutoff {
                let scale = 1.0 / (norms[n] * norms[m] * PI.sqrt());
                products[n * cutoff + m] = poly_mul(hermite.get(n), hermite.get(m))
                    .into_iter()
                    .map(|c| c * scale)
                    .collect();
            }
        }
        Self { cutoff, products }
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Coefficients of `Q` for the `c × c` matrix `rho`. Only the Hermitian
    /// part of `rho` contributes.
    pub fn q_coeffs(&self, rho: ArrayView2<'_, Complex64>) -> Vec<f64> {
        let c = self.cutoff;
        assert_eq!(rho.dim(), (c, c), "density matrix does not match the basis");
        let mut q = vec![0.0; (2 * c).saturating_sub(1)];
        for n in 0..c {
            for m in n..c {
                let weight = if n == m {
                    rho[[n, n]].re
                } else {
                    rho[[n, m]].re + rho[[m, n]].re
                };
                if weight == 0.0 {
                    continue;
                }
                for (k, &p) in self.products[n * c + m].iter().enumerate() {
                    q[k] += weight * p;
                }
            }
        }
        q
    }
}

/// `√(2ⁿ n!)` for `n < count`.
fn norm_factors(count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut acc = 1.0f64;
    for n in 0..count {
        if n > 0 {
            acc *= 2.0 * n as f64;
        }
        out.push(acc.sqrt());
    }
    out
}

/// Solves `Q = 1/√π + 2tA − A'` for `A`, i.e. integrates `Q e^{−x²}` term by
/// term. The constant term of `Q` only feeds the erf weight, which equals
/// one for a unit-trace state.
pub fn a_coeffs_from_q(q: &[f64]) -> Vec<f64> {
    if q.len() < 2 {
        return Vec::new();
    }
    // deg A = deg Q − 1; q_{k+1} = 2 a_k − (k + 2) a_{k+2}.
    let len = q.len() - 1;
    let mut a = vec![0.0; len];
    for k in (0..len).rev() {
        let upper = if k + 2 < len { a[k + 2] } else { 0.0 };
        a[k] = (q[k + 1] + (k as f64 + 2.0) * upper) / 2.0;
    }
    a
}

/// Builds `A` from the Hermite-convolution table
/// `B_{n,m} = (n! C_{n,m} + (1 − δ_{nm}) n! 2ⁿ H_{m−n−1}) / √(2^{n+m} n! m! π)`,
/// `C_{n,m} = Σ_{k<n} 2^k/(n−k)! · H_{n−k} ∗ H_{m−k−1}`.
///
/// The table is only well formed for `n ≤ m`; the `(m, n)` entries are
/// folded onto `(n, m)` using the symmetry of `H_n H_m`.
pub fn a_coeffs_closed_form(rho: ArrayView2<'_, Complex64>) -> Vec<f64> {
    let c = rho.nrows();
    assert_eq!(rho.ncols(), c);
    let hermite = HermiteTable::new(c.max(1));
    let norms = norm_factors(c);
    let mut a = vec![0.0; (2 * c).saturating_sub(2)];
    let mut fact = vec![1.0f64; c + 1];
    for n in 1..=c {
        fact[n] = fact[n - 1] * n as f64;
    }
    for n in 0..c {
        for m in n..c {
            let weight = if n == m {
                rho[[n, n]].re
            } else {
                rho[[n, m]].re + rho[[m, n]].re
            };
            if weight == 0.0 {
                continue;
            }
            let mut b = vec![0.0; n + m + 1];
            for k in 0..n {
                let conv = poly_mul(hermite.get(n - k), hermite.get(m - k - 1));
                let scale = fact[n] * 2f64.powi(k as i32) / fact[n - k];
                for (i, v) in conv.into_iter().enumerate() {
                    b[i] += scale * v;
                }
            }
            if m > n {
                let scale = fact[n] * 2f64.powi(n as i32);
                for (i, &v) in hermite.get(m - n - 1).iter().enumerate() {
                    b[i] += scale * v;
                }
            }
            let denom = norms[n] * norms[m] * PI.sqrt();
            for (i, v) in b.into_iter().enumerate() {
                if v != 0.0 {
                    a[i] += weight * v / denom;
                }
            }
        }
    }
    while a.last() == Some(&0.0) {
        a.pop();
    }
    a
}

/// Precomputed position density and CDF of one mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeDistribution {
    q_coeffs: Vec<f64>,
    a_coeffs: Vec<f64>,
    hbar: f64,
    erf: ErfMode,
}

impl ModeDistribution {
    pub fn from_matrix(basis: &ModeBasis, rho: ArrayView2<'_, Complex64>, hbar: f64) -> Self {
        let q_coeffs = basis.q_coeffs(rho);
        let a_coeffs = a_coeffs_from_q(&q_coeffs);
        Self {
            q_coeffs,
            a_coeffs,
            hbar,
            erf: ErfMode::default(),
        }
    }

    pub fn with_erf(mut self, erf: ErfMode) -> Self {
        self.erf = erf;
        self
    }

    pub fn q_coeffs(&self) -> &[f64] {
        &self.q_coeffs
    }

    pub fn a_coeffs(&self) -> &[f64] {
        &self.a_coeffs
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn erf_mode(&self) -> ErfMode {
        self.erf
    }

    /// `Q(t) e^{−t²}` in natural units.
    pub fn density(&self, t: f64) -> f64 {
        poly_eval(&self.q_coeffs, t) * (-t * t).exp()
    }

    /// `(erf(t) + 1)/2 − e^{−t²} A(t)` without clamping.
    pub fn cdf_raw(&self, t: f64) -> f64 {
        let tail = (-t * t).exp();
        let poly = if tail == 0.0 {
            0.0
        } else {
            poly_eval(&self.a_coeffs, t)
        };
        0.5 * (self.erf.eval(t) + 1.0) - tail * poly
    }

    pub fn cdf(&self, t: f64) -> f64 {
        self.cdf_raw(t).clamp(0.0, 1.0)
    }

    /// Solves `F(t) = alpha` for `t` (natural units).
    pub fn invert(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Usage(format!(
                "quantile level {alpha} outside (0, 1)"
            )));
        }
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        while self.cdf_raw(lo) > alpha || self.cdf_raw(hi) < alpha {
            lo *= 2.0;
            hi *= 2.0;
            if hi > BRACKET_LIMIT {
                return Err(Error::PathologicalDistribution(format!(
                    "no bracket for level {alpha} within |t| <= {BRACKET_LIMIT}"
                )));
            }
        }
        brent(|t| self.cdf_raw(t) - alpha, lo, hi, BrentOptions::default())
    }
}

/// Distribution of a normalized single-mode density matrix.
pub fn mode_distribution(rho: &DensityMatrix, hbar: f64) -> Result<ModeDistribution> {
    if rho.spec().modes() != 1 {
        return Err(Error::Usage(format!(
            "expected a single-mode density matrix, got {} modes",
            rho.spec().modes()
        )));
    }
    let basis = ModeBasis::new(rho.spec().cutoff());
    Ok(ModeDistribution::from_matrix(
        &basis,
        rho.entries().view(),
        hbar,
    ))
}

/// `F(t)` clamped to `[0, 1]`.
pub fn cdf_eval(dist: &ModeDistribution, t: f64) -> f64 {
    dist.cdf(t)
}

pub fn invert_cdf(dist: &ModeDistribution, alpha: f64) -> Result<f64> {
    dist.invert(alpha)
}
