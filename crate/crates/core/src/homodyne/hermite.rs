//! Physicists' Hermite polynomials and harmonic-oscillator wavefunctions.

use std::f64::consts::PI;

/// Monomial coefficients of `H_n`, lowest degree first, from
/// `H_{n+1} = 2x H_n − 2n H_{n−1}`.
pub fn hermite_coefficients(n: usize) -> Vec<f64> {
    HermiteTable::new(n).get(n).to_vec()
}

/// Coefficients of `H_0, …, H_max_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteTable {
    polys: Vec<Vec<f64>>,
}

impl HermiteTable {
    pub fn new(max_degree: usize) -> Self {
        let mut polys: Vec<Vec<f64>> = Vec::with_capacity(max_degree + 1);
        polys.push(vec![1.0]);
        if max_degree >= 1 {
            polys.push(vec![0.0, 2.0]);
        }
        for n in 1..max_degree {
            let mut next = vec![0.0; n + 2];
            for (k, &c) in polys[n].iter().enumerate() {
                next[k + 1] += 2.0 * c;
            }
            for (k, &c) in polys[n - 1].iter().enumerate() {
                next[k] -= 2.0 * n as f64 * c;
            }
            polys.push(next);
        }
        Self { polys }
    }

    pub fn max_degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// Panics if `n > self.max_degree()`.
    pub fn get(&self, n: usize) -> &[f64] {
        &self.polys[n]
    }
}

/// `ψ_n(x)` at physical coordinate `x`:
/// `(πħ)^{−1/4} (2ⁿ n!)^{−1/2} exp(−x²/2ħ) H_n(x/√ħ)`.
pub fn wavefunction(n: usize, x: f64, hbar: f64) -> f64 {
    let mut out = vec![0.0; n + 1];
    wavefunctions_natural(x / hbar.sqrt(), &mut out);
    out[n] * hbar.powf(-0.25)
}

/// Fills `out[n] = ψ_n(x)` in natural units (`ħ = 1`) using the normalized
/// three-term recurrence, which stays accurate where the monomial form
/// of `H_n` would cancel catastrophically.
pub fn wavefunctions_natural(x: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = PI.powf(-0.25) * (-0.5 * x * x).exp();
    if out.len() > 1 {
        out[1] = 2f64.sqrt() * x * out[0];
    }
    for n in 1..out.len().saturating_sub(1) {
        let nf = n as f64;
        out[n + 1] = (2.0 / (nf + 1.0)).sqrt() * x * out[n] - (nf / (nf + 1.0)).sqrt() * out[n - 1];
    }
}

pub(crate) fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub(crate) fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
