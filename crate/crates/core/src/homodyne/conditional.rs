//! Conditional single-mode density matrices for mode-by-mode sampling.
//!
//! After modes `0..i` have produced samples `s_0, …, s_{i−1}`, mode `i` is
//! distributed according to the single-mode matrix obtained by projecting
//! the sampled modes onto position eigenstates and tracing out modes
//! `i+1..d`. Projecting onto `|s⟩` contracts a mode's Fock index with the
//! vector `(ψ_0(s), ψ_1(s), …)`.
//!
//! Both state representations keep the running contraction normalized: each
//! sampled mode's wavefunction vector is divided by `√p(s)`, the conditional
//! density at the drawn point, so every conditional has unit trace up to
//! rounding.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;

use super::hermite::wavefunctions_natural;
use crate::error::{Error, Result};
use crate::fock::{CutoffSpec, DensityMatrix, FockIndexMap, PureState, DEGENERATE_TRACE};

/// State handed to the homodyne sampler.
#[derive(Debug, Clone, Copy)]
pub enum HomodyneSource<'a> {
    Pure(&'a PureState),
    Mixed(&'a DensityMatrix),
}

impl<'a> From<&'a PureState> for HomodyneSource<'a> {
    fn from(state: &'a PureState) -> Self {
        HomodyneSource::Pure(state)
    }
}

impl<'a> From<&'a DensityMatrix> for HomodyneSource<'a> {
    fn from(rho: &'a DensityMatrix) -> Self {
        HomodyneSource::Mixed(rho)
    }
}

impl HomodyneSource<'_> {
    pub fn spec(&self) -> CutoffSpec {
        match self {
            HomodyneSource::Pure(s) => s.spec(),
            HomodyneSource::Mixed(r) => r.spec(),
        }
    }
}

const NORM_TOL: f64 = 1e-8;

/// Per-shot contraction state.
#[derive(Debug, Clone)]
pub(crate) enum ShotState {
    /// Amplitudes over modes `i..d` after contracting modes `0..i`.
    Pure(Vec<Complex64>),
    /// Scaled wavefunction vectors of the already sampled modes.
    Mixed(Vec<Vec<f64>>),
}

#[derive(Debug, Clone)]
pub(crate) enum Chain {
    Pure(PureChain),
    Mixed(MixedChain),
}

#[derive(Debug, Clone)]
pub(crate) struct PureChain {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
    // steps[i][idx] = (n_i, index of the occupation of modes i+1.. ) for
    // every basis vector of the space of modes i..d.
    steps: Vec<Vec<(usize, usize)>>,
    rest_dims: Vec<usize>,
}

#[derive(Debug, Clone)]
pub(crate) struct MixedChain {
    cutoff: usize,
    // reduced[i]: state reduced to modes 0..=i.
    reduced: Vec<Array2<Complex64>>,
    // layout[i][a] = (index of the occupation of modes 0..i, n_i).
    layout: Vec<Vec<(usize, usize)>>,
    prefix_maps: Vec<FockIndexMap>,
}

fn rotation_phase(occ: &[usize], angles: Option<&[f64]>) -> f64 {
    angles.map_or(0.0, |a| {
        -a.iter()
            .zip(occ)
            .map(|(phi, &n)| phi * n as f64)
            .sum::<f64>()
    })
}

impl Chain {
    /// `angles[j]` rotates mode `j` by `Phaseshift(−φ_j)` before measuring,
    /// so that the position measurement reads out `x̂_φ`.
    pub(crate) fn new(source: HomodyneSource<'_>, angles: Option<&[f64]>) -> Result<Self> {
        let spec = source.spec();
        let d = spec.modes();
        if let Some(a) = angles {
            if a.len() != d {
                return Err(Error::Usage(format!("{} angles for {d} modes", a.len())));
            }
        }
        match source {
            HomodyneSource::Pure(state) => {
                let n2 = state.norm_sqr();
                if (n2 - 1.0).abs() > NORM_TOL {
                    return Err(Error::Validation(format!(
                        "state has squared norm {n2}, expected 1"
                    )));
                }
                let map = state.index_map();
                let amplitudes = state
                    .amplitudes()
                    .iter()
                    .zip(map.iter())
                    .map(|(z, occ)| z * Complex64::from_polar(1.0, rotation_phase(occ, angles)))
                    .collect();
                Ok(Chain::Pure(PureChain::new(spec, amplitudes)?))
            }
            HomodyneSource::Mixed(rho) => {
                let tr = rho.trace();
                if (tr - 1.0).abs() > NORM_TOL {
                    return Err(Error::Validation(format!(
                        "density matrix has trace {tr}, expected 1"
                    )));
                }
                let rotated = match angles {
                    None => rho.clone(),
                    Some(_) => {
                        let map = rho.index_map();
                        let phases: Vec<f64> =
                            map.iter().map(|o| rotation_phase(o, angles)).collect();
                        let e = Array2::from_shape_fn(rho.entries().dim(), |(i, j)| {
                            rho.entries()[[i, j]]
                                * Complex64::from_polar(1.0, phases[i] - phases[j])
                        });
                        DensityMatrix::from_entries(Arc::clone(map), e)?
                    }
                };
                Ok(Chain::Mixed(MixedChain::new(&rotated)?))
            }
        }
    }

    pub(crate) fn cutoff(&self) -> usize {
        match self {
            Chain::Pure(p) => p.cutoff,
            Chain::Mixed(m) => m.cutoff,
        }
    }

    pub(crate) fn modes(&self) -> usize {
        match self {
            Chain::Pure(p) => p.steps.len(),
            Chain::Mixed(m) => m.reduced.len(),
        }
    }

    pub(crate) fn new_shot(&self) -> ShotState {
        match self {
            Chain::Pure(p) => ShotState::Pure(p.amplitudes.clone()),
            Chain::Mixed(_) => ShotState::Mixed(Vec::new()),
        }
    }

    /// Unit-trace conditional matrix of mode `i`, given that `shot` has
    /// been conditioned on modes `0..i`.
    pub(crate) fn conditional(&self, shot: &ShotState, i: usize) -> Array2<Complex64> {
        let c = self.cutoff();
        let mut rho = match (self, shot) {
            (Chain::Pure(p), ShotState::Pure(phi)) => {
                let block = p.block(phi, i);
                let rest = p.rest_dims[i];
                Array2::from_shape_fn((c, c), |(n, m)| {
                    (0..rest)
                        .map(|r| block[r * c + n] * block[r * c + m].conj())
                        .sum()
                })
            }
            (Chain::Mixed(m), ShotState::Mixed(psis)) => m.contract(psis, i),
            _ => unreachable!("shot state built by a different chain"),
        };
        let tr: f64 = rho.diag().iter().map(|z| z.re).sum();
        if tr > 0.0 {
            rho.mapv_inplace(|z| z / tr);
        }
        rho
    }

    /// Records the sample `s` (natural units) of mode `i`, whose conditional
    /// matrix is `rho`. Fails if the density at `s` is below the degenerate
    /// threshold, since the next conditional would then have no trace.
    pub(crate) fn condition(
        &self,
        shot: &mut ShotState,
        i: usize,
        rho: &Array2<Complex64>,
        s: f64,
    ) -> Result<()> {
        let c = self.cutoff();
        let mut psi = vec![0.0; c];
        wavefunctions_natural(s, &mut psi);
        let mut density = 0.0;
        for n in 0..c {
            for m in 0..c {
                density += (rho[[n, m]] * psi[n] * psi[m]).re;
            }
        }
        if density < DEGENERATE_TRACE {
            return Err(Error::DegenerateConditional { density });
        }
        let scale = 1.0 / density.sqrt();
        psi.iter_mut().for_each(|v| *v *= scale);
        match (self, shot) {
            (Chain::Pure(p), ShotState::Pure(phi)) => {
                let block = p.block(phi, i);
                let rest = p.rest_dims[i];
                *phi = (0..rest)
                    .map(|r| (0..c).map(|n| block[r * c + n] * psi[n]).sum())
                    .collect();
            }
            (Chain::Mixed(_), ShotState::Mixed(psis)) => psis.push(psi),
            _ => unreachable!("shot state built by a different chain"),
        }
        Ok(())
    }
}

impl PureChain {
    fn new(spec: CutoffSpec, amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = spec.modes();
        let c = spec.cutoff();
        let mut steps = Vec::with_capacity(d);
        let mut rest_dims = Vec::with_capacity(d);
        for i in 0..d {
            let suffix = FockIndexMap::new(CutoffSpec::new(d - i, c)?);
            let rest = if i + 1 < d {
                Some(FockIndexMap::new(CutoffSpec::new(d - i - 1, c)?))
            } else {
                None
            };
            let step = suffix
                .iter()
                .map(|occ| {
                    let r = match &rest {
                        Some(map) => map.index_of(&occ[1..])?,
                        None => 0,
                    };
                    Ok((occ[0], r))
                })
                .collect::<Result<Vec<_>>>()?;
            rest_dims.push(rest.as_ref().map_or(1, FockIndexMap::dim));
            steps.push(step);
        }
        Ok(Self {
            cutoff: c,
            amplitudes,
            steps,
            rest_dims,
        })
    }

    /// Reshapes the suffix amplitudes of step `i` into a dense
    /// `rest × cutoff` block.
    fn block(&self, phi: &[Complex64], i: usize) -> Vec<Complex64> {
        let c = self.cutoff;
        let mut block = vec![Complex64::default(); self.rest_dims[i] * c];
        for (&(n, r), z) in self.steps[i].iter().zip(phi) {
            block[r * c + n] = *z;
        }
        block
    }
}

impl MixedChain {
    fn new(rho: &DensityMatrix) -> Result<Self> {
        let d = rho.spec().modes();
        let c = rho.spec().cutoff();
        let mut reduced = Vec::with_capacity(d);
        let mut layout = Vec::with_capacity(d);
        let mut prefix_maps = Vec::with_capacity(d);
        for i in 0..d {
            let keep: Vec<usize> = (0..=i).collect();
            let r = if i + 1 == d {
                rho.clone()
            } else {
                rho.partial_trace(&keep)?
            };
            let prefix = if i == 0 {
                None
            } else {
                Some(FockIndexMap::new(CutoffSpec::new(i, c)?))
            };
            let lay = r
                .index_map()
                .iter()
                .map(|occ| {
                    let p = match &prefix {
                        Some(map) => map.index_of(&occ[..i])?,
                        None => 0,
                    };
                    Ok((p, occ[i]))
                })
                .collect::<Result<Vec<_>>>()?;
            layout.push(lay);
            prefix_maps.push(
                prefix.unwrap_or_else(|| FockIndexMap::new(CutoffSpec::new(1, 1).expect("valid"))),
            );
            reduced.push(r.into_entries());
        }
        Ok(Self {
            cutoff: c,
            reduced,
            layout,
            prefix_maps,
        })
    }

    fn contract(&self, psis: &[Vec<f64>], i: usize) -> Array2<Complex64> {
        let c = self.cutoff;
        let red = &self.reduced[i];
        let lay = &self.layout[i];
        let weights: Vec<f64> = if i == 0 {
            vec![1.0]
        } else {
            self.prefix_maps[i]
                .iter()
                .map(|occ| occ.iter().zip(psis).map(|(&n, psi)| psi[n]).product())
                .collect()
        };
        let v: Vec<f64> = lay.iter().map(|&(p, _)| weights[p]).collect();
        let mut out = Array2::<Complex64>::zeros((c, c));
        for (a, &(_, na)) in lay.iter().enumerate() {
            let va = v[a];
            if va == 0.0 {
                continue;
            }
            let row = red.row(a);
            for (b, &(_, nb)) in lay.iter().enumerate() {
                out[[na, nb]] += row[b] * (va * v[b]);
            }
        }
        out
    }
}

/// Single-mode matrix of mode `mode` conditioned on position samples
/// `prior_samples` (physical units, one per mode `0..mode`).
pub fn conditional_density<'a>(
    source: impl Into<HomodyneSource<'a>>,
    prior_samples: &[f64],
    mode: usize,
    hbar: f64,
) -> Result<DensityMatrix> {
    let source = source.into();
    let d = source.spec().modes();
    if mode >= d {
        return Err(Error::Usage(format!(
            "mode {mode} out of range for {d} modes"
        )));
    }
    if prior_samples.len() != mode {
        return Err(Error::Usage(format!(
            "mode {mode} needs {mode} prior samples, got {}",
            prior_samples.len()
        )));
    }
    let chain = Chain::new(source, None)?;
    let mut shot = chain.new_shot();
    for (j, &s) in prior_samples.iter().enumerate() {
        let rho = chain.conditional(&shot, j);
        chain.condition(&mut shot, j, &rho, s / hbar.sqrt())?;
    }
    let rho = chain.conditional(&shot, mode);
    let map = Arc::new(FockIndexMap::new(CutoffSpec::new(1, chain.cutoff())?));
    DensityMatrix::from_entries(map, rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{apply_circuit, Circuit, Gate};
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn pure_and_mixed_chains_agree() {
        let spec = CutoffSpec::new(3, 4).unwrap();
        let circuit = Circuit::builder(spec)
            .gate(Gate::displacement(0, 0.4, 0.3))
            .gate(Gate::cubic_phase(1, 0.2))
            .gate(Gate::beamsplitter(0, 1, FRAC_PI_4, 0.1))
            .gate(Gate::beamsplitter(1, 2, 0.5, 0.0))
            .build()
            .unwrap()
            .with_max_leakage(1.0)
            .unwrap();
        let state = apply_circuit(&circuit, &[]).unwrap().state;
        let rho = DensityMatrix::outer_product(&state);
        let samples = [0.3, -0.8];
        for mode in 0..3 {
            let a = conditional_density(&state, &samples[..mode], mode, 2.0).unwrap();
            let b = conditional_density(&rho, &samples[..mode], mode, 2.0).unwrap();
            assert!((a.trace() - 1.0).abs() < 1e-12);
            for (x, y) in a.entries().iter().zip(b.entries()) {
                assert!((x - y).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn argument_checks() {
        let state = PureState::vacuum(CutoffSpec::new(2, 3).unwrap());
        assert!(matches!(
            conditional_density(&state, &[0.1], 2, 1.0),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            conditional_density(&state, &[], 1, 1.0),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn far_tail_sample_is_degenerate() {
        let state = PureState::vacuum(CutoffSpec::new(2, 3).unwrap());
        assert!(matches!(
            conditional_density(&state, &[40.0], 1, 1.0),
            Err(Error::DegenerateConditional { .. })
        ));
    }
}
