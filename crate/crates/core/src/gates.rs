//! Photonic gates on the truncated Fock space and parametrized circuits.
//!
//! | gate | unitary |
//! |------|---------|
//! | `Phaseshift(φ)` | `exp(iφ a†a)` |
//! | `Beamsplitter(θ, φ)` | `exp(θ(e^{iφ} a_j a_k† − e^{−iφ} a_j† a_k))` |
//! | `Displacement(r, φ)` | `exp(α a† − ᾱ a)`, `α = r e^{iφ}` |
//! | `Squeezing(r, φ)` | `exp(½(z̄ a² − z a†²))`, `z = r e^{iφ}` |
//! | `CubicPhase(γ)` | `exp(iγ x̂³ / 3ħ)`, `x̂ = √(ħ/2)(a + a†)` |
//! | `CrossKerr(ξ)` | `exp(iξ n_j n_k)` |
//!
//! Single-mode gates that change photon number are exponentiated on a
//! padded local space of `cutoff + pad` levels and cropped back. Both
//! two-mode gates conserve total photon number, so they are exponentiated
//! exactly, one photon-number block at a time.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::sync::Arc;

use ndarray::{s, Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expm::expm;
use crate::fock::{CutoffSpec, Fiber, FockIndexMap, PureState};

pub const DEFAULT_PAD: usize = 10;
pub const DEFAULT_HBAR: f64 = 2.0;
pub const DEFAULT_MAX_LEAKAGE: f64 = 1e-3;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A scalar parameter slot of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Phi,
    Theta,
    R,
    Gamma,
    Xi,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Param::Phi => "phi",
            Param::Theta => "theta",
            Param::R => "r",
            Param::Gamma => "gamma",
            Param::Xi => "xi",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Phaseshift {
        mode: usize,
        phi: f64,
    },
    Beamsplitter {
        modes: (usize, usize),
        theta: f64,
        phi: f64,
    },
    Displacement {
        mode: usize,
        r: f64,
        phi: f64,
    },
    Squeezing {
        mode: usize,
        r: f64,
        phi: f64,
    },
    CubicPhase {
        mode: usize,
        gamma: f64,
    },
    CrossKerr {
        modes: (usize, usize),
        xi: f64,
    },
}

impl Gate {
    pub fn phaseshift(mode: usize, phi: f64) -> Self {
        Gate::Phaseshift { mode, phi }
    }

    pub fn beamsplitter(j: usize, k: usize, theta: f64, phi: f64) -> Self {
        Gate::Beamsplitter {
            modes: (j, k),
            theta,
            phi,
        }
    }

    pub fn displacement(mode: usize, r: f64, phi: f64) -> Self {
        Gate::Displacement { mode, r, phi }
    }

    pub fn squeezing(mode: usize, r: f64) -> Self {
        Gate::Squeezing { mode, r, phi: 0.0 }
    }

    pub fn cubic_phase(mode: usize, gamma: f64) -> Self {
        Gate::CubicPhase { mode, gamma }
    }

    pub fn cross_kerr(j: usize, k: usize, xi: f64) -> Self {
        Gate::CrossKerr { modes: (j, k), xi }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Phaseshift { .. } => "phaseshift",
            Gate::Beamsplitter { .. } => "beamsplitter",
            Gate::Displacement { .. } => "displacement",
            Gate::Squeezing { .. } => "squeezing",
            Gate::CubicPhase { .. } => "cubic_phase",
            Gate::CrossKerr { .. } => "cross_kerr",
        }
    }

    pub fn modes(&self) -> Vec<usize> {
        match *self {
            Gate::Phaseshift { mode, .. }
            | Gate::Displacement { mode, .. }
            | Gate::Squeezing { mode, .. }
            | Gate::CubicPhase { mode, .. } => vec![mode],
            Gate::Beamsplitter { modes: (j, k), .. } | Gate::CrossKerr { modes: (j, k), .. } => {
                vec![j, k]
            }
        }
    }

    pub fn is_gaussian(&self) -> bool {
        !matches!(self, Gate::CubicPhase { .. } | Gate::CrossKerr { .. })
    }

    pub fn param(&self, slot: Param) -> Option<f64> {
        match (*self, slot) {
            (Gate::Phaseshift { phi, .. }, Param::Phi)
            | (Gate::Beamsplitter { phi, .. }, Param::Phi)
            | (Gate::Displacement { phi, .. }, Param::Phi)
            | (Gate::Squeezing { phi, .. }, Param::Phi) => Some(phi),
            (Gate::Beamsplitter { theta, .. }, Param::Theta) => Some(theta),
            (Gate::Displacement { r, .. }, Param::R) | (Gate::Squeezing { r, .. }, Param::R) => {
                Some(r)
            }
            (Gate::CubicPhase { gamma, .. }, Param::Gamma) => Some(gamma),
            (Gate::CrossKerr { xi, .. }, Param::Xi) => Some(xi),
            _ => None,
        }
    }

    pub fn set_param(&mut self, slot: Param, value: f64) -> Result<()> {
        let target = match (self, slot) {
            (Gate::Phaseshift { phi, .. }, Param::Phi)
            | (Gate::Beamsplitter { phi, .. }, Param::Phi)
            | (Gate::Displacement { phi, .. }, Param::Phi)
            | (Gate::Squeezing { phi, .. }, Param::Phi) => phi,
            (Gate::Beamsplitter { theta, .. }, Param::Theta) => theta,
            (Gate::Displacement { r, .. }, Param::R) | (Gate::Squeezing { r, .. }, Param::R) => r,
            (Gate::CubicPhase { gamma, .. }, Param::Gamma) => gamma,
            (Gate::CrossKerr { xi, .. }, Param::Xi) => xi,
            (gate, slot) => {
                return Err(Error::Usage(format!(
                    "{} has no parameter {slot}",
                    gate.name()
                )))
            }
        };
        *target = value;
        Ok(())
    }

    /// Shift `s_G` and multiplier `m_G` of the two-point gradient rule for
    /// `slot`, if one exists.
    pub fn shift_rule(&self, slot: Param, shifts: ShiftRule) -> Option<(f64, f64)> {
        match (self, slot) {
            (Gate::Phaseshift { .. }, Param::Phi) | (Gate::Beamsplitter { .. }, Param::Theta) => {
                Some((FRAC_PI_2, 1.0))
            }
            (Gate::Displacement { .. }, Param::R) => {
                Some((shifts.displacement, 1.0 / shifts.displacement))
            }
            (Gate::Squeezing { .. }, Param::R) => {
                Some((shifts.squeezing, 1.0 / shifts.squeezing.sinh()))
            }
            _ => None,
        }
    }
}

/// Shift sizes for the displacement and squeezing gradient rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftRule {
    pub displacement: f64,
    pub squeezing: f64,
}

impl Default for ShiftRule {
    fn default() -> Self {
        Self {
            displacement: 1.0,
            squeezing: 1.0,
        }
    }
}

/// Truncated single-mode annihilation and creation matrices of size
/// `cutoff × cutoff`.
pub fn ladder_matrices(cutoff: usize) -> (Array2<Complex64>, Array2<Complex64>) {
    let mut a = Array2::<Complex64>::zeros((cutoff, cutoff));
    for n in 1..cutoff {
        a[[n - 1, n]] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.t().mapv(|z| z.conj());
    (a, adag)
}

/// Matrix of a gate on its own modes.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalUnitary {
    Diagonal(Array1<Complex64>),
    Dense(Array2<Complex64>),
}

impl LocalUnitary {
    pub fn to_dense(&self) -> Array2<Complex64> {
        match self {
            LocalUnitary::Diagonal(d) => Array2::from_diag(d),
            LocalUnitary::Dense(m) => m.clone(),
        }
    }

    fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        match self {
            LocalUnitary::Diagonal(d) => {
                for (i, o) in out.iter_mut().enumerate() {
                    *o = d[i] * v[i];
                }
            }
            LocalUnitary::Dense(m) => {
                for (i, o) in out.iter_mut().enumerate() {
                    let row = m.row(i);
                    *o = v.iter().enumerate().map(|(j, x)| row[j] * x).sum();
                }
            }
        }
    }
}

/// The gate's matrix on its local modes.
///
/// Single-mode gates act on `cutoff` levels; two-mode gates act on the
/// two-mode space with total photon number below `cutoff`, indexed by
/// [`FockIndexMap`] for `(2, cutoff)`. `hbar` only enters the cubic phase.
pub fn gate_unitary(gate: &Gate, cutoff: usize, pad: usize, hbar: f64) -> LocalUnitary {
    match *gate {
        Gate::Phaseshift { phi, .. } => {
            LocalUnitary::Diagonal(Array1::from_shape_fn(cutoff, |n| {
                Complex64::from_polar(1.0, phi * n as f64)
            }))
        }
        Gate::CrossKerr { xi, .. } => {
            let map = FockIndexMap::new(CutoffSpec::new(2, cutoff).expect("cutoff >= 1"));
            LocalUnitary::Diagonal(
                map.iter()
                    .map(|o| Complex64::from_polar(1.0, xi * (o[0] * o[1]) as f64))
                    .collect(),
            )
        }
        Gate::Beamsplitter { theta, phi, .. } => {
            LocalUnitary::Dense(beamsplitter(cutoff, theta, phi))
        }
        Gate::Displacement { r, phi, .. } => {
            let alpha = Complex64::from_polar(r, phi);
            padded(cutoff, pad, |a, ad| {
                ad.mapv(|z| z * alpha) - a.mapv(|z| z * alpha.conj())
            })
        }
        Gate::Squeezing { r, phi, .. } => {
            let z = Complex64::from_polar(r, phi);
            padded(cutoff, pad, |a, ad| {
                let a2 = a.dot(a);
                let ad2 = ad.dot(ad);
                (a2.mapv(|x| x * z.conj()) - ad2.mapv(|x| x * z)).mapv(|x| x * 0.5)
            })
        }
        Gate::CubicPhase { gamma, .. } => padded(cutoff, pad, |a, ad| {
            let x = (a + ad).mapv(|z| z * (hbar / 2.0).sqrt());
            let x3 = x.dot(&x).dot(&x);
            x3.mapv(|z| z * I * (gamma / (3.0 * hbar)))
        }),
    }
}

fn padded<F>(cutoff: usize, pad: usize, generator: F) -> LocalUnitary
where
    F: Fn(&Array2<Complex64>, &Array2<Complex64>) -> Array2<Complex64>,
{
    let (a, ad) = ladder_matrices(cutoff + pad);
    let u = expm(&generator(&a, &ad));
    LocalUnitary::Dense(u.slice(s![..cutoff, ..cutoff]).to_owned())
}

fn beamsplitter(cutoff: usize, theta: f64, phi: f64) -> Array2<Complex64> {
    let map = FockIndexMap::new(CutoffSpec::new(2, cutoff).expect("cutoff >= 1"));
    let dim = map.dim();
    let mut u = Array2::<Complex64>::zeros((dim, dim));
    let e = Complex64::from_polar(1.0, phi);
    for total in 0..cutoff {
        // Sector basis |j, total - j⟩, j = 0..=total, contiguous in `map`.
        let offset = map.index_of(&[0, total]).expect("in range");
        let size = total + 1;
        let mut g = Array2::<Complex64>::zeros((size, size));
        for j in 0..size {
            let k = total - j;
            // a_j a_k† |j, k⟩ = √j √(k+1) |j-1, k+1⟩
            if j > 0 {
                g[[j - 1, j]] += e * theta * ((j * (k + 1)) as f64).sqrt();
            }
            // a_j† a_k |j, k⟩ = √(j+1) √k |j+1, k-1⟩
            if k > 0 {
                g[[j + 1, j]] -= e.conj() * theta * (((j + 1) * k) as f64).sqrt();
            }
        }
        let block = expm(&g);
        u.slice_mut(s![offset..offset + size, offset..offset + size])
            .assign(&block);
    }
    u
}

/// Which gate parameter a trainable weight drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightBinding {
    pub weight: usize,
    pub gate: usize,
    pub param: Param,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum InputState {
    #[default]
    Vacuum,
    Fock(Vec<usize>),
}

/// An ordered gate list acting on an input state, with some gate
/// parameters driven by a weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    spec: CutoffSpec,
    gates: Vec<Gate>,
    bindings: Vec<WeightBinding>,
    input: InputState,
    hbar: f64,
    pad: usize,
    max_leakage: f64,
}

impl Circuit {
    pub fn new(spec: CutoffSpec, gates: Vec<Gate>, bindings: Vec<WeightBinding>) -> Result<Self> {
        let circuit = Self {
            spec,
            gates,
            bindings,
            input: InputState::Vacuum,
            hbar: DEFAULT_HBAR,
            pad: DEFAULT_PAD,
            max_leakage: DEFAULT_MAX_LEAKAGE,
        };
        circuit.validate()?;
        Ok(circuit)
    }

    pub fn builder(spec: CutoffSpec) -> CircuitBuilder {
        CircuitBuilder {
            spec,
            gates: Vec::new(),
            bindings: Vec::new(),
        }
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Validation(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        self.hbar = hbar;
        Ok(self)
    }

    pub fn with_input(mut self, input: InputState) -> Result<Self> {
        if let InputState::Fock(occ) = &input {
            FockIndexMap::new(self.spec)
                .index_of(occ)
                .map_err(|e| Error::Validation(format!("input state: {e}")))?;
        }
        self.input = input;
        Ok(self)
    }

    pub fn with_pad(mut self, pad: usize) -> Self {
        self.pad = pad;
        self
    }

    /// Largest tolerated norm loss from cropping gate matrices.
    pub fn with_max_leakage(mut self, max_leakage: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&max_leakage) {
            return Err(Error::Validation(format!(
                "max_leakage must lie in [0, 1], got {max_leakage}"
            )));
        }
        self.max_leakage = max_leakage;
        Ok(self)
    }

    pub fn spec(&self) -> CutoffSpec {
        self.spec
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn bindings(&self) -> &[WeightBinding] {
        &self.bindings
    }

    pub fn input(&self) -> &InputState {
        &self.input
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn pad(&self) -> usize {
        self.pad
    }

    pub fn max_leakage(&self) -> f64 {
        self.max_leakage
    }

    pub fn num_weights(&self) -> usize {
        self.bindings.len()
    }

    fn validate(&self) -> Result<()> {
        let d = self.spec.modes();
        for (pos, gate) in self.gates.iter().enumerate() {
            let modes = gate.modes();
            if let Some(&m) = modes.iter().find(|&&m| m >= d) {
                return Err(Error::Validation(format!(
                    "gate {pos} ({}) acts on mode {m}, but the circuit has {d} modes",
                    gate.name()
                )));
            }
            if modes.len() == 2 && modes[0] == modes[1] {
                return Err(Error::Validation(format!(
                    "gate {pos} ({}) needs two distinct modes",
                    gate.name()
                )));
            }
        }

        let last_non_gaussian = self.gates.iter().rposition(|g| !g.is_gaussian());
        let mut seen = vec![false; self.bindings.len()];
        for b in &self.bindings {
            if b.weight >= self.bindings.len() || std::mem::replace(&mut seen[b.weight], true) {
                return Err(Error::Validation(format!(
                    "weight indices must be 0..{} with one binding each (weight {})",
                    self.bindings.len(),
                    b.weight
                )));
            }
            let gate = self.gates.get(b.gate).ok_or_else(|| {
                Error::Validation(format!("binding refers to missing gate {}", b.gate))
            })?;
            if !gate.is_gaussian() {
                return Err(Error::Validation(format!(
                    "weight {} is bound to non-Gaussian gate {} ({})",
                    b.weight,
                    b.gate,
                    gate.name()
                )));
            }
            if gate.param(b.param).is_none() {
                return Err(Error::Validation(format!(
                    "gate {} ({}) has no parameter {}",
                    b.gate,
                    gate.name(),
                    b.param
                )));
            }
            if last_non_gaussian.is_some_and(|p| b.gate < p) {
                return Err(Error::Validation(format!(
                    "weight {} is bound to gate {} which precedes a non-Gaussian gate",
                    b.weight, b.gate
                )));
            }
        }
        Ok(())
    }

    /// Gate list with every bound parameter replaced by its weight.
    pub fn resolved_gates(&self, weights: &[f64]) -> Result<Vec<Gate>> {
        self.check_weights(weights)?;
        let mut gates = self.gates.clone();
        for b in &self.bindings {
            gates[b.gate].set_param(b.param, weights[b.weight])?;
        }
        Ok(gates)
    }

    fn check_weights(&self, weights: &[f64]) -> Result<()> {
        if weights.len() != self.bindings.len() {
            return Err(Error::Usage(format!(
                "{} weights given for {} bindings",
                weights.len(),
                self.bindings.len()
            )));
        }
        Ok(())
    }

    pub fn input_state(&self) -> PureState {
        match &self.input {
            InputState::Vacuum => PureState::vacuum(self.spec),
            InputState::Fock(occ) => {
                PureState::basis_state(self.spec, occ).expect("validated in with_input")
            }
        }
    }

    /// Position of the first bound gate; everything before it is fixed.
    pub fn trainable_start(&self) -> usize {
        self.bindings
            .iter()
            .map(|b| b.gate)
            .min()
            .unwrap_or(self.gates.len())
    }

    /// Evaluates the weight-independent prefix once so repeated runs only
    /// pay for the trainable part.
    pub fn prepare(&self) -> Result<PreparedCircuit> {
        let start = self.trainable_start();
        let map = Arc::new(FockIndexMap::new(self.spec));
        let mut state = self.input_state();
        for gate in &self.gates[..start] {
            state = apply_gate(
                &state,
                gate,
                &map.fibers(&gate.modes())?,
                self.pad,
                self.hbar,
            );
        }
        let suffix_fibers = self.gates[start..]
            .iter()
            .map(|g| map.fibers(&g.modes()))
            .collect::<Result<Vec<_>>>()?;
        Ok(PreparedCircuit {
            circuit: self.clone(),
            start,
            prefix_state: state,
            suffix_fibers,
        })
    }
}

/// Incremental construction of a [`Circuit`]; trainable gates get
/// consecutive weight indices.
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    spec: CutoffSpec,
    gates: Vec<Gate>,
    bindings: Vec<WeightBinding>,
}

impl CircuitBuilder {
    pub fn gate(mut self, gate: Gate) -> Self {
        self.gates.push(gate);
        self
    }

    pub fn trainable(mut self, gate: Gate, param: Param) -> Self {
        self.bindings.push(WeightBinding {
            weight: self.bindings.len(),
            gate: self.gates.len(),
            param,
        });
        self.gates.push(gate);
        self
    }

    pub fn build(self) -> Result<Circuit> {
        Circuit::new(self.spec, self.gates, self.bindings)
    }
}

/// Output state of a circuit run.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolved {
    /// Renormalized output state.
    pub state: PureState,
    /// `1 − ‖ψ‖²` before renormalization.
    pub leakage: f64,
}

/// A circuit whose fixed prefix has already been applied.
#[derive(Debug, Clone)]
pub struct PreparedCircuit {
    circuit: Circuit,
    start: usize,
    prefix_state: PureState,
    suffix_fibers: Vec<Vec<Fiber>>,
}

impl PreparedCircuit {
    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn run(&self, weights: &[f64]) -> Result<Evolved> {
        let gates = self.circuit.resolved_gates(weights)?;
        let mut state = self.prefix_state.clone();
        for (gate, fibers) in gates[self.start..].iter().zip(&self.suffix_fibers) {
            state = apply_gate(&state, gate, fibers, self.circuit.pad, self.circuit.hbar);
        }
        finish(state, self.circuit.max_leakage)
    }
}

fn finish(state: PureState, max_leakage: f64) -> Result<Evolved> {
    let leakage = (1.0 - state.norm_sqr()).max(0.0);
    if leakage > max_leakage {
        return Err(Error::TruncationOverflow {
            leakage,
            limit: max_leakage,
        });
    }
    Ok(Evolved {
        state: state.normalized()?,
        leakage,
    })
}

/// `U(w)|ψ₀⟩`, renormalized, with the norm lost to truncation recorded.
pub fn apply_circuit(circuit: &Circuit, weights: &[f64]) -> Result<Evolved> {
    circuit.check_weights(weights)?;
    circuit.prepare()?.run(weights)
}

/// Applies `gates` to `state` in order without renormalizing. The map is
/// linear in `state`.
pub fn apply_gates(state: &PureState, gates: &[Gate], pad: usize, hbar: f64) -> Result<PureState> {
    let map = state.index_map();
    let d = map.modes();
    let mut out = state.clone();
    for gate in gates {
        if gate.modes().iter().any(|&m| m >= d) {
            return Err(Error::Usage(format!(
                "{} acts outside the {d}-mode space",
                gate.name()
            )));
        }
        out = apply_gate(&out, gate, &map.fibers(&gate.modes())?, pad, hbar);
    }
    Ok(out)
}

fn apply_gate(
    state: &PureState,
    gate: &Gate,
    fibers: &[Fiber],
    pad: usize,
    hbar: f64,
) -> PureState {
    let cutoff = state.spec().cutoff();
    let u = gate_unitary(gate, cutoff, pad, hbar);
    let amps = state.amplitudes();
    let mut out = Array1::<Complex64>::zeros(amps.len());
    let mut local_in = Vec::with_capacity(cutoff * cutoff);
    let mut local_out = Vec::with_capacity(cutoff * cutoff);
    for fiber in fibers {
        // Members are a prefix 0..len of the local basis, because the local
        // ordering is photon-number-major.
        local_in.clear();
        local_in.extend(fiber.members.iter().map(|&(_, g)| amps[g]));
        local_out.clear();
        local_out.resize(local_in.len(), Complex64::default());
        u.apply(&local_in, &mut local_out);
        for (&(_, g), v) in fiber.members.iter().zip(&local_out) {
            out[g] = *v;
        }
    }
    PureState::from_amplitudes(Arc::clone(state.index_map()), out).expect("same basis")
}

/// Weight vectors for the `±s_G` shifted circuits and the multiplier `m_G`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedCircuits {
    pub plus: Vec<f64>,
    pub minus: Vec<f64>,
    pub multiplier: f64,
}

pub fn shifted_circuits(
    circuit: &Circuit,
    weights: &[f64],
    weight_index: usize,
    shifts: ShiftRule,
) -> Result<ShiftedCircuits> {
    circuit.check_weights(weights)?;
    let binding = circuit
        .bindings
        .iter()
        .find(|b| b.weight == weight_index)
        .ok_or_else(|| Error::Usage(format!("no weight with index {weight_index}")))?;
    let gate = &circuit.gates[binding.gate];
    let (shift, multiplier) = gate.shift_rule(binding.param, shifts).ok_or_else(|| {
        Error::UnsupportedGradient(format!(
            "no shift rule for parameter {} of {}",
            binding.param,
            gate.name()
        ))
    })?;
    let mut plus = weights.to_vec();
    let mut minus = weights.to_vec();
    plus[weight_index] += shift;
    minus[weight_index] -= shift;
    Ok(ShiftedCircuits {
        plus,
        minus,
        multiplier,
    })
}
