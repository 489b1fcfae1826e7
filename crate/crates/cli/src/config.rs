//! Run configuration: a strict TOML schema.
//!
//! Every table rejects unknown keys. Optional keys get their defaults at
//! parse time, so serializing a parsed config and parsing it again yields
//! the same value. See `book/src/cli.md` for the full grammar.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use cvbm::fock::CutoffSpec;
use cvbm::gates::{
    Circuit, Gate, InputState, Param, ShiftRule, DEFAULT_HBAR, DEFAULT_MAX_LEAKAGE, DEFAULT_PAD,
};
use cvbm::homodyne::ErfMode;
use cvbm::mmd::KernelParams;
use cvbm::training::TrainConfig;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Sample,
    Train,
    Benchmark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ErfChoice {
    #[default]
    Rational,
    Precise,
}

impl From<ErfChoice> for ErfMode {
    fn from(e: ErfChoice) -> Self {
        match e {
            ErfChoice::Rational => ErfMode::Rational,
            ErfChoice::Precise => ErfMode::Precise,
        }
    }
}

/// Which state representation the sampler works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    Pure,
    Density,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamName {
    Phi,
    Theta,
    R,
    Gamma,
    Xi,
}

impl From<ParamName> for Param {
    fn from(p: ParamName) -> Self {
        match p {
            ParamName::Phi => Param::Phi,
            ParamName::Theta => Param::Theta,
            ParamName::R => Param::R,
            ParamName::Gamma => Param::Gamma,
            ParamName::Xi => Param::Xi,
        }
    }
}

fn is_zero(v: &f64) -> bool {
    *v == 0.0
}

/// One gate. `train` names the parameter driven by the next weight; weights
/// are numbered in gate order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GateConfig {
    Phaseshift {
        mode: usize,
        #[serde(default, skip_serializing_if = "is_zero")]
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
    Beamsplitter {
        modes: [usize; 2],
        #[serde(default, skip_serializing_if = "is_zero")]
        theta: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
    Displacement {
        mode: usize,
        #[serde(default, skip_serializing_if = "is_zero")]
        r: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
    Squeezing {
        mode: usize,
        #[serde(default, skip_serializing_if = "is_zero")]
        r: f64,
        #[serde(default, skip_serializing_if = "is_zero")]
        phi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
    CubicPhase {
        mode: usize,
        #[serde(default, skip_serializing_if = "is_zero")]
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
    CrossKerr {
        modes: [usize; 2],
        #[serde(default, skip_serializing_if = "is_zero")]
        xi: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        train: Option<ParamName>,
    },
}

impl GateConfig {
    fn to_gate(&self) -> (Gate, Option<ParamName>) {
        match *self {
            GateConfig::Phaseshift { mode, phi, train } => (Gate::phaseshift(mode, phi), train),
            GateConfig::Beamsplitter {
                modes,
                theta,
                phi,
                train,
            } => (Gate::beamsplitter(modes[0], modes[1], theta, phi), train),
            GateConfig::Displacement {
                mode,
                r,
                phi,
                train,
            } => (Gate::displacement(mode, r, phi), train),
            GateConfig::Squeezing {
                mode,
                r,
                phi,
                train,
            } => (Gate::Squeezing { mode, r, phi }, train),
            GateConfig::CubicPhase { mode, gamma, train } => {
                (Gate::cubic_phase(mode, gamma), train)
            }
            GateConfig::CrossKerr { modes, xi, train } => {
                (Gate::cross_kerr(modes[0], modes[1], xi), train)
            }
        }
    }
}

fn default_hbar() -> f64 {
    DEFAULT_HBAR
}
fn default_pad() -> usize {
    DEFAULT_PAD
}
fn default_max_leakage() -> f64 {
    DEFAULT_MAX_LEAKAGE
}
fn default_one() -> f64 {
    1.0
}
fn default_beta1() -> f64 {
    0.9
}
fn default_beta2() -> f64 {
    0.999
}
fn default_epsilon() -> f64 {
    1e-8
}
fn default_repeats() -> usize {
    100
}
fn default_pure() -> Representation {
    Representation::Pure
}
fn default_density() -> Representation {
    Representation::Density
}
fn default_bench_shots() -> usize {
    100
}
fn default_bench_iterations() -> usize {
    100
}
fn default_bench_warmup() -> usize {
    10
}
fn default_bench_full_protocol() -> usize {
    6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleBlock {
    pub shots: usize,
    /// Values of the trainable parameters; defaults to zeros.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// Per-mode quadrature angles; defaults to position on every mode.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<f64>>,
    #[serde(default)]
    pub erf: ErfChoice,
    #[serde(default = "default_pure")]
    pub representation: Representation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetBlock {
    /// Target weights for the model circuit (or for `gates`, if given).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// A different target circuit; defaults to the model's gate list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gates: Option<Vec<GateConfig>>,
    /// Sample CSV used as a fixed target pool instead of a circuit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainBlock {
    pub shots: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grad_shots: Option<usize>,
    pub learning_rate: f64,
    pub iterations: usize,
    #[serde(default = "default_beta1")]
    pub beta1: f64,
    #[serde(default = "default_beta2")]
    pub beta2: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_one")]
    pub s_d: f64,
    #[serde(default = "default_one")]
    pub s_s: f64,
    #[serde(default = "default_one")]
    pub sigma: f64,
    #[serde(default)]
    pub erf: ErfChoice,
    /// Defaults to zeros.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_weights: Option<Vec<f64>>,
    #[serde(default = "default_repeats")]
    pub baseline_repeats: usize,
    /// JSON summary; defaults to the output path with `.summary.json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary_path: Option<PathBuf>,
    /// Optional CSV of the per-iteration gradient estimates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gradient_path: Option<PathBuf>,
    pub target: TargetBlock,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkBlock {
    pub min_modes: usize,
    pub max_modes: usize,
    #[serde(default = "default_bench_shots")]
    pub shots: usize,
    /// Timed runs per mode count, up to `full_protocol_modes`.
    #[serde(default = "default_bench_iterations")]
    pub iterations: usize,
    #[serde(default = "default_bench_warmup")]
    pub warmup: usize,
    /// Above this many modes a single untimed-warmup-free run is made.
    #[serde(default = "default_bench_full_protocol")]
    pub full_protocol_modes: usize,
    #[serde(default = "default_density")]
    pub representation: Representation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary_path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub cutoff: usize,
    /// Mode count of the circuit; unused by `benchmark`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(default = "default_hbar")]
    pub hbar: f64,
    #[serde(default)]
    pub seed: u64,
    pub output_path: PathBuf,
    #[serde(default = "default_pad")]
    pub pad: usize,
    #[serde(default = "default_max_leakage")]
    pub max_leakage: f64,
    /// Fock input occupation; defaults to vacuum.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gates: Vec<GateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub train: Option<TrainBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub benchmark: Option<BenchmarkBlock>,
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, CliError> {
    let config: RunConfig = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

impl RunConfig {
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.cutoff == 0 {
            return Err(invalid("cutoff must be at least 1"));
        }
        if !(self.hbar.is_finite() && self.hbar > 0.0) {
            return Err(invalid(format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.max_leakage >= 0.0 && self.max_leakage <= 1.0) {
            return Err(invalid(format!(
                "max_leakage must lie in [0, 1], got {}",
                self.max_leakage
            )));
        }
        match self.command {
            Command::Sample => {
                let block = self
                    .sample
                    .as_ref()
                    .ok_or_else(|| invalid("command `sample` needs a [sample] table"))?;
                let circuit = self.circuit()?;
                if block.shots == 0 {
                    return Err(invalid("sample.shots must be at least 1"));
                }
                check_len(
                    "sample.weights",
                    block.weights.as_deref(),
                    circuit.num_weights(),
                )?;
                check_len(
                    "sample.angles",
                    block.angles.as_deref(),
                    self.modes.unwrap_or(0),
                )?;
            }
            Command::Train => {
                let block = self
                    .train
                    .as_ref()
                    .ok_or_else(|| invalid("command `train` needs a [train] table"))?;
                let circuit = self.circuit()?;
                self.train_config()?
                    .validate()
                    .map_err(|e| invalid(e.to_string()))?;
                check_len(
                    "train.initial_weights",
                    block.initial_weights.as_deref(),
                    circuit.num_weights(),
                )?;
                if block.baseline_repeats == 0 {
                    return Err(invalid("train.baseline_repeats must be at least 1"));
                }
                let t = &block.target;
                match (&t.samples, &t.weights, &t.gates) {
                    (Some(_), None, None) => {}
                    (Some(_), _, _) => {
                        return Err(invalid("train.target.samples excludes weights and gates"));
                    }
                    (None, weights, _) => {
                        let target = self.target_circuit()?.expect("circuit target");
                        let w = weights
                            .as_ref()
                            .ok_or_else(|| invalid("train.target needs weights or samples"))?;
                        check_len("train.target.weights", Some(w), target.num_weights())?;
                    }
                }
            }
            Command::Benchmark => {
                let b = self
                    .benchmark
                    .as_ref()
                    .ok_or_else(|| invalid("command `benchmark` needs a [benchmark] table"))?;
                if b.min_modes == 0 || b.min_modes > b.max_modes {
                    return Err(invalid(format!(
                        "benchmark mode range {}..={} is empty",
                        b.min_modes, b.max_modes
                    )));
                }
                if b.shots == 0 || b.iterations == 0 {
                    return Err(invalid("benchmark shots and iterations must be at least 1"));
                }
            }
        }
        Ok(())
    }

    fn spec(&self) -> Result<CutoffSpec, CliError> {
        let modes = self
            .modes
            .ok_or_else(|| invalid("`modes` is required for this command"))?;
        CutoffSpec::new(modes, self.cutoff).map_err(|e| invalid(e.to_string()))
    }

    fn build(&self, gates: &[GateConfig]) -> Result<Circuit, CliError> {
        let mut builder = Circuit::builder(self.spec()?);
        for g in gates {
            builder = match g.to_gate() {
                (gate, Some(p)) => builder.trainable(gate, p.into()),
                (gate, None) => builder.gate(gate),
            };
        }
        let mut circuit = builder
            .build()
            .and_then(|c| c.with_hbar(self.hbar))
            .and_then(|c| c.with_max_leakage(self.max_leakage))
            .map_err(|e| invalid(e.to_string()))?
            .with_pad(self.pad);
        if let Some(occ) = &self.input {
            circuit = circuit
                .with_input(InputState::Fock(occ.clone()))
                .map_err(|e| invalid(e.to_string()))?;
        }
        Ok(circuit)
    }

    /// The model circuit described by `gates`.
    pub fn circuit(&self) -> Result<Circuit, CliError> {
        self.build(&self.gates)
    }

    /// The training target circuit, or `None` for a sample-file target.
    pub fn target_circuit(&self) -> Result<Option<Circuit>, CliError> {
        let t = &self
            .train
            .as_ref()
            .ok_or_else(|| invalid("no [train] table"))?
            .target;
        if t.samples.is_some() {
            return Ok(None);
        }
        Ok(Some(self.build(t.gates.as_deref().unwrap_or(&self.gates))?))
    }

    pub fn train_config(&self) -> Result<TrainConfig, CliError> {
        let b = self
            .train
            .as_ref()
            .ok_or_else(|| invalid("no [train] table"))?;
        Ok(TrainConfig {
            shots: b.shots,
            grad_shots: b.grad_shots,
            learning_rate: b.learning_rate,
            beta1: b.beta1,
            beta2: b.beta2,
            epsilon: b.epsilon,
            iterations: b.iterations,
            seed: self.seed,
            shifts: ShiftRule {
                displacement: b.s_d,
                squeezing: b.s_s,
            },
            kernel: KernelParams { sigma: b.sigma },
            erf: b.erf.into(),
        })
    }
}

fn check_len(name: &str, values: Option<&[f64]>, expected: usize) -> Result<(), CliError> {
    match values {
        Some(v) if v.len() != expected => Err(invalid(format!(
            "{name} has {} entries, expected {expected}",
            v.len()
        ))),
        Some(v) if v.iter().any(|x| !x.is_finite()) => {
            Err(invalid(format!("{name} has non-finite entries")))
        }
        _ => Ok(()),
    }
}
