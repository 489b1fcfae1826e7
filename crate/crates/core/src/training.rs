//! Born-machine training: Adam on parameter-shift MMD gradients.
//!
//! Every sampling task draws from its own RNG stream, keyed by the run seed,
//! the iteration and a task number (`0` model, `1` target, `2 + 2k` and
//! `3 + 2k` the shifted circuits of weight `k`). Runs are therefore
//! reproducible bit for bit, whatever the thread count.

use std::io::Write;
use std::time::Instant;

use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gates::{shifted_circuits, Circuit, PreparedCircuit, ShiftRule};
use crate::homodyne::{ErfMode, HomodyneSampler, SampleMatrix};
use crate::mmd::{grad_estimate, mmd_estimate, KernelParams};

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    /// Samples per loss evaluation, for both the model and the target.
    pub shots: usize,
    /// Samples per shifted circuit; `None` uses `shots`.
    pub grad_shots: Option<usize>,
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
    /// Number of optimizer steps.
    pub iterations: usize,
    pub seed: u64,
    pub shifts: ShiftRule,
    pub kernel: KernelParams,
    pub erf: ErfMode,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            shots: 1000,
            grad_shots: None,
            learning_rate: 0.01,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
            iterations: 100,
            seed: 0,
            shifts: ShiftRule::default(),
            kernel: KernelParams::default(),
            erf: ErfMode::default(),
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        if self.shots < 2 {
            return fail(format!("shots must be at least 2, got {}", self.shots));
        }
        if self.grad_shots == Some(0) {
            return fail("grad_shots must be at least 1".into());
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return fail(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            ));
        }
        for (name, b) in [("beta1", self.beta1), ("beta2", self.beta2)] {
            if !(b > 0.0 && b < 1.0) {
                return fail(format!("{name} must lie in (0, 1), got {b}"));
            }
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return fail(format!("epsilon must be positive, got {}", self.epsilon));
        }
        for (name, s) in [
            ("s_D", self.shifts.displacement),
            ("s_S", self.shifts.squeezing),
        ] {
            if !(s.is_finite() && s > 0.0) {
                return fail(format!("{name} must be positive, got {s}"));
            }
        }
        KernelParams::new(self.kernel.sigma)?;
        Ok(())
    }

    pub fn gradient_shots(&self) -> usize {
        self.grad_shots.unwrap_or(self.shots)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub first_moment: Vec<f64>,
    pub second_moment: Vec<f64>,
    pub step_count: u64,
}

impl AdamState {
    pub fn new(len: usize) -> Self {
        Self {
            first_moment: vec![0.0; len],
            second_moment: vec![0.0; len],
            step_count: 0,
        }
    }
}

/// One bias-corrected Adam update.
///
/// # Panics
/// If `weights`, `grad` and the moment vectors differ in length.
pub fn adam_step(
    state: &AdamState,
    weights: &[f64],
    grad: &[f64],
    config: &TrainConfig,
) -> (AdamState, Vec<f64>) {
    assert_eq!(
        weights.len(),
        grad.len(),
        "weights and gradient differ in length"
    );
    assert_eq!(
        weights.len(),
        state.first_moment.len(),
        "optimizer state has wrong length"
    );
    let (b1, b2) = (config.beta1, config.beta2);
    let t = state.step_count + 1;
    let c1 = 1.0 - b1.powf(t as f64);
    let c2 = 1.0 - b2.powf(t as f64);
    let mut next = AdamState {
        first_moment: Vec::with_capacity(grad.len()),
        second_moment: Vec::with_capacity(grad.len()),
        step_count: t,
    };
    let mut out = Vec::with_capacity(weights.len());
    for i in 0..weights.len() {
        let m = b1 * state.first_moment[i] + (1.0 - b1) * grad[i];
        let v = b2 * state.second_moment[i] + (1.0 - b2) * grad[i] * grad[i];
        let step = config.learning_rate * (m / c1) / ((v / c2).sqrt() + config.epsilon);
        next.first_moment.push(m);
        next.second_moment.push(v);
        out.push(weights[i] - step);
    }
    (next, out)
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of sampling task `task` in iteration `iteration` of a run seeded
/// with `seed`.
pub fn derive_seed(seed: u64, iteration: u64, task: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ iteration) ^ task)
}

// Keeps baseline streams apart from training streams.
const BASELINE_SALT: u64 = 0x6261_7365_6c69_6e65;

/// Where the training target samples come from.
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    /// Fresh samples of this circuit at these weights every iteration.
    Circuit { circuit: Circuit, weights: Vec<f64> },
    /// A fixed pool; each iteration uses `shots` rows drawn from it without
    /// replacement (or the whole pool if it is smaller).
    Samples(SampleMatrix),
}

enum TargetSource {
    Circuit(HomodyneSampler),
    Pool(SampleMatrix),
}

impl TargetSource {
    fn new(target: &Target, config: &TrainConfig) -> Result<Self> {
        match target {
            Target::Circuit { circuit, weights } => {
                let state = circuit.prepare()?.run(weights)?.state;
                Ok(TargetSource::Circuit(HomodyneSampler::new(
                    &state,
                    circuit.hbar(),
                    None,
                    config.erf,
                )?))
            }
            Target::Samples(pool) => {
                if pool.shots() < 2 {
                    return Err(Error::Usage("target pool needs at least 2 samples".into()));
                }
                Ok(TargetSource::Pool(pool.clone()))
            }
        }
    }

    fn modes(&self) -> usize {
        match self {
            TargetSource::Circuit(s) => s.modes(),
            TargetSource::Pool(p) => p.modes(),
        }
    }

    fn draw(&self, shots: usize, seed: u64) -> Result<SampleMatrix> {
        match self {
            TargetSource::Circuit(s) => s.sample(shots, seed),
            TargetSource::Pool(pool) => {
                if pool.shots() <= shots {
                    return Ok(pool.clone());
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut rows = sample_indices(&mut rng, pool.shots(), shots).into_vec();
                rows.sort_unstable();
                SampleMatrix::new(pool.values().select(ndarray::Axis(0), &rows))
            }
        }
    }
}

/// One row of the training trace.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainRecord {
    pub iteration: usize,
    /// MMD estimate at `weights`.
    pub loss: f64,
    pub weights: Vec<f64>,
    /// Gradient estimate at `weights`; absent on the final record, where no
    /// update follows.
    pub gradient: Option<Vec<f64>>,
    /// Seconds since training started.
    pub wall_time: f64,
}

/// Writes `iteration,loss,w0,…,w{W−1},wall_time_s` rows.
pub fn write_records_csv<W: Write>(
    records: &[TrainRecord],
    mut out: W,
    with_time: bool,
) -> Result<()> {
    let weights = records.first().map_or(0, |r| r.weights.len());
    let mut header = vec!["iteration".to_string(), "loss".to_string()];
    header.extend((0..weights).map(|i| format!("w{i}")));
    if with_time {
        header.push("wall_time_s".into());
    }
    writeln!(out, "{}", header.join(","))?;
    for r in records {
        let mut cells = vec![r.iteration.to_string(), format!("{:.16e}", r.loss)];
        cells.extend(r.weights.iter().map(|w| format!("{w:.16e}")));
        if with_time {
            cells.push(format!("{:.6}", r.wall_time));
        }
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

fn sample_circuit(
    prepared: &PreparedCircuit,
    weights: &[f64],
    shots: usize,
    seed: u64,
    erf: ErfMode,
) -> Result<SampleMatrix> {
    let state = prepared.run(weights)?.state;
    HomodyneSampler::new(&state, prepared.circuit().hbar(), None, erf)?.sample(shots, seed)
}

/// Trains `model` from `initial_weights`. Returns `iterations + 1` records:
/// record `k` holds the loss after `k` updates.
pub fn train(
    model: &Circuit,
    initial_weights: &[f64],
    target: &Target,
    config: &TrainConfig,
) -> Result<Vec<TrainRecord>> {
    train_with(model, initial_weights, target, config, |_| {})
}

/// Like [`train`], calling `observe` on every record as soon as it exists.
pub fn train_with<F>(
    model: &Circuit,
    initial_weights: &[f64],
    target: &Target,
    config: &TrainConfig,
    mut observe: F,
) -> Result<Vec<TrainRecord>>
where
    F: FnMut(&TrainRecord),
{
    config.validate()?;
    let w = model.num_weights();
    if initial_weights.len() != w {
        return Err(Error::Usage(format!(
            "{} initial weights for {w} trainable parameters",
            initial_weights.len()
        )));
    }
    // Fail before sampling anything if some weight has no shift rule.
    for k in 0..w {
        shifted_circuits(model, initial_weights, k, config.shifts)?;
    }
    let source = TargetSource::new(target, config)?;
    if source.modes() != model.spec().modes() {
        return Err(Error::Usage(format!(
            "target has {} modes, model has {}",
            source.modes(),
            model.spec().modes()
        )));
    }
    let prepared = model.prepare()?;
    let start = Instant::now();
    let mut weights = initial_weights.to_vec();
    let mut adam = AdamState::new(w);
    let mut records = Vec::with_capacity(config.iterations + 1);

    for k in 0..=config.iterations {
        let wrap = |e: Error| Error::Iteration {
            iteration: k,
            source: Box::new(e),
        };
        let it = k as u64;
        let x = sample_circuit(
            &prepared,
            &weights,
            config.shots,
            derive_seed(config.seed, it, 0),
            config.erf,
        )
        .map_err(wrap)?;
        let y = source
            .draw(config.shots, derive_seed(config.seed, it, 1))
            .map_err(wrap)?;
        let loss = mmd_estimate(&x, &y, config.kernel).map_err(wrap)?;

        let gradient = if k < config.iterations {
            let mut grad = Vec::with_capacity(w);
            for idx in 0..w {
                let shifted =
                    shifted_circuits(model, &weights, idx, config.shifts).map_err(wrap)?;
                let task = 2 + 2 * idx as u64;
                let gs = config.gradient_shots();
                let a = sample_circuit(
                    &prepared,
                    &shifted.plus,
                    gs,
                    derive_seed(config.seed, it, task),
                    config.erf,
                )
                .map_err(wrap)?;
                let b = sample_circuit(
                    &prepared,
                    &shifted.minus,
                    gs,
                    derive_seed(config.seed, it, task + 1),
                    config.erf,
                )
                .map_err(wrap)?;
                grad.push(
                    grad_estimate(&a, &b, &x, &y, shifted.multiplier, config.kernel)
                        .map_err(wrap)?,
                );
            }
            Some(grad)
        } else {
            None
        };

        let record = TrainRecord {
            iteration: k,
            loss,
            weights: weights.clone(),
            gradient: gradient.clone(),
            wall_time: start.elapsed().as_secs_f64(),
        };
        observe(&record);
        records.push(record);

        if let Some(grad) = gradient {
            let (next, updated) = adam_step(&adam, &weights, &grad, config);
            adam = next;
            weights = updated;
        }
    }
    Ok(records)
}

/// Mean and spread of the loss between two independent target sample sets.
#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    pub mean: f64,
    /// Sample standard deviation of the individual estimates (0 for one).
    pub std: f64,
    pub values: Vec<f64>,
}

impl Baseline {
    fn from_values(values: Vec<f64>) -> Self {
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, std, values }
    }
}

/// Reference loss level: `repeats` estimates of the MMD between two fresh
/// `config.shots`-sample sets of the target.
pub fn loss_baseline(target: &Target, config: &TrainConfig, repeats: usize) -> Result<Baseline> {
    config.validate()?;
    if repeats == 0 {
        return Err(Error::Usage("baseline needs at least one repeat".into()));
    }
    let source = TargetSource::new(target, config)?;
    let seed = config.seed ^ BASELINE_SALT;
    let values = (0..repeats as u64)
        .map(|r| {
            let (a, b) = match &source {
                TargetSource::Pool(pool) => {
                    split_pool(pool, config.shots, derive_seed(seed, r, 0))?
                }
                _ => (
                    source.draw(config.shots, derive_seed(seed, r, 0))?,
                    source.draw(config.shots, derive_seed(seed, r, 1))?,
                ),
            };
            mmd_estimate(&a, &b, config.kernel)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Baseline::from_values(values))
}

/// Two disjoint random subsets of up to `shots` rows each.
fn split_pool(
    pool: &SampleMatrix,
    shots: usize,
    seed: u64,
) -> Result<(SampleMatrix, SampleMatrix)> {
    let n = shots.min(pool.shots() / 2);
    if n < 2 {
        return Err(Error::Usage("target pool too small for a baseline".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = sample_indices(&mut rng, pool.shots(), 2 * n).into_vec();
    let pick = |r: &[usize]| SampleMatrix::new(pool.values().select(ndarray::Axis(0), r));
    Ok((pick(&rows[..n])?, pick(&rows[n..])?))
}
