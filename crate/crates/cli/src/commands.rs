//! The `sample`, `train` and `benchmark` commands.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use cvbm::fock::DensityMatrix;
use cvbm::gates::apply_circuit;
use cvbm::homodyne::{sample_homodyne, HomodyneSource, SampleMatrix, SampleOptions};
use cvbm::presets::benchmark_reference;
use cvbm::training::{loss_baseline, train_with, write_records_csv, Target, TrainRecord};

use crate::config::{Command, Representation, RunConfig};
use crate::error::CliError;

/// Runs whichever command `config` names.
pub fn run(config: &RunConfig) -> Result<(), CliError> {
    match config.command {
        Command::Sample => cmd_sample(config).map(|_| ()),
        Command::Train => cmd_train(config).map(|_| ()),
        Command::Benchmark => cmd_benchmark(config).map(|_| ()),
    }
}

fn io_error(path: &Path, err: impl ToString) -> CliError {
    CliError::Io {
        path: path.display().to_string(),
        message: err.to_string(),
    }
}

/// Writes `path` through a temporary file in the same directory, so
/// readers never see a partial file.
pub fn write_atomic<F>(path: &Path, fill: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).map_err(|e| io_error(&dir, e))?;
    let tmp = tempfile::NamedTempFile::new_in(&dir).map_err(|e| io_error(&dir, e))?;
    {
        let mut out = BufWriter::new(tmp.as_file());
        fill(&mut out)?;
        out.flush().map_err(|e| io_error(path, e))?;
    }
    tmp.persist(path).map_err(|e| io_error(path, e.error))?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    write_atomic(path, |out| {
        serde_json::to_writer_pretty(&mut *out, value).map_err(|e| io_error(path, e))?;
        writeln!(out).map_err(|e| io_error(path, e))
    })
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub samples: SampleMatrix,
    pub leakage: f64,
    pub seconds: f64,
}

pub fn cmd_sample(config: &RunConfig) -> Result<SampleReport, CliError> {
    let block = config
        .sample
        .as_ref()
        .ok_or_else(|| CliError::Validation("no [sample] table".into()))?;
    let circuit = config.circuit()?;
    let weights = block
        .weights
        .clone()
        .unwrap_or_else(|| vec![0.0; circuit.num_weights()]);
    let start = Instant::now();
    let evolved = apply_circuit(&circuit, &weights)?;
    let opts = SampleOptions {
        hbar: config.hbar,
        seed: config.seed,
        angles: block.angles.clone(),
        erf: block.erf.into(),
    };
    let samples = match block.representation {
        Representation::Pure => sample_homodyne(&evolved.state, block.shots, &opts)?,
        Representation::Density => {
            let rho = DensityMatrix::outer_product(&evolved.state);
            sample_homodyne(&rho, block.shots, &opts)?
        }
    };
    let seconds = start.elapsed().as_secs_f64();
    let path = &config.output_path;
    write_atomic(path, |out| Ok(samples.write_csv(out)?))?;
    eprintln!(
        "sampled {} shots of {} modes in {seconds:.3} s (truncation leakage {:.3e}) -> {}",
        samples.shots(),
        samples.modes(),
        evolved.leakage,
        path.display()
    );
    Ok(SampleReport {
        samples,
        leakage: evolved.leakage,
        seconds,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineSummary {
    pub mean: f64,
    pub std: f64,
    pub repeats: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainSummary {
    pub iterations: usize,
    pub final_loss: f64,
    pub final_weights: Vec<f64>,
    pub min_loss: f64,
    pub min_loss_iteration: usize,
    /// Weights at the minimum loss.
    pub best_weights: Vec<f64>,
    pub baseline: BaselineSummary,
    /// First iteration whose loss lies within three baseline standard
    /// deviations of the baseline mean.
    pub first_in_band: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub records: Vec<TrainRecord>,
    pub summary: TrainSummary,
}

pub fn cmd_train(config: &RunConfig) -> Result<TrainReport, CliError> {
    let block = config
        .train
        .as_ref()
        .ok_or_else(|| CliError::Validation("no [train] table".into()))?;
    let model = config.circuit()?;
    let train_config = config.train_config()?;
    let target = match config.target_circuit()? {
        Some(circuit) => Target::Circuit {
            circuit,
            weights: block.target.weights.clone().unwrap_or_default(),
        },
        None => {
            let path = block.target.samples.as_ref().expect("sample target");
            let file = File::open(path).map_err(|e| io_error(path, e))?;
            let pool = SampleMatrix::read_csv(BufReader::new(file)).map_err(|e| match e {
                cvbm::Error::Io(m) => io_error(path, m),
                other => CliError::Validation(format!("{}: {other}", path.display())),
            })?;
            Target::Samples(pool)
        }
    };
    let initial = block
        .initial_weights
        .clone()
        .unwrap_or_else(|| vec![0.0; model.num_weights()]);

    let every = (train_config.iterations / 20).max(1);
    let records = train_with(&model, &initial, &target, &train_config, |r| {
        if r.iteration % every == 0 || r.iteration == train_config.iterations {
            eprintln!(
                "iteration {:>5}  loss {:+.4e}  weights {:?}  ({:.1} s)",
                r.iteration, r.loss, r.weights, r.wall_time
            );
        }
    })?;
    let baseline = loss_baseline(&target, &train_config, block.baseline_repeats)?;

    let last = records.last().expect("at least one record");
    let best = records
        .iter()
        .min_by(|a, b| a.loss.total_cmp(&b.loss))
        .expect("at least one record");
    let band = 3.0 * baseline.std;
    let summary = TrainSummary {
        iterations: train_config.iterations,
        final_loss: last.loss,
        final_weights: last.weights.clone(),
        min_loss: best.loss,
        min_loss_iteration: best.iteration,
        best_weights: best.weights.clone(),
        baseline: BaselineSummary {
            mean: baseline.mean,
            std: baseline.std,
            repeats: block.baseline_repeats,
        },
        first_in_band: records
            .iter()
            .find(|r| (r.loss - baseline.mean).abs() <= band)
            .map(|r| r.iteration),
    };

    let path = &config.output_path;
    write_atomic(path, |out| Ok(write_records_csv(&records, out, true)?))?;
    if let Some(gpath) = &block.gradient_path {
        write_atomic(gpath, |out| {
            write_gradients(&records, out).map_err(|e| io_error(gpath, e))
        })?;
    }
    let spath = block
        .summary_path
        .clone()
        .unwrap_or_else(|| sibling(path, ".summary.json"));
    write_json(&spath, &summary)?;
    eprintln!(
        "final loss {:+.4e}, minimum {:+.4e} at iteration {}, baseline {:+.4e} ± {:.4e}",
        summary.final_loss,
        summary.min_loss,
        summary.min_loss_iteration,
        baseline.mean,
        baseline.std
    );
    Ok(TrainReport { records, summary })
}

fn write_gradients(records: &[TrainRecord], out: &mut dyn Write) -> std::io::Result<()> {
    let w = records.first().map_or(0, |r| r.weights.len());
    let header: Vec<String> = std::iter::once("iteration".to_string())
        .chain((0..w).map(|i| format!("g{i}")))
        .collect();
    writeln!(out, "{}", header.join(","))?;
    for r in records {
        if let Some(g) = &r.gradient {
            let cells: Vec<String> = g.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{},{}", r.iteration, cells.join(","))?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub modes: usize,
    pub mean_seconds: f64,
    pub std_seconds: f64,
    pub runs: usize,
}

/// Least-squares line through `(modes, ln mean_seconds)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkSummary {
    pub cutoff: usize,
    pub shots: usize,
    pub rows: Vec<BenchmarkRow>,
    pub fit: Option<LogLinearFit>,
    /// Exponent observed in the original study, for comparison.
    pub reference_slope: f64,
}

pub const REFERENCE_SLOPE: f64 = 1.2997;

pub fn log_linear_fit(points: &[(f64, f64)]) -> Option<LogLinearFit> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .zip(&ys)
        .map(|(p, y)| (p.0 - mx) * (y - my))
        .sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r_squared = if syy > 0.0 {
        sxy * sxy / (sxx * syy)
    } else {
        1.0
    };
    Some(LogLinearFit {
        slope,
        intercept: my - slope * mx,
        r_squared,
    })
}

pub fn cmd_benchmark(config: &RunConfig) -> Result<BenchmarkSummary, CliError> {
    let b = config
        .benchmark
        .as_ref()
        .ok_or_else(|| CliError::Validation("no [benchmark] table".into()))?;
    let mut rows = Vec::new();
    for modes in b.min_modes..=b.max_modes {
        let circuit = benchmark_reference(modes, config.cutoff)?
            .with_hbar(config.hbar)?
            .with_pad(config.pad);
        let state = apply_circuit(&circuit, &[])?.state;
        let rho;
        let source = match b.representation {
            Representation::Pure => HomodyneSource::Pure(&state),
            Representation::Density => {
                rho = DensityMatrix::outer_product(&state);
                HomodyneSource::Mixed(&rho)
            }
        };
        let (warmup, runs) = if modes <= b.full_protocol_modes {
            (b.warmup, b.iterations)
        } else {
            (0, 1)
        };
        let opts = SampleOptions {
            hbar: config.hbar,
            seed: config.seed,
            ..SampleOptions::default()
        };
        for _ in 0..warmup {
            sample_homodyne(source, b.shots, &opts)?;
        }
        let mut times = Vec::with_capacity(runs);
        for _ in 0..runs {
            let t = Instant::now();
            sample_homodyne(source, b.shots, &opts)?;
            times.push(t.elapsed().as_secs_f64());
        }
        let mean = times.iter().sum::<f64>() / runs as f64;
        let std = if runs > 1 {
            (times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (runs - 1) as f64).sqrt()
        } else {
            0.0
        };
        eprintln!("{modes} modes: {mean:.4e} s ± {std:.2e} over {runs} runs");
        rows.push(BenchmarkRow {
            modes,
            mean_seconds: mean,
            std_seconds: std,
            runs,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.modes as f64, r.mean_seconds))
        .collect();
    let summary = BenchmarkSummary {
        cutoff: config.cutoff,
        shots: b.shots,
        fit: log_linear_fit(&points),
        rows,
        reference_slope: REFERENCE_SLOPE,
    };
    let path = &config.output_path;
    write_atomic(path, |out| {
        let io = |e: std::io::Error| io_error(path, e);
        writeln!(out, "modes,mean_seconds,std_seconds").map_err(io)?;
        for r in &summary.rows {
            writeln!(
                out,
                "{},{:.9e},{:.9e}",
                r.modes, r.mean_seconds, r.std_seconds
            )
            .map_err(io)?;
        }
        Ok(())
    })?;
    let spath = b
        .summary_path
        .clone()
        .unwrap_or_else(|| sibling(path, ".summary.json"));
    write_json(&spath, &summary)?;
    if let Some(fit) = &summary.fit {
        eprintln!(
            "ln(runtime) slope {:.4} per mode (R² {:.4}); reference {REFERENCE_SLOPE}",
            fit.slope, fit.r_squared
        );
    }
    Ok(summary)
}
