//! Mode-by-mode homodyne sampling by inverse-transform.

use std::io::{BufRead, Write};

use ndarray::{Array2, ArrayView1};
use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::conditional::{Chain, HomodyneSource};
use super::distribution::{ModeBasis, ModeDistribution};
use super::erf::ErfMode;
use crate::error::{Error, Result};
use crate::gates::DEFAULT_HBAR;

/// Options for [`sample_homodyne`].
#[derive(Debug, Clone, PartialEq)]
pub struct SampleOptions {
    pub hbar: f64,
    pub seed: u64,
    /// Quadrature angle per mode; `None` measures `x̂` on every mode.
    pub angles: Option<Vec<f64>>,
    pub erf: ErfMode,
}

impl Default for SampleOptions {
    fn default() -> Self {
        Self {
            hbar: DEFAULT_HBAR,
            seed: 0,
            angles: None,
            erf: ErfMode::default(),
        }
    }
}

/// Shots × modes matrix of quadrature samples in physical units.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleMatrix {
    values: Array2<f64>,
}

impl SampleMatrix {
    pub fn new(values: Array2<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation(
                "sample matrix contains non-finite values".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn shots(&self) -> usize {
        self.values.nrows()
    }

    pub fn modes(&self) -> usize {
        self.values.ncols()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn row(&self, shot: usize) -> ArrayView1<'_, f64> {
        self.values.row(shot)
    }

    /// Writes a header `x0,…,x{d−1}` followed by one row per shot.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let header: Vec<String> = (0..self.modes()).map(|i| format!("x{i}")).collect();
        writeln!(out, "{}", header.join(","))?;
        for row in self.values.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty sample file".into()))??;
        let names: Vec<&str> = header.trim().split(',').collect();
        for (i, name) in names.iter().enumerate() {
            if *name != format!("x{i}") {
                return Err(Error::Parse(format!(
                    "unexpected column `{name}` at position {i}"
                )));
            }
        }
        let modes = names.len();
        let mut data = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let row: Vec<f64> = line
                .trim()
                .split(',')
                .map(|cell| {
                    cell.trim()
                        .parse::<f64>()
                        .map_err(|e| Error::Parse(format!("line {}: `{cell}`: {e}", lineno + 2)))
                })
                .collect::<Result<_>>()?;
            if row.len() != modes {
                return Err(Error::Parse(format!(
                    "line {}: {} columns, expected {modes}",
                    lineno + 2,
                    row.len()
                )));
            }
            data.extend(row);
        }
        let shots = data.len() / modes.max(1);
        let values = Array2::from_shape_vec((shots, modes), data)
            .map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(values)
    }
}

/// Sampler bound to one state. Building it does all per-state work, so it
/// can be reused across seeds.
#[derive(Debug, Clone)]
pub struct HomodyneSampler {
    chain: Chain,
    basis: ModeBasis,
    first: ModeDistribution,
    hbar: f64,
    erf: ErfMode,
}

impl HomodyneSampler {
    pub fn new<'a>(
        source: impl Into<HomodyneSource<'a>>,
        hbar: f64,
        angles: Option<&[f64]>,
        erf: ErfMode,
    ) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::Usage(format!("hbar must be positive, got {hbar}")));
        }
        let chain = Chain::new(source.into(), angles)?;
        let basis = ModeBasis::new(chain.cutoff());
        let rho0 = chain.conditional(&chain.new_shot(), 0);
        let first = ModeDistribution::from_matrix(&basis, rho0.view(), hbar).with_erf(erf);
        Ok(Self {
            chain,
            basis,
            first,
            hbar,
            erf,
        })
    }

    pub fn modes(&self) -> usize {
        self.chain.modes()
    }

    /// Draws `shots` samples. Shot `k` uses its own ChaCha8 stream of
    /// `seed`, so results do not depend on the thread count.
    pub fn sample(&self, shots: usize, seed: u64) -> Result<SampleMatrix> {
        if shots == 0 {
            return Err(Error::Usage("shots must be at least 1".into()));
        }
        let rows: Vec<Result<Vec<f64>>> = (0..shots)
            .into_par_iter()
            .map(|shot| self.sample_shot(shot, seed))
            .collect();
        let d = self.modes();
        let mut data = Vec::with_capacity(shots * d);
        for row in rows {
            data.extend(row?);
        }
        SampleMatrix::new(Array2::from_shape_vec((shots, d), data).expect("rows have d entries"))
    }

    fn sample_shot(&self, shot: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(shot as u64);
        let d = self.modes();
        let scale = self.hbar.sqrt();
        let wrap = |mode: usize, e: Error| Error::Sampling {
            shot,
            mode,
            source: Box::new(e),
        };
        let mut state = self.chain.new_shot();
        let mut out = Vec::with_capacity(d);
        for i in 0..d {
            let u: f64 = rng.sample(Open01);
            let rho = (i > 0 || d > 1).then(|| self.chain.conditional(&state, i));
            let t = match (&rho, i) {
                (_, 0) => self.first.invert(u),
                (Some(rho), _) => ModeDistribution::from_matrix(&self.basis, rho.view(), self.hbar)
                    .with_erf(self.erf)
                    .invert(u),
                (None, _) => unreachable!(),
            }
            .map_err(|e| wrap(i, e))?;
            if let (Some(rho), true) = (&rho, i + 1 < d) {
                self.chain
                    .condition(&mut state, i, rho, t)
                    .map_err(|e| wrap(i, e))?;
            }
            out.push(t * scale);
        }
        Ok(out)
    }
}

/// Samples `shots` rows of position quadratures (rotated by `opts.angles`
/// when given) from a normalized state.
pub fn sample_homodyne<'a>(
    source: impl Into<HomodyneSource<'a>>,
    shots: usize,
    opts: &SampleOptions,
) -> Result<SampleMatrix> {
    HomodyneSampler::new(source, opts.hbar, opts.angles.as_deref(), opts.erf)?
        .sample(shots, opts.seed)
}
