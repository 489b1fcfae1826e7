//! Reference implementations used as test oracles.
//!
//! Nothing here shares code with the library's numerical paths: Hermite
//! functions come from the unnormalized recurrence with log-factorial
//! scaling, integrals from adaptive Gauss–Kronrod quadrature, and erf from
//! `statrs` (good to about 1e-11, which bounds how tight an erf-based
//! comparison can be).

use std::f64::consts::PI;
use std::sync::Arc;

use cvbm::fock::{CutoffSpec, DensityMatrix, FockIndexMap};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use statrs::function::erf::erf;

/// Natural-units oscillator eigenfunction `ψ_n(x)` via the unnormalized
/// Hermite recurrence.
pub fn psi(n: usize, x: f64) -> f64 {
    let (mut h0, mut h1) = (1.0f64, 2.0 * x);
    let h = match n {
        0 => h0,
        1 => h1,
        _ => {
            for k in 1..n {
                let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                h0 = h1;
                h1 = h2;
            }
            h1
        }
    };
    let log_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
    let log_norm = -0.25 * PI.ln() - 0.5 * (n as f64 * 2f64.ln() + log_fact);
    h * (log_norm - 0.5 * x * x).exp()
}

/// `⟨x|ρ|x⟩` for a single-mode matrix, natural units.
pub fn single_mode_density(rho: &Array2<Complex64>, x: f64) -> f64 {
    let c = rho.nrows();
    let v: Vec<f64> = (0..c).map(|n| psi(n, x)).collect();
    let mut acc = 0.0;
    for n in 0..c {
        for m in 0..c {
            acc += (rho[[n, m]] * v[n] * v[m]).re;
        }
    }
    acc
}

/// Joint position amplitude `⟨x_0, …, x_{d−1}|ψ⟩`, natural units.
pub fn joint_amplitude(map: &FockIndexMap, amps: &Array1<Complex64>, x: &[f64]) -> Complex64 {
    let c = map.cutoff();
    let table: Vec<Vec<f64>> = x
        .iter()
        .map(|&xi| (0..c).map(|n| psi(n, xi)).collect())
        .collect();
    map.iter()
        .zip(amps.iter())
        .map(|(occ, a)| {
            a * occ
                .iter()
                .enumerate()
                .map(|(j, &n)| table[j][n])
                .product::<f64>()
        })
        .sum()
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const K15_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728,
];
const G7_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut k = K15_WEIGHTS[7] * fc;
    let mut g = G7_WEIGHTS[3] * fc;
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let s = f(mid - dx) + f(mid + dx);
        k += K15_WEIGHTS[i] * s;
        if i % 2 == 1 {
            g += G7_WEIGHTS[i / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Adaptive Gauss–Kronrod (7/15) integral of `f` over `[a, b]` to absolute
/// tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return val;
        }
        let m = 0.5 * (a + b);
        rec(f, a, m, tol / 2.0, depth - 1) + rec(f, m, b, tol / 2.0, depth - 1)
    }
    rec(&f, a, b, tol, 40)
}

/// Random normalized density matrix `GG†/tr(GG†)` from a complex Ginibre
/// matrix `G` of shape `dim × rank`.
pub fn random_density(dim: usize, rank: usize, rng: &mut ChaCha8Rng) -> Array2<Complex64> {
    let g = Array2::from_shape_fn((dim, rank), |_| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut rho = g.dot(&g.t().mapv(|z| z.conj()));
    let tr: f64 = rho.diag().iter().map(|z| z.re).sum();
    rho.mapv_inplace(|z| z / tr);
    rho
}

/// Random unit vector with complex normal entries.
pub fn random_state(dim: usize, rng: &mut ChaCha8Rng) -> Array1<Complex64> {
    let v = Array1::from_shape_fn(dim, |_| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v / Complex64::new(n, 0.0)
}

pub fn density_matrix(modes: usize, cutoff: usize, entries: Array2<Complex64>) -> DensityMatrix {
    let map = Arc::new(FockIndexMap::new(CutoffSpec::new(modes, cutoff).unwrap()));
    DensityMatrix::from_entries(map, entries).unwrap()
}

/// Partial trace by direct comparison of occupation vectors.
pub fn brute_partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Array2<Complex64> {
    let map = rho.index_map();
    let reduced = FockIndexMap::new(CutoffSpec::new(keep.len(), map.cutoff()).unwrap());
    let d = map.modes();
    let traced: Vec<usize> = (0..d).filter(|m| !keep.contains(m)).collect();
    let mut out = Array2::<Complex64>::zeros((reduced.dim(), reduced.dim()));
    for i in 0..map.dim() {
        for j in 0..map.dim() {
            let (oi, oj) = (map.occupation(i), map.occupation(j));
            if traced.iter().all(|&m| oi[m] == oj[m]) {
                let ki: Vec<usize> = keep.iter().map(|&m| oi[m]).collect();
                let kj: Vec<usize> = keep.iter().map(|&m| oj[m]).collect();
                let (a, b) = (
                    reduced.index_of(&ki).unwrap(),
                    reduced.index_of(&kj).unwrap(),
                );
                out[[a, b]] += rho.entries()[[i, j]];
            }
        }
    }
    out
}

/// Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    s.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + erf(x / std::f64::consts::SQRT_2))
}

/// Population `MMD²` between `N(μ_p, s_p²)` and `N(μ_q, s_q²)` under a
/// Gaussian kernel of width `σ`: `E k(x, y) = σ/√(σ² + v) · exp(−Δ²/2(σ² + v))`
/// for independent `x`, `y` with variance sum `v` and mean gap `Δ`.
pub fn gaussian_mmd(mu_p: f64, s_p: f64, mu_q: f64, s_q: f64, sigma: f64) -> f64 {
    let ek = |delta: f64, v: f64| {
        let t = sigma * sigma + v;
        sigma / t.sqrt() * (-delta * delta / (2.0 * t)).exp()
    };
    ek(0.0, 2.0 * s_p * s_p) + ek(0.0, 2.0 * s_q * s_q)
        - 2.0 * ek(mu_p - mu_q, s_p * s_p + s_q * s_q)
}

/// Sample mean and standard error of the mean.
pub fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
