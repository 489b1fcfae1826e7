//! Truncated multimode Fock space.
//!
//! A `d`-mode space is truncated by total photon number: an occupation
//! vector `n` belongs to the space iff `n_0 + … + n_{d-1} < c`. The basis is
//! ordered by total photon number first and lexicographically within each
//! total, so every photon-number sector is a contiguous block of indices.
//!
//! ```
//! use cvbm::fock::{CutoffSpec, FockIndexMap};
//!
//! let map = FockIndexMap::new(CutoffSpec::new(2, 2).unwrap());
//! let basis: Vec<&[usize]> = map.iter().collect();
//! assert_eq!(basis, vec![&[0, 0][..], &[0, 1], &[1, 0]]);
//! assert_eq!(map.index_of(&[1, 0]).unwrap(), 2);
//! ```

use std::sync::Arc;

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for hermiticity and PSD checks on density matrices.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Traces at or below this value cannot be normalized.
pub const DEGENERATE_TRACE: f64 = 1e-14;

/// Number of modes and the exclusive bound on total photon number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutoffSpec {
    modes: usize,
    cutoff: usize,
}

impl CutoffSpec {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::Validation("number of modes must be positive".into()));
        }
        if cutoff == 0 {
            return Err(Error::Validation("cutoff must be positive".into()));
        }
        Ok(Self { modes, cutoff })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dimension(&self) -> usize {
        space_dimension(*self)
    }
}

/// `binomial(d + c - 1, d)`: the number of occupation vectors with total
/// photon number below the cutoff.
pub fn space_dimension(spec: CutoffSpec) -> usize {
    binomial(spec.modes + spec.cutoff - 1, spec.modes)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of ways to write `total` as an ordered sum of `parts`
/// non-negative integers.
fn compositions(total: usize, parts: usize) -> usize {
    if parts == 0 {
        usize::from(total == 0)
    } else {
        binomial(total + parts - 1, parts - 1)
    }
}

/// Bijection between occupation vectors and contiguous basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockIndexMap {
    spec: CutoffSpec,
    // Row-major, `modes` entries per basis vector.
    occupations: Vec<usize>,
}

impl FockIndexMap {
    pub fn new(spec: CutoffSpec) -> Self {
        let d = spec.modes;
        let mut occupations = Vec::with_capacity(space_dimension(spec) * d);
        let mut current = vec![0usize; d];
        for total in 0..spec.cutoff {
            push_compositions(&mut occupations, &mut current, 0, total);
        }
        Self { spec, occupations }
    }

    pub fn spec(&self) -> CutoffSpec {
        self.spec
    }

    pub fn modes(&self) -> usize {
        self.spec.modes
    }

    pub fn cutoff(&self) -> usize {
        self.spec.cutoff
    }

    pub fn dim(&self) -> usize {
        self.occupations.len() / self.spec.modes
    }

    /// Occupation vector stored at basis index `index`.
    ///
    /// Panics if `index >= self.dim()`.
    pub fn occupation(&self, index: usize) -> &[usize] {
        let d = self.spec.modes;
        &self.occupations[index * d..(index + 1) * d]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.occupations.chunks_exact(self.spec.modes)
    }

    pub fn index_of(&self, occupation: &[usize]) -> Result<usize> {
        let d = self.spec.modes;
        if occupation.len() != d {
            return Err(Error::Domain(format!(
                "occupation vector has {} entries, expected {d}",
                occupation.len()
            )));
        }
        let total: usize = occupation.iter().sum();
        if total >= self.spec.cutoff {
            return Err(Error::Domain(format!(
                "occupation {occupation:?} has {total} photons, cutoff is {}",
                self.spec.cutoff
            )));
        }
        // Vectors with fewer photons come first.
        let mut index = binomial(total + d - 1, d);
        let mut remaining = total;
        for (i, &n) in occupation.iter().enumerate().take(d - 1) {
            for v in 0..n {
                index += compositions(remaining - v, d - i - 1);
            }
            remaining -= n;
        }
        Ok(index)
    }

    /// Groups basis vectors that agree on every mode outside `local_modes`.
    ///
    /// Each fiber lists `(local index, global index)` pairs, where the local
    /// index refers to the `local_modes.len()`-mode space with the same
    /// cutoff (in the order given by `local_modes`). Members are sorted by
    /// local index.
    pub fn fibers(&self, local_modes: &[usize]) -> Result<Vec<Fiber>> {
        let d = self.spec.modes;
        validate_mode_subset(local_modes, d)?;
        let rest_modes: Vec<usize> = (0..d).filter(|m| !local_modes.contains(m)).collect();
        let local_map = FockIndexMap::new(CutoffSpec::new(local_modes.len(), self.spec.cutoff)?);
        let rest_map = if rest_modes.is_empty() {
            None
        } else {
            Some(FockIndexMap::new(CutoffSpec::new(
                rest_modes.len(),
                self.spec.cutoff,
            )?))
        };
        let rest_dim = rest_map.as_ref().map_or(1, FockIndexMap::dim);

        let mut slot: Vec<Option<usize>> = vec![None; rest_dim];
        let mut fibers: Vec<Fiber> = Vec::new();
        let mut local_occ = vec![0; local_modes.len()];
        let mut rest_occ = vec![0; rest_modes.len()];
        for (global, occ) in self.iter().enumerate() {
            for (k, &m) in local_modes.iter().enumerate() {
                local_occ[k] = occ[m];
            }
            for (k, &m) in rest_modes.iter().enumerate() {
                rest_occ[k] = occ[m];
            }
            let rest_index = match &rest_map {
                Some(map) => map.index_of(&rest_occ)?,
                None => 0,
            };
            let local_index = local_map.index_of(&local_occ)?;
            let f = *slot[rest_index].get_or_insert_with(|| {
                fibers.push(Fiber {
                    rest_index,
                    rest_photons: rest_occ.iter().sum(),
                    members: Vec::new(),
                });
                fibers.len() - 1
            });
            fibers[f].members.push((local_index, global));
        }
        for fiber in &mut fibers {
            fiber.members.sort_unstable();
        }
        Ok(fibers)
    }
}

fn push_compositions(out: &mut Vec<usize>, current: &mut [usize], pos: usize, remaining: usize) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.extend_from_slice(current);
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        push_compositions(out, current, pos + 1, remaining - v);
    }
}

fn validate_mode_subset(modes: &[usize], d: usize) -> Result<()> {
    if modes.is_empty() {
        return Err(Error::Usage("mode subset must not be empty".into()));
    }
    for (i, &m) in modes.iter().enumerate() {
        if m >= d {
            return Err(Error::Usage(format!("mode {m} out of range for {d} modes")));
        }
        if modes[..i].contains(&m) {
            return Err(Error::Usage(format!("mode {m} listed twice")));
        }
    }
    Ok(())
}

/// Basis vectors sharing the occupations of the modes outside a subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// Index of the shared occupation in the complementary-mode space.
    pub rest_index: usize,
    /// Photons held by the complementary modes.
    pub rest_photons: usize,
    /// `(local index, global index)` pairs sorted by local index.
    pub members: Vec<(usize, usize)>,
}

/// Normalized (or about to be normalized) state vector over the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    map: Arc<FockIndexMap>,
    amplitudes: Array1<Complex64>,
}

impl PureState {
    pub fn vacuum(spec: CutoffSpec) -> Self {
        let map = Arc::new(FockIndexMap::new(spec));
        let mut amplitudes = Array1::zeros(map.dim());
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self { map, amplitudes }
    }

    /// The Fock state `|n_0, …, n_{d-1}⟩`.
    pub fn basis_state(spec: CutoffSpec, occupation: &[usize]) -> Result<Self> {
        let map = Arc::new(FockIndexMap::new(spec));
        let idx = map.index_of(occupation)?;
        let mut amplitudes = Array1::zeros(map.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { map, amplitudes })
    }

    /// Wraps raw amplitudes without normalizing them.
    pub fn from_amplitudes(map: Arc<FockIndexMap>, amplitudes: Array1<Complex64>) -> Result<Self> {
        if amplitudes.len() != map.dim() {
            return Err(Error::Usage(format!(
                "{} amplitudes given for a basis of size {}",
                amplitudes.len(),
                map.dim()
            )));
        }
        Ok(Self { map, amplitudes })
    }

    pub fn index_map(&self) -> &Arc<FockIndexMap> {
        &self.map
    }

    pub fn spec(&self) -> CutoffSpec {
        self.map.spec()
    }

    pub fn amplitudes(&self) -> &Array1<Complex64> {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut Array1<Complex64> {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<Complex64> {
        self.amplitudes
    }

    pub fn amplitude(&self, occupation: &[usize]) -> Result<Complex64> {
        Ok(self.amplitudes[self.map.index_of(occupation)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(Complex64::norm_sqr).sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 <= DEGENERATE_TRACE {
            return Err(Error::DegenerateState {
                trace: n2,
                threshold: DEGENERATE_TRACE,
            });
        }
        let scale = 1.0 / n2.sqrt();
        Ok(Self {
            map: Arc::clone(&self.map),
            amplitudes: self.amplitudes.mapv(|a| a * scale),
        })
    }
}

/// Hermitian matrix `ρ_{n,m}` over the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    map: Arc<FockIndexMap>,
    entries: Array2<Complex64>,
}

impl DensityMatrix {
    /// Validates shape, hermiticity and the sign of the diagonal. The trace
    /// is left alone; see [`DensityMatrix::normalize`].
    pub fn from_entries(map: Arc<FockIndexMap>, entries: Array2<Complex64>) -> Result<Self> {
        let dim = map.dim();
        if entries.dim() != (dim, dim) {
            return Err(Error::Usage(format!(
                "density matrix of shape {:?} for a basis of size {dim}",
                entries.dim()
            )));
        }
        for i in 0..dim {
            let diag = entries[[i, i]];
            if diag.im.abs() > HERMITIAN_TOL || diag.re < -1e-12 {
                return Err(Error::Validation(format!(
                    "diagonal entry {i} is {diag}, expected real and non-negative"
                )));
            }
            for j in 0..i {
                let diff = (entries[[i, j]] - entries[[j, i]].conj()).norm();
                if diff > HERMITIAN_TOL {
                    return Err(Error::Validation(format!(
                        "matrix is not Hermitian at ({i}, {j}): mismatch {diff:e}"
                    )));
                }
            }
        }
        Ok(Self { map, entries })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn outer_product(state: &PureState) -> Self {
        let a = state.amplitudes();
        let dim = a.len();
        let entries = Array2::from_shape_fn((dim, dim), |(i, j)| a[i] * a[j].conj());
        Self {
            map: Arc::clone(state.index_map()),
            entries,
        }
    }

    pub fn index_map(&self) -> &Arc<FockIndexMap> {
        &self.map
    }

    pub fn spec(&self) -> CutoffSpec {
        self.map.spec()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.diag().iter().map(|z| z.re).sum()
    }

    pub fn normalize(&self) -> Result<Self> {
        let trace = self.trace();
        if trace <= DEGENERATE_TRACE {
            return Err(Error::DegenerateState {
                trace,
                threshold: DEGENERATE_TRACE,
            });
        }
        Ok(Self {
            map: Arc::clone(&self.map),
            entries: self.entries.mapv(|z| z / trace),
        })
    }

    /// Traces out every mode not in `keep_modes`. Mode `k` of the result is
    /// mode `keep_modes[k]` of `self`; the cutoff is unchanged.
    pub fn partial_trace(&self, keep_modes: &[usize]) -> Result<Self> {
        let fibers = self.map.fibers(keep_modes)?;
        let reduced_map = Arc::new(FockIndexMap::new(CutoffSpec::new(
            keep_modes.len(),
            self.map.cutoff(),
        )?));
        let n = reduced_map.dim();
        let mut out = Array2::<Complex64>::zeros((n, n));
        for fiber in &fibers {
            for &(li, gi) in &fiber.members {
                for &(lj, gj) in &fiber.members {
                    out[[li, lj]] += self.entries[[gi, gj]];
                }
            }
        }
        Ok(Self {
            map: reduced_map,
            entries: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(d: usize, c: usize) -> CutoffSpec {
        CutoffSpec::new(d, c).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(space_dimension(spec(1, 7)), 7);
        assert_eq!(space_dimension(spec(2, 3)), 6);
        assert_eq!(space_dimension(spec(3, 1)), 1);
        assert_eq!(space_dimension(spec(6, 7)), 924);
    }

    #[test]
    fn rejects_empty_spec() {
        assert!(CutoffSpec::new(0, 3).is_err());
        assert!(CutoffSpec::new(2, 0).is_err());
    }

    #[test]
    fn enumeration_order() {
        let m = FockIndexMap::new(spec(2, 2));
        let v: Vec<Vec<usize>> = m.iter().map(<[usize]>::to_vec).collect();
        assert_eq!(v, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);

        let m = FockIndexMap::new(spec(1, 3));
        let v: Vec<Vec<usize>> = m.iter().map(<[usize]>::to_vec).collect();
        assert_eq!(v, vec![vec![0], vec![1], vec![2]]);

        let m = FockIndexMap::new(spec(2, 1));
        assert_eq!(m.dim(), 1);
        assert_eq!(m.occupation(0), &[0, 0]);
    }

    #[test]
    fn index_lookup() {
        let m = FockIndexMap::new(spec(2, 2));
        assert_eq!(m.index_of(&[0, 0]).unwrap(), 0);
        assert_eq!(m.index_of(&[1, 0]).unwrap(), 2);
        assert!(matches!(m.index_of(&[1, 1]), Err(Error::Domain(_))));
        assert!(matches!(m.index_of(&[0]), Err(Error::Domain(_))));
    }

    #[test]
    fn outer_product_of_vacuum() {
        let rho = DensityMatrix::outer_product(&PureState::vacuum(spec(2, 3)));
        assert_eq!(rho.entries()[[0, 0]], Complex64::new(1.0, 0.0));
        assert_eq!(rho.entries().iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn outer_product_is_rank_one() {
        let map = Arc::new(FockIndexMap::new(spec(2, 3)));
        let amps = Array1::from_shape_fn(map.dim(), |i| {
            Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos())
        });
        let psi = PureState::from_amplitudes(map, amps)
            .unwrap()
            .normalized()
            .unwrap();
        let rho = DensityMatrix::outer_product(&psi);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        let e = rho.entries();
        let n = e.nrows();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let minor = e[[i, k]] * e[[j, l]] - e[[i, l]] * e[[j, k]];
                        assert!(minor.norm() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn partial_trace_of_product_vacuum() {
        let rho = DensityMatrix::outer_product(&PureState::vacuum(spec(2, 3)));
        let r = rho.partial_trace(&[1]).unwrap();
        assert_eq!(r.spec(), spec(1, 3));
        assert!((r.entries()[[0, 0]].re - 1.0).abs() < 1e-15);
        assert!((r.trace() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_of_entangled_pair() {
        let s = spec(2, 2);
        let map = Arc::new(FockIndexMap::new(s));
        let mut amps = Array1::zeros(3);
        amps[map.index_of(&[0, 1]).unwrap()] = Complex64::new(1.0, 0.0);
        amps[map.index_of(&[1, 0]).unwrap()] = Complex64::new(1.0, 0.0);
        let psi = PureState::from_amplitudes(map, amps)
            .unwrap()
            .normalized()
            .unwrap();
        let r = DensityMatrix::outer_product(&psi)
            .partial_trace(&[0])
            .unwrap();
        assert!((r.entries()[[0, 0]].re - 0.5).abs() < 1e-12);
        assert!((r.entries()[[1, 1]].re - 0.5).abs() < 1e-12);
        assert!(r.entries()[[0, 1]].norm() < 1e-12);
    }

    #[test]
    fn partial_trace_rejects_bad_subsets() {
        let rho = DensityMatrix::outer_product(&PureState::vacuum(spec(2, 3)));
        assert!(matches!(rho.partial_trace(&[]), Err(Error::Usage(_))));
        assert!(matches!(rho.partial_trace(&[2]), Err(Error::Usage(_))));
        assert!(matches!(rho.partial_trace(&[0, 0]), Err(Error::Usage(_))));
    }

    #[test]
    fn normalize_rescales_and_rejects_zero() {
        let map = Arc::new(FockIndexMap::new(spec(1, 2)));
        let mut e = Array2::zeros((2, 2));
        e[[0, 0]] = Complex64::new(2.0, 0.0);
        let rho = DensityMatrix::from_entries(Arc::clone(&map), e).unwrap();
        let n = rho.normalize().unwrap();
        assert_eq!(n.entries()[[0, 0]], Complex64::new(1.0, 0.0));
        let again = n.normalize().unwrap();
        assert!((&again.entries - &n.entries)
            .iter()
            .all(|z| z.norm() < 1e-14));

        let zero = DensityMatrix::from_entries(map, Array2::zeros((2, 2))).unwrap();
        assert!(matches!(
            zero.normalize(),
            Err(Error::DegenerateState { .. })
        ));
    }

    #[test]
    fn rejects_non_hermitian() {
        let map = Arc::new(FockIndexMap::new(spec(1, 2)));
        let mut e = Array2::zeros((2, 2));
        e[[0, 0]] = Complex64::new(1.0, 0.0);
        e[[0, 1]] = Complex64::new(0.5, 0.0);
        assert!(matches!(
            DensityMatrix::from_entries(map, e),
            Err(Error::Validation(_))
        ));
    }

    proptest! {
        #[test]
        fn index_roundtrip(d in 1usize..5, c in 1usize..8) {
            let m = FockIndexMap::new(spec(d, c));
            prop_assert_eq!(m.dim(), space_dimension(spec(d, c)));
            for i in 0..m.dim() {
                prop_assert_eq!(m.index_of(m.occupation(i)).unwrap(), i);
                prop_assert!(m.occupation(i).iter().sum::<usize>() < c);
            }
        }
    }
}
