use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::sync::Arc;

use cvbm::fock::{CutoffSpec, FockIndexMap, PureState};
use cvbm::gates::{
    apply_circuit, apply_gates, gate_unitary, ladder_matrices, shifted_circuits, Circuit, Gate,
    LocalUnitary, Param, ShiftRule,
};
use cvbm::Error;
use cvbm_testkit::random_state;
use ndarray::Array2;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Generalized Laguerre polynomial `L_n^{(a)}(x)` by its explicit sum.
fn laguerre(n: usize, a: usize, x: f64) -> f64 {
    (0..=n)
        .map(|k| {
            let binom = fact(n + a) / (fact(n - k) * fact(a + k));
            (-1f64).powi(k as i32) * binom * x.powi(k as i32) / fact(k)
        })
        .sum()
}

/// `⟨m|D(r)|n⟩` for real `r`.
fn displacement_element(m: usize, n: usize, r: f64) -> f64 {
    let (lo, hi) = (m.min(n), m.max(n));
    let sign = if m < n {
        (-1f64).powi((n - m) as i32)
    } else {
        1.0
    };
    sign * (fact(lo) / fact(hi)).sqrt()
        * r.powi((hi - lo) as i32)
        * (-r * r / 2.0).exp()
        * laguerre(lo, hi - lo, r * r)
}

/// Tensor-product two-mode beamsplitter by plain Taylor series, per-mode
/// cutoff `k`; independent of the library's block construction.
fn beamsplitter_oracle(k: usize, theta: f64) -> Array2<Complex64> {
    let (a, ad) = ladder_matrices(k);
    let eye = Array2::<Complex64>::eye(k);
    let kron = |x: &Array2<Complex64>, y: &Array2<Complex64>| {
        Array2::from_shape_fn((k * k, k * k), |(i, j)| {
            x[[i / k, j / k]] * y[[i % k, j % k]]
        })
    };
    // θ(a_j a_k† − a_j† a_k)
    let g = (kron(&a, &eye).dot(&kron(&eye, &ad)) - kron(&ad, &eye).dot(&kron(&eye, &a)))
        .mapv(|z| z * theta);
    let mut term = Array2::<Complex64>::eye(k * k);
    let mut sum = term.clone();
    for n in 1..80 {
        term = term.dot(&g).mapv(|z| z / n as f64);
        sum += &term;
    }
    sum
}

#[test]
fn ladder_commutator() {
    for cutoff in [1, 2, 5, 9] {
        let (a, ad) = ladder_matrices(cutoff);
        let comm = a.dot(&ad) - ad.dot(&a);
        for i in 0..cutoff {
            for j in 0..cutoff {
                let expected = match (i == j, i + 1 == cutoff) {
                    (true, true) => c(1.0 - cutoff as f64),
                    (true, false) => c(1.0),
                    _ => c(0.0),
                };
                assert!((comm[[i, j]] - expected).norm() < 1e-14);
            }
        }
        let number = ad.dot(&a);
        for n in 0..cutoff {
            assert!((number[[n, n]] - c(n as f64)).norm() < 1e-14);
        }
    }
}

#[test]
fn beamsplitter_splits_a_photon_evenly() {
    let spec = CutoffSpec::new(2, 4).unwrap();
    let input = PureState::basis_state(spec, &[1, 0]).unwrap();
    let out = apply_gates(&input, &[Gate::beamsplitter(0, 1, FRAC_PI_4, 0.0)], 10, 2.0).unwrap();
    let p10 = out.amplitude(&[1, 0]).unwrap().norm_sqr();
    let p01 = out.amplitude(&[0, 1]).unwrap().norm_sqr();
    assert!((p10 - 0.5).abs() < 1e-8 && (p01 - 0.5).abs() < 1e-8);
}

#[test]
fn beamsplitter_matches_tensor_product_oracle() {
    let cutoff = 5;
    let theta = 0.7;
    let oracle = beamsplitter_oracle(cutoff, theta);
    let local = gate_unitary(&Gate::beamsplitter(0, 1, theta, 0.0), cutoff, 0, 2.0).to_dense();
    let map = FockIndexMap::new(CutoffSpec::new(2, cutoff).unwrap());
    for (i, oi) in map.iter().enumerate() {
        for (j, oj) in map.iter().enumerate() {
            let expected = oracle[[oi[0] * cutoff + oi[1], oj[0] * cutoff + oj[1]]];
            assert!((local[[i, j]] - expected).norm() < 1e-12, "{oi:?} {oj:?}");
        }
    }
}

#[test]
fn displacement_matches_laguerre_elements() {
    for r in [0.3, 1.0, 1.5] {
        let u = gate_unitary(&Gate::displacement(0, r, 0.0), 10, 10, 2.0).to_dense();
        for n in 0..=5 {
            for m in 0..10 {
                let e = displacement_element(m, n, r);
                assert!((u[[m, n]] - c(e)).norm() < 1e-6, "r={r} <{m}|D|{n}>");
            }
        }
    }
}

#[test]
fn displacement_of_vacuum_is_coherent() {
    for (r, phi) in [(1.0, 0.0), (0.6, 1.1), (0.25, -2.0)] {
        let alpha = Complex64::from_polar(r, phi);
        let u = gate_unitary(&Gate::displacement(0, r, phi), 10, 10, 2.0).to_dense();
        for n in 0..10 {
            let expected = alpha.powu(n as u32) * (-r * r / 2.0).exp() / fact(n).sqrt();
            assert!((u[[n, 0]] - expected).norm() < 1e-8, "α={alpha} n={n}");
        }
    }
}

#[test]
fn squeezing_matches_closed_form_columns() {
    for r in [0.2f64, 0.8, 1.5] {
        let u = gate_unitary(&Gate::squeezing(0, r), 12, 60, 2.0).to_dense();
        let t = -r.tanh();
        for k in 0..6 {
            let even = t.powi(k as i32) * fact(2 * k).sqrt()
                / (2f64.powi(k as i32) * fact(k))
                / r.cosh().sqrt();
            assert!((u[[2 * k, 0]] - c(even)).norm() < 1e-6, "r={r} k={k}");
            if 2 * k + 1 < 12 {
                let odd = t.powi(k as i32) * fact(2 * k + 1).sqrt()
                    / (2f64.powi(k as i32) * fact(k))
                    / r.cosh().powf(1.5);
                assert!((u[[2 * k + 1, 1]] - c(odd)).norm() < 1e-6, "r={r} k={k}");
            }
        }
    }
}

#[test]
fn cubic_phase_is_diagonal_in_position() {
    // exp(iγx³/3ħ) commutes with x̂, so ⟨x⟩ and ⟨x²⟩ of a low-lying state are
    // unchanged while the photon statistics are not.
    let cutoff = 40;
    let hbar: f64 = 2.0;
    let (a, ad) = ladder_matrices(cutoff);
    let x = (&a + &ad).mapv(|z| z * (hbar / 2.0).sqrt());
    let u = gate_unitary(&Gate::cubic_phase(0, 0.2), cutoff, 10, hbar).to_dense();
    let mut psi = ndarray::Array1::<Complex64>::zeros(cutoff);
    psi[0] = c(0.8);
    psi[1] = Complex64::new(0.0, 0.6);
    let out = u.dot(&psi);
    let expect = |v: &ndarray::Array1<Complex64>, op: &Array2<Complex64>| {
        v.iter()
            .zip(op.dot(v).iter())
            .map(|(p, q)| (p.conj() * q).re)
            .sum::<f64>()
    };
    let x2 = x.dot(&x);
    assert!((expect(&psi, &x) - expect(&out, &x)).abs() < 1e-6);
    assert!((expect(&psi, &x2) - expect(&out, &x2)).abs() < 1e-6);
    assert!((out[1].norm_sqr() - psi[1].norm_sqr()).abs() > 1e-3);
}

#[test]
fn diagonal_gates_are_exactly_unitary() {
    for gate in [Gate::phaseshift(0, 1.234), Gate::cross_kerr(0, 1, -0.77)] {
        match gate_unitary(&gate, 6, 0, 2.0) {
            LocalUnitary::Diagonal(d) => assert!(d.iter().all(|z| (z.norm() - 1.0).abs() < 1e-15)),
            LocalUnitary::Dense(_) => panic!("{} should be diagonal", gate.name()),
        }
    }
}

#[test]
fn zero_parameters_leave_the_input() {
    let spec = CutoffSpec::new(2, 5).unwrap();
    let circuit = Circuit::builder(spec)
        .gate(Gate::displacement(0, 0.0, 0.4))
        .gate(Gate::squeezing(1, 0.0))
        .gate(Gate::cubic_phase(0, 0.0))
        .gate(Gate::cross_kerr(0, 1, 0.0))
        .build()
        .unwrap()
        .with_input(cvbm::gates::InputState::Fock(vec![1, 2]))
        .unwrap();
    let out = apply_circuit(&circuit, &[]).unwrap();
    assert_eq!(out.leakage, 0.0);
    assert_eq!(out.state, PureState::basis_state(spec, &[1, 2]).unwrap());
}

#[test]
fn binding_rules() {
    let spec = CutoffSpec::new(2, 4).unwrap();
    let non_gaussian = Circuit::builder(spec)
        .trainable(Gate::cubic_phase(0, 0.1), Param::Gamma)
        .build();
    assert!(matches!(non_gaussian, Err(Error::Validation(_))));
    let before_kerr = Circuit::builder(spec)
        .trainable(Gate::squeezing(0, 0.0), Param::R)
        .gate(Gate::cross_kerr(0, 1, 0.1))
        .build();
    assert!(matches!(before_kerr, Err(Error::Validation(_))));
    let bad_mode = Circuit::builder(spec)
        .gate(Gate::phaseshift(2, 0.1))
        .build();
    assert!(matches!(bad_mode, Err(Error::Validation(_))));
    let same_modes = Circuit::builder(spec)
        .gate(Gate::beamsplitter(1, 1, 0.1, 0.0))
        .build();
    assert!(matches!(same_modes, Err(Error::Validation(_))));
}

#[test]
fn shift_rule_table() {
    let spec = CutoffSpec::new(2, 4).unwrap();
    let circuit = Circuit::builder(spec)
        .trainable(Gate::squeezing(0, 0.0), Param::R)
        .trainable(Gate::beamsplitter(0, 1, 0.0, 0.0), Param::Theta)
        .trainable(Gate::displacement(1, 0.0, 0.0), Param::R)
        .trainable(Gate::phaseshift(0, 0.0), Param::Phi)
        .trainable(Gate::beamsplitter(0, 1, 0.0, 0.0), Param::Phi)
        .build()
        .unwrap();
    let w = [0.3, 0.1, 0.2, -0.4, 0.0];
    let rule = ShiftRule {
        displacement: 0.5,
        squeezing: 1.0,
    };
    let s = shifted_circuits(&circuit, &w, 0, rule).unwrap();
    assert!((s.plus[0] - 1.3).abs() < 1e-15 && (s.minus[0] + 0.7).abs() < 1e-15);
    assert!((s.multiplier - 0.850_918_128).abs() < 1e-9);
    let s = shifted_circuits(&circuit, &w, 1, rule).unwrap();
    assert_eq!(
        (s.plus[1] - w[1], w[1] - s.minus[1], s.multiplier),
        (FRAC_PI_2, FRAC_PI_2, 1.0)
    );
    let s = shifted_circuits(&circuit, &w, 2, rule).unwrap();
    assert_eq!((s.plus[2], s.minus[2], s.multiplier), (0.7, -0.3, 2.0));
    let s = shifted_circuits(&circuit, &w, 3, rule).unwrap();
    assert_eq!((s.plus[3] - w[3], s.multiplier), (FRAC_PI_2, 1.0));
    assert!(matches!(
        shifted_circuits(&circuit, &w, 4, rule),
        Err(Error::UnsupportedGradient(_))
    ));
}

#[test]
fn leakage_is_reported_and_bounded() {
    let spec = CutoffSpec::new(1, 6).unwrap();
    let circuit = Circuit::builder(spec)
        .trainable(Gate::displacement(0, 0.0, 0.0), Param::R)
        .build()
        .unwrap();
    let small = apply_circuit(&circuit, &[0.2]).unwrap();
    assert!(small.leakage < 1e-3 && (small.state.norm_sqr() - 1.0).abs() < 1e-12);
    assert!(matches!(
        apply_circuit(&circuit, &[1.5]),
        Err(Error::TruncationOverflow { .. })
    ));
    let relaxed = circuit.with_max_leakage(0.5).unwrap();
    assert!(apply_circuit(&relaxed, &[1.5]).unwrap().leakage > 1e-3);
}

fn gaussian_gate(kind: u8, p: f64) -> Gate {
    match kind {
        0 => Gate::displacement(0, p, 0.3),
        1 => Gate::squeezing(0, p),
        2 => Gate::phaseshift(0, p),
        _ => Gate::beamsplitter(0, 1, p, 0.2),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // Low-lying columns of the cropped unitary agree with a far deeper
    // padding, and number-conserving gates keep every such column
    // normalized. Squeezing converges slowly in the padded space, so it is
    // checked at a larger pad and a looser tolerance.
    #[test]
    fn padding_controls_crop_error(kind in 0u8..4, p in -1.5f64..1.5, cutoff in 10usize..13) {
        let gate = gaussian_gate(kind, p);
        let (pad, tol) = if kind == 1 { (60, 1e-4) } else { (10, 1e-6) };
        let u = gate_unitary(&gate, cutoff, pad, 2.0).to_dense();
        let reference = gate_unitary(&gate, cutoff, 160, 2.0).to_dense();
        let dim = u.nrows();
        let local = if kind == 3 { FockIndexMap::new(CutoffSpec::new(2, cutoff).unwrap()) }
                    else { FockIndexMap::new(CutoffSpec::new(1, cutoff).unwrap()) };
        for j in 0..dim {
            if local.occupation(j).iter().sum::<usize>() > cutoff / 2 {
                continue;
            }
            for i in 0..dim {
                prop_assert!((u[[i, j]] - reference[[i, j]]).norm() < tol);
            }
            if kind >= 2 {
                let norm: f64 = u.column(j).iter().map(|z| z.norm_sqr()).sum();
                prop_assert!((norm.sqrt() - 1.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn application_is_linear(seed in any::<u64>(), a1 in -1.0f64..1.0, a2 in -1.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = CutoffSpec::new(3, 4).unwrap();
        let map = Arc::new(FockIndexMap::new(spec));
        let s1 = random_state(spec.dimension(), &mut rng);
        let s2 = random_state(spec.dimension(), &mut rng);
        let gates = [
            Gate::displacement(0, 0.3, 0.1),
            Gate::cubic_phase(1, 0.2),
            Gate::beamsplitter(0, 2, 0.4, 0.3),
            Gate::squeezing(2, 0.2),
            Gate::cross_kerr(1, 2, 0.5),
        ];
        let (z1, z2) = (Complex64::new(a1, 0.3), Complex64::new(a2, -0.1));
        let mix = PureState::from_amplitudes(Arc::clone(&map), &s1 * z1 + &s2 * z2).unwrap();
        let lhs = apply_gates(&mix, &gates, 10, 2.0).unwrap();
        let o1 = apply_gates(&PureState::from_amplitudes(Arc::clone(&map), s1).unwrap(), &gates, 10, 2.0).unwrap();
        let o2 = apply_gates(&PureState::from_amplitudes(map, s2).unwrap(), &gates, 10, 2.0).unwrap();
        let rhs = o1.amplitudes() * z1 + o2.amplitudes() * z2;
        for (x, y) in lhs.amplitudes().iter().zip(rhs.iter()) {
            prop_assert!((x - y).norm() < 1e-10);
        }
    }

    #[test]
    fn phaseshift_only_rotates_phases(phi in -PI..PI, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = CutoffSpec::new(2, 5).unwrap();
        let map = Arc::new(FockIndexMap::new(spec));
        let psi = PureState::from_amplitudes(Arc::clone(&map), random_state(spec.dimension(), &mut rng)).unwrap();
        let out = apply_gates(&psi, &[Gate::phaseshift(1, phi)], 10, 2.0).unwrap();
        for (i, occ) in map.iter().enumerate() {
            let expected = psi.amplitudes()[i] * Complex64::from_polar(1.0, phi * occ[1] as f64);
            prop_assert!((out.amplitudes()[i] - expected).norm() < 1e-14);
        }
    }
}
