use cvbm::homodyne::SampleMatrix;
use cvbm::mmd::{
    gaussian_kernel, grad_estimate, kernel_sum_direct, kernel_sum_expansion, mmd_estimate,
    KernelParams,
};
use cvbm::Error;
use cvbm_testkit::{gaussian_mmd, mean_and_se};
use ndarray::{array, Array2};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

fn normal_samples(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    mu: f64,
    sd: f64,
) -> SampleMatrix {
    let n = Normal::new(mu, sd).unwrap();
    SampleMatrix::new(Array2::from_shape_fn((rows, cols), |_| n.sample(rng))).unwrap()
}

fn k(d2: f64) -> f64 {
    (-d2 / 2.0).exp()
}

#[test]
fn two_point_example_by_hand() {
    let x = SampleMatrix::new(array![[0.0], [1.0]]).unwrap();
    let y = SampleMatrix::new(array![[0.0], [2.0]]).unwrap();
    let expected = k(1.0) + k(4.0) - 0.5 * (k(0.0) + k(4.0) + k(1.0) + k(1.0));
    let got = mmd_estimate(&x, &y, KernelParams::default()).unwrap();
    assert!((got - expected).abs() < 1e-12);
}

#[test]
fn kernel_values() {
    let p = KernelParams::new(2.0).unwrap();
    assert_eq!(gaussian_kernel(&[1.0, 2.0], &[1.0, 2.0], p).unwrap(), 1.0);
    assert!(
        (gaussian_kernel(&[0.0, 0.0], &[3.0, 4.0], p).unwrap() - (-25.0f64 / 8.0).exp()).abs()
            < 1e-15
    );
    assert!(matches!(
        gaussian_kernel(&[0.0], &[0.0, 1.0], p),
        Err(Error::Usage(_))
    ));
    assert!(matches!(KernelParams::new(0.0), Err(Error::Validation(_))));
}

#[test]
fn estimator_needs_two_rows_and_matching_modes() {
    let one = SampleMatrix::new(array![[0.0]]).unwrap();
    let two = SampleMatrix::new(array![[0.0], [1.0]]).unwrap();
    let wide = SampleMatrix::new(array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
    let p = KernelParams::default();
    assert!(matches!(mmd_estimate(&one, &two, p), Err(Error::Usage(_))));
    assert!(mmd_estimate(&two, &wide, p).is_err());
}

#[test]
fn gradient_vanishes_for_equal_shifts_and_is_linear_in_multiplier() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = normal_samples(&mut rng, 30, 2, 0.0, 1.0);
    let x = normal_samples(&mut rng, 40, 2, 0.5, 1.0);
    let y = normal_samples(&mut rng, 50, 2, -0.5, 1.0);
    let b = normal_samples(&mut rng, 30, 2, 0.2, 1.3);
    let p = KernelParams::default();
    assert_eq!(grad_estimate(&a, &a, &x, &y, 0.85, p).unwrap(), 0.0);
    let g1 = grad_estimate(&a, &b, &x, &y, 0.7, p).unwrap();
    let g2 = grad_estimate(&a, &b, &x, &y, 1.4, p).unwrap();
    assert_eq!(g2, 2.0 * g1);
}

#[test]
fn expansion_matches_direct_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (sigma, spread) in [(1.0, 1.0), (1.0, 6.0), (0.3, 2.0), (2.5, 3.0)] {
        let p = KernelParams::new(sigma).unwrap();
        let xs: Vec<f64> = (0..700)
            .map(|_| spread * (rng.random::<f64>() - 0.5) * 4.0)
            .collect();
        let ys: Vec<f64> = (0..500)
            .map(|_| spread * rng.random::<f64>() * 3.0)
            .collect();
        let direct = kernel_sum_direct(
            Array2::from_shape_vec((700, 1), xs.clone()).unwrap().view(),
            Array2::from_shape_vec((500, 1), ys.clone()).unwrap().view(),
            p,
        );
        let fast = kernel_sum_expansion(&xs, &ys, p);
        assert!(
            (fast - direct).abs() <= 1e-12 * direct.max(1.0),
            "σ={sigma}: {fast} vs {direct}"
        );
    }
}

#[test]
fn estimator_is_unbiased_for_gaussians() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let p = KernelParams::default();
    let exact = gaussian_mmd(0.0, 1.0, 0.7, 1.4, 1.0);
    let draws: Vec<f64> = (0..3000)
        .map(|_| {
            let x = normal_samples(&mut rng, 12, 1, 0.0, 1.0);
            let y = normal_samples(&mut rng, 9, 1, 0.7, 1.4);
            mmd_estimate(&x, &y, p).unwrap()
        })
        .collect();
    let (mean, se) = mean_and_se(&draws);
    assert!((mean - exact).abs() < 3.0 * se, "{mean} ± {se} vs {exact}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_and_permutation_invariant(seed in any::<u64>(), m in 2usize..20, n in 2usize..20, cols in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = normal_samples(&mut rng, m, cols, 0.0, 1.0);
        let y = normal_samples(&mut rng, n, cols, 0.3, 2.0);
        let p = KernelParams::default();
        let base = mmd_estimate(&x, &y, p).unwrap();
        prop_assert!((base - mmd_estimate(&y, &x, p).unwrap()).abs() < 1e-13);
        let mut order: Vec<usize> = (0..m).collect();
        order.shuffle(&mut rng);
        let shuffled = SampleMatrix::new(x.values().select(ndarray::Axis(0), &order)).unwrap();
        prop_assert!((base - mmd_estimate(&shuffled, &y, p).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn identical_sets_bound(seed in any::<u64>(), m in 2usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = normal_samples(&mut rng, m, 2, 0.0, 1.0);
        // With S the full kernel sum, m ≤ S ≤ m², the estimate of a set
        // against itself is 2(S − m²)/(m²(m − 1)), which lies in [−2/m, 0].
        let v = mmd_estimate(&x, &x, KernelParams::default()).unwrap();
        prop_assert!(v <= 1e-12 && v >= -2.0 / m as f64 - 1e-12);
    }
}
