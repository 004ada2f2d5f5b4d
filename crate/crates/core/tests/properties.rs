use mifx_core::baselines::{lda_fit, pca_fit};
use mifx_core::data::Dataset;
use mifx_core::eval::{cross_validate, fit_fold, CvOptions, EvalMethod};
use mifx_core::extraction::{extract, ExtractionConfig, GaConfig};
use mifx_core::info::{entropy_binned, entropy_discrete, mi_2d_cd, mi_cc, mi_cd, HistogramConfig, LogBase};
use ndarray::Array2;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

fn normal(rng: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    // first k rows cover every class
    (0..n).map(|i| if i < k { i } else { rng.random_range(0..k) }).collect()
}

/// Gaussian features with a class-dependent shift on the first column.
fn dataset(seed: u64, n: usize, d: usize, k: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y = labels(&mut rng, n, k);
    let x = Array2::from_shape_fn((n, d), |(i, j)| normal(&mut rng) + if j == 0 { y[i] as f64 } else { 0.0 });
    Dataset::new(x, y, k).unwrap()
}

fn tiny_ga() -> GaConfig {
    GaConfig {
        population: 12,
        generations: 6,
        restarts: 1,
        ..GaConfig::default()
    }
}

fn hist(bins: usize) -> HistogramConfig {
    HistogramConfig::with_bins(bins)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn estimates_are_nonnegative(seed in any::<u64>(), n in 4usize..300, k in 2usize..6, bins in 2usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = labels(&mut rng, n, k);
        let a: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
        let b: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
        let cfg = hist(bins);
        prop_assert!(mi_cd(&a, &y, &cfg).unwrap() >= 0.0);
        prop_assert!(mi_cc(&a, &b, &cfg).unwrap() >= 0.0);
        prop_assert!(mi_2d_cd(&a, &b, &y, &cfg).unwrap() >= 0.0);
        prop_assert!(entropy_binned(&a, &cfg).unwrap() >= 0.0);
        prop_assert!(entropy_discrete(&y, LogBase::Two).unwrap() >= 0.0);
    }

    #[test]
    fn pairwise_mi_is_symmetric(seed in any::<u64>(), n in 2usize..300, bins in 2usize..40, rho in -1.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<f64> = (0..n).map(|_| normal(&mut rng)).collect();
        let b: Vec<f64> = a.iter().map(|&v| rho * v + normal(&mut rng)).collect();
        let cfg = hist(bins);
        prop_assert_eq!(mi_cc(&a, &b, &cfg).unwrap(), mi_cc(&b, &a, &cfg).unwrap());
    }

    #[test]
    fn entropy_bounds_hold(seed in any::<u64>(), n in 2usize..300, k in 2usize..8, bins in 2usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = labels(&mut rng, n.max(k), k);
        let n = y.len();
        let a: Vec<f64> = (0..n).map(|i| normal(&mut rng) + y[i] as f64).collect();
        let cfg = hist(bins);
        let h_a = entropy_binned(&a, &cfg).unwrap();
        let h_c = entropy_discrete(&y, LogBase::Two).unwrap();
        let i = mi_cd(&a, &y, &cfg).unwrap();
        prop_assert!(h_a <= (bins as f64).log2() + 1e-12);
        prop_assert!(h_c <= (k as f64).log2() + 1e-12);
        prop_assert!(i <= h_a.min(h_c) + 1e-12);
        prop_assert_eq!(mi_cc(&a, &a, &cfg).unwrap(), h_a);
    }

    #[test]
    fn affine_invariance(seed in any::<u64>(), n in 10usize..300, bins in 2usize..40,
                         scale in 0.05f64..20.0, negate in any::<bool>(), shift in -50.0f64..50.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = labels(&mut rng, n, 3);
        let a: Vec<f64> = (0..n).map(|i| normal(&mut rng) + y[i] as f64).collect();
        let s = if negate { -scale } else { scale };
        let t: Vec<f64> = a.iter().map(|&v| s * v + shift).collect();
        let cfg = hist(bins);
        let (i0, i1) = (mi_cd(&a, &y, &cfg).unwrap(), mi_cd(&t, &y, &cfg).unwrap());
        prop_assert!((i0 - i1).abs() <= 1e-9, "{} vs {}", i0, i1);
        let (h0, h1) = (entropy_binned(&a, &cfg).unwrap(), entropy_binned(&t, &cfg).unwrap());
        prop_assert!((h0 - h1).abs() <= 1e-9);
    }

    #[test]
    fn extracted_vectors_have_unit_norm(seed in any::<u64>(), d in 2usize..6) {
        let data = dataset(seed, 60, d, 3);
        let cfg = ExtractionConfig { t: 2, ga: tiny_ga(), ..ExtractionConfig::default() };
        let projections = [
            extract(&data, &cfg, seed).unwrap().projection,
            pca_fit(&data, 2).unwrap(),
            lda_fit(&data, 2).unwrap(),
        ];
        for p in &projections {
            for v in p.vectors() {
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                prop_assert!((norm - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn report_means_match_folds(seed in any::<u64>(), folds in 2usize..6) {
        let data = dataset(seed, 40, 3, 2);
        let opts = CvOptions { folds, seed, parallel: false, ..CvOptions::default() };
        for method in [EvalMethod::Raw, EvalMethod::Pca, EvalMethod::Lda] {
            let r = cross_validate(&data, method, &[1, 2, 3], &opts).unwrap();
            r.validate().unwrap();
            prop_assert_eq!(r.folds, folds);
            for (row, &mean) in r.fold_accuracies.iter().zip(&r.mean_accuracy) {
                let m = row.iter().sum::<f64>() / row.len() as f64;
                prop_assert!((m - mean).abs() <= 1e-9);
                prop_assert!(row.iter().all(|a| (0.0..=100.0).contains(a)));
            }
        }
    }

    #[test]
    fn fold_fit_ignores_test_rows(seed in any::<u64>(), fold in 0usize..3) {
        let data = dataset(seed, 45, 3, 3);
        let mut opts = CvOptions { folds: 3, seed, ..CvOptions::default() };
        opts.extraction.ga = tiny_ga();
        let plan = opts.plan(&data).unwrap();
        let mut x = data.features().clone();
        for i in plan.test_indices(fold) {
            x.row_mut(i).mapv_inplace(|v| -7.0 * v + 1e3);
        }
        let poisoned = data.with_features(x).unwrap();
        for method in EvalMethod::ALL {
            let a = fit_fold(&data, &plan, fold, method, 2, &opts).unwrap();
            let b = fit_fold(&poisoned, &plan, fold, method, 2, &opts).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
