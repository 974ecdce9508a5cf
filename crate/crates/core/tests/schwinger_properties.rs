use ccr_lab::schwinger::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Ordered pair partitions by recursion on the first element.
fn oracle_pairings(taus: &[f64], k: &dyn Fn(f64, f64) -> f64) -> f64 {
    if taus.is_empty() {
        return 1.0;
    }
    if taus.len() % 2 == 1 {
        return 0.0;
    }
    (1..taus.len())
        .map(|j| {
            let rest: Vec<f64> = taus[1..].iter().enumerate().filter(|(i, _)| i + 1 != j).map(|(_, t)| *t).collect();
            k(taus[0], taus[j]) * oracle_pairings(&rest, k)
        })
        .sum()
}

fn grid_time() -> impl Strategy<Value = f64> {
    (-8i32..=8).prop_map(|k| k as f64 / 4.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wick_moment_matches_brute_force(taus in prop::collection::vec(grid_time(), 0..=10), c in -2.0f64..2.0) {
        let p = KernelParams { c };
        let want = oracle_pairings(&taus, &|a, b| c - (a - b).abs() / 2.0);
        let got = wick_moment(&taus, &p).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{} vs {}", got, want);
    }

    #[test]
    fn wick_moment_is_permutation_symmetric(taus in prop::collection::vec(grid_time(), 2..=8), shift in 0usize..8) {
        let p = KernelParams::default();
        let base = wick_moment(&taus, &p).unwrap();
        let mut rotated = taus.clone();
        rotated.rotate_left(shift % taus.len());
        rotated.swap(0, taus.len() - 1);
        prop_assert!((wick_moment(&rotated, &p).unwrap() - base).abs() <= 1e-12 * base.abs().max(1.0));
    }

    #[test]
    fn krein_moment_matches_brute_force(taus in prop::collection::vec(grid_time(), 0..=8), alpha in 0.25f64..4.0) {
        let want = oracle_pairings(&taus, &|a, b| {
            -(a - b).abs() / 2.0 + (a.abs() + b.abs() + 1.0 / (alpha * alpha) + alpha * alpha * a.abs() * b.abs()) / 2.0
        });
        let got = krein_wick_moment(&taus, alpha).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0));
    }

    #[test]
    fn krein_correction_is_rank_one(t in -5.0f64..5.0, s in -5.0f64..5.0, alpha in 0.1f64..10.0) {
        let g = |x: f64| alpha * x.abs() / 2.0 + 1.0 / (2.0 * alpha);
        let diff = krein_kernel(t, s, alpha) - kernel_s(t, s, &KernelParams::default());
        prop_assert!((diff - 2.0 * g(t) * g(s)).abs() < 1e-9 * diff.abs().max(1.0));
        prop_assert!(krein_kernel(t, t, alpha) >= 0.0);
    }
}

#[test]
fn cancellation_decomposes_term_by_term() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let p = KernelParams::default();
    for _ in 0..20 {
        let (t, s): (f64, f64) = (rng.random_range(-4.0..4.0), rng.random_range(-4.0..4.0));
        // (z − a z̄) = (1−a) z₁ + i (1+a) z₂ with Var z₁ = Var z₂ = 1/4
        let (a, b) = (t.abs(), s.abs());
        let complex_part = ((1.0 - a) * (1.0 - b) - (1.0 + a) * (1.0 + b)) / 4.0;
        assert!((complex_pair_covariance(t, s) - complex_part).abs() < 1e-12);
        let total = bm_covariance(t, s) + complex_pair_covariance(t, s);
        assert!((total - kernel_s(t, s, &p)).abs() < 1e-12, "({t}, {s})");
    }
    assert_eq!(bm_covariance(1.5, 1.5) + complex_pair_covariance(1.5, 1.5), 0.0);
}

#[test]
fn krein_link_on_a_grid() {
    let grid: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.25).collect();
    for alpha in [0.5, 1.0, 3.0] {
        let g: Vec<f64> = grid.iter().map(|t| alpha * t.abs() / 2.0 + 1.0 / (2.0 * alpha)).collect();
        for (i, &t) in grid.iter().enumerate() {
            for (j, &s) in grid.iter().enumerate() {
                let d = krein_kernel(t, s, alpha) - kernel_s(t, s, &KernelParams::default());
                assert!((d - 2.0 * g[i] * g[j]).abs() < 1e-12 * d.abs().max(1.0));
            }
        }
    }
}

#[test]
fn brownian_covariance_at_one_million_samples() {
    let plan = PathPlan::new(&[-1.0, 0.0, 1.0]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let n = 1_000_000;
    let (mut s11, mut s11sq, mut cross, mut cross_sq) = (0.0, 0.0, 0.0, 0.0);
    let mut buf = [0.0; 3];
    for _ in 0..n {
        plan.fill(&mut rng, &mut buf);
        assert_eq!(buf[1], 0.0);
        let v = buf[2] * buf[2];
        s11 += v;
        s11sq += v * v;
        let c = buf[0] * buf[2];
        cross += c;
        cross_sq += c * c;
    }
    let nf = n as f64;
    let stderr = |s: f64, sq: f64| ((sq - s * s / nf) / (nf - 1.0) / nf).sqrt();
    assert!((s11 / nf - 1.0).abs() <= 3.0 * stderr(s11, s11sq), "E[ξ(1)²] = {}", s11 / nf);
    assert!((cross / nf).abs() <= 3.0 * stderr(cross, cross_sq), "E[ξ(1)ξ(−1)] = {}", cross / nf);
}

#[test]
fn complex_gaussian_moments() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 400_000;
    let mut acc = [Complex64::new(0.0, 0.0); 4];
    let mut acc_sq = [0.0f64; 4];
    for _ in 0..n {
        let g = sample_complex_gauss(&mut rng);
        let z = Complex64::new(g.z1, g.z2);
        let vals = [z, z * z, Complex64::new(z.norm_sqr(), 0.0), (z - z.conj()).powi(2)];
        for k in 0..4 {
            acc[k] += vals[k];
            acc_sq[k] += vals[k].norm_sqr();
        }
    }
    let nf = n as f64;
    let targets = [0.0, 0.0, 0.5, -1.0];
    for k in 0..4 {
        let mean = acc[k] / nf;
        let se = ((acc_sq[k] - nf * mean.norm_sqr()) / (nf - 1.0) / nf).sqrt();
        assert!((mean - Complex64::new(targets[k], 0.0)).norm() <= 3.0 * se, "moment {k}: {mean} ± {se}");
    }
}

#[test]
fn identical_configs_are_bit_identical_and_chunking_is_irrelevant() {
    let taus = [-1.0, -0.5, 0.5, 1.0];
    let cfg = McConfig::with_samples(50_000, 9);
    let a = mc_moment(&taus, &KernelParams::default(), &cfg).unwrap();
    let b = mc_moment(&taus, &KernelParams::default(), &cfg).unwrap();
    assert_eq!(a.mean.re.to_bits(), b.mean.re.to_bits());
    assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
    for chunk in [1, 7, 4096, 50_000, 1 << 20] {
        let c = mc_moment(&taus, &KernelParams::default(), &McConfig { chunk, ..cfg }).unwrap();
        assert!((c.mean - a.mean).norm() <= 1e-12 * a.mean.norm(), "chunk {chunk}");
        assert!((c.stderr - a.stderr).abs() <= 1e-12 * a.stderr);
    }
}

#[test]
fn monte_carlo_agrees_with_wick_across_seeds() {
    let lists: [&[f64]; 4] = [&[1.0, -1.0], &[0.5, 1.5], &[-1.0, -0.5, 0.5, 1.0], &[-1.0, 0.0, 0.5, 1.0, -0.5, 1.5]];
    let p = KernelParams::default();
    for taus in lists {
        let want = wick_moment(taus, &p).unwrap();
        let passes = (0..100)
            .filter(|&seed| {
                let est = mc_moment(taus, &p, &McConfig::with_samples(20_000, 1000 + seed)).unwrap();
                est.within(Complex64::new(want, 0.0), 3.0)
            })
            .count();
        assert!(passes >= 99, "{taus:?}: {passes}/100");
    }
}

#[test]
fn nonzero_c_is_rejected_by_the_sampler() {
    let err = mc_moment(&[1.0, -1.0], &KernelParams { c: 0.5 }, &McConfig::with_samples(10, 1));
    assert!(matches!(err, Err(ccr_lab::Error::UnsupportedDomain(_))));
    assert!(mc_krein_moment(&[0.0], -1.0, &McConfig::with_samples(10, 1)).is_err());
    assert!(wick_moment(&[0.0; 22], &KernelParams::default()).is_err());
}

#[test]
fn weyl_estimator_tracks_the_closed_form() {
    let alphas = [1.0, -2.0, 1.0];
    let taus = [-1.0, 0.0, 1.0];
    let want = ccr_lab::weyl::schwinger_npoint(&alphas, &taus).unwrap();
    let est = mc_weyl_schwinger(&alphas, &taus, &McConfig::with_samples(200_000, 2)).unwrap();
    assert!(est.within(Complex64::new(want, 0.0), 3.0));
    let zero = mc_weyl_schwinger(&[1.0, 1.0], &[0.0, 1.0], &McConfig::default()).unwrap();
    assert_eq!((zero.mean, zero.samples), (Complex64::new(0.0, 0.0), 0));
}
