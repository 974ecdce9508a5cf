//! The indefinite Gaussian functional: a Brownian path plus one complex
//! Gaussian reproduces the moments of `S(τ) = −|τ|/2`.

use ccr_lab::schwinger::*;
use num_complex::Complex64;

fn main() -> ccr_lab::Result<()> {
    let params = KernelParams::default();
    let cfg = McConfig::with_samples(500_000, 42);
    let lists: [&[f64]; 4] = [&[1.0, -1.0], &[1.0, 1.0], &[-1.0, -0.5, 0.5, 1.0], &[0.5, 1.0, 1.5, 2.0]];
    for taus in lists {
        let exact = wick_moment(taus, &params)?;
        let est = mc_moment(taus, &params, &cfg)?;
        println!("{taus:?}: wick {exact:+.4}  mc {:+.4} ± {:.4}", est.mean.re, est.stderr);
    }

    // ξ(f) for f(1) = f(−1) = 1 has ⟨f,f⟩ = −2, so E[e^{iξ(f)}] = e > 1
    let f = GridFunction::point_masses(vec![-1.0, 1.0], vec![1.0, 1.0])?;
    let est = mc_characteristic(&f, &cfg)?;
    println!(
        "characteristic of f = δ₋₁ + δ₁: {:.4} ± {:.4}, target {:.4}",
        est.mean.re,
        est.stderr,
        f.characteristic_target()
    );

    for alpha in [0.5, 1.0, 2.0] {
        let est = mc_krein_moment(&[1.0, 1.0], alpha, &cfg)?;
        let exact = krein_wick_moment(&[1.0, 1.0], alpha)?;
        println!("Krein α={alpha}, (1,1): {:.4} ± {:.4} vs {exact:.4}", est.mean.re, est.stderr);
        assert!(est.within(Complex64::new(exact, 0.0), 5.0));
    }
    Ok(())
}
