//! Monte Carlo estimates of the Weyl Schwinger functions over two-sided
//! Brownian paths, against the closed form.

use ccr_lab::schwinger::{mc_weyl_schwinger, McConfig};
use ccr_lab::weyl::schwinger_npoint;

fn main() -> ccr_lab::Result<()> {
    let cfg = McConfig::with_samples(400_000, 42);
    let cases: [(&[f64], &[f64]); 3] = [
        (&[1.0, -1.0], &[0.0, 1.0]),
        (&[1.0, -2.0, 1.0], &[-1.0, 0.0, 1.0]),
        (&[0.5, 0.5, -1.0], &[-2.0, 0.5, 3.0]),
    ];
    for (alphas, taus) in cases {
        let exact = schwinger_npoint(alphas, taus)?;
        let est = mc_weyl_schwinger(alphas, taus, &cfg)?;
        println!(
            "α={alphas:?} τ={taus:?}: exact {exact:.5}  mc {:.5} ± {:.5}  ({:.2}σ)",
            est.mean.re,
            est.stderr,
            est.sigma_distance(num_complex::Complex64::new(exact, 0.0))
        );
    }
    let zero = mc_weyl_schwinger(&[1.0, 1.0], &[0.0, 1.0], &cfg)?;
    println!("α=[1, 1]: {} (exact, no sampling)", zero.mean.re);
    Ok(())
}
