//! The Weyl algebra and its non-regular ground state.

use ccr_lab::scalar::rat;
use ccr_lab::weyl::*;

fn main() -> ccr_lab::Result<()> {
    let u = WeylElement::w(rat(1, 1), rat(0, 1));
    let v = WeylElement::w(rat(0, 1), rat(3, 2));
    let uv = weyl_product(&u, &v);
    for (s, c) in uv.terms() {
        println!("W(1,0)·W(0,3/2) = ({:.6}) W({}, {})", c, s.alpha, s.beta);
    }

    // Ω(W(α,0)) jumps at α = 0
    for a in [rat(0, 1), rat(1, 1000), rat(-1, 1_000_000)] {
        println!("Ω(W({a}, 0)) = {}", omega_expectation(&WeylElement::w(a.clone(), rat(0, 1))));
    }

    println!();
    for t in [0.0, 1.0, 2.0] {
        let w = wightman_npoint(&[1.0, -1.0], &[0.0, t])?;
        println!("Wightman (1,−1) at t = {t}: {w:.6}");
    }
    let s = schwinger_npoint(&[1.0, -2.0, 1.0], &[-1.0, 0.0, 1.0])?;
    println!("Schwinger (1,−2,1) at (−1,0,1): {s:.6}");

    for line in spectral_support(&rat(2, 1), &rat(0, 1), &rat(-2, 1), &rat(1, 3)) {
        println!("spectral line ν = {} with weight {:.4}", line.frequency, line.coefficient);
    }

    let family: Vec<(f64, f64)> = vec![(1.0, 0.0), (1.0, 0.5), (-1.0, 1.0), (0.5, 2.0)];
    let m = os_positivity_matrix(&family)?;
    let min = m.symmetric_eigenvalues().min();
    println!("OS matrix min eigenvalue: {min:.3e}");
    Ok(())
}
