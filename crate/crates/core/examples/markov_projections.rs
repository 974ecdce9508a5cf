//! Past/future projections in the indefinite space and the Markov property
//! of the Krein Gaussian measure.

use std::sync::Arc;

use ccr_lab::krein::*;

fn main() -> ccr_lab::Result<()> {
    let grid = Arc::new(Grid::parse("-5:5:0.2")?);
    for alpha in [0.5, 1.0, 2.0] {
        let r = markov_projection_report(&grid, 25, alpha)?;
        println!(
            "α = {alpha}: |E₊E₋ − E₀| = {:.2e}, |E₋E₊ − E₀| = {:.2e}, idempotence {:.2e}",
            r.plus_minus, r.minus_plus, r.max_idempotence()
        );
    }

    let taus = [-2.0, -1.0, 0.0, 1.0, 2.0];
    println!("past/future covariance given x(0), v: {:.2e}", conditional_independence_check(&taus, 1.0)?);
    println!("past/future covariance given x(0):    {:.4}", conditional_cross_covariance(&taus, 1.0, false)?);

    let f = ExtendedVector::from_fn(grid.clone(), |t| (-(t - 1.0) * (t - 1.0) * 4.0).exp());
    let g = ExtendedVector::from_fn(grid.clone(), |t| (-(t + 0.5) * (t + 0.5) * 2.0).exp());
    let d = duality_check(&f, &g)?;
    println!("⟨f, Dg⟩ − (f, g): {:.2e}, [D, θ] = {:?}", d.residual, d.theta_commutator);
    Ok(())
}
