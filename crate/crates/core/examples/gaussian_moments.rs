//! Moments of the quasi-free state: exact Wick values, the indefinite
//! moment matrix, and the Weyl-exponential partial sums.

use ccr_lab::ccr::algebra::Monomial;
use ccr_lab::ccr::moments::{moment_matrix, weyl_moment_partial_sum};
use ccr_lab::ccr::state::{omega, omega_monomial, CovarianceTable};
use ccr_lab::ccr::parse_expr;
use ccr_lab::scalar::rat;

fn main() -> ccr_lab::Result<()> {
    let table = CovarianceTable::standard();
    for n in 0..=4 {
        println!("ω(q^{n} p^{n}) = {}", omega_monomial(&Monomial::new(n, n, 0, 0), &table));
    }
    println!("ω(q p^3) = {}", omega_monomial(&Monomial::new(1, 3, 0, 0), &table));

    let c13 = CovarianceTable::new(rat(1, 3));
    let e = parse_expr("q q q' q' + q p'")?;
    println!("c = 1/3:  ω({e}) = {}", omega(&e, &c13));

    for degree in 1..=3 {
        let mm = moment_matrix(degree, &table)?;
        let s = mm.gram.signature();
        println!(
            "moment matrix, degree ≤ {degree}: n = {}, det = {}, signature (+{}, −{}, 0:{})",
            mm.basis.len(),
            mm.determinant,
            s.positive,
            s.negative,
            s.zero
        );
    }

    let (a, b) = (rat(1, 1), rat(1, 1));
    for order in [2, 4, 8, 16] {
        let v = weyl_moment_partial_sum(&a, &b, order)?;
        println!("Weyl series to order {order:>2}: {v:.12}");
    }
    println!("limit e^(-i/2)        : {:.12}", num_complex::Complex64::new(0.0, -0.5).exp());
    Ok(())
}
