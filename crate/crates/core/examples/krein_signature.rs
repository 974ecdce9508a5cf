//! Signature of the indefinite product on test functions, the OS product,
//! and the Krein metric that makes it positive.

use std::sync::Arc;

use ccr_lab::krein::*;

fn main() -> ccr_lab::Result<()> {
    let grid = Arc::new(Grid::parse("-5:5:0.1")?);
    let mut fam = family(FamilySpec::MeanZero(20), &grid, 42)?;
    println!("20 mean-zero functions: {:?}", signature(&fam)?.signature());
    fam.push(ExtendedVector::from_fn(grid.clone(), |t| (-t * t).exp()));
    println!("plus one positive bump:  {:?}", signature(&fam)?.signature());

    let f = fam.last().unwrap();
    let (a, b, h) = decompose(f)?;
    println!("bump = {:.4} δ0 + {:.4} w + h,  ⟨h,h⟩ = {:.4}", a.re, b.re, inner_extended(&h, &h)?.re);
    for alpha in [0.5, 1.0, 2.0] {
        println!(
            "α = {alpha}: ⟨f,f⟩ = {:+.4}, [f,f]_α = {:+.4}",
            inner_extended(f, f)?.re,
            krein_inner(f, f, alpha)?.re
        );
    }

    let half = Arc::new(Grid::parse("0:5:0.1")?);
    let pos = family(FamilySpec::PosSupport(10), &half, 42)?;
    let sv = os_gram(&pos, 0.0)?.singular_values();
    println!("OS Gram singular values / σ₁: {:?}", sv.iter().take(4).map(|s| s / sv[0]).collect::<Vec<_>>());
    let r = os_inner(&pos[0], &pos[0], 0.0)?;
    println!("⟨θf, f⟩ three ways: {:.6} {:.6} {:.6}", r.reflected, r.closed_form, r.via_e0);
    assert!(r.reflected.re < 0.0 && r.reflected.im.abs() < 1e-12 && (r.value() - r.via_e0).norm() < 1e-8);
    Ok(())
}
