//! Modular operators on the unprimed labels and the Fock / anti-Fock
//! operators built from both copies.

use ccr_lab::ccr::modular::*;
use ccr_lab::ccr::parse_expr;
use ccr_lab::ccr::state::{gns_inner, CovarianceTable, GnsVector};
use ccr_lab::ccr::transforms::{eta_conjugate, evolve};
use ccr_lab::scalar::rat;

fn main() -> ccr_lab::Result<()> {
    let t = CovarianceTable::standard();
    for src in ["p", "q", "p q", "q p p"] {
        let v = GnsVector(parse_expr(src)?);
        let d = modular_apply(ModularMap::SqrtDelta, &v)?;
        let j = modular_apply(ModularMap::Conjugation, &v)?;
        println!("{src:>6}:  Δ^½ → {:<22}  J → {}", d.0.to_string(), j.0);
    }

    let (a, b) = (fock_a(), anti_fock_b());
    println!();
    println!("a               = {a}");
    println!("[a, a*]         = {}", a.commutator(&fock_a_star()));
    println!("[b, b*]         = {}", b.commutator(&anti_fock_b_star()));
    println!("η(b)            = {}", eta_conjugate(&b));
    let bv = GnsVector(b.clone());
    println!("⟨bΨ, bΨ⟩        = {}", gns_inner(&bv, &bv, &t));
    println!("⟨bΨ, η(b)Ψ⟩     = {}", gns_inner(&bv, &GnsVector(eta_conjugate(&b)), &t));
    println!("H               = {}", hamiltonian());
    println!("α_2(q)          = {}", evolve(&ccr_lab::ccr::algebra::AlgebraElement::q(), &rat(2, 1)));
    Ok(())
}
