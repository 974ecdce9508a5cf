//! Parse expressions, bring them to canonical order `q^j p^k q'^l p'^m`,
//! and look at a few commutators.
//!
//! ```text
//! cargo run --example normal_ordering -- "p q p q"
//! ```

use ccr_lab::ccr::algebra::AlgebraElement;
use ccr_lab::ccr::parse_expr;

fn main() -> ccr_lab::Result<()> {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec!["p q".to_string(), "p q p q".into(), "(q + i p)^3".into(), "p' q' - q' p'".into()]
    } else {
        inputs
    };
    for src in &inputs {
        println!("{src:>16}  =  {}", parse_expr(src)?);
    }

    let (q, p) = (AlgebraElement::q(), AlgebraElement::p());
    let (qp, pp) = (AlgebraElement::q_prime(), AlgebraElement::p_prime());
    println!();
    println!("[q, p]   = {}", q.commutator(&p));
    println!("[q', p'] = {}", qp.commutator(&pp));
    println!("[q, p']  = {}", q.commutator(&pp));
    Ok(())
}
