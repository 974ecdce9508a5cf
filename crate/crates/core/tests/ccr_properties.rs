use ccr_lab::ccr::algebra::{normal_order, AlgebraElement, Generator, Generator::*, Monomial};
use ccr_lab::ccr::modular::{anti_fock_b, hamiltonian, modular_apply, ModularMap};
use ccr_lab::ccr::state::{gns_inner, omega, omega_word, CovarianceTable, GnsVector};
use ccr_lab::ccr::transforms::{eta_conjugate, evolve, scale_transform};
use ccr_lab::scalar::{rat, CRational};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Two-point values typed in independently of the library table.
fn oracle_two_point(x: Generator, y: Generator, c: &BigRational) -> CRational {
    let r = |n, d| CRational::real(rat(n, d));
    let h = |n| CRational::new(BigRational::zero(), rat(n, 2));
    match (x, y) {
        (Q, Q) | (QPrime, QPrime) => CRational::real(c.clone()),
        (P, P) | (PPrime, PPrime) => r(0, 1),
        (Q, P) | (PPrime, QPrime) => h(1),
        (P, Q) | (QPrime, PPrime) => h(-1),
        (Q, PPrime) | (PPrime, Q) | (P, QPrime) | (QPrime, P) => r(1, 2),
        (Q, QPrime) | (QPrime, Q) | (P, PPrime) | (PPrime, P) => r(0, 1),
    }
}

/// Brute-force ordered pair partitions.
fn oracle_omega(word: &[Generator], c: &BigRational) -> CRational {
    if word.is_empty() {
        return CRational::one();
    }
    if word.len() % 2 == 1 {
        return CRational::zero();
    }
    let mut total = CRational::zero();
    for j in 1..word.len() {
        let rest: Vec<Generator> = word[1..].iter().enumerate().filter(|(k, _)| k + 1 != j).map(|(_, g)| *g).collect();
        total += &(&oracle_two_point(word[0], word[j], c) * &oracle_omega(&rest, c));
    }
    total
}

fn generator() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(generator(), 0..=max)
}

fn unprimed_word(max: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(prop::sample::select(vec![Q, P]), 0..=max)
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn coeff() -> impl Strategy<Value = CRational> {
    (-6i64..=6, -6i64..=6, 1i64..=3).prop_map(|(a, b, d)| CRational::new(rat(a, d), rat(b, d)))
}

/// Random polynomial: a few weighted random words.
fn element(max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((coeff(), word(max_len)), 1..4).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (c, w) in terms {
            e = &e + &normal_order(&w).unwrap().scale(&c);
        }
        e
    })
}

fn unprimed_element(max_len: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((coeff(), unprimed_word(max_len)), 1..4).prop_map(|terms| {
        let mut e = AlgebraElement::zero();
        for (c, w) in terms {
            e = &e + &normal_order(&w).unwrap().scale(&c);
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn omega_matches_brute_force_pairings(w in word(8), c in small_rational()) {
        let table = CovarianceTable::new(c.clone());
        let want = oracle_omega(&w, &c);
        prop_assert_eq!(omega_word(&w, &table), want.clone());
        prop_assert_eq!(omega(&normal_order(&w).unwrap(), &table), want);
    }

    #[test]
    fn normal_order_is_multiplicative(a in word(6), b in word(6)) {
        let joined: Vec<Generator> = a.iter().chain(&b).copied().collect();
        prop_assert_eq!(normal_order(&joined).unwrap(), &normal_order(&a).unwrap() * &normal_order(&b).unwrap());
    }

    #[test]
    fn star_is_an_antilinear_antihomomorphism(a in element(4), b in element(4)) {
        prop_assert_eq!((&a * &b).star(), &b.star() * &a.star());
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn omega_is_hermitian(a in element(6)) {
        let t = CovarianceTable::standard();
        prop_assert_eq!(omega(&a.star(), &t), omega(&a, &t).conj());
    }

    #[test]
    fn gns_inner_is_hermitian(a in element(3), b in element(3)) {
        let t = CovarianceTable::standard();
        let (u, v) = (GnsVector(a), GnsVector(b));
        prop_assert_eq!(gns_inner(&u, &v, &t), gns_inner(&v, &u, &t).conj());
    }

    #[test]
    fn evolution_group_law_and_invariance(a in element(6), s in small_rational(), t in small_rational()) {
        prop_assert_eq!(evolve(&evolve(&a, &s), &t), evolve(&a, &(&s + &t)));
        prop_assert_eq!(evolve(&a, &BigRational::zero()), a.clone());
        // a polynomial of degree ≤ 6 in t agreeing at seven points is constant
        let table = CovarianceTable::standard();
        let base = omega(&a, &table);
        for k in 0..7 {
            prop_assert_eq!(omega(&evolve(&a, &(&t + &rat(k, 1))), &table), base.clone());
        }
    }

    #[test]
    fn evolution_is_a_star_automorphism(a in element(3), b in element(3), t in small_rational()) {
        prop_assert_eq!(evolve(&(&a * &b), &t), &evolve(&a, &t) * &evolve(&b, &t));
        prop_assert_eq!(evolve(&a.star(), &t), evolve(&a, &t).star());
    }

    #[test]
    fn scale_is_an_automorphism_preserving_omega(a in element(4), b in element(4), n in 1i64..5, d in 1i64..5) {
        let l = rat(n, d);
        let sa = scale_transform(&a, &l).unwrap();
        prop_assert_eq!(scale_transform(&(&a * &b), &l).unwrap(), &sa * &scale_transform(&b, &l).unwrap());
        prop_assert_eq!(omega(&sa, &CovarianceTable::standard()), omega(&a, &CovarianceTable::standard()));
    }

    #[test]
    fn scale_preserves_omega_on_unprimed(a in unprimed_element(6), n in -4i64..5, d in 1i64..5) {
        prop_assume!(n != 0);
        let t = CovarianceTable::standard();
        prop_assert_eq!(omega(&scale_transform(&a, &rat(n, d)).unwrap(), &t), omega(&a, &t));
    }

    #[test]
    fn eta_conjugation_is_a_multiplicative_involution(a in element(4), b in element(4)) {
        prop_assert_eq!(eta_conjugate(&eta_conjugate(&a)), a.clone());
        prop_assert_eq!(eta_conjugate(&(&a * &b)), &eta_conjugate(&a) * &eta_conjugate(&b));
    }

    #[test]
    fn sqrt_delta_roundtrip(a in unprimed_element(6)) {
        let v = GnsVector(a);
        let there = modular_apply(ModularMap::SqrtDelta, &v).unwrap();
        prop_assert_eq!(modular_apply(ModularMap::InvSqrtDelta, &there).unwrap(), v);
    }
}

fn unprimed_monomials(max_degree: u32) -> Vec<AlgebraElement> {
    let mut out = Vec::new();
    for q in 0..=max_degree {
        for p in 0..=max_degree - q {
            out.push(AlgebraElement::monomial(Monomial::new(q, p, 0, 0), CRational::one()));
        }
    }
    out
}

#[test]
fn conjugation_is_antiunitary_on_low_degree_monomials() {
    let t = CovarianceTable::standard();
    let labels = unprimed_monomials(4);
    let j: Vec<GnsVector> = labels
        .iter()
        .map(|a| modular_apply(ModularMap::Conjugation, &GnsVector(a.clone())).unwrap())
        .collect();
    for (ju, u) in j.iter().zip(&labels) {
        for (jv, v) in j.iter().zip(&labels) {
            let lhs = gns_inner(ju, jv, &t);
            let rhs = gns_inner(&GnsVector(v.clone()), &GnsVector(u.clone()), &t);
            assert_eq!(lhs, rhs, "J on {u} and {v}");
        }
    }
}

#[test]
fn evolution_is_generated_by_the_hamiltonian() {
    let i = AlgebraElement::scalar(CRational::i());
    let h = hamiltonian();
    for g in Generator::ALL {
        let x = AlgebraElement::generator(g);
        // generators evolve linearly in t, so the t = 1 increment is the derivative
        let derivative = &evolve(&x, &rat(1, 1)) - &x;
        assert_eq!(derivative, &i * &h.commutator(&x), "generator {g}");
    }
}

#[test]
fn eta_positivity_sample() {
    let t = CovarianceTable::standard();
    let b = anti_fock_b();
    let eta_b = eta_conjugate(&b);
    assert_eq!(eta_b, -&b);
    let v = gns_inner(&GnsVector(b.clone()), &GnsVector(eta_b), &t);
    assert!(v.is_real() && v.re > BigRational::zero(), "{v}");
}

#[test]
fn moment_matrix_is_indefinite_at_degree_one() {
    let mm = ccr_lab::ccr::moments::moment_matrix(1, &CovarianceTable::standard()).unwrap();
    assert_eq!(mm.gram.signature().negative, 1);
}

#[test]
fn weyl_partial_sum_telescopes() {
    let (a, b) = (rat(3, 4), rat(-2, 3));
    for n in [0u32, 1, 5, 12] {
        let got = ccr_lab::ccr::moments::weyl_moment_partial_sum(&a, &b, n).unwrap();
        let x = num_complex::Complex64::new(0.0, -0.75 * (-2.0 / 3.0) / 2.0);
        let mut want = num_complex::Complex64::new(0.0, 0.0);
        let mut term = num_complex::Complex64::new(1.0, 0.0);
        for k in 0..=n {
            want += term;
            term *= x / (k + 1) as f64;
        }
        assert!((got - want).norm() < 1e-14, "N={n}: {got} vs {want}");
    }
}

#[test]
fn word_bound_is_enforced() {
    assert!(matches!(
        normal_order(&[Q; 33]),
        Err(ccr_lab::Error::ResourceLimit { len: 33, bound: 32 })
    ));
}

#[test]
fn primed_position_acts_as_i_s_q_s() {
    // q'AΨ₀ = S(q A*Ψ₀) multiplied by i, i.e. q'AΨ₀ − iAqΨ₀ is null
    let t = CovarianceTable::standard();
    let mut probes = Vec::new();
    for q in 0..=3u32 {
        for p in 0..=3 - q {
            for qp in 0..=3 - q - p {
                for pp in 0..=3 - q - p - qp {
                    probes.push(GnsVector(AlgebraElement::monomial(Monomial::new(q, p, qp, pp), CRational::one())));
                }
            }
        }
    }
    let i = AlgebraElement::scalar(CRational::i());
    for a in unprimed_monomials(3) {
        let lhs = &AlgebraElement::q_prime() * &a;
        let rhs = &i * &(&a * &AlgebraElement::q());
        let diff = GnsVector(&lhs - &rhs);
        for x in &probes {
            assert!(gns_inner(x, &diff, &t).is_zero(), "A = {a}, probe {}", x.0);
        }
    }
}
