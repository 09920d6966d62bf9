//! Property tests for the algebraic invariants of the core crate.

use gsv_core::algebra::{annihilator_quotient, build_algebra, LocalAlgebra};
use gsv_core::index::random_unimodular;
use gsv_core::localstd::{quotient_dimension, standard_basis, Dimension};
use gsv_core::poly::{transform_vector_field, PolyMatrix};
use gsv_core::sigform::{signature_of, GramForm};
use gsv_core::{Monomial, MonomialOrder, Polynomial, RatMatrix};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = BigRational;

fn q(v: i64) -> Q {
    Q::from_integer(v.into())
}

fn poly_from(nvars: usize, terms: &[(Vec<u32>, i64)]) -> Polynomial {
    Polynomial::from_terms(nvars, terms.iter().map(|(e, c)| (Monomial::from_exponents(e[..nvars].to_vec()), q(*c))))
}

/// Polynomials in `n` variables of degree ≤ 4 with small coefficients.
fn poly(n: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 3), -5i64..=5), 0..6).prop_map(move |t| poly_from(n, &t))
}

/// Polynomials without constant term.
fn germ(n: usize) -> impl Strategy<Value = Polynomial> {
    poly(n).prop_map(|p| {
        let c = Polynomial::constant(p.nvars(), p.constant_term());
        p - c
    })
}

/// Zero-dimensional ideals in two variables: `(xᵃ + h₁, yᵇ + h₂)` with `h`
/// of higher order than the pure power.
fn zero_dim_ideal() -> impl Strategy<Value = Vec<Polynomial>> {
    (1u32..=4, 1u32..=4, germ(2), germ(2)).prop_map(|(a, b, h1, h2)| {
        let x = Polynomial::var(2, 0).pow(a);
        let y = Polynomial::var(2, 1).pow(b);
        let xy = Polynomial::var(2, 0) * Polynomial::var(2, 1);
        vec![x + &xy * &h1, y + &xy * &h2]
    })
}

fn order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::NegDegRevLex), Just(MonomialOrder::NegDegLex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in poly(2), b in poly(2), c in poly(2)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(2), a.clone());
    }

    #[test]
    fn derivation_rule(a in poly(3), b in poly(3), i in 0usize..3) {
        let lhs = (&a * &b).derivative(i);
        let rhs = &a.derivative(i) * &b + &a * &b.derivative(i);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn determinant_algorithms_agree(entries in prop::collection::vec(poly(2), 9)) {
        let m = PolyMatrix::new(3, 3, entries).unwrap();
        let det = m.determinant();
        prop_assert_eq!(&det, &m.cofactor_determinant());
        let adj = m.adjugate();
        for j in 0..3 {
            let column: Vec<Polynomial> = (0..3).map(|i| adj.get(i, j).clone()).collect();
            let image = m.mul_vec(&column);
            for (i, v) in image.iter().enumerate() {
                let expected = if i == j { det.clone() } else { Polynomial::zero(2) };
                prop_assert_eq!(v, &expected);
            }
        }
    }

    #[test]
    fn linear_substitution_round_trip(p in poly(3), seed in any::<u64>()) {
        let a = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let inv = a.inverse().unwrap();
        let there = p.linear_substitute(&a).unwrap();
        prop_assert_eq!(there.linear_substitute(&inv).unwrap(), p.clone());
        let point = [q(1), q(-2), q(3)];
        let image = a.mul_vec(&point);
        prop_assert_eq!(there.eval(&point), p.eval(&image));
    }

    #[test]
    fn vector_field_round_trip(x in prop::collection::vec(poly(3), 3), seed in any::<u64>()) {
        let a = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), 3);
        let inv = a.inverse().unwrap();
        let there = transform_vector_field(&x, &a).unwrap();
        prop_assert_eq!(transform_vector_field(&there, &inv).unwrap(), x);
    }

    #[test]
    fn unimodular_draws(seed in any::<u64>(), n in 1usize..=4) {
        let a = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), n);
        prop_assert!(a.determinant().abs().is_one());
    }

    #[test]
    fn normal_form_properties(gens in zero_dim_ideal(), p in poly(2), ord in order()) {
        let sb = standard_basis(&gens, ord).unwrap();
        let nf = sb.normal_form(&p);
        prop_assert_eq!(sb.normal_form(&nf), nf.clone());
        let stairs = sb.staircase().basis_monomials.clone().unwrap();
        for m in nf.monomials() {
            prop_assert!(stairs.contains(m), "normal form leaves the staircase");
        }
        for m in &stairs {
            for i in 0..2 {
                if m.exponents()[i] > 0 {
                    let mut e = m.exponents().to_vec();
                    e[i] -= 1;
                    prop_assert!(stairs.contains(&Monomial::from_exponents(e)), "staircase not closed under division");
                }
            }
        }
        prop_assert_eq!(sb.dimension(), Dimension::Finite(stairs.len()));
    }

    #[test]
    fn membership_and_witnesses(gens in zero_dim_ideal(), h in prop::collection::vec(poly(2), 2), p in poly(2), ord in order()) {
        let sb = standard_basis(&gens, ord).unwrap();
        let member = &h[0] * &gens[0] + &h[1] * &gens[1];
        prop_assert!(sb.normal_form(&member).is_zero());
        let w = sb.membership_witness(&member).expect("combination of generators is a member");
        prop_assert!(w.verify(&member, &gens));
        prop_assert_eq!(sb.contains(&p), sb.normal_form(&p).is_zero());
        match sb.membership_witness(&p) {
            Some(w) => prop_assert!(w.verify(&p, &gens)),
            None => prop_assert!(!sb.normal_form(&p).is_zero()),
        }
    }

    #[test]
    fn exact_sequence_identity(gens in zero_dim_ideal(), g in poly(2)) {
        let a = build_algebra(&gens, MonomialOrder::default()).unwrap();
        let mut with_g = gens.clone();
        with_g.push(g.clone());
        let mod_g = quotient_dimension(&with_g, MonomialOrder::default()).unwrap().finite().unwrap();
        prop_assert_eq!(a.dim_mod(&g), mod_g);
        let c = annihilator_quotient(&a, &g);
        prop_assert_eq!(c.dim(), a.dim() - mod_g);
    }

    #[test]
    fn quotient_is_a_commutative_unital_algebra(gens in zero_dim_ideal(), g in germ(2)) {
        let a = build_algebra(&gens, MonomialOrder::default()).unwrap();
        let c = annihilator_quotient(&a, &g);
        let d = c.dim();
        let e = |i: usize| { let mut v = vec![Q::zero(); d]; v[i] = Q::one(); v };
        let one = c.unit();
        for i in 0..d {
            prop_assert_eq!(c.product(&one, &e(i)), e(i));
            for j in 0..d {
                prop_assert_eq!(c.product(&e(i), &e(j)), c.product(&e(j), &e(i)));
                for k in 0..d.min(3) {
                    let left = c.product(&c.product(&e(i), &e(j)), &e(k));
                    let right = c.product(&e(i), &c.product(&e(j), &e(k)));
                    prop_assert_eq!(left, right);
                }
            }
        }
    }
}

fn symmetric(n: usize, entries: &[i64]) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            m.set(i, j, q(entries[k]));
            m.set(j, i, q(entries[k]));
            k += 1;
        }
    }
    m
}

fn symmetric_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..=5).prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |e| symmetric(n, &e)))
}

fn leading_minor(m: &RatMatrix, k: usize) -> Q {
    let rows: Vec<Vec<Q>> = (0..k).map(|i| m.row(i)[..k].to_vec()).collect();
    RatMatrix::from_rows(rows).determinant()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn congruence_invariance(s in symmetric_matrix(), seed in any::<u64>()) {
        let n = s.rows();
        let p = random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let congruent = p.transpose().mul(&s).mul(&p);
        let a = signature_of(&GramForm::new(s).unwrap());
        let b = signature_of(&GramForm::new(congruent).unwrap());
        prop_assert_eq!(a, b);
    }

    /// Jacobi's rule: with all leading principal minors nonzero, the number
    /// of negative eigenvalues is the number of sign changes in
    /// `1, D₁, …, Dₙ`.
    #[test]
    fn sylvester_consistency(s in symmetric_matrix()) {
        let n = s.rows();
        let sig = signature_of(&GramForm::new(s.clone()).unwrap());
        prop_assert_eq!(sig.rank, s.rank());
        prop_assert_eq!(sig.plus + sig.minus, sig.rank);
        let minors: Vec<Q> = (1..=n).map(|k| leading_minor(&s, k)).collect();
        if minors.iter().all(|d| !d.is_zero()) {
            let mut prev = Q::one();
            let mut changes = 0;
            for d in &minors {
                if d.is_negative() != prev.is_negative() {
                    changes += 1;
                }
                prev = d.clone();
            }
            prop_assert_eq!(sig.minus, changes);
            prop_assert_eq!(sig.plus, n - changes);
        }
    }
}
