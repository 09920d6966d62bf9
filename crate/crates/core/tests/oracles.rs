//! Independent oracles for quotient dimensions and indices. Nothing here uses
//! the crate's standard bases: each oracle has its own arithmetic.

use std::collections::BTreeMap;

use gsv_core::index::{complex_gsv_index, FieldTag, IndexOptions, Problem, TransformKind};
use gsv_core::localstd::{quotient_dimension, Dimension};
use gsv_core::poly::parse_poly;
use gsv_core::{MonomialOrder, PolyMatrix, Polynomial};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

type Q = BigRational;

/// Sparse integer polynomial in three variables.
type Poly3 = BTreeMap<[u32; 3], i64>;

fn mono(e: [u32; 3], c: i64) -> Poly3 {
    BTreeMap::from([(e, c)])
}

fn add(a: &Poly3, b: &Poly3) -> Poly3 {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(*m).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mul(a: &Poly3, b: &Poly3) -> Poly3 {
    let mut out = Poly3::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]];
            *out.entry(m).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn monomials_of_degree(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Rank by plain Gaussian elimination over the rationals.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &factor;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// `dim k[x,y,z]/I` for an ideal generated by homogeneous polynomials with
/// finite colength, computed degree by degree: `dim R_d - dim I_d` until
/// `I_d = R_d`.
fn graded_colength(gens: &[(Poly3, u32)]) -> usize {
    let mut total = 0;
    for d in 0.. {
        let basis = monomials_of_degree(d);
        let position: BTreeMap<[u32; 3], usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows = Vec::new();
        for (g, deg) in gens {
            if *deg > d {
                continue;
            }
            for shift in monomials_of_degree(d - deg) {
                let prod = mul(g, &mono(shift, 1));
                let mut row = vec![Q::zero(); basis.len()];
                for (m, c) in prod {
                    row[position[&m]] = Q::from_integer(c.into());
                }
                rows.push(row);
            }
        }
        let missing = basis.len() - if rows.is_empty() { 0 } else { rank(rows) };
        if missing == 0 {
            return total;
        }
        total += missing;
        assert!(d < 64, "ideal does not have finite colength");
    }
    unreachable!()
}

/// Generators of `(f₁, f₂, X₃)` for the space curve family with exponent `l`,
/// plus the minor `DF = det [[2x, 2y], [y, x]]`.
fn space_curve_ideal(l: u32) -> (Vec<(Poly3, u32)>, (Poly3, u32)) {
    let f1 = add(&add(&mono([2, 0, 0], 1), &mono([0, 2, 0], 1)), &mono([0, 0, 2], 1));
    let f2 = mono([1, 1, 0], 1);
    let x3 = mul(&mono([0, 0, l + 1], 1), &add(&mono([1, 0, 0], 1), &mono([0, 1, 0], -1)));
    let df = add(&mono([2, 0, 0], 2), &mono([0, 2, 0], -2));
    (vec![(f1, 2), (f2, 2), (x3, l + 2)], (df, 2))
}

fn space_curve_oracle(l: u32) -> (usize, usize) {
    let (gens, df) = space_curve_ideal(l);
    let b0 = graded_colength(&gens);
    let mut with_df = gens;
    with_df.push(df);
    (b0, graded_colength(&with_df))
}

fn space_curve_problem(l: u32) -> Problem {
    let vars = ["x", "y", "z"];
    let p = |s: &str| parse_poly(s, &vars).unwrap();
    let zl = format!("z^{l}");
    let x = ["x", "y", "z"].map(|v| p(&format!("{zl}*(x - y)*{v}"))).to_vec();
    let c = p(&format!("2*{zl}*(x - y)"));
    let cm = PolyMatrix::diagonal(vec![c.clone(), c]).unwrap();
    Problem::new(vars.map(String::from).to_vec(), vec![p("x^2 + y^2 + z^2"), p("x*y")], x, cm, FieldTag::Complex).unwrap()
}

#[test]
fn graded_oracle_values_are_frozen() {
    assert_eq!(space_curve_oracle(1), (12, 8));
    assert_eq!(space_curve_oracle(2), (16, 8));
    assert_eq!(space_curve_oracle(3), (20, 8));
}

#[test]
fn space_curve_index_matches_graded_oracle() {
    for l in 1..=3 {
        let (b0, b0_mod_df) = space_curve_oracle(l);
        let report = complex_gsv_index(&space_curve_problem(l), &IndexOptions::default()).unwrap();
        assert_eq!(report.dim_b0, b0, "l = {l}");
        assert_eq!(report.dim_b0_mod_df, b0_mod_df, "l = {l}");
        assert_eq!(report.index, (b0 - b0_mod_df) as i64, "l = {l}");
        assert!(matches!(report.normalization.kind, TransformKind::Permutation(_)));
    }
}

/// Monomials of a box not divisible by any generator.
fn lattice_count(gens: &[Vec<u32>], bound: &[u32]) -> usize {
    let n = bound.len();
    let mut count = 0;
    let mut e = vec![0u32; n];
    loop {
        if !gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn monomial_poly(e: &[u32]) -> Polynomial {
    Polynomial::term(gsv_core::Monomial::from_exponents(e.to_vec()), Q::one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn monomial_ideal_colength(
        n in 2usize..=3,
        powers in prop::collection::vec(1u32..6, 3),
        extra in prop::collection::vec(prop::collection::vec(0u32..5, 3), 0..4),
        order in prop_oneof![Just(MonomialOrder::NegDegRevLex), Just(MonomialOrder::NegDegLex)],
    ) {
        let mut gens: Vec<Vec<u32>> = (0..n).map(|i| {
            let mut e = vec![0; n];
            e[i] = powers[i];
            e
        }).collect();
        gens.extend(extra.iter().map(|e| e[..n].to_vec()).filter(|e| e.iter().any(|&a| a > 0)));
        let expected = lattice_count(&gens, &powers[..n]);
        let polys: Vec<Polynomial> = gens.iter().map(|e| monomial_poly(e)).collect();
        prop_assert_eq!(quotient_dimension(&polys, order).unwrap(), Dimension::Finite(expected));
    }
}

/// Dense univariate integer polynomial, index = exponent.
fn uni_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Order of vanishing of `g(x, p(x))` at 0, `g` given as (i, j, coeff).
fn substituted_order(g: &[(u32, u32, i64)], p: &[i64]) -> Option<usize> {
    let mut total = vec![0i64; 1];
    for &(i, j, c) in g {
        let mut t = vec![0i64; i as usize + 1];
        t[i as usize] = c;
        for _ in 0..j {
            t = uni_mul(&t, p);
        }
        if t.len() > total.len() {
            total.resize(t.len(), 0);
        }
        for (k, v) in t.into_iter().enumerate() {
            total[k] += v;
        }
    }
    total.iter().position(|c| *c != 0)
}

fn render(terms: &[(u32, u32, i64)]) -> String {
    let mut s = String::from("0");
    for (i, j, c) in terms {
        s += &format!(" + ({c})*x^{i}*y^{j}");
    }
    s
}

#[test]
fn parabola_and_cube() {
    let p = |s: &str| parse_poly(s, &["x", "y"]).unwrap();
    assert_eq!(quotient_dimension(&[p("y - x^2"), p("x^3")], MonomialOrder::NegDegRevLex).unwrap(), Dimension::Finite(3));
    assert_eq!(substituted_order(&[(3, 0, 1)], &[0, 0, 1]), Some(3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// `O/(y - p(x), g) ≅ k{x}/(g(x, p(x)))`, whose dimension is the order of
    /// `g(x, p(x))`.
    #[test]
    fn graph_substitution(
        p_coeffs in prop::collection::vec(-3i64..=3, 3),
        g_terms in prop::collection::vec((0u32..4, 0u32..3, -4i64..=4), 1..5),
    ) {
        let mut p = vec![0i64];
        p.extend(p_coeffs);
        let Some(order) = substituted_order(&g_terms, &p) else { return Ok(()) };
        let vars = ["x", "y"];
        let line = format!("y - ({})*x - ({})*x^2 - ({})*x^3", p[1], p[2], p[3]);
        let gens = [parse_poly(&line, &vars).unwrap(), parse_poly(&render(&g_terms), &vars).unwrap()];
        prop_assert_eq!(quotient_dimension(&gens, MonomialOrder::NegDegRevLex).unwrap(), Dimension::Finite(order));
    }
}

#[test]
fn rank_oracle_sanity() {
    let q = |v: i64| Q::from_integer(v.into());
    let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(-1)]];
    assert_eq!(rank(rows), 2);
}
