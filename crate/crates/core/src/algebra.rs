//! Finite dimensional local algebras as linear algebra objects.
//!
//! A [`FiniteAlgebra`] is `O/I` for a zero-dimensional ideal `I`, with the
//! staircase monomials of a local standard basis as vector space basis. A
//! [`QuotientAlgebra`] is such an algebra divided by the annihilator of an
//! element, with a deterministic choice of coset representatives.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::RatMatrix;
use crate::localstd::{standard_basis, Dimension, LocalError, MonomialOrder, StandardBasis};
use crate::par::{self, Execution};
use crate::poly::{Monomial, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("quotient is infinite dimensional (no pure power of variable {free_variable} in the leading ideal)")]
    InfiniteDimension { free_variable: usize },
    #[error("finite algebras need a local order")]
    GlobalOrder,
    #[error(transparent)]
    Local(#[from] LocalError),
}

/// Common interface of finite dimensional commutative local algebras given
/// by coordinates in a fixed basis.
pub trait LocalAlgebra {
    fn dim(&self) -> usize;

    fn nvars(&self) -> usize;

    /// Coordinates of the product of two elements.
    fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational>;

    /// Coordinates of the class of a polynomial.
    fn coords(&self, p: &Polynomial) -> Vec<Rational>;

    fn unit(&self) -> Vec<Rational> {
        self.coords(&Polynomial::one(self.nvars()))
    }

    /// Matrix of `h ↦ a·h`.
    fn mult_matrix_of(&self, a: &[Rational]) -> RatMatrix {
        let d = self.dim();
        let cols: Vec<Vec<Rational>> = (0..d).map(|j| self.product(a, &unit_vector(d, j))).collect();
        RatMatrix::from_columns(&cols, d)
    }

    /// Matrix of `[h] ↦ [g·h]` in the algebra's basis.
    fn mult_matrix(&self, g: &Polynomial) -> RatMatrix {
        self.mult_matrix_of(&self.coords(g))
    }

    /// Multiplication matrices of the coordinate functions.
    fn variable_matrices(&self) -> Vec<RatMatrix> {
        (0..self.nvars()).map(|i| self.mult_matrix(&Polynomial::var(self.nvars(), i))).collect()
    }
}

pub(crate) fn unit_vector(d: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[j] = Rational::one();
    v
}

fn product_from_table(table: &[Vec<Rational>], d: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let coeff = ai * bj;
            for (o, t) in out.iter_mut().zip(&table[i * d + j]) {
                if !t.is_zero() {
                    *o += &coeff * t;
                }
            }
        }
    }
    out
}

/// `O/(gens)` with a full multiplication table.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    sb: StandardBasis,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `table[i*d + j]` are the coordinates of `b_i · b_j`.
    table: Vec<Vec<Rational>>,
}

/// Builds `O/(gens)`; fails when the quotient is infinite dimensional.
pub fn build_algebra(gens: &[Polynomial], order: MonomialOrder) -> Result<FiniteAlgebra, AlgebraError> {
    build_algebra_with(gens, order, Execution::default())
}

pub fn build_algebra_with(gens: &[Polynomial], order: MonomialOrder, exec: Execution) -> Result<FiniteAlgebra, AlgebraError> {
    if !order.is_local() {
        return Err(AlgebraError::GlobalOrder);
    }
    let sb = standard_basis(gens, order)?;
    FiniteAlgebra::from_standard_basis_with(sb, exec)
}

impl FiniteAlgebra {
    pub fn from_standard_basis(sb: StandardBasis) -> Result<Self, AlgebraError> {
        Self::from_standard_basis_with(sb, Execution::default())
    }

    pub fn from_standard_basis_with(sb: StandardBasis, exec: Execution) -> Result<Self, AlgebraError> {
        if let Dimension::Infinite { free_variable } = sb.dimension() {
            return Err(AlgebraError::InfiniteDimension { free_variable });
        }
        let basis = sb.staircase().basis_monomials.clone().expect("finite staircase");
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d = basis.len();
        let upper: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
        let products = par::map(exec, &upper, |&(i, j)| {
            let nf = sb.normal_form(&Polynomial::term(basis[i].mul(&basis[j]), Rational::one()));
            coords_in(&nf, &index, d)
        });
        let mut table = vec![Vec::new(); d * d];
        for (&(i, j), v) in upper.iter().zip(products) {
            table[j * d + i] = v.clone();
            table[i * d + j] = v;
        }
        Ok(FiniteAlgebra { sb, basis, index, table })
    }

    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }

    /// Staircase monomials; the first is `1` whenever the algebra is
    /// nonzero.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    /// Coordinates of `b_i · b_j`.
    pub fn table_entry(&self, i: usize, j: usize) -> &[Rational] {
        &self.table[i * self.basis.len() + j]
    }

    /// The polynomial with the given coordinates.
    pub fn element(&self, v: &[Rational]) -> Polynomial {
        Polynomial::from_terms(self.sb.nvars(), self.basis.iter().cloned().zip(v.iter().cloned()))
    }

    /// `dim A/(g·A) = dim A − rank(·g)`.
    pub fn dim_mod(&self, g: &Polynomial) -> usize {
        self.dim() - self.mult_matrix(g).rank()
    }
}

fn coords_in(nf: &Polynomial, index: &HashMap<Monomial, usize>, d: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    for (m, c) in nf.terms() {
        let i = *index.get(m).expect("normal form lives on the staircase");
        v[i] = c.clone();
    }
    v
}

impl LocalAlgebra for FiniteAlgebra {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn nvars(&self) -> usize {
        self.sb.nvars()
    }

    fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        product_from_table(&self.table, self.dim(), a, b)
    }

    fn coords(&self, p: &Polynomial) -> Vec<Rational> {
        coords_in(&self.sb.normal_form(p), &self.index, self.dim())
    }
}

/// `A / K` for an ideal `K` of `A` given by spanning coordinate vectors.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    parent: FiniteAlgebra,
    /// Reduced row echelon basis of the kernel ideal.
    kernel: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    /// Parent coordinates kept as coset representatives.
    complement: Vec<usize>,
    projection: RatMatrix,
    table: Vec<Vec<Rational>>,
}

/// `A / ann_A(g)`.
pub fn annihilator_quotient(a: &FiniteAlgebra, g: &Polynomial) -> QuotientAlgebra {
    let kernel = a.mult_matrix(g).kernel();
    QuotientAlgebra::new(a.clone(), &kernel)
}

impl QuotientAlgebra {
    /// Quotient by the span of `ideal_vectors`, which must be an ideal.
    pub fn new(parent: FiniteAlgebra, ideal_vectors: &[Vec<Rational>]) -> Self {
        let d = parent.dim();
        let (kernel, pivots) = if ideal_vectors.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let rref = RatMatrix::from_rows(ideal_vectors.to_vec()).rref();
            let rows = (0..rref.pivots.len()).map(|i| rref.matrix.row(i).to_vec()).collect();
            (rows, rref.pivots)
        };
        let complement: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let mut projection = RatMatrix::zeros(complement.len(), d);
        for (a, &ca) in complement.iter().enumerate() {
            for j in 0..d {
                let mut v = if ca == j { Rational::one() } else { Rational::zero() };
                if let Some(i) = pivots.iter().position(|&p| p == j) {
                    v -= &kernel[i][ca];
                }
                projection.set(a, j, v);
            }
        }
        let dc = complement.len();
        let mut table = Vec::with_capacity(dc * dc);
        for &ca in &complement {
            for &cb in &complement {
                table.push(projection.mul_vec(parent.table_entry(ca, cb)));
            }
        }
        QuotientAlgebra { parent, kernel, pivots, complement, projection, table }
    }

    pub fn parent(&self) -> &FiniteAlgebra {
        &self.parent
    }

    pub fn kernel_basis(&self) -> &[Vec<Rational>] {
        &self.kernel
    }

    pub fn kernel_pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Parent coordinates whose basis monomials represent the quotient.
    pub fn complement_coordinates(&self) -> &[usize] {
        &self.complement
    }

    pub fn complement_monomials(&self) -> Vec<Monomial> {
        self.complement.iter().map(|&i| self.parent.basis()[i].clone()).collect()
    }

    pub fn projection(&self) -> &RatMatrix {
        &self.projection
    }

    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        self.projection.mul_vec(v)
    }

    pub fn include(&self, c: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.parent.dim()];
        for (&i, x) in self.complement.iter().zip(c) {
            v[i] = x.clone();
        }
        v
    }
}

impl LocalAlgebra for QuotientAlgebra {
    fn dim(&self) -> usize {
        self.complement.len()
    }

    fn nvars(&self) -> usize {
        self.parent.nvars()
    }

    fn product(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        product_from_table(&self.table, self.dim(), a, b)
    }

    fn coords(&self, p: &Polynomial) -> Vec<Rational> {
        self.project(&self.parent.coords(p))
    }
}

/// Annihilator of the maximal ideal: common kernel of multiplication by
/// every variable.
pub fn socle<A: LocalAlgebra + ?Sized>(a: &A) -> Vec<Vec<Rational>> {
    let d = a.dim();
    if d == 0 {
        return Vec::new();
    }
    let stacked = a.variable_matrices().into_iter().reduce(|acc, m| acc.vstack(&m)).unwrap_or_else(|| RatMatrix::zeros(0, d));
    if stacked.rows() == 0 {
        return (0..d).map(|j| unit_vector(d, j)).collect();
    }
    stacked.kernel()
}

/// One solution `h` of `g·h = v` in `a`, if any.
pub fn solve_multiplication<A: LocalAlgebra + ?Sized>(a: &A, g: &Polynomial, v: &Polynomial) -> Option<Vec<Rational>> {
    a.mult_matrix(g).solve(&a.coords(v))
}
