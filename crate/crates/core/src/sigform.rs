//! Exact inertia of symmetric bilinear forms and admissible linear forms.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::LocalAlgebra;
use crate::linalg::RatMatrix;
use crate::poly::Polynomial;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigformError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("the distinguished class is zero in the algebra")]
    C1ClassZero,
    #[error("linear form has {got} coordinates, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// Symmetric bilinear form given by its Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    matrix: RatMatrix,
}

impl GramForm {
    pub fn new(matrix: RatMatrix) -> Result<Self, SigformError> {
        if !matrix.is_square() || !matrix.is_symmetric() {
            return Err(SigformError::NotSymmetric);
        }
        Ok(GramForm { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }
}

/// Inertia `(p₊, p₋)` and rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SignatureResult {
    pub plus: usize,
    pub minus: usize,
    pub rank: usize,
}

impl SignatureResult {
    pub fn signature(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }
}

/// Inertia by symmetric congruence diagonalization.
///
/// The pivot is the first nonzero diagonal entry of the remaining block. When
/// every remaining diagonal entry vanishes, the first nonzero off-diagonal
/// entry spans a hyperbolic plane, which is split off and counted as
/// `(+1, −1)`.
pub fn signature_of(g: &GramForm) -> SignatureResult {
    let d = g.dim();
    let mut a: Vec<Vec<Rational>> = g.matrix.to_rows();
    let mut res = SignatureResult::default();
    let mut k = 0;
    while k < d {
        if let Some(p) = (k..d).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                res.plus += 1;
            } else {
                res.minus += 1;
            }
            for i in k + 1..d {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &pivot;
                for j in k..d {
                    let delta = &factor * &a[k][j];
                    a[i][j] -= delta;
                }
            }
            for i in k + 1..d {
                a[k][i] = Rational::zero();
                a[i][k] = Rational::zero();
            }
            k += 1;
            continue;
        }
        let Some((i, j)) = (k..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero()) else {
            break;
        };
        swap_sym(&mut a, k, i);
        swap_sym(&mut a, k + 1, j);
        // remaining block is [[0, b], [b, 0]]; its inverse is [[0, 1/b], [1/b, 0]]
        let b_inv = a[k][k + 1].recip();
        for r in k + 2..d {
            let (u, v) = (a[r][k].clone(), a[r][k + 1].clone());
            if u.is_zero() && v.is_zero() {
                continue;
            }
            // row_r -= u/b · row_{k+1} + v/b · row_k
            let (fu, fv) = (&u * &b_inv, &v * &b_inv);
            for c in k..d {
                let delta = &fu * &a[k + 1][c] + &fv * &a[k][c];
                a[r][c] -= delta;
            }
        }
        for r in k + 2..d {
            for c in [k, k + 1] {
                a[r][c] = Rational::zero();
                a[c][r] = Rational::zero();
            }
        }
        res.plus += 1;
        res.minus += 1;
        k += 2;
    }
    res.rank = res.plus + res.minus;
    res
}

fn swap_sym(a: &mut [Vec<Rational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// How the admissible linear form is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FormPolicy {
    /// Dual of the first coordinate where the class is nonzero, scaled to
    /// take the value 1 on it.
    #[default]
    Default,
    /// Random integer entries in `[-9, 9]`, sign-flipped to be positive on
    /// the class.
    Seeded(u64),
}

/// A linear functional in coordinates together with its value on the
/// distinguished class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub coefficients: Vec<Rational>,
    pub value: Rational,
}

impl LinearForm {
    pub fn apply(&self, v: &[Rational]) -> Rational {
        self.coefficients.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

const MAX_ENTRY: i64 = 9;

/// Admissible form for a class given by coordinates.
pub fn choose_form_for_class(class: &[Rational], policy: FormPolicy) -> Result<LinearForm, SigformError> {
    let Some(first) = class.iter().position(|c| !c.is_zero()) else {
        return Err(SigformError::C1ClassZero);
    };
    match policy {
        FormPolicy::Default => {
            let mut coefficients = vec![Rational::zero(); class.len()];
            coefficients[first] = class[first].recip();
            Ok(LinearForm { coefficients, value: Rational::one() })
        }
        FormPolicy::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            loop {
                let mut coefficients: Vec<Rational> =
                    (0..class.len()).map(|_| Rational::from_integer(rng.gen_range(-MAX_ENTRY..=MAX_ENTRY).into())).collect();
                let value: Rational = coefficients.iter().zip(class).map(|(a, b)| a * b).sum();
                if value.is_zero() {
                    continue;
                }
                if value.is_negative() {
                    coefficients.iter_mut().for_each(|c| *c = -c.clone());
                }
                return Ok(LinearForm { coefficients, value: value.abs() });
            }
        }
    }
}

/// Admissible form `l` on `c` with `l(c1) > 0`.
pub fn choose_linear_form<A: LocalAlgebra + ?Sized>(c: &A, c1: &Polynomial, policy: FormPolicy) -> Result<LinearForm, SigformError> {
    choose_form_for_class(&c.coords(c1), policy)
}

/// Gram matrix `G_ij = l(e_i · e_j)`.
pub fn gram_of_form<A: LocalAlgebra + ?Sized>(c: &A, l: &LinearForm) -> Result<GramForm, SigformError> {
    let d = c.dim();
    if l.coefficients.len() != d {
        return Err(SigformError::DimensionMismatch { expected: d, got: l.coefficients.len() });
    }
    let basis: Vec<Vec<Rational>> = (0..d).map(|j| crate::algebra::unit_vector(d, j)).collect();
    let mut m = RatMatrix::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let v = l.apply(&c.product(&basis[i], &basis[j]));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    GramForm::new(m)
}

/// Signature of `⟨h₁, h₂⟩ = l(h₁·h₂)` for an admissible `l`.
pub fn form_signature<A: LocalAlgebra + ?Sized>(c: &A, class: &[Rational], policy: FormPolicy) -> Result<(LinearForm, SignatureResult), SigformError> {
    let l = choose_form_for_class(class, policy)?;
    let g = gram_of_form(c, &l)?;
    Ok((l, signature_of(&g)))
}
