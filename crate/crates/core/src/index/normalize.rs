use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{IndexError, Problem};
use crate::linalg::RatMatrix;
use crate::localstd::{bounded_colength, standard_basis, DEFAULT_DEGREE_CAP, LocalError, MonomialOrder, StandardBasis};
use crate::Rational;

pub const DEFAULT_MAX_ATTEMPTS: usize = 25;

/// Which stage of the search produced the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformKind {
    Identity,
    /// New coordinate `i` is old coordinate `perm[i]`.
    Permutation(Vec<usize>),
    /// Seeded random unimodular matrix; `draw` counts from 0.
    Random { seed: u64, draw: usize },
}

/// Coordinates `z = A·y` in which `(f, X₁)` is zero-dimensional.
#[derive(Debug, Clone)]
pub struct CoordinateNormalization {
    pub transform: RatMatrix,
    pub kind: TransformKind,
    pub attempts_used: usize,
    pub problem: Problem,
    sb: StandardBasis,
}

impl CoordinateNormalization {
    /// Local standard basis of `(f, X₁)` in the new coordinates.
    pub fn standard_basis(&self) -> &StandardBasis {
        &self.sb
    }
}

/// Searches identity, then coordinate permutations in lexicographic order,
/// then seeded random unimodular integer matrices, for coordinates in which
/// `(f₁, …, f_q, X₁)` generates a zero-dimensional ideal. Every candidate,
/// including the identity, counts as one attempt.
pub fn ensure_regular_sequence(problem: &Problem, seed: u64, max_attempts: usize) -> Result<CoordinateNormalization, IndexError> {
    problem.require_curve()?;
    let n = problem.nvars();
    let mut attempts = 0;
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if attempts >= max_attempts {
            return Err(IndexError::NormalizationFailed { attempts });
        }
        let kind = if perm.iter().enumerate().all(|(i, &p)| i == p) { TransformKind::Identity } else { TransformKind::Permutation(perm.clone()) };
        attempts += 1;
        if let Some(found) = try_candidate(problem, permutation_matrix(&perm), kind, attempts)? {
            return Ok(found);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = 0;
    while attempts < max_attempts {
        let a = random_unimodular(&mut rng, n);
        attempts += 1;
        if let Some(found) = try_candidate(problem, a, TransformKind::Random { seed, draw }, attempts)? {
            return Ok(found);
        }
        draw += 1;
    }
    Err(IndexError::NormalizationFailed { attempts })
}

fn try_candidate(problem: &Problem, a: RatMatrix, kind: TransformKind, attempts: usize) -> Result<Option<CoordinateNormalization>, IndexError> {
    let transformed = if kind == TransformKind::Identity { problem.clone() } else { problem.transformed(&a)? };
    let mut gens = transformed.f().to_vec();
    gens.push(transformed.x()[0].clone());
    match bounded_colength(&gens, MonomialOrder::default(), DEFAULT_DEGREE_CAP) {
        Ok(Some(_)) => {}
        Ok(None) | Err(LocalError::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    }
    let sb = match standard_basis(&gens, MonomialOrder::default()) {
        Ok(sb) => sb,
        Err(LocalError::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    Ok(Some(CoordinateNormalization { transform: a, kind, attempts_used: attempts, problem: transformed, sb }))
}

/// `A` with `A[perm[i]][i] = 1`, so that `y_i = z_{perm[i]}`.
pub(crate) fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let n = perm.len();
    let mut a = RatMatrix::zeros(n, n);
    for (i, &p) in perm.iter().enumerate() {
        a.set(p, i, Rational::one());
    }
    a
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A random integer matrix of determinant `±1`: a permutation times unit
/// lower and unit upper triangular factors with entries in `[-2, 2]`.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> RatMatrix {
    let mut lower = RatMatrix::identity(n);
    let mut upper = RatMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower.set(i, j, Rational::from_integer(rng.gen_range(-2i64..=2).into()));
            upper.set(j, i, Rational::from_integer(rng.gen_range(-2i64..=2).into()));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    permutation_matrix(&perm).mul(&lower).mul(&upper)
}
