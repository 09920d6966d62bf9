use super::IndexError;
use crate::algebra::{build_algebra, LocalAlgebra};
use crate::localstd::{quotient_dimension, Dimension, MonomialOrder};
use crate::poly::{jacobian, Polynomial};
use crate::sigform::{form_signature, FormPolicy, LinearForm, SigformError, SignatureResult};

fn check_square(g: &[Polynomial]) -> Result<(), IndexError> {
    let n = g.first().map(Polynomial::nvars).ok_or_else(|| IndexError::Shape("empty map".into()))?;
    if g.len() != n || g.iter().any(|p| p.nvars() != n) {
        return Err(IndexError::Shape(format!("map has {} components in {n} variables", g.len())));
    }
    Ok(())
}

/// Complex index of an isolated zero: `dim O/(g₁, …, g_n)`.
pub fn poincare_hopf_complex(g: &[Polynomial]) -> Result<usize, IndexError> {
    check_square(g)?;
    match quotient_dimension(g, MonomialOrder::default())? {
        Dimension::Finite(d) => Ok(d),
        Dimension::Infinite { free_variable } => Err(IndexError::InfiniteDimension { free_variable }),
    }
}

/// Real index of a map germ with its local algebra data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalIndex {
    pub index: i64,
    pub dim: usize,
    pub signature: SignatureResult,
    pub linear_form: LinearForm,
}

/// Real index as the signature of `l(h₁·h₂)` on `Q_g` with `l(J_g) > 0`.
pub fn eisenbud_levine_index(g: &[Polynomial], policy: FormPolicy) -> Result<ClassicalIndex, IndexError> {
    check_square(g)?;
    let n = g.len();
    let q = build_algebra(g, MonomialOrder::default())?;
    let jg = jacobian(g, n).determinant();
    let class = q.coords(&jg);
    let (linear_form, signature) = form_signature(&q, &class, policy).map_err(|e| match e {
        SigformError::C1ClassZero => IndexError::JacobianZeroClass,
        other => other.into(),
    })?;
    Ok(ClassicalIndex { index: signature.signature(), dim: q.dim(), signature, linear_form })
}
