//! Exact sparse multivariate polynomials over the rationals.

mod matrix;
mod monomial;
mod parse;
mod polynomial;

pub use matrix::{jacobian, PolyMatrix};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use polynomial::Polynomial;

use thiserror::Error;

use crate::linalg::RatMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("coordinate transform is singular")]
    SingularTransform,
}

/// Rewrites the vector field `X` in coordinates `y` with `z = A·y`.
///
/// For a linear change of coordinates the new components are
/// `A⁻¹ · (X ∘ A)`.
pub fn transform_vector_field(x: &[Polynomial], a: &RatMatrix) -> Result<Vec<Polynomial>, PolyError> {
    let nvars = x.first().map_or(a.rows(), Polynomial::nvars);
    if x.len() != nvars {
        return Err(PolyError::DimensionMismatch { expected: nvars, found: x.len() });
    }
    polynomial::check_transform(a, nvars)?;
    let inv = a.inverse().ok_or(PolyError::SingularTransform)?;
    let images = polynomial::linear_images(a);
    let composed: Vec<Polynomial> = x.iter().map(|xi| xi.substitute(&images)).collect();
    Ok((0..nvars)
        .map(|i| {
            (0..nvars).fold(Polynomial::zero(nvars), |acc, k| acc + composed[k].scale(inv.get(i, k)))
        })
        .collect())
}
