//! Exact local algebra for indices of vector fields on complete intersection
//! curve singularities.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse multivariate polynomials over the rationals,
//!   polynomial matrices with their minors, and the text grammar.
//! * [`linalg`]: dense exact rational matrices.
//! * [`localstd`]: standard bases in the local ring at the origin via Mora's
//!   tangent cone algorithm, with normal forms and membership witnesses.
//! * [`algebra`]: finite dimensional local algebras with their annihilator quotients
//!   and socles.
//! * [`sigform`]: exact inertia of symmetric bilinear forms and admissible
//!   linear forms.
//! * [`index`]: the end-to-end index computations: complex GSV index,
//!   real signature index, classical Poincaré–Hopf and Eisenbud–Levine
//!   indices, goodness criterion and good deformations, comparison
//!   identities.
//!
//! Batch-shaped work such as multiplication tables or randomized trials
//! goes through [`par`], which uses rayon when the `parallel` feature
//! is enabled and runs sequentially otherwise.

pub mod algebra;
pub mod index;
pub mod linalg;
pub mod localstd;
pub mod par;
pub mod poly;
pub mod sigform;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;


pub use algebra::{build_algebra, FiniteAlgebra, LocalAlgebra, QuotientAlgebra};
pub use index::{FieldTag, IndexError, IndexOptions, IndexReport, Problem};
pub use sigform::{FormPolicy, GramForm, SignatureResult};
pub use linalg::RatMatrix;
pub use localstd::{MonomialOrder, StandardBasis};
pub use poly::{Monomial, PolyMatrix, Polynomial};
