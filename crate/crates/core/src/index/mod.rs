//! Index computations for vector fields tangent to complete intersection
//! curves, and the classical indices of isolated zeros of maps.
//!
//! The central entry points are [`complex_gsv_index`] (the dimension of
//! `C₀ = B₀/ann(DF)`) and [`real_gsv_index`] (the signature of the form
//! `⟨h₁, h₂⟩ = l(h₁·h₂)` on `C₀` for an `l` with `l(c₁) > 0`).

mod classical;
mod compare;
mod good;
mod normalize;

pub use classical::{eisenbud_levine_index, poincare_hopf_complex, ClassicalIndex};
pub use compare::{coordinate_invariance_check, cramer_identity_check, gm_identity_check, gm_signature_index, CramerCheck, GmIndex, InvarianceCheck};
pub use good::{construct_good_deformation, is_good_sufficient, verify_deformation, Deformation, Goodness, GoodnessWitness, MaximalMinor};
pub use normalize::{ensure_regular_sequence, random_unimodular, CoordinateNormalization, TransformKind, DEFAULT_MAX_ATTEMPTS};

use thiserror::Error;

use crate::algebra::{annihilator_quotient, AlgebraError, FiniteAlgebra, LocalAlgebra, QuotientAlgebra};
use crate::linalg::RatMatrix;
use crate::localstd::LocalError;
use crate::par::{self, Execution};
use crate::poly::{jacobian, transform_vector_field, PolyError, PolyMatrix, Polynomial};
use crate::sigform::{form_signature, FormPolicy, LinearForm, SigformError, SignatureResult};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("only curves are supported: {q} equations in {n} variables, need q = n - 1")]
    NotCurve { n: usize, q: usize },
    #[error("vector field is not tangent: Xf - Cf has nonzero residuals")]
    NotTangent { residuals: Vec<Polynomial> },
    #[error("no coordinates with a zero-dimensional (f, X1) found after {attempts} attempts")]
    NormalizationFailed { attempts: usize },
    #[error("quotient is infinite dimensional (variable {free_variable} is free)")]
    InfiniteDimension { free_variable: usize },
    #[error("the class of c1 vanishes in C0")]
    C1ClassZero,
    #[error("the Jacobian determinant vanishes in the local algebra")]
    JacobianZeroClass,
    #[error("the goodness criterion is not satisfied")]
    NotGood,
    #[error("entry ({row}, {col}) of C has no polynomial combination of the maximal minors")]
    NonPolynomialWitness { row: usize, col: usize },
    #[error("no relative class {name}/c exists")]
    NoRelativeClass { name: &'static str },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<AlgebraError> for IndexError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::InfiniteDimension { free_variable } => IndexError::InfiniteDimension { free_variable },
            AlgebraError::Local(l) => IndexError::Local(l),
            AlgebraError::GlobalOrder => IndexError::VerificationFailed("global order used for a local algebra".into()),
        }
    }
}

impl From<SigformError> for IndexError {
    fn from(e: SigformError) -> Self {
        match e {
            SigformError::C1ClassZero => IndexError::C1ClassZero,
            other => IndexError::VerificationFailed(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldTag {
    #[default]
    Complex,
    Real,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Complex => "complex",
            FieldTag::Real => "real",
        }
    }
}

/// A vector field `X` tangent to `V = {f = 0}` with `X·f = C·f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    vars: Vec<String>,
    f: Vec<Polynomial>,
    x: Vec<Polynomial>,
    c: PolyMatrix,
    field: FieldTag,
}

impl Problem {
    /// Checks component counts and rings; the curve condition `q = n − 1`
    /// is enforced by the index computations themselves.
    pub fn new(vars: Vec<String>, f: Vec<Polynomial>, x: Vec<Polynomial>, c: PolyMatrix, field: FieldTag) -> Result<Self, IndexError> {
        let n = vars.len();
        if n == 0 {
            return Err(IndexError::Shape("no variables".into()));
        }
        if x.len() != n {
            return Err(IndexError::Shape(format!("X has {} components, ring has {n} variables", x.len())));
        }
        let q = f.len();
        if c.rows() != q || c.cols() != q {
            return Err(IndexError::Shape(format!("C is {}x{}, expected {q}x{q}", c.rows(), c.cols())));
        }
        if f.iter().chain(&x).any(|p| p.nvars() != n) || (q > 0 && c.nvars() != n) {
            return Err(IndexError::Shape("polynomials live in a ring of the wrong size".into()));
        }
        Ok(Problem { vars, f, x, c, field })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn f(&self) -> &[Polynomial] {
        &self.f
    }

    pub fn x(&self) -> &[Polynomial] {
        &self.x
    }

    pub fn c(&self) -> &PolyMatrix {
        &self.c
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn with_field(mut self, field: FieldTag) -> Self {
        self.field = field;
        self
    }

    /// The same geometric problem in coordinates `y` with `z = A·y`.
    pub fn transformed(&self, a: &RatMatrix) -> Result<Problem, IndexError> {
        let f = self.f.iter().map(|p| p.linear_substitute(a)).collect::<Result<Vec<_>, _>>()?;
        let x = transform_vector_field(&self.x, a)?;
        let entries = self.c.entries().iter().map(|p| p.linear_substitute(a)).collect::<Result<Vec<_>, _>>()?;
        let c = PolyMatrix::new(self.c.rows(), self.c.cols(), entries)?;
        Ok(Problem { vars: self.vars.clone(), f, x, c, field: self.field })
    }

    fn require_curve(&self) -> Result<(), IndexError> {
        let (n, q) = (self.nvars(), self.f.len());
        if q + 1 != n {
            return Err(IndexError::NotCurve { n, q });
        }
        Ok(())
    }
}

/// Residuals of `X·f − C·f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tangency {
    pub residuals: Vec<Polynomial>,
}

impl Tangency {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(Polynomial::is_zero)
    }
}

/// Checks `X·f = C·f` as an exact polynomial identity.
pub fn verify_tangency(f: &[Polynomial], x: &[Polynomial], c: &PolyMatrix) -> Result<Tangency, IndexError> {
    let q = f.len();
    if c.rows() != q || c.cols() != q {
        return Err(IndexError::Shape(format!("C is {}x{}, expected {q}x{q}", c.rows(), c.cols())));
    }
    let n = x.len();
    if f.iter().any(|p| p.nvars() != n) {
        return Err(IndexError::Shape("X and f live in different rings".into()));
    }
    let df = jacobian(f, n);
    let xf = df.mul_vec(x);
    let cf = c.mul_vec(f);
    Ok(Tangency { residuals: xf.into_iter().zip(cf).map(|(a, b)| a - b).collect() })
}

/// Coefficient of `t^k` in `det(1 + t·DX) / det(1 + t·C)`.
pub fn c_coefficient(dx: &PolyMatrix, c: &PolyMatrix, k: usize) -> Polynomial {
    let nvars = dx.nvars();
    let num = principal_minor_sums(dx, k);
    let den = principal_minor_sums(c, k);
    // inverse of 1 + Σ den_j t^j as a truncated series
    let mut inv = vec![Polynomial::one(nvars)];
    for j in 1..=k {
        let mut s = Polynomial::zero(nvars);
        for i in 1..=j {
            if let Some(e) = den.get(i) {
                s = s - e * &inv[j - i];
            }
        }
        inv.push(s);
    }
    (0..=k).filter_map(|i| num.get(i).map(|e| e * &inv[k - i])).fold(Polynomial::zero(nvars), |acc, t| acc + t)
}

/// `e_j(M)`, the sum of principal `j × j` minors, for `j = 0..=min(k, size)`.
fn principal_minor_sums(m: &PolyMatrix, k: usize) -> Vec<Polynomial> {
    let nvars = m.nvars();
    let size = m.rows();
    (0..=k.min(size))
        .map(|j| {
            combinations(size, j)
                .iter()
                .map(|idx| m.minor_det(idx, idx).expect("indices in range"))
                .fold(Polynomial::zero(nvars), |acc, t| acc + t)
        })
        .collect()
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// `DF`: the maximal minor of `Df` on the last `q` columns.
pub fn df_minor(f: &[Polynomial], nvars: usize) -> Result<Polynomial, IndexError> {
    let q = f.len();
    if q > nvars {
        return Err(IndexError::NotCurve { n: nvars, q });
    }
    let rows: Vec<usize> = (0..q).collect();
    let cols: Vec<usize> = (nvars - q..nvars).collect();
    Ok(jacobian(f, nvars).minor_det(&rows, &cols)?)
}

/// Tunables of the index pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexOptions {
    /// Seed for random coordinate changes.
    pub seed: u64,
    pub max_attempts: usize,
    /// Choice of the linear form on the real side.
    pub form: FormPolicy,
    pub check_good: bool,
    pub deform: bool,
    pub exec: Execution,
}

impl Default for IndexOptions {
    fn default() -> Self {
        IndexOptions {
            seed: 0,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            form: FormPolicy::Default,
            check_good: false,
            deform: false,
            exec: Execution::default(),
        }
    }
}

/// Algebras attached to a problem in normalized coordinates.
#[derive(Debug, Clone)]
pub struct GsvAlgebras {
    pub b0: FiniteAlgebra,
    pub df: Polynomial,
    pub c0: QuotientAlgebra,
    pub dim_b0_mod_df: usize,
}

impl GsvAlgebras {
    /// Builds `B₀ = O/(f, X₁)` and `C₀ = B₀/ann(DF)` for a problem whose
    /// coordinates already make `(f, X₁)` zero-dimensional.
    pub fn build(problem: &Problem, exec: Execution) -> Result<Self, IndexError> {
        problem.require_curve()?;
        let mut gens = problem.f.clone();
        gens.push(problem.x[0].clone());
        let b0 = crate::algebra::build_algebra_with(&gens, Default::default(), exec)?;
        Self::from_b0(problem, b0)
    }

    fn from_b0(problem: &Problem, b0: FiniteAlgebra) -> Result<Self, IndexError> {
        let df = df_minor(&problem.f, problem.nvars())?;
        let c0 = annihilator_quotient(&b0, &df);
        let dim_b0_mod_df = b0.dim_mod(&df);
        Ok(GsvAlgebras { b0, df, c0, dim_b0_mod_df })
    }

    pub fn dim_c0(&self) -> usize {
        self.c0.dim()
    }
}

/// Result of an index computation.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub field: FieldTag,
    pub normalization: CoordinateNormalization,
    pub dim_b0: usize,
    pub dim_b0_mod_df: usize,
    pub dim_c0: usize,
    pub index: i64,
    pub signature: Option<SignatureResult>,
    pub linear_form: Option<LinearForm>,
    /// `c₁` in normalized coordinates.
    pub c1: Polynomial,
    pub goodness: Option<Goodness>,
    pub deformation: Option<Deformation>,
}

struct Pipeline {
    normalization: CoordinateNormalization,
    algebras: GsvAlgebras,
    c1: Polynomial,
}

fn run_pipeline(problem: &Problem, opts: &IndexOptions) -> Result<Pipeline, IndexError> {
    problem.require_curve()?;
    let tangency = verify_tangency(&problem.f, &problem.x, &problem.c)?;
    if !tangency.holds() {
        return Err(IndexError::NotTangent { residuals: tangency.residuals });
    }
    let normalization = ensure_regular_sequence(problem, opts.seed, opts.max_attempts)?;
    let b0 = FiniteAlgebra::from_standard_basis_with(normalization.standard_basis().clone(), opts.exec)?;
    let normalized = &normalization.problem;
    let algebras = GsvAlgebras::from_b0(normalized, b0)?;
    let dx = jacobian(&normalized.x, normalized.nvars());
    let c1 = c_coefficient(&dx, &normalized.c, 1);
    Ok(Pipeline { normalization, algebras, c1 })
}

fn finish_report(problem: &Problem, opts: &IndexOptions, p: Pipeline, field: FieldTag) -> Result<IndexReport, IndexError> {
    let dim_c0 = p.algebras.dim_c0();
    let (index, signature, linear_form) = match field {
        FieldTag::Complex => (dim_c0 as i64, None, None),
        FieldTag::Real if dim_c0 == 0 => (0, Some(SignatureResult::default()), None),
        FieldTag::Real => {
            let class = p.algebras.c0.coords(&p.c1);
            let (l, sig) = form_signature(&p.algebras.c0, &class, opts.form)?;
            (sig.signature(), Some(sig), Some(l))
        }
    };
    let goodness = if opts.check_good || opts.deform { Some(is_good_sufficient(&problem.f, &problem.c)?) } else { None };
    let deformation = match (&goodness, opts.deform) {
        (Some(Goodness::Satisfied(w)), true) => Some(construct_good_deformation(&problem.f, &problem.x, &problem.c, w)?),
        _ => None,
    };
    Ok(IndexReport {
        field,
        dim_b0: p.algebras.b0.dim(),
        dim_b0_mod_df: p.algebras.dim_b0_mod_df,
        dim_c0,
        index,
        signature,
        linear_form,
        c1: p.c1,
        normalization: p.normalization,
        goodness,
        deformation,
    })
}

/// Complex GSV index: `dim C₀`.
pub fn complex_gsv_index(problem: &Problem, opts: &IndexOptions) -> Result<IndexReport, IndexError> {
    let p = run_pipeline(problem, opts)?;
    finish_report(problem, opts, p, FieldTag::Complex)
}

/// Real GSV index: signature of `l(h₁·h₂)` on `C₀` with `l(c₁) > 0`.
pub fn real_gsv_index(problem: &Problem, opts: &IndexOptions) -> Result<IndexReport, IndexError> {
    let p = run_pipeline(problem, opts)?;
    finish_report(problem, opts, p, FieldTag::Real)
}

/// Dispatches on the problem's field tag.
pub fn gsv_index(problem: &Problem, opts: &IndexOptions) -> Result<IndexReport, IndexError> {
    match problem.field {
        FieldTag::Complex => complex_gsv_index(problem, opts),
        FieldTag::Real => real_gsv_index(problem, opts),
    }
}

/// Evaluates independent problems, in parallel when enabled.
pub fn evaluate_batch(problems: &[Problem], opts: &IndexOptions) -> Vec<Result<IndexReport, IndexError>> {
    let inner = IndexOptions { exec: Execution::Sequential, ..*opts };
    par::map(opts.exec, problems, |p| gsv_index(p, &inner))
}

/// Coordinates of `c₁` and the socle of `C₀`, used by consistency checks.
pub fn c1_class_and_socle(algebras: &GsvAlgebras, c1: &Polynomial) -> (Vec<Rational>, Vec<Vec<Rational>>) {
    (algebras.c0.coords(c1), crate::algebra::socle(&algebras.c0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    pub(crate) fn problem(vars: &[&str], f: &[&str], x: &[&str], c: &[&[&str]], field: FieldTag) -> Problem {
        let p = |s: &str| parse_poly(s, vars).unwrap();
        let rows: Vec<Vec<Polynomial>> = c.iter().map(|r| r.iter().map(|s| p(s)).collect()).collect();
        let cm = if rows.is_empty() { PolyMatrix::zeros(0, 0, vars.len()) } else { PolyMatrix::from_rows(rows).unwrap() };
        Problem::new(vars.iter().map(|s| s.to_string()).collect(), f.iter().map(|s| p(s)).collect(), x.iter().map(|s| p(s)).collect(), cm, field).unwrap()
    }

    fn d_k(k: u32, m: u32) -> Problem {
        let f = format!("x^2*y + y^{}", k - 1);
        let x1 = format!("{}*x^{}", k - 2, m + 1);
        let x2 = format!("2*x^{m}*y");
        let c = format!("{}*x^{m}", 2 * (k - 1));
        problem(&["x", "y"], &[&f], &[&x1, &x2], &[&[&c]], FieldTag::Complex)
    }

    #[test]
    fn tangency_examples() {
        let d4 = d_k(4, 3);
        assert!(verify_tangency(d4.f(), d4.x(), d4.c()).unwrap().holds());
        let bad = problem(&["x", "y"], &["y"], &["0", "1"], &[&["0"]], FieldTag::Complex);
        let t = verify_tangency(bad.f(), bad.x(), bad.c()).unwrap();
        assert!(!t.holds());
        assert_eq!(t.residuals, vec![parse_poly("1", &["x", "y"]).unwrap()]);
    }

    #[test]
    fn c_coefficients() {
        let d4 = d_k(4, 3);
        let dx = jacobian(d4.x(), 2);
        assert_eq!(c_coefficient(&dx, d4.c(), 1), parse_poly("4*x^3", &["x", "y"]).unwrap());
        let zero2 = PolyMatrix::zeros(2, 2, 2);
        let zero1 = PolyMatrix::zeros(1, 1, 2);
        for k in 1..4 {
            assert!(c_coefficient(&zero2, &zero1, k).is_zero());
        }
        assert_eq!(c_coefficient(&dx, &zero1, 1), dx.trace());
        // second coefficient: det DX - trace DX·c + c²
        let c = d4.c().get(0, 0);
        let expected = dx.determinant() - &(&dx.trace() * c) + c * c;
        assert_eq!(c_coefficient(&dx, d4.c(), 2), expected);
    }

    #[test]
    fn d4_index() {
        let r = complex_gsv_index(&d_k(4, 3), &IndexOptions::default()).unwrap();
        assert_eq!((r.dim_b0, r.dim_b0_mod_df, r.dim_c0, r.index), (12, 6, 6, 6));
        assert_eq!(r.normalization.kind, TransformKind::Identity);
    }

    #[test]
    fn smooth_line() {
        let p = problem(&["x", "y"], &["y"], &["x", "0"], &[&["0"]], FieldTag::Complex);
        assert_eq!(complex_gsv_index(&p, &IndexOptions::default()).unwrap().index, 1);
        assert_eq!(real_gsv_index(&p, &IndexOptions::default()).unwrap().index, 1);
        let q = problem(&["x", "y"], &["y"], &["x^2", "0"], &[&["0"]], FieldTag::Real);
        let r = real_gsv_index(&q, &IndexOptions::default()).unwrap();
        assert_eq!((r.dim_c0, r.index), (2, 0));
    }

    #[test]
    fn hyperbola_is_zero() {
        let p = problem(&["x", "y"], &["x^2 - y^2"], &["x^2", "x*y"], &[&["2*x"]], FieldTag::Real);
        let r = real_gsv_index(&p, &IndexOptions::default()).unwrap();
        assert_eq!(r.dim_c0, 2);
        assert_eq!(r.index, 0);
        assert_eq!(r.c1, parse_poly("x", &["x", "y"]).unwrap());
    }

    #[test]
    fn rejects_non_curves_and_non_tangent_fields() {
        let p = problem(&["x", "y", "z"], &["x^2 + y^2 + z^2"], &["x", "y", "z"], &[&["2"]], FieldTag::Complex);
        assert_eq!(complex_gsv_index(&p, &IndexOptions::default()).unwrap_err(), IndexError::NotCurve { n: 3, q: 1 });
        let bad = problem(&["x", "y"], &["y"], &["0", "1"], &[&["0"]], FieldTag::Complex);
        assert!(matches!(complex_gsv_index(&bad, &IndexOptions::default()), Err(IndexError::NotTangent { .. })));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(1, 2).is_empty());
    }
}
