use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{complex_gsv_index, df_minor, random_unimodular, verify_tangency, GsvAlgebras, IndexError, IndexOptions, Problem};
use crate::algebra::{annihilator_quotient, build_algebra, solve_multiplication, FiniteAlgebra, LocalAlgebra};
use crate::linalg::RatMatrix;
use crate::localstd::{standard_basis, Dimension, MonomialOrder};
use crate::par::{self, Execution};
use crate::poly::{jacobian, PolyMatrix, Polynomial};
use crate::sigform::{form_signature, FormPolicy, SignatureResult};
use crate::Rational;

/// Residuals of `(−1)^i m_i X₁ + DF·X_i` modulo `(f)`, `i = 1..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CramerCheck {
    pub residuals: Vec<Polynomial>,
}

impl CramerCheck {
    pub fn holds(&self) -> bool {
        self.residuals.iter().all(Polynomial::is_zero)
    }
}

/// Checks the Cramer identities `(−1)^i m_i X₁ + DF·X_i ≡ 0 mod (f)`, where
/// `m_i` is the maximal minor of `Df` with column `i` removed, in the
/// problem's own coordinates.
pub fn cramer_identity_check(problem: &Problem) -> Result<CramerCheck, IndexError> {
    let n = problem.nvars();
    let q = problem.f().len();
    if q + 1 != n {
        return Err(IndexError::NotCurve { n, q });
    }
    let df = jacobian(problem.f(), n);
    let rows: Vec<usize> = (0..q).collect();
    let dfm = df_minor(problem.f(), n)?;
    let sb = standard_basis(problem.f(), MonomialOrder::default())?;
    let x1 = &problem.x()[0];
    let mut residuals = Vec::with_capacity(n);
    for i in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let mi = df.minor_det(&rows, &cols)?;
        // 1-based sign: (−1)^(i+1)
        let signed = if i % 2 == 0 { -(&mi * x1) } else { &mi * x1 };
        let expr = signed + &dfm * &problem.x()[i];
        residuals.push(sb.normal_form(&expr));
    }
    Ok(CramerCheck { residuals })
}

fn check_plane_hypersurface(f: &Polynomial, x: &[Polynomial], c: &Polynomial) -> Result<(), IndexError> {
    if f.nvars() != 2 || x.len() != 2 || x.iter().chain([c]).any(|p| p.nvars() != 2) {
        return Err(IndexError::Shape("comparison identities need a plane curve and a plane vector field".into()));
    }
    let cm = PolyMatrix::new(1, 1, vec![c.clone()])?;
    let t = verify_tangency(std::slice::from_ref(f), x, &cm)?;
    if !t.holds() {
        return Err(IndexError::NotTangent { residuals: t.residuals });
    }
    Ok(())
}

/// The scalar `r` with `r·(c·c₁) = det DX` in `O/(X₁, X₂)`, when it exists
/// and is positive.
pub fn gm_identity_check(f: &Polynomial, x: &[Polynomial], c: &Polynomial) -> Result<Option<Rational>, IndexError> {
    check_plane_hypersurface(f, x, c)?;
    let b = build_algebra(x, MonomialOrder::default())?;
    let dx = jacobian(x, 2);
    let c1 = dx.trace() - c;
    let lhs = b.coords(&(c * &c1));
    let rhs = b.coords(&dx.determinant());
    Ok(proportionality(&lhs, &rhs).filter(|r| r.is_positive()))
}

/// `r` with `rhs = r·lhs`, if `lhs ≠ 0` and the vectors are proportional.
fn proportionality(lhs: &[Rational], rhs: &[Rational]) -> Option<Rational> {
    let k = lhs.iter().position(|v| !v.is_zero())?;
    let r = &rhs[k] / &lhs[k];
    lhs.iter().zip(rhs).all(|(a, b)| &(a * &r) == b).then_some(r)
}

/// Both signatures of the comparison formula and their difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GmIndex {
    pub index: i64,
    /// Form on `𝔹/ann(c)` with `𝔹 = O/(X₁, X₂)`.
    pub signature_b: SignatureResult,
    /// Form on `𝔸/ann(c)` with `𝔸 = O/(∂f/∂x, ∂f/∂y)`.
    pub signature_a: SignatureResult,
    pub dim_a_quotient: usize,
    pub dim_b_quotient: usize,
}

/// Signature of `l(h₁h₂)` on `alg/ann(c)` with `l` positive on `top/c`.
fn relative_signature(alg: &FiniteAlgebra, c: &Polynomial, top: &Polynomial, name: &'static str, policy: FormPolicy) -> Result<(usize, SignatureResult), IndexError> {
    let quotient = annihilator_quotient(alg, c);
    if quotient.dim() == 0 {
        return Ok((0, SignatureResult::default()));
    }
    let h = solve_multiplication(alg, c, top).ok_or(IndexError::NoRelativeClass { name })?;
    let class = quotient.project(&h);
    let (_, sig) = form_signature(&quotient, &class, policy).map_err(|_| IndexError::NoRelativeClass { name })?;
    Ok((quotient.dim(), sig))
}

/// Index as `signature⟨,⟩_{l₂} − signature⟨,⟩_{l₁}` with `l₂` positive on
/// `det DX / c` in `𝔹/ann(c)` and `l₁` positive on `H_f / c` in `𝔸/ann(c)`.
pub fn gm_signature_index(f: &Polynomial, x: &[Polynomial], c: &Polynomial, policy: FormPolicy) -> Result<GmIndex, IndexError> {
    check_plane_hypersurface(f, x, c)?;
    let grad = vec![f.derivative(0), f.derivative(1)];
    let a = build_algebra(&grad, MonomialOrder::default())?;
    let b = build_algebra(x, MonomialOrder::default())?;
    let hessian = jacobian(&grad, 2).determinant();
    let det_dx = jacobian(x, 2).determinant();
    let (dim_b_quotient, signature_b) = relative_signature(&b, c, &det_dx, "det DX", policy)?;
    let (dim_a_quotient, signature_a) = relative_signature(&a, c, &hessian, "H_f", policy)?;
    if a.coords(c).iter().all(Zero::is_zero) && signature_a.signature() != 0 {
        return Err(IndexError::VerificationFailed("c lies in the gradient ideal but the A-signature is nonzero".into()));
    }
    Ok(GmIndex { index: signature_b.signature() - signature_a.signature(), signature_b, signature_a, dim_a_quotient, dim_b_quotient })
}

/// `dim C₀` under random unimodular coordinate changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceCheck {
    pub baseline: usize,
    pub dims: Vec<usize>,
    pub transforms: Vec<RatMatrix>,
}

impl InvarianceCheck {
    pub fn holds(&self) -> bool {
        self.dims.iter().all(|&d| d == self.baseline)
    }
}

const DRAWS_PER_TRIAL: usize = 25;

/// Compares `dim C₀` in the normalized coordinates with its value in
/// `trials` seeded random coordinate systems where `(f, X₁)` stays
/// zero-dimensional. Trial `k` draws from the seed `seed + k`.
pub fn coordinate_invariance_check(problem: &Problem, seed: u64, trials: usize, exec: Execution) -> Result<InvarianceCheck, IndexError> {
    let opts = IndexOptions { seed, exec: Execution::Sequential, ..IndexOptions::default() };
    let baseline = complex_gsv_index(problem, &opts)?.dim_c0;
    let results = par::map_range(exec, trials, |k| -> Result<(usize, RatMatrix), IndexError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        for _ in 0..DRAWS_PER_TRIAL {
            let a = random_unimodular(&mut rng, problem.nvars());
            let moved = problem.transformed(&a)?;
            let mut gens = moved.f().to_vec();
            gens.push(moved.x()[0].clone());
            if let Ok(sb) = standard_basis(&gens, MonomialOrder::default()) {
                if let Dimension::Finite(_) = sb.dimension() {
                    let b0 = FiniteAlgebra::from_standard_basis_with(sb, Execution::Sequential)?;
                    let df = df_minor(moved.f(), moved.nvars())?;
                    let dim = b0.dim() - b0.dim_mod(&df);
                    debug_assert_eq!(dim, GsvAlgebras::build(&moved, Execution::Sequential).map(|g| g.dim_c0()).unwrap_or(dim));
                    return Ok((dim, a));
                }
            }
        }
        Err(IndexError::NormalizationFailed { attempts: DRAWS_PER_TRIAL })
    });
    let mut dims = Vec::with_capacity(trials);
    let mut transforms = Vec::with_capacity(trials);
    for r in results {
        let (d, a) = r?;
        dims.push(d);
        transforms.push(a);
    }
    Ok(InvarianceCheck { baseline, dims, transforms })
}

#[cfg(test)]
mod tests {
    use super::super::tests::problem;
    use super::super::FieldTag;
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x", "y"]).unwrap()
    }

    fn gm_family(k: u32, l: u32) -> (Polynomial, Vec<Polynomial>, Polynomial) {
        let f = p(&format!("x^2 + y^{}", k + 1));
        let x = vec![p(&format!("-{}*x^2", k + 1)), p(&format!("-2*x*y + x^2*y^{l} + y^{}", l + k + 1))];
        let c = p(&format!("-{}*x + {}*y^{}", 2 * (k + 1), k + 1, k + l));
        (f, x, c)
    }

    #[test]
    fn gm_ratios() {
        for (k, l) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1)] {
            let (f, x, c) = gm_family(k, l);
            let r = gm_identity_check(&f, &x, &c).unwrap();
            assert_eq!(r, Some(Rational::from_integer((l + k + 1).into())), "k={k} l={l}");
        }
    }

    #[test]
    fn gm_signature_matches_real_index() {
        for (k, l) in [(1, 1), (2, 1), (1, 2)] {
            let (f, x, c) = gm_family(k, l);
            let gm = gm_signature_index(&f, &x, &c, FormPolicy::Default).unwrap();
            assert_eq!(gm.signature_a.signature(), 0);
            let prob = Problem::new(vec!["x".into(), "y".into()], vec![f], x, PolyMatrix::new(1, 1, vec![c]).unwrap(), FieldTag::Real).unwrap();
            let real = super::super::real_gsv_index(&prob, &IndexOptions::default()).unwrap();
            assert_eq!(gm.index, real.index, "k={k} l={l}");
        }
    }

    #[test]
    fn non_tangent_rejected() {
        let (f, x, _) = gm_family(1, 1);
        assert!(matches!(gm_identity_check(&f, &x, &p("1")), Err(IndexError::NotTangent { .. })));
    }

    #[test]
    fn cramer_on_d4() {
        let d4 = problem(&["x", "y"], &["x^2*y + y^3"], &["2*x^4", "2*x^3*y"], &[&["6*x^3"]], FieldTag::Complex);
        let check = cramer_identity_check(&d4).unwrap();
        assert_eq!(check.residuals.len(), 2);
        assert!(check.holds());
        let bad = problem(&["x", "y"], &["x^2*y + y^3"], &["2*x^4", "x"], &[&["6*x^3"]], FieldTag::Complex);
        assert!(!cramer_identity_check(&bad).unwrap().holds());
    }

    #[test]
    fn invariance_on_smooth_line() {
        let line = problem(&["x", "y"], &["y"], &["x", "0"], &[&["0"]], FieldTag::Complex);
        let check = coordinate_invariance_check(&line, 11, 5, Execution::default()).unwrap();
        assert!(check.holds());
        assert_eq!(check.dims, vec![1; 5]);
        assert!(coordinate_invariance_check(&line, 11, 0, Execution::default()).unwrap().holds());
    }
}
