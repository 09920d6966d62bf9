use super::{combinations, IndexError};
use crate::localstd::{ideal_membership, standard_basis, MonomialOrder, Witness};
use crate::poly::{jacobian, PolyMatrix, Polynomial};

/// A maximal minor `f_I` of `Df`, with `I` the selected columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalMinor {
    pub columns: Vec<usize>,
    pub value: Polynomial,
}

/// Every entry of `C` written over the maximal minors of `Df`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessWitness {
    pub minors: Vec<MaximalMinor>,
    /// `entries[l][m]` certifies `C[l][m]` in the ideal of the minors.
    pub entries: Vec<Vec<Witness>>,
}

/// Outcome of the sufficient goodness criterion. The criterion cannot
/// refute goodness, so the negative outcome is `Unknown`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Goodness {
    Satisfied(GoodnessWitness),
    Unknown,
}

impl Goodness {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Goodness::Satisfied(_))
    }
}

/// Checks whether every entry of `C` lies in the local ideal generated by
/// the maximal minors of the Jacobian of `f`.
pub fn is_good_sufficient(f: &[Polynomial], c: &PolyMatrix) -> Result<Goodness, IndexError> {
    let q = f.len();
    let Some(n) = f.first().map(Polynomial::nvars) else {
        return Ok(Goodness::Satisfied(GoodnessWitness { minors: Vec::new(), entries: Vec::new() }));
    };
    let df = jacobian(f, n);
    let rows: Vec<usize> = (0..q).collect();
    let minors: Vec<MaximalMinor> = combinations(n, q)
        .into_iter()
        .map(|cols| {
            let value = df.minor_det(&rows, &cols).expect("indices in range");
            MaximalMinor { columns: cols, value }
        })
        .collect();
    let gens: Vec<Polynomial> = minors.iter().map(|m| m.value.clone()).collect();
    if gens.iter().all(Polynomial::is_zero) {
        let all_zero = c.entries().iter().all(Polynomial::is_zero);
        if !all_zero {
            return Ok(Goodness::Unknown);
        }
        let zero = Witness { denominator: Polynomial::one(n), coefficients: vec![Polynomial::zero(n); gens.len()] };
        return Ok(Goodness::Satisfied(GoodnessWitness { minors, entries: vec![vec![zero; q]; q] }));
    }
    let sb = standard_basis(&gens, MonomialOrder::default())?;
    let mut entries = Vec::with_capacity(q);
    for l in 0..q {
        let mut row = Vec::with_capacity(q);
        for m in 0..q {
            match sb.membership_witness(c.get(l, m)) {
                Some(w) => row.push(w),
                None => return Ok(Goodness::Unknown),
            }
        }
        entries.push(row);
    }
    Ok(Goodness::Satisfied(GoodnessWitness { minors, entries }))
}

/// A deformation `X_t` in the variables `(z₁, …, z_n, t₁, …, t_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    pub nvars: usize,
    pub parameters: usize,
    pub components: Vec<Polynomial>,
}

/// Builds `X_t` with `X_t(f − t) = C(f − t)` from a goodness witness.
///
/// For a minor index set `I` and row `l`, the vector `v_{I,l}` supported on
/// `I` with `v_{I,l}|_I = adj(Df|_I)·e_l` satisfies `Df·v_{I,l} = f_I·e_l`.
/// With `C[l][m] = Σ_I c_I^{l,m} f_I` as polynomial identities,
/// `X_t = X − Σ_m t_m Σ_{l,I} c_I^{l,m} v_{I,l}`. Witnesses whose
/// denominator is not constant are replaced by global ones.
pub fn construct_good_deformation(f: &[Polynomial], x: &[Polynomial], c: &PolyMatrix, witness: &GoodnessWitness) -> Result<Deformation, IndexError> {
    let n = x.len();
    let q = f.len();
    let total = n + q;
    let df = jacobian(f, n);
    let rows: Vec<usize> = (0..q).collect();
    let gens: Vec<Polynomial> = witness.minors.iter().map(|m| m.value.clone()).collect();

    let mut components: Vec<Polynomial> = x.iter().map(|p| p.extend_vars(total)).collect();
    for m in 0..q {
        let t = Polynomial::var(total, n + m);
        for l in 0..q {
            let coeffs = polynomial_coefficients(c.get(l, m), &gens, witness.entries.get(l).and_then(|r| r.get(m)))
                .ok_or(IndexError::NonPolynomialWitness { row: l, col: m })?;
            for (minor, coeff) in witness.minors.iter().zip(coeffs) {
                if coeff.is_zero() {
                    continue;
                }
                let adj = df.submatrix(&rows, &minor.columns)?.adjugate();
                let scaled = &coeff.extend_vars(total) * &t;
                for (k, &col) in minor.columns.iter().enumerate() {
                    let entry = adj.get(k, l);
                    if entry.is_zero() {
                        continue;
                    }
                    components[col] = &components[col] - &(&scaled * &entry.extend_vars(total));
                }
            }
        }
    }
    let deformation = Deformation { nvars: total, parameters: q, components };
    if !verify_deformation(f, c, &deformation) {
        return Err(IndexError::VerificationFailed("X_t(f - t) differs from C(f - t)".into()));
    }
    Ok(deformation)
}

/// Coefficients `a_I` with `p = Σ a_I gens_I` as a polynomial identity.
fn polynomial_coefficients(p: &Polynomial, gens: &[Polynomial], local: Option<&Witness>) -> Option<Vec<Polynomial>> {
    if p.is_zero() {
        return Some(vec![Polynomial::zero(p.nvars()); gens.len()]);
    }
    let from_constant = |w: &Witness| {
        let inv = w.denominator.constant_term().recip();
        w.coefficients.iter().map(|c| c.scale(&inv)).collect()
    };
    if let Some(w) = local.filter(|w| w.denominator.is_constant()) {
        return Some(from_constant(w));
    }
    let global = ideal_membership(p, gens, MonomialOrder::DegRevLex).ok()??;
    global.denominator.is_constant().then(|| from_constant(&global))
}

/// Checks `Df·X_t = C·(f − t)` exactly in the extended ring.
pub fn verify_deformation(f: &[Polynomial], c: &PolyMatrix, d: &Deformation) -> bool {
    let n = d.nvars - d.parameters;
    let q = f.len();
    if d.components.len() != n || d.parameters != q {
        return false;
    }
    let shifted: Vec<Polynomial> = f.iter().enumerate().map(|(k, fk)| fk.extend_vars(d.nvars) - Polynomial::var(d.nvars, n + k)).collect();
    (0..q).all(|l| {
        let lhs = (0..n).fold(Polynomial::zero(d.nvars), |acc, j| acc + &shifted[l].derivative(j) * &d.components[j]);
        let rhs = (0..q).fold(Polynomial::zero(d.nvars), |acc, k| acc + &c.get(l, k).extend_vars(d.nvars) * &shifted[k]);
        lhs == rhs
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::problem;
    use super::super::FieldTag;
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn hyperbola_deformation() {
        let p = problem(&["x", "y"], &["x^2 - y^2"], &["x^2", "x*y"], &[&["2*x"]], FieldTag::Real);
        let Goodness::Satisfied(w) = is_good_sufficient(p.f(), p.c()).unwrap() else {
            panic!("criterion should hold");
        };
        let alpha = &w.entries[0][0];
        assert!(alpha.is_polynomial());
        let vars3 = ["x", "y", "t"];
        assert_eq!(alpha.coefficients, vec![parse_poly("1", &["x", "y"]).unwrap(), parse_poly("0", &["x", "y"]).unwrap()]);
        let d = construct_good_deformation(p.f(), p.x(), p.c(), &w).unwrap();
        assert_eq!(d.components, vec![parse_poly("x^2 - t", &vars3).unwrap(), parse_poly("x*y", &vars3).unwrap()]);
    }

    #[test]
    fn unit_entry_is_unknown() {
        let p = problem(&["x", "y"], &["x^3 + y^3"], &["x", "y"], &[&["3"]], FieldTag::Complex);
        assert_eq!(is_good_sufficient(p.f(), p.c()).unwrap(), Goodness::Unknown);
        let q = problem(&["x", "y"], &["x^3 + y^3"], &["x", "y"], &[&["1"]], FieldTag::Complex);
        assert_eq!(is_good_sufficient(q.f(), q.c()).unwrap(), Goodness::Unknown);
    }

    #[test]
    fn zero_tangency_matrix_keeps_the_field() {
        let p = problem(&["x", "y"], &["y"], &["x", "0"], &[&["0"]], FieldTag::Complex);
        let Goodness::Satisfied(w) = is_good_sufficient(p.f(), p.c()).unwrap() else {
            panic!("zero is in every ideal");
        };
        let d = construct_good_deformation(p.f(), p.x(), p.c(), &w).unwrap();
        let ext: Vec<Polynomial> = p.x().iter().map(|c| c.extend_vars(3)).collect();
        assert_eq!(d.components, ext);
    }

    #[test]
    fn d4_deformation_verifies() {
        let p = problem(&["x", "y"], &["x^2*y + y^3"], &["2*x^4", "2*x^3*y"], &[&["6*x^3"]], FieldTag::Complex);
        let Goodness::Satisfied(w) = is_good_sufficient(p.f(), p.c()).unwrap() else {
            panic!("criterion should hold");
        };
        assert!(w.entries[0][0].verify(p.c().get(0, 0), &[parse_poly("2*x*y", &["x", "y"]).unwrap(), parse_poly("x^2 + 3*y^2", &["x", "y"]).unwrap()]));
        let d = construct_good_deformation(p.f(), p.x(), p.c(), &w).unwrap();
        assert!(verify_deformation(p.f(), p.c(), &d));
    }

    #[test]
    fn space_curve_deformation_verifies() {
        let p = problem(
            &["x", "y", "z"],
            &["x^2 + y^2 + z^2", "x*y"],
            &["z*(x - y)*x", "z*(x - y)*y", "z*(x - y)*z"],
            &[&["2*z*(x - y)", "0"], &["0", "2*z*(x - y)"]],
            FieldTag::Complex,
        );
        let Goodness::Satisfied(w) = is_good_sufficient(p.f(), p.c()).unwrap() else {
            panic!("criterion should hold");
        };
        assert_eq!(w.minors.len(), 3);
        let d = construct_good_deformation(p.f(), p.x(), p.c(), &w).unwrap();
        assert!(verify_deformation(p.f(), p.c(), &d));
        let mut broken = d.clone();
        broken.components[0] = &broken.components[0] + &Polynomial::var(5, 3);
        assert!(!verify_deformation(p.f(), p.c(), &broken));
    }
}
