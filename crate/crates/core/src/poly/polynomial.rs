use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Monomial, PolyError};
use crate::linalg::RatMatrix;
use crate::Rational;

/// Sparse polynomial with rational coefficients in a fixed number of
/// variables.
///
/// The term map never stores a zero coefficient, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    /// The variable `z_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Collects terms, summing duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&Monomial::one(self.nvars)).is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// A unit of the local ring at the origin.
    pub fn is_unit_at_origin(&self) -> bool {
        !self.constant_term().is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term (the order at the origin).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn remove_term(&mut self, m: &Monomial) -> Option<Rational> {
        self.terms.remove(m)
    }

    /// `self += c * m * other`, in place.
    pub fn add_scaled_shifted(&mut self, c: &Rational, m: &Monomial, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "ring mismatch");
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), c * oc);
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `z_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exponents_mut()[i] -= 1;
            out.add_term(dm, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `z_i := images[i]`; all images must share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Polynomial::nvars);
        assert!(images.iter().all(|p| p.nvars == target), "images live in different rings");
        // power cache per variable
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = &cache[cache.len() - 1] * &cache[1];
                    cache.push(next);
                }
                t = &t * &cache[e as usize];
            }
            out = out + t;
        }
        out
    }

    /// `p(A·y)`: the same function written in coordinates `y` with `z = A y`.
    pub fn linear_substitute(&self, a: &RatMatrix) -> Result<Polynomial, PolyError> {
        check_transform(a, self.nvars)?;
        Ok(self.substitute(&linear_images(a)))
    }

    /// Embeds into a ring with `nvars` variables, the existing ones first.
    pub fn extend_vars(&self, nvars: usize) -> Polynomial {
        assert!(nvars >= self.nvars);
        Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exponents().to_vec();
                    e.resize(nvars, 0);
                    (Monomial::from_exponents(e), c.clone())
                })
                .collect(),
        }
    }

    /// Sets `z_i = 0` and drops that variable from the ring.
    pub fn restrict_to_hyperplane(&self, i: usize) -> Polynomial {
        let nvars = self.nvars - 1;
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            if m.exponents()[i] != 0 {
                continue;
            }
            let mut e = m.exponents().to_vec();
            e.remove(i);
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Drops every term of total degree above `bound`.
    /// Drops every term of degree above `bound`, in place.
    pub(crate) fn truncate_in_place(&mut self, bound: u32) {
        self.terms.retain(|m, _| m.degree() <= bound);
    }

    pub fn truncate_above(&self, bound: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Exact division `self / divisor` when the quotient is a polynomial.
    ///
    /// Uses degree-lexicographic long division; any nonzero remainder means
    /// the division is not exact.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert_eq!(self.nvars, divisor.nvars, "ring mismatch");
        let key = |m: &Monomial| (m.degree(), m.clone());
        let (dlm, dlc) = divisor.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0)))?;
        let (dlm, dlc) = (dlm.clone(), dlc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lm, lc)) = rem.terms.iter().max_by(|a, b| key(a.0).cmp(&key(b.0))) {
            let m = lm.div(&dlm)?;
            let c = lc / &dlc;
            rem.add_scaled_shifted(&-c.clone(), &m, divisor);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Divides every coefficient by the leading rational content so the
    /// coefficients become coprime integers with a positive first entry.
    pub fn primitive(&self) -> Polynomial {
        use num_integer::Integer;
        let Some(first) = self.terms.values().next() else {
            return self.clone();
        };
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut content = Rational::new(num, den);
        if first.is_negative() {
            content = -content;
        }
        self.scale(&content.recip())
    }

    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        PolyDisplay { p: self, vars }
    }

    /// Renders with the given variable names in the text grammar of the
    /// problem files (parseable back by [`super::parse_poly`]).
    pub fn to_string_with(&self, vars: &[String]) -> String {
        self.display_with(vars).to_string()
    }
}

pub(crate) fn check_transform(a: &RatMatrix, nvars: usize) -> Result<(), PolyError> {
    if !a.is_square() || a.rows() != nvars {
        return Err(PolyError::DimensionMismatch { expected: nvars, found: a.rows() });
    }
    if a.determinant().is_zero() {
        return Err(PolyError::SingularTransform);
    }
    Ok(())
}

/// Images `z_i = Σ_j A_ij y_j`.
pub(crate) fn linear_images(a: &RatMatrix) -> Vec<Polynomial> {
    let n = a.rows();
    (0..n)
        .map(|i| Polynomial::from_terms(n, (0..n).map(|j| (Monomial::var(n, j), a.get(i, j).clone()))))
        .collect()
}

struct PolyDisplay<'a> {
    p: &'a Polynomial,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        // graded, highest degree first
        let mut terms: Vec<_> = self.p.terms.iter().collect();
        terms.sort_by(|a, b| (b.0.degree(), b.0).cmp(&(a.0.degree(), a.0)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", m.display_with(self.vars))?;
            } else {
                write!(f, "{abs}*{}", m.display_with(self.vars))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("z{i}")).collect();
        let shown = self.display_with(&names).to_string();
        f.write_str(&shown)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs
    }
}

impl Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
        self
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        if self.terms.len() >= rhs.terms.len() {
            self + &rhs
        } else {
            rhs + &self
        }
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs
    }
}

impl Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self - &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &rhs.terms {
            out.add_scaled_shifted(c, m, self);
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        &self * rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn xy() -> (Polynomial, Polynomial) {
        (Polynomial::var(2, 0), Polynomial::var(2, 1))
    }

    #[test]
    fn cancellation_gives_canonical_zero() {
        let (x, _) = xy();
        let p = x.scale(&Rational::new(1.into(), 2.into())) - x.scale(&Rational::new(1.into(), 2.into()));
        assert!(p.is_zero());
        assert_eq!(p, Polynomial::zero(2));
    }

    #[test]
    fn derivative_of_d4_curve() {
        let (x, y) = xy();
        let f = &(&x * &x) * &y + y.pow(3);
        assert_eq!(f.derivative(0), (&x * &y).scale(&q(2)));
        assert_eq!(f.derivative(1), &x * &x + (&y * &y).scale(&q(3)));
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let a = &x + &y;
        let b = &x - &y;
        assert_eq!((&a * &b).exact_div(&b), Some(a.clone()));
        assert_eq!((&a * &a + Polynomial::one(2)).exact_div(&a), None);
    }

    #[test]
    fn linear_substitution_examples() {
        let (x, y) = xy();
        let swap = RatMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!((&x * &x).linear_substitute(&swap).unwrap(), &y * &y);
        let shear = RatMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]);
        // x + y with x := x + y  gives x + 2y
        assert_eq!((&x + &y).linear_substitute(&shear).unwrap(), &x + &y.scale(&q(2)));
        let singular = RatMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(x.linear_substitute(&singular), Err(PolyError::SingularTransform));
    }

    #[test]
    fn display_is_graded() {
        let (x, y) = xy();
        let p = &(&x * &x) * &y - y.scale(&Rational::new(1.into(), 2.into())) + Polynomial::from_i64(2, -3);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(p.to_string_with(&names), "x^2*y - 1/2*y - 3");
        assert_eq!((-&x).to_string_with(&names), "-x");
    }

    #[test]
    fn restriction_drops_variable() {
        let (x, y) = xy();
        let p = &x * &x + &x * &y + y.clone();
        assert_eq!(p.restrict_to_hyperplane(1), Polynomial::var(1, 0).pow(2));
    }
}
