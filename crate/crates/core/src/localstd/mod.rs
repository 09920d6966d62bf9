//! Standard bases of polynomial ideals in the local ring at the origin.
//!
//! Completion uses Mora's tangent cone algorithm. Every basis element keeps
//! a lift `u·b = Σ c_j·g_j` with `u(0) ≠ 0`, so membership answers come with
//! a checkable certificate.

mod mora;
mod order;

use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use thiserror::Error;

pub use order::MonomialOrder;

use crate::poly::{Monomial, Polynomial};
use mora::Tracked;

/// Degree cap guarding runaway completion.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error("no generators given")]
    NoGenerators,
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("standard basis completion exceeded the degree cap {cap}")]
    CapExceeded { cap: u32 },
}

/// Certificate `denominator · p = Σ coefficients[j] · gens[j]` with
/// `denominator(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub denominator: Polynomial,
    pub coefficients: Vec<Polynomial>,
}

impl Witness {
    /// Re-multiplies and compares exactly.
    pub fn verify(&self, p: &Polynomial, gens: &[Polynomial]) -> bool {
        if !self.denominator.is_unit_at_origin() || self.coefficients.len() != gens.len() {
            return false;
        }
        let rhs = self.coefficients.iter().zip(gens).fold(Polynomial::zero(p.nvars()), |acc, (c, g)| acc + c * g);
        &self.denominator * p == rhs
    }

    /// True when the denominator is the constant 1, i.e. the combination is
    /// a polynomial identity.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }
}

/// Quotient dimension of the local algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Finite(usize),
    /// No pure power of `free_variable` lies in the leading ideal.
    Infinite { free_variable: usize },
}

impl Dimension {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dimension::Finite(d) => Some(d),
            Dimension::Infinite { .. } => None,
        }
    }
}

/// Leading monomials and the monomials under them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    pub leading: Vec<Monomial>,
    /// Monomials divisible by no leading monomial, most leading first;
    /// `None` when there are infinitely many.
    pub basis_monomials: Option<Vec<Monomial>>,
    pub dimension: Dimension,
}

/// A standard basis together with its lift to the input generators.
#[derive(Debug, Clone)]
pub struct StandardBasis {
    order: MonomialOrder,
    nvars: usize,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    leading: Vec<(Monomial, crate::Rational)>,
    ecarts: Vec<u32>,
    lift: Vec<Witness>,
    staircase: Staircase,
    global: OnceLock<Option<Box<StandardBasis>>>,
}

/// Standard basis of the ideal generated by `gens` under `order`, with the
/// default degree cap.
pub fn standard_basis(gens: &[Polynomial], order: MonomialOrder) -> Result<StandardBasis, LocalError> {
    standard_basis_with_cap(gens, order, DEFAULT_DEGREE_CAP)
}

pub fn standard_basis_with_cap(gens: &[Polynomial], order: MonomialOrder, degree_cap: u32) -> Result<StandardBasis, LocalError> {
    let nvars = ring_of(gens)?;
    let completed = mora::complete(gens, order, degree_cap, true, None).map_err(|_| LocalError::CapExceeded { cap: degree_cap })?;
    let kept = mora::minimalize(completed, order);
    let mut basis = Vec::with_capacity(kept.len());
    let mut leading = Vec::with_capacity(kept.len());
    let mut ecarts = Vec::with_capacity(kept.len());
    let mut lift = Vec::with_capacity(kept.len());
    for t in kept {
        leading.push(t.lead.clone().expect("nonzero"));
        ecarts.push(t.ecart);
        lift.push(Witness { denominator: t.unit, coefficients: t.coeffs });
        basis.push(t.poly);
    }
    let staircase = build_staircase(leading.iter().map(|(m, _)| m.clone()).collect(), nvars, order);
    Ok(StandardBasis { order, nvars, generators: gens.to_vec(), basis, leading, ecarts, lift, staircase, global: OnceLock::new() })
}

/// Monomials outside the ideal spanned by `leading`, or `None` when there
/// are infinitely many.
pub(crate) fn staircase_monomials(leading: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    if (0..nvars).any(|i| !leading.iter().any(|l| l.pure_power().is_some_and(|(v, _)| v == i) || l.is_one())) {
        return None;
    }
    Some(staircase_up_to(leading, nvars, u32::MAX))
}

/// Monomials of degree at most `limit` outside the ideal spanned by `leading`.
fn staircase_up_to(leading: &[Monomial], nvars: usize, limit: u32) -> Vec<Monomial> {
    let divisible = |m: &Monomial| leading.iter().any(|l| l.divides(m));
    let one = Monomial::one(nvars);
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut queue = VecDeque::new();
    if !divisible(&one) {
        seen.insert(one.clone());
        queue.push_back(one);
    }
    while let Some(m) = queue.pop_front() {
        if m.degree() >= limit {
            continue;
        }
        for i in 0..nvars {
            let next = m.mul(&Monomial::var(nvars, i));
            if !seen.contains(&next) && !divisible(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn build_staircase(leading: Vec<Monomial>, nvars: usize, order: MonomialOrder) -> Staircase {
    let Some(mut monomials) = staircase_monomials(&leading, nvars) else {
        let free = (0..nvars).find(|&i| !leading.iter().any(|l| l.pure_power().is_some_and(|(v, _)| v == i) || l.is_one())).expect("some variable is free");
        return Staircase { leading, basis_monomials: None, dimension: Dimension::Infinite { free_variable: free } };
    };
    monomials.sort_by(|a, b| order.cmp(b, a));
    let d = monomials.len();
    Staircase { leading, basis_monomials: Some(monomials), dimension: Dimension::Finite(d) }
}

impl StandardBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    /// Lift rows: `lift[i].denominator · basis[i] = Σ_j lift[i].coefficients[j] · gens[j]`.
    pub fn lift(&self) -> &[Witness] {
        &self.lift
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.leading.iter().map(|(m, _)| m)
    }

    pub fn staircase(&self) -> &Staircase {
        &self.staircase
    }

    pub fn dimension(&self) -> Dimension {
        self.staircase.dimension
    }

    /// True when the ideal is the whole local ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|(m, _)| m.is_one())
    }

    fn reducers(&self, extra_slot: bool) -> Vec<Tracked> {
        self.basis
            .iter()
            .zip(&self.lift)
            .map(|(b, w)| {
                let mut coeffs = w.coefficients.clone();
                if extra_slot {
                    coeffs.push(Polynomial::zero(self.nvars));
                }
                Tracked::new(b.clone(), w.denominator.clone(), coeffs, self.order)
            })
            .collect()
    }

    fn untracked_reducers(&self) -> Vec<Tracked> {
        self.basis
            .iter()
            .zip(&self.leading)
            .zip(&self.ecarts)
            .map(|((b, lead), &ecart)| Tracked {
                poly: b.clone(),
                unit: Polynomial::one(self.nvars),
                coeffs: Vec::new(),
                lead: Some(lead.clone()),
                ecart,
            })
            .collect()
    }

    /// Mora's weak normal form: only the leading term is guaranteed to lie
    /// outside the leading ideal. Zero iff `p` lies in the ideal.
    pub fn weak_normal_form(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.nvars, "ring mismatch");
        mora::mora_reduce(Tracked::untracked(p, self.order), &self.untracked_reducers(), self.order).poly
    }

    /// Normal form of `p`.
    ///
    /// When the quotient is finite dimensional every term of the result is a
    /// staircase monomial and `p - NF(p)` lies in the ideal. Otherwise this
    /// is the weak normal form (only the leading term is irreducible, and the
    /// result agrees with `p` up to a unit). Either way the result is zero
    /// iff `p` belongs to the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        match self.staircase.basis_monomials.as_ref() {
            Some(_) if self.order.is_local() => self.full_reduce(p),
            _ => self.weak_normal_form(p),
        }
    }

    /// Largest degree of a staircase monomial; `m^(D+1)` lies in the ideal.
    pub fn highest_corner_degree(&self) -> Option<u32> {
        self.staircase.basis_monomials.as_ref().map(|ms| ms.iter().map(Monomial::degree).max().unwrap_or(0))
    }

    /// Complete reduction modulo `m^(D+1)`, valid for zero-dimensional
    /// ideals under a local degree order.
    fn full_reduce(&self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.nvars, "ring mismatch");
        let Some(bound) = self.highest_corner_degree() else {
            return self.weak_normal_form(p);
        };
        if self.staircase.basis_monomials.as_ref().is_some_and(Vec::is_empty) {
            return Polynomial::zero(self.nvars);
        }
        let mut h = p.truncate_above(bound);
        let mut out = Polynomial::zero(self.nvars);
        while let Some((m, c)) = self.order.leading_term(&h).map(|(m, c)| (m.clone(), c.clone())) {
            let reducer = self.leading.iter().position(|(lm, _)| lm.divides(&m));
            match reducer {
                None => {
                    h.remove_term(&m);
                    out.add_term(m, c);
                }
                Some(i) => {
                    let (lm, lc) = &self.leading[i];
                    let shift = m.div(lm).expect("divides");
                    let factor = -(&c / lc);
                    for (bm, bc) in self.basis[i].terms() {
                        let t = bm.mul(&shift);
                        if t.degree() <= bound {
                            h.add_term(t, &factor * bc);
                        }
                    }
                    debug_assert!(h.coefficient(&m).is_zero());
                }
            }
        }
        out
    }

    /// Membership in the localized ideal with certificate. A polynomial
    /// certificate (denominator 1) is preferred when one exists.
    pub fn membership_witness(&self, p: &Polynomial) -> Option<Witness> {
        assert_eq!(p.nvars(), self.nvars, "ring mismatch");
        let k = self.generators.len();
        if p.is_zero() {
            return Some(Witness { denominator: Polynomial::one(self.nvars), coefficients: vec![Polynomial::zero(self.nvars); k] });
        }
        if !self.contains(p) {
            return None;
        }
        if self.order.is_local() {
            if let Some(w) = self.global_basis().and_then(|g| g.tracked_witness(p)) {
                return Some(w);
            }
        }
        self.tracked_witness(p)
    }

    /// Standard basis of the same generators under the global order.
    fn global_basis(&self) -> Option<&StandardBasis> {
        self.global.get_or_init(|| standard_basis(&self.generators, MonomialOrder::DegRevLex).ok().map(Box::new)).as_deref()
    }

    fn tracked_witness(&self, p: &Polynomial) -> Option<Witness> {
        let k = self.generators.len();
        let mut coeffs = vec![Polynomial::zero(self.nvars); k + 1];
        coeffs[k] = Polynomial::one(self.nvars);
        let start = Tracked::new(p.clone(), Polynomial::one(self.nvars), coeffs, self.order);
        let mut r = mora::mora_reduce(start, &self.reducers(true), self.order);
        if !r.is_zero() {
            return None;
        }
        // 0 = Σ C_j g_j + C_p p, so (-C_p) p = Σ C_j g_j
        let cp = r.coeffs.pop().expect("extra slot");
        let mut w = Witness { denominator: -cp, coefficients: r.coeffs };
        let c0 = w.denominator.constant_term();
        debug_assert!(!c0.is_zero(), "Mora reduction keeps the multiplier a unit");
        if !c0.is_one() {
            let inv = c0.recip();
            w.denominator = w.denominator.scale(&inv);
            w.coefficients = w.coefficients.iter().map(|c| c.scale(&inv)).collect();
        }
        Some(w)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Normal form of `p` with respect to a standard basis.
pub fn normal_form(p: &Polynomial, sb: &StandardBasis) -> Polynomial {
    sb.normal_form(p)
}

/// Dimension of `O/(gens)` over the ground field.
pub fn quotient_dimension(gens: &[Polynomial], order: MonomialOrder) -> Result<Dimension, LocalError> {
    quotient_dimension_with_cap(gens, order, DEFAULT_DEGREE_CAP)
}

/// Like [`quotient_dimension`], with an explicit degree cap. Runs the
/// completion without lift tracking.
pub fn quotient_dimension_with_cap(gens: &[Polynomial], order: MonomialOrder, degree_cap: u32) -> Result<Dimension, LocalError> {
    let nvars = ring_of(gens)?;
    if let Some(c) = bounded_colength(gens, order, degree_cap)? {
        return Ok(Dimension::Finite(c.dimension));
    }
    let completed = mora::complete(gens, order, degree_cap, false, None).map_err(|_| LocalError::CapExceeded { cap: degree_cap })?;
    let leading = mora::minimalize(completed, order).into_iter().map(|t| t.lead.expect("nonzero").0).collect();
    Ok(build_staircase(leading, nvars, order).dimension)
}

fn ring_of(gens: &[Polynomial]) -> Result<usize, LocalError> {
    let nvars = gens.first().ok_or(LocalError::NoGenerators)?.nvars();
    if gens.iter().any(|g| g.nvars() != nvars) {
        return Err(LocalError::RingMismatch);
    }
    Ok(nvars)
}

/// Finite colength certified by a power of the maximal ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Colength {
    pub dimension: usize,
    /// Least `k` with `m^k ⊆ I`.
    pub loewy_length: u32,
}

/// Colength of `I = (gens)` under a local order when `m^k ⊆ I` for some
/// `k ≤ max_degree`, else `None`.
///
/// Works in `O/(I + m^(N+1))` for `N = 8, 16, …`, where every element is
/// truncated above degree `N` and coefficients stay small. A degree `k ≤ N`
/// without staircase monomials gives `m^k ⊆ I + m^(k+1)`, hence `m^k ⊆ I`.
pub fn bounded_colength(gens: &[Polynomial], order: MonomialOrder, max_degree: u32) -> Result<Option<Colength>, LocalError> {
    let nvars = ring_of(gens)?;
    if !order.is_local() {
        return Ok(None);
    }
    let mut n = max_degree.min(8);
    loop {
        let completed = mora::complete(gens, order, u32::MAX, false, Some(n)).map_err(|_| LocalError::CapExceeded { cap: n })?;
        let leading: Vec<Monomial> = completed.iter().filter_map(|t| t.leading_monomial().cloned()).collect();
        let stairs = staircase_up_to(&leading, nvars, n);
        let top = stairs.iter().map(Monomial::degree).max();
        if top.map_or(true, |t| t < n) {
            return Ok(Some(Colength { dimension: stairs.len(), loewy_length: top.map_or(0, |t| t + 1) }));
        }
        if n >= max_degree {
            return Ok(None);
        }
        n = (2 * n).min(max_degree);
    }
}

/// Decides `p ∈ (gens)` in the local ring; on success returns the
/// certificate.
pub fn ideal_membership(p: &Polynomial, gens: &[Polynomial], order: MonomialOrder) -> Result<Option<Witness>, LocalError> {
    Ok(standard_basis(gens, order)?.membership_witness(p))
}
