//! Mora's weak normal form and tangent cone algorithm, with every element
//! carrying a certificate `unit · element = Σ coeff_j · generator_j`.

use num_traits::{One, Zero};

use super::MonomialOrder;
use crate::poly::{Monomial, Polynomial};
use crate::Rational;

/// A polynomial together with its expression in the generators.
///
/// Invariant: `unit * poly == Σ coeffs[j] * gens[j]`. An empty `coeffs`
/// vector means tracking is switched off.
#[derive(Clone, Debug)]
pub(crate) struct Tracked {
    pub poly: Polynomial,
    pub unit: Polynomial,
    pub coeffs: Vec<Polynomial>,
    pub lead: Option<(Monomial, Rational)>,
    pub ecart: u32,
}

impl Tracked {
    pub fn new(poly: Polynomial, unit: Polynomial, coeffs: Vec<Polynomial>, order: MonomialOrder) -> Self {
        let mut t = Tracked { poly, unit, coeffs, lead: None, ecart: 0 };
        t.refresh(order);
        t
    }

    /// The `j`-th of `k` generators itself.
    pub fn generator(g: &Polynomial, j: usize, k: usize, order: MonomialOrder) -> Self {
        let n = g.nvars();
        let coeffs = (0..k).map(|i| if i == j { Polynomial::one(n) } else { Polynomial::zero(n) }).collect();
        Self::new(g.clone(), Polynomial::one(n), coeffs, order)
    }

    /// An element with tracking disabled.
    pub fn untracked(p: &Polynomial, order: MonomialOrder) -> Self {
        Self::new(p.clone(), Polynomial::one(p.nvars()), Vec::new(), order)
    }

    fn refresh(&mut self, order: MonomialOrder) {
        self.lead = order.leading_term(&self.poly).map(|(m, c)| (m.clone(), c.clone()));
        self.ecart = order.ecart(&self.poly);
    }

    /// The same polynomial with tracking switched off.
    pub fn view(&self) -> Self {
        Tracked { poly: self.poly.clone(), unit: Polynomial::one(self.poly.nvars()), coeffs: Vec::new(), lead: self.lead.clone(), ecart: self.ecart }
    }

    fn truncate(&mut self, bound: u32, order: MonomialOrder) {
        self.poly.truncate_in_place(bound);
        self.refresh(order);
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.lead.as_ref().map(|(m, _)| m)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `c · m · self`.
    pub fn shifted(&self, c: &Rational, m: &Monomial, order: MonomialOrder) -> Self {
        let poly = self.poly.mul_monomial(m).scale(c);
        let coeffs = self.coeffs.iter().map(|q| q.mul_monomial(m).scale(c)).collect();
        Self::new(poly, self.unit.clone(), coeffs, order)
    }

    /// Cancels the leading term of `self` against `t`, whose leading
    /// monomial must divide it.
    pub fn reduce_by(&mut self, t: &Tracked, order: MonomialOrder) {
        let (lm, lc) = self.lead.clone().expect("reducing zero");
        let (tm, tc) = t.lead.as_ref().expect("zero reducer");
        let m = lm.div(tm).expect("leading monomial divides");
        let c = &lc / tc;
        let neg_c = -c;
        self.poly.add_scaled_shifted(&neg_c, &m, &t.poly);
        if !self.coeffs.is_empty() {
            // W_h W_t h' = W_t (W_h h) - c m W_h (W_t t)
            let t_unit_one = t.unit.is_one();
            let h_unit_one = self.unit.is_one();
            for (ch, ct) in self.coeffs.iter_mut().zip(&t.coeffs) {
                if !t_unit_one {
                    *ch = &*ch * &t.unit;
                }
                if ct.is_zero() {
                    continue;
                }
                if h_unit_one {
                    ch.add_scaled_shifted(&neg_c, &m, ct);
                } else {
                    let scaled = &self.unit * ct;
                    ch.add_scaled_shifted(&neg_c, &m, &scaled);
                }
            }
            if !t_unit_one {
                self.unit = &self.unit * &t.unit;
            }
        }
        self.refresh(order);
    }

    /// Copy scaled to leading coefficient 1; the certificate scales along.
    pub fn monic(&self) -> Self {
        let Some((m, c)) = &self.lead else { return self.clone() };
        if c.is_one() {
            return self.clone();
        }
        let inv = c.recip();
        let coeffs = self.coeffs.iter().map(|q| q.scale(&inv)).collect();
        Tracked { poly: self.poly.scale(&inv), unit: self.unit.clone(), coeffs, lead: Some((m.clone(), Rational::one())), ecart: self.ecart }
    }

    /// Rescales so the unit has constant term 1.
    pub fn normalize_unit(&mut self) {
        let c0 = self.unit.constant_term();
        if c0.is_zero() || c0.is_one() {
            return;
        }
        let inv = c0.recip();
        self.unit = self.unit.scale(&inv);
        for c in &mut self.coeffs {
            *c = c.scale(&inv);
        }
    }
}

enum Source {
    Fixed(usize),
    Added(usize),
}

/// Mora's normal form: reduces the leading term of `h` until it is not
/// divisible by any leading monomial of `reducers`. Intermediate forms with
/// a larger ecart than the chosen reducer join the reducer set.
pub(crate) fn mora_reduce(mut h: Tracked, reducers: &[Tracked], order: MonomialOrder) -> Tracked {
    let mut added: Vec<Tracked> = Vec::new();
    while let Some(lm) = h.leading_monomial().cloned() {
        let mut best: Option<(u32, Source)> = None;
        for (i, t) in reducers.iter().enumerate() {
            if t.leading_monomial().is_some_and(|tm| tm.divides(&lm)) && best.as_ref().map_or(true, |(e, _)| t.ecart < *e) {
                best = Some((t.ecart, Source::Fixed(i)));
            }
        }
        for (i, t) in added.iter().enumerate() {
            if t.leading_monomial().is_some_and(|tm| tm.divides(&lm)) && best.as_ref().map_or(true, |(e, _)| t.ecart < *e) {
                best = Some((t.ecart, Source::Added(i)));
            }
        }
        let Some((ecart, source)) = best else {
            break;
        };
        if ecart > h.ecart {
            added.push(h.monic());
        }
        let t = match source {
            Source::Fixed(i) => &reducers[i],
            Source::Added(i) => &added[i],
        };
        h.reduce_by(t, order);
    }
    h
}

/// Normal form modulo `m^(bound+1)`, for an untracked element and an ideal
/// containing `m^(bound+1)`. Terms above `bound` are dropped after every
/// step, so the leading monomial strictly decreases through a finite set and
/// plain division terminates without Mora's ecart bookkeeping. Without a
/// bound this is [`mora_reduce`].
pub(crate) fn mora_reduce_bounded(mut h: Tracked, reducers: &[Tracked], order: MonomialOrder, bound: Option<u32>) -> Tracked {
    debug_assert!(h.coeffs.is_empty(), "truncation breaks certificates");
    let Some(b) = bound else {
        return mora_reduce(h, reducers, order);
    };
    h.truncate(b, order);
    while let Some(lm) = h.leading_monomial().cloned() {
        let Some(t) = reducers.iter().find(|t| t.leading_monomial().is_some_and(|tm| tm.divides(&lm))) else {
            break;
        };
        h.reduce_by(t, order);
        h.truncate(b, order);
    }
    h
}

/// Error raised when completion produces elements above the degree cap.
#[derive(Debug)]
pub(crate) struct CapHit;

/// Tangent cone algorithm. Returns the (not yet minimalised) standard basis
/// as tracked elements over `gens`, or untracked ones when `track` is off.
///
/// With tracking off, `bound` asks for a basis of `(gens) + m^(bound+1)`.
pub(crate) fn complete(gens: &[Polynomial], order: MonomialOrder, degree_cap: u32, track: bool, bound: Option<u32>) -> Result<Vec<Tracked>, CapHit> {
    debug_assert!(bound.is_none() || !track, "a bound drops elements a tracked basis needs");
    let k = gens.len();
    let mut basis: Vec<Tracked> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(j, g)| if track { Tracked::generator(g, j, k, order) } else { Tracked::untracked(g, order) })
        .collect();
    if let Some(unit) = basis.iter().find(|t| t.leading_monomial().is_some_and(Monomial::is_one)) {
        return Ok(vec![unit.clone()]);
    }
    let mut views: Vec<Tracked> = basis.iter().map(Tracked::view).collect();
    let corner_of = |basis: &[Tracked]| if order.is_local() { min_bound(highest_corner(basis), bound) } else { None };
    let mut corner = corner_of(&basis);
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            push_pair(&mut pairs, &basis, i, j);
        }
    }
    while let Some(idx) = next_pair(&pairs) {
        let (_, i, j) = pairs.swap_remove(idx);
        // Untracked, truncated zero test first.
        let test = mora_reduce_bounded(s_polynomial(&views[i], &views[j], order), &views, order, corner);
        if test.is_zero() {
            continue;
        }
        let mut h = if track { mora_reduce(s_polynomial(&basis[i], &basis[j], order), &basis, order) } else { test };
        if h.is_zero() {
            continue;
        }
        if h.poly.total_degree().unwrap_or(0) > degree_cap {
            return Err(CapHit);
        }
        h.normalize_unit();
        if h.leading_monomial().is_some_and(Monomial::is_one) {
            return Ok(vec![h]);
        }
        views.push(h.view());
        basis.push(h);
        let new = basis.len() - 1;
        for i in 0..new {
            push_pair(&mut pairs, &basis, i, new);
        }
        corner = corner_of(&basis);
    }
    Ok(basis)
}

fn s_polynomial(fi: &Tracked, fj: &Tracked, order: MonomialOrder) -> Tracked {
    let (lmi, lci) = fi.lead.as_ref().expect("nonzero");
    let lmj = fj.leading_monomial().expect("nonzero");
    let lcm = lmi.lcm(lmj);
    let mut s = fi.shifted(&lci.recip(), &lcm.div(lmi).expect("lcm"), order);
    s.reduce_by(fj, order);
    s
}

/// Largest degree outside the leading ideal, when that ideal has finite
/// colength. Every monomial of higher degree then lies in the ideal.
fn highest_corner(basis: &[Tracked]) -> Option<u32> {
    let leading: Vec<Monomial> = basis.iter().filter_map(|t| t.leading_monomial().cloned()).collect();
    super::staircase_monomials(&leading, leading.first()?.nvars()).map(|ms| ms.iter().map(Monomial::degree).max().unwrap_or(0))
}

fn min_bound(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}

fn push_pair(pairs: &mut Vec<(u32, usize, usize)>, basis: &[Tracked], i: usize, j: usize) {
    let a = basis[i].leading_monomial().expect("nonzero");
    let b = basis[j].leading_monomial().expect("nonzero");
    pairs.push((a.lcm(b).degree(), i, j));
}

/// Pair with the smallest lcm degree, ties broken by index.
fn next_pair(pairs: &[(u32, usize, usize)]) -> Option<usize> {
    pairs.iter().enumerate().min_by_key(|(_, &(d, i, j))| (d, j, i)).map(|(idx, _)| idx)
}

/// Keeps only elements whose leading monomial is not divisible by the
/// leading monomial of another kept element. Result is sorted by leading
/// monomial, most leading first.
pub(crate) fn minimalize(mut elems: Vec<Tracked>, order: MonomialOrder) -> Vec<Tracked> {
    elems.sort_by(|a, b| {
        let (ma, mb) = (a.leading_monomial().unwrap(), b.leading_monomial().unwrap());
        order.cmp(mb, ma).then_with(|| a.poly.len().cmp(&b.poly.len()))
    });
    let mut kept: Vec<Tracked> = Vec::new();
    for e in elems {
        let lm = e.leading_monomial().unwrap();
        if kept.iter().any(|k| k.leading_monomial().unwrap().divides(lm)) {
            continue;
        }
        kept.retain(|k| !lm.divides(k.leading_monomial().unwrap()));
        kept.push(e);
    }
    kept.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    kept
}
