use std::cmp::Ordering;

use crate::poly::{Monomial, Polynomial};
use crate::Rational;

/// Monomial order used to pick leading terms.
///
/// The two negative-degree orders are local: `1` is the largest monomial and
/// lower total degree always wins, which realises computations in the local
/// ring at the origin. `DegRevLex` is a global well-order, used only where a
/// polynomial (not merely local) membership certificate is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    /// Degree ascending, reverse-lexicographic tiebreak.
    #[default]
    NegDegRevLex,
    /// Degree ascending, lexicographic tiebreak.
    NegDegLex,
    /// Degree descending, reverse-lexicographic tiebreak (global).
    DegRevLex,
}

impl MonomialOrder {
    pub fn is_local(self) -> bool {
        !matches!(self, MonomialOrder::DegRevLex)
    }

    /// `Greater` means `a` is more leading than `b`.
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let (da, db) = (a.degree(), b.degree());
        match self {
            MonomialOrder::NegDegRevLex => db.cmp(&da).then_with(|| revlex(a, b)),
            MonomialOrder::NegDegLex => db.cmp(&da).then_with(|| lex(a, b)),
            MonomialOrder::DegRevLex => da.cmp(&db).then_with(|| revlex(a, b)),
        }
    }

    pub fn leading_term<'a>(self, p: &'a Polynomial) -> Option<(&'a Monomial, &'a Rational)> {
        p.terms().max_by(|x, y| self.cmp(x.0, y.0))
    }

    pub fn leading_monomial(self, p: &Polynomial) -> Option<Monomial> {
        self.leading_term(p).map(|(m, _)| m.clone())
    }

    /// `deg(p) - deg(LM(p))`; zero for every polynomial under a global
    /// degree order.
    pub fn ecart(self, p: &Polynomial) -> u32 {
        match (p.total_degree(), self.leading_term(p)) {
            (Some(d), Some((m, _))) => d - m.degree(),
            _ => 0,
        }
    }
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

/// Reverse lexicographic: the monomial with the smaller exponent in the
/// last differing variable is larger.
fn revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn one_is_largest_in_local_orders() {
        for o in [MonomialOrder::NegDegRevLex, MonomialOrder::NegDegLex] {
            assert_eq!(o.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Greater);
            assert_eq!(o.cmp(&m(&[0, 1]), &m(&[3, 0])), Ordering::Greater);
        }
        assert_eq!(MonomialOrder::DegRevLex.cmp(&m(&[0, 0]), &m(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn tiebreaks() {
        // x > y in both tiebreaks (variables ordered x, y)
        assert_eq!(MonomialOrder::NegDegRevLex.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        assert_eq!(MonomialOrder::NegDegLex.cmp(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // x*z^0 ... revlex and lex differ in three variables: x^1 z^1 vs y^2
        let a = m(&[1, 0, 1]);
        let b = m(&[0, 2, 0]);
        assert_eq!(MonomialOrder::NegDegLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::NegDegRevLex.cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn multiplicative_compatibility() {
        let o = MonomialOrder::NegDegRevLex;
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        let c = m(&[4, 2]);
        assert_eq!(o.cmp(&a, &b), o.cmp(&a.mul(&c), &b.mul(&c)));
    }
}
