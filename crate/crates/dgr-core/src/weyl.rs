//! Normally ordered Weyl algebra on two canonical pairs: noncommutative
//! polynomials in `q, Q, p, P` with coefficients in `Q[hbar]`, rewritten so
//! all position variables stand left of all momenta. The only relations are
//! `p q = q p + hbar` and `P Q = Q P + hbar`; mixed pairs commute.

use crate::mechanics::phase_vars;
use crate::poly::Poly;
use crate::scalar::Scalar;
use num::rational::BigRational;
use num::traits::{One, Zero};
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponents of `(q, Q, p, P, hbar)` in a normally ordered word.
type Word = (u16, u16, u16, u16, u16);

/// Normally ordered element of the Weyl algebra.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElement {
    terms: BTreeMap<Word, BigRational>,
}

impl WeylElement {
    pub fn zero() -> Self {
        WeylElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial(word: Word, c: BigRational) -> Self {
        let mut w = WeylElement::zero();
        w.add_term(word, c);
        w
    }

    fn add_term(&mut self, word: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Lift a classical polynomial in `q, Q, p, P` (no `a`) by reading each
    /// monomial as the corresponding normally ordered word.
    pub fn from_classical(f: &Poly) -> Self {
        let mut w = WeylElement::zero();
        for (m, c) in f.terms() {
            assert_eq!(m.0[4], 0, "deformation parameter has no Weyl lift here");
            assert!(c.is_rational());
            w.add_term(
                (m.0[0], m.0[1], m.0[2], m.0[3], 0),
                c.rational_part().clone(),
            );
        }
        w
    }

    /// The `hbar -> 0` limit as a classical polynomial.
    pub fn classical_limit(&self) -> Poly {
        let pv = phase_vars();
        let mut f = Poly::zero(&pv);
        for (&(a, b, c, d, h), coeff) in &self.terms {
            if h == 0 {
                f.add_term(
                    crate::poly::Mono(vec![a, b, c, d, 0]),
                    Scalar::from_rational(coeff.clone()),
                );
            }
        }
        f
    }

    /// Divide by `hbar`; every term must contain it.
    pub fn div_hbar(&self) -> Option<WeylElement> {
        let mut out = WeylElement::zero();
        for (&(a, b, c, d, h), coeff) in &self.terms {
            if h == 0 {
                return None;
            }
            out.add_term((a, b, c, d, h - 1), coeff.clone());
        }
        Some(out)
    }

    pub fn commutator(&self, rhs: &WeylElement) -> WeylElement {
        &(self * rhs) - &(rhs * self)
    }
}

/// `p^k q^i = sum_m C(k,m) C(i,m) m! hbar^m q^(i-m) p^(k-m)`, and the same
/// shape for `P^l Q^j`; distinct pairs commute.
fn reorder_coefficients(k: u16, i: u16) -> Vec<(u16, BigRational)> {
    let mut out = Vec::new();
    let top = k.min(i);
    for m in 0..=top {
        let mut c = BigRational::one();
        // C(k,m) * C(i,m) * m!
        for t in 0..m {
            c *= BigRational::from_integer(((k - t) as i64).into());
            c /= BigRational::from_integer(((t + 1) as i64).into());
        }
        for t in 0..m {
            c *= BigRational::from_integer(((i - t) as i64).into());
            c /= BigRational::from_integer(((t + 1) as i64).into());
        }
        for t in 1..=m {
            c *= BigRational::from_integer((t as i64).into());
        }
        out.push((m, c));
    }
    out
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        let mut out = WeylElement::zero();
        for (&(a1, b1, c1, d1, h1), x1) in &self.terms {
            for (&(a2, b2, c2, d2, h2), x2) in &rhs.terms {
                // (q^a1 Q^b1 p^c1 P^d1) (q^a2 Q^b2 p^c2 P^d2):
                // move p^c1 past q^a2 and P^d1 past Q^b2 independently.
                let coeff = x1 * x2;
                for (m, cm) in reorder_coefficients(c1, a2) {
                    for (n, cn) in reorder_coefficients(d1, b2) {
                        let word = (
                            a1 + a2 - m,
                            b1 + b2 - n,
                            c1 + c2 - m,
                            d1 + d2 - n,
                            h1 + h2 + m + n,
                        );
                        out.add_term(word, &coeff * &cm * &cn);
                    }
                }
            }
        }
        out
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, c.clone());
        }
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(*w, -c.clone());
        }
        out
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        &WeylElement::zero() - self
    }
}

impl Sub for WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: WeylElement) -> WeylElement {
        &self - &rhs
    }
}

/// The quantum-corrected second integral
/// `G - hbar (3/2 qQp + 9/4 Q²p + q²P + 2qQP - 3/4 Q²P) + hbar² (-5/12 q + 5/4 Q)`.
pub fn quantum_second_integral(g_classical: &Poly) -> WeylElement {
    let g = WeylElement::from_classical(g_classical);
    let frac = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut corr1 = WeylElement::zero();
    corr1.add_term((1, 1, 1, 0, 0), frac(3, 2));
    corr1.add_term((0, 2, 1, 0, 0), frac(9, 4));
    corr1.add_term((2, 0, 0, 1, 0), frac(1, 1));
    corr1.add_term((1, 1, 0, 1, 0), frac(2, 1));
    corr1.add_term((0, 2, 0, 1, 0), frac(-3, 4));
    let hbar = WeylElement::monomial((0, 0, 0, 0, 1), BigRational::one());
    let mut corr2 = WeylElement::zero();
    corr2.add_term((1, 0, 0, 0, 0), frac(-5, 12));
    corr2.add_term((0, 1, 0, 0, 0), frac(5, 4));
    &(&g - &(&hbar * &corr1)) + &(&(&hbar * &hbar) * &corr2)
}

/// Commutator `[H, G_hbar]` in the normally ordered algebra; the quantum
/// lift requires it to vanish identically.
pub fn weyl_commutator_check(h_classical: &Poly, g_classical: &Poly) -> WeylElement {
    let h = WeylElement::from_classical(h_classical);
    let g_hbar = quantum_second_integral(g_classical);
    h.commutator(&g_hbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanics::{poisson_bracket, HamiltonianSystem};

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basic_relations() {
        let q = WeylElement::monomial((1, 0, 0, 0, 0), BigRational::one());
        let qq = WeylElement::monomial((0, 1, 0, 0, 0), BigRational::one());
        let p = WeylElement::monomial((0, 0, 1, 0, 0), BigRational::one());
        let pp = WeylElement::monomial((0, 0, 0, 1, 0), BigRational::one());
        let hbar = WeylElement::monomial((0, 0, 0, 0, 1), BigRational::one());
        assert_eq!(p.commutator(&q), hbar);
        assert_eq!(pp.commutator(&qq), hbar);
        assert!(q.commutator(&qq).is_zero());
        assert!(p.commutator(&qq).is_zero());
        assert!(pp.commutator(&q).is_zero());
    }

    #[test]
    fn associativity_spot_check() {
        let a = WeylElement::monomial((1, 0, 2, 0, 0), frac(2, 3));
        let b = WeylElement::monomial((2, 1, 0, 1, 0), frac(-1, 2));
        let c = WeylElement::monomial((0, 2, 1, 1, 0), frac(5, 1));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn classical_limit_of_commutator_is_bracket() {
        let sys = HamiltonianSystem::dgr();
        let h0 = sys.h_at_a0();
        let phi = crate::poly::parse_poly(&sys.vars, "Q*p + 2/3*q*P + 1/3*Q*P").unwrap();
        let lhs = WeylElement::from_classical(&h0)
            .commutator(&WeylElement::from_classical(&phi))
            .div_hbar()
            .unwrap()
            .classical_limit();
        assert_eq!(lhs, poisson_bracket(&h0, &phi));
    }

    #[test]
    fn quantum_lift_commutes() {
        let sys = HamiltonianSystem::dgr();
        let c = weyl_commutator_check(&sys.h_at_a0(), &sys.g_at_a0());
        assert!(c.is_zero(), "quantum commutator = {:?}", c);
    }
}
