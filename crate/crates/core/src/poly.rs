//! Sparse multivariate polynomials over an exact field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::monomial::Monomial;
use crate::ring::RingRef;

pub type Term = (Monomial, FieldElement);

/// A polynomial whose terms are kept strictly descending in the ring's
/// monomial order, with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    std::sync::Arc::ptr_eq(a, b) || a == b
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: FieldElement) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &RingRef) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn term(ring: &RingRef, m: Monomial, c: FieldElement) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn monomial(ring: &RingRef, m: Monomial) -> Self {
        Self::term(ring, m, ring.field().one())
    }

    pub fn variable(ring: &RingRef, i: usize) -> Self {
        Self::monomial(ring, Monomial::variable(ring.nvars(), i))
    }

    /// Builds a polynomial from arbitrary terms, combining like monomials.
    pub fn from_terms(ring: &RingRef, terms: impl IntoIterator<Item = Term>) -> Self {
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &RingRef, terms: Vec<Term>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Single-term polynomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum weighted degree of a term; `None` stands for the degree of zero (−∞).
    pub fn degree(&self) -> Option<u32> {
        let w = self.ring.weights();
        self.terms.iter().map(|(m, _)| m.weighted_degree(w)).max()
    }

    /// All terms share one degree. The zero polynomial counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Nonzero homogeneous of degree 1.
    pub fn is_linear_form(&self) -> bool {
        !self.is_zero() && self.terms.iter().all(|(m, _)| m.degree() == 1)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`; the order is preserved by multiplication with a monomial.
    pub fn mul_term(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inverse().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..n {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    pub(crate) fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.ring, &self.terms, &other.terms, None),
        }
    }

    /// `self - c * m * g`, the basic reduction step.
    pub(crate) fn sub_scaled(&self, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: merge(&self.ring, &self.terms, &g.terms, Some((&-c, m))),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for (m, c) in &small.terms {
            acc = Polynomial {
                ring: self.ring.clone(),
                terms: merge(&self.ring, &acc.terms, &big.terms, Some((c, m))),
            };
        }
        acc
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(g)?;
        let (lm, lc) = g.leading_term().ok_or(Error::ZeroPolynomial)?;
        let lc_inv = lc.inverse().expect("nonzero");
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let Some(q) = lm.quotient_of(m) else {
                return Ok(None);
            };
            let qc = c * &lc_inv;
            rest = rest.sub_scaled(&qc, &q, g);
            quotient.push((q, qc));
        }
        Ok(Some(Polynomial::from_sorted(&self.ring, quotient)))
    }

    /// Evaluates the substitution `x_i -> images[i]`, images living in `target`.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::one(target), p.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul_unchecked(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul_unchecked(&powers[i][e as usize]);
            }
            acc = acc.add_unchecked(&t);
        }
        acc
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]` (or to zero when `None`).
    pub fn map_variables(&self, target: &RingRef, var_map: &[Option<usize>]) -> Polynomial {
        let n = target.nvars();
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let mut e = vec![0u32; n];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                e[var_map[i]?] += x;
            }
            Some((Monomial::new(e), c.clone()))
        });
        Polynomial::from_terms(target, terms)
    }

    /// Re-sorts the terms for a ring that differs only in its monomial order.
    pub fn reorder(&self, target: &RingRef) -> Polynomial {
        let id: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        self.map_variables(target, &id)
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// Merges `a + c*m*b` (or `a + b` without a multiplier), both descending.
fn merge(ring: &RingRef, a: &[Term], b: &[Term], mult: Option<(&FieldElement, &Monomial)>) -> Vec<Term> {
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let scaled = |t: &Term| -> Term {
        match mult {
            None => t.clone(),
            Some((c, m)) => (t.0.mul(m), &t.1 * c),
        }
    };
    let (mut i, mut j) = (0, 0);
    let mut bj = b.first().map(scaled);
    while i < a.len() || bj.is_some() {
        match (a.get(i), &bj) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(scaled);
                }
                Ordering::Equal => {
                    let s = &x.1 + &y.1;
                    if !s.is_zero() {
                        out.push((x.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(scaled);
                }
            },
            (Some(_), None) => {
                out.extend_from_slice(&a[i..]);
                break;
            }
            (None, Some(_)) => {
                out.push(bj.take().unwrap());
                j += 1;
                bj = b.get(j).map(scaled);
            }
            (None, None) => break,
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.variables();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let factors: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    if *e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::ring::Ring;

    fn ring(field: Field) -> RingRef {
        Ring::new(&["x", "y"], field, MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring(Field::Rational);
        let a = parse_polynomial("x + y", &r).unwrap();
        let b = parse_polynomial("x - y", &r).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "x^2 - y^2");
        assert!(a.add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn product_mod_five() {
        let r = ring(Field::Prime(5));
        let a = parse_polynomial("x + 2*y", &r).unwrap();
        let b = parse_polynomial("x + 3*y", &r).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, parse_polynomial("x^2 + y^2", &r).unwrap());
    }

    #[test]
    fn ring_mismatch() {
        let a = Polynomial::variable(&ring(Field::Rational), 0);
        let b = Polynomial::variable(&ring(Field::Prime(7)), 0);
        assert_eq!(a.add(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn exact_division() {
        let r = ring(Field::Rational);
        let f = parse_polynomial("x^3 - x*y^2", &r).unwrap();
        let g = parse_polynomial("x + y", &r).unwrap();
        let q = f.exact_div(&g).unwrap().unwrap();
        assert_eq!(q, parse_polynomial("x^2 - x*y", &r).unwrap());
        assert!(f
            .exact_div(&parse_polynomial("x + 2*y", &r).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn homogeneity_and_degree() {
        let r = ring(Field::Rational);
        assert!(parse_polynomial("x^2 + x*y", &r).unwrap().is_homogeneous());
        assert!(!parse_polynomial("x + y^2", &r).unwrap().is_homogeneous());
        assert_eq!(Polynomial::zero(&r).degree(), None);
        assert!(Polynomial::zero(&r).is_homogeneous());
    }

    #[test]
    fn substitution_swaps_variables() {
        let r = ring(Field::Rational);
        let f = parse_polynomial("x^2 + 3*x*y", &r).unwrap();
        let images = [Polynomial::variable(&r, 1), Polynomial::variable(&r, 0)];
        assert_eq!(f.substitute(&r, &images), parse_polynomial("y^2 + 3*x*y", &r).unwrap());
    }
}
