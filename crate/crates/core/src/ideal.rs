//! Homogeneous ideals with a lazily cached reduced Gröbner basis, and the
//! ideal arithmetic built on it.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{groebner_truncated, normal_form, reduced_groebner};
use crate::monomial::{Monomial, MonomialOrder};
use crate::monomial_ideal;
use crate::parse::parse_polynomial;
use crate::poly::{same_ring, Polynomial};
use crate::ring::{Ring, RingRef};

/// An ideal generated by homogeneous polynomials.
///
/// The reduced Gröbner basis is computed on first use and never changes
/// afterwards; concurrent first uses compute the same basis.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Polynomial>) -> Result<Ideal> {
        for g in &generators {
            if !same_ring(g.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators,
            gb: OnceLock::new(),
        })
    }

    pub fn parse<S: AsRef<str>>(ring: &RingRef, generators: &[S]) -> Result<Ideal> {
        let gens = generators
            .iter()
            .map(|s| parse_polynomial(s.as_ref(), ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn from_monomials(ring: &RingRef, mons: impl IntoIterator<Item = Monomial>) -> Ideal {
        let gens = mons.into_iter().map(|m| Polynomial::monomial(ring, m)).collect();
        Ideal::new(ring, gens).expect("monomials are homogeneous")
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)]).unwrap()
    }

    /// The irrelevant ideal generated by all variables.
    pub fn irrelevant(ring: &RingRef) -> Ideal {
        Ideal::from_monomials(ring, (0..ring.nvars()).map(|i| Monomial::variable(ring.nvars(), i)))
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| reduced_groebner(&self.generators))
    }

    /// Leading monomials of the reduced basis: minimal generators of the initial ideal.
    pub fn initial_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.groebner_basis().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_constant())
    }

    /// All reduced basis elements are single terms.
    pub fn is_monomial(&self) -> bool {
        self.groebner_basis().iter().all(|g| g.is_monomial())
    }

    /// Minimal monomial generators when the ideal is monomial.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        if !self.is_monomial() {
            return None;
        }
        let mut mons = self.initial_monomials();
        Some(monomial_ideal::minimalize(&mut mons))
    }

    fn check_ring(&self, other: &RingRef) -> Result<()> {
        if same_ring(&self.ring, other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_ring(f.ring())?;
        Ok(normal_form(f, self.groebner_basis()).is_zero())
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        other.check_ring(&self.ring)?;
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(&other.ring)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `self + (f)`.
    pub fn add_generator(&self, f: Polynomial) -> Result<Ideal> {
        let mut gens = self.generators.clone();
        gens.push(f);
        Ideal::new(&self.ring, gens)
    }

    /// Product ideal, generated by the minimal generating set extracted from
    /// the pairwise products of minimal generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        if let (Some(a), Some(b)) = (self.monomial_generators(), other.monomial_generators()) {
            return Ok(Ideal::from_monomials(&self.ring, monomial_ideal::product(&a, &b)));
        }
        let a = self.minimal_generators();
        let b = other.minimal_generators();
        let prods: Vec<Polynomial> = a
            .iter()
            .flat_map(|f| b.iter().map(move |g| f.mul_unchecked(g)))
            .collect();
        let raw = Ideal::new(&self.ring, prods)?;
        Ideal::new(&self.ring, raw.minimal_generators())
    }

    /// `self^n`; `n = 0` gives the unit ideal.
    pub fn power(&self, n: u32) -> Result<Ideal> {
        if n == 0 {
            return Ok(Ideal::unit(&self.ring));
        }
        let base = Ideal::new(&self.ring, self.minimal_generators())?;
        let mut acc = base.clone();
        for _ in 1..n {
            acc = acc.product(&base)?;
        }
        Ok(acc)
    }

    /// A minimal homogeneous generating set, chosen from the supplied
    /// generators: any generator lying in the ideal of the ones kept before
    /// it (ascending degree) is discarded.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        if let Some(mons) = self.monomial_generators() {
            if self.generators.iter().all(|g| g.is_monomial() || g.is_zero()) {
                return mons.into_iter().map(|m| Polynomial::monomial(&self.ring, m)).collect();
            }
        }
        let mut cands: Vec<&Polynomial> = self.generators.iter().filter(|g| !g.is_zero()).collect();
        cands.sort_by_key(|g| g.degree().unwrap());
        let mut kept: Vec<Polynomial> = Vec::new();
        let mut k = 0;
        while k < cands.len() {
            let d = cands[k].degree().unwrap();
            let mut basis = groebner_truncated(&kept, d);
            while k < cands.len() && cands[k].degree().unwrap() == d {
                let r = normal_form(cands[k], &basis);
                if !r.is_zero() {
                    kept.push(cands[k].clone());
                    // same-degree elements act as a Gaussian-elimination echelon
                    basis.push(r.monic());
                }
                k += 1;
            }
        }
        kept
    }

    /// Degrees of a minimal generating set, ascending.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.minimal_generators().iter().map(|g| g.degree().unwrap()).collect();
        d.sort_unstable();
        d
    }

    /// `self ∩ k[remaining variables]`, returned as an ideal of the ring on
    /// the remaining variables.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.is_empty() || vars.len() >= self.ring.nvars() || vars.iter().any(|&v| v >= self.ring.nvars()) {
            return Err(Error::InvalidArgument(
                "eliminate needs a nonempty proper subset of the variables".into(),
            ));
        }
        let (ering, perm) = self.ring.elimination_ring(vars)?;
        let mut to_new = vec![None; self.ring.nvars()];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = Some(new);
        }
        let gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.map_variables(&ering, &to_new))
            .collect();
        let gb = reduced_groebner(&gens);
        let block = vars.len();
        let sub = self.ring.without(vars)?;
        let back: Vec<Option<usize>> = (0..ering.nvars()).map(|k| k.checked_sub(block)).collect();
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| {
                g.terms()
                    .iter()
                    .all(|(m, _)| m.exponents()[..block].iter().all(|e| *e == 0))
            })
            .map(|g| g.map_variables(&sub, &back))
            .collect();
        Ideal::new(&sub, kept)
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        if let (Some(a), Some(b)) = (self.monomial_generators(), other.monomial_generators()) {
            return Ok(Ideal::from_monomials(&self.ring, monomial_ideal::intersect(&a, &b)));
        }
        self.intersect_generic(other)
    }

    /// Intersection through `t*I + (1-t)*J` and elimination of the tag `t`.
    pub fn intersect_generic(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(&other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let tring = self.ring.tagged();
        let lift: Vec<Option<usize>> = (0..self.ring.nvars()).map(|i| Some(i + 1)).collect();
        let t = Polynomial::variable(&tring, 0);
        let one_minus_t = Polynomial::one(&tring).add_unchecked(&t.neg());
        let mut gens: Vec<Polynomial> = self
            .groebner_basis()
            .iter()
            .map(|f| f.map_variables(&tring, &lift).mul_unchecked(&t))
            .collect();
        gens.extend(
            other
                .groebner_basis()
                .iter()
                .map(|g| g.map_variables(&tring, &lift).mul_unchecked(&one_minus_t)),
        );
        let gb = reduced_groebner(&gens);
        let back: Vec<Option<usize>> = (0..tring.nvars()).map(|k| k.checked_sub(1)).collect();
        let kept: Vec<Polynomial> = gb
            .iter()
            .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
            .map(|g| g.map_variables(&self.ring, &back))
            .collect();
        // the tag has degree 0, so homogeneity is checked here
        Ideal::new(&self.ring, kept)
    }

    /// `I : f = {g : g f ∈ I}`.
    pub fn colon_poly(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if let (true, Some(gens)) = (f.is_monomial(), self.monomial_generators()) {
            let m = f.leading_monomial().unwrap();
            return Ok(Ideal::from_monomials(&self.ring, monomial_ideal::colon(&gens, m)));
        }
        if f.is_monomial() && f.degree() == Some(1) && self.ring.is_standard_graded() {
            let m = f.leading_monomial().unwrap();
            let var = m.support().next().unwrap();
            if self.ring.order() == MonomialOrder::Grevlex {
                return self.colon_variable(var);
            }
        }
        self.colon_poly_generic(f)
    }

    /// `I : x_var` under grevlex. When `x_var` is the last variable outside
    /// `I`, dividing every basis element that `x_var` divides gives a basis
    /// of the colon; otherwise the variables are permuted to make it so.
    fn colon_variable(&self, var: usize) -> Result<Ideal> {
        let n = self.ring.nvars();
        let gb = self.groebner_basis();
        let later_in_ideal = (var + 1..n).all(|k| {
            let x = Monomial::variable(n, k);
            gb.iter().any(|g| g.is_monomial() && g.leading_monomial() == Some(&x))
        });
        if later_in_ideal {
            let x = Polynomial::variable(&self.ring, var);
            let xm = Monomial::variable(n, var);
            let gens = gb
                .iter()
                .map(|g| {
                    if g.terms().iter().all(|(m, _)| xm.divides(m)) {
                        g.exact_div(&x).map(|q| q.expect("divisible"))
                    } else {
                        Ok(g.clone())
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            return Ideal::new(&self.ring, gens);
        }
        // move `var` to the end
        let perm: Vec<usize> = (0..n).filter(|&k| k != var).chain([var]).collect();
        let names: Vec<&str> = perm.iter().map(|&k| self.ring.variables()[k].as_str()).collect();
        let pring = Ring::new(&names, self.ring.field(), MonomialOrder::Grevlex)?;
        let mut to_new = vec![None; n];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = Some(new);
        }
        let moved = Ideal::new(&pring, gb.iter().map(|g| g.map_variables(&pring, &to_new)).collect())?;
        let colon = moved.colon_variable(n - 1)?;
        let back: Vec<Option<usize>> = perm.iter().map(|&old| Some(old)).collect();
        Ideal::new(
            &self.ring,
            colon
                .groebner_basis()
                .iter()
                .map(|g| g.map_variables(&self.ring, &back))
                .collect(),
        )
    }

    /// Colon through `(I ∩ (f)) / f`.
    pub fn colon_poly_generic(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_ring(f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous(f.to_string()));
        }
        if f.is_constant() || self.is_zero() || self.is_unit() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let meet = self.intersect_generic(&principal)?;
        let mut gens = Vec::with_capacity(meet.generators().len());
        for g in meet.groebner_basis() {
            let q = g.exact_div(f)?.expect("elements of (f) are divisible by f");
            gens.push(q);
        }
        Ideal::new(&self.ring, gens)
    }

    /// `I : R_+`, the intersection of the colons by the variables.
    pub fn colon_irrelevant(&self) -> Result<Ideal> {
        if let Some(gens) = self.monomial_generators() {
            return Ok(Ideal::from_monomials(
                &self.ring,
                monomial_ideal::colon_irrelevant(&gens, self.ring.nvars()),
            ));
        }
        self.colon_irrelevant_via(|i, x| i.colon_poly(x))
    }

    /// `I : R_+` using only the tag-variable colon.
    pub fn colon_irrelevant_generic(&self) -> Result<Ideal> {
        self.colon_irrelevant_via(|i, x| i.colon_poly_generic(x))
    }

    fn colon_irrelevant_via(&self, colon: impl Fn(&Ideal, &Polynomial) -> Result<Ideal>) -> Result<Ideal> {
        let n = self.ring.nvars();
        let mut acc: Option<Ideal> = None;
        for i in 0..n {
            let x = Polynomial::variable(&self.ring, i);
            if self.contains(&x)? {
                continue;
            }
            let c = colon(self, &x)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect_generic(&c)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(&self.ring)))
    }

    /// Generators printed in the ring's text syntax.
    pub fn generator_strings(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.to_string()).collect()
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.groebner_basis().iter().map(|g| g.to_string()).collect()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}
