//! Hilbert series of graded quotients `R/J`, computed from the initial
//! monomial ideal, and the invariants derived from them.

use serde::Serialize;

use crate::degree::ExtDegree;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::monomial_ideal::minimalize;

/// `N(t) / (1 - t)^s` with integer numerator coefficients (ascending powers).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denom_power: usize,
}

impl HilbertSeries {
    /// `dim_k (R/J)_d`.
    pub fn coefficient(&self, d: u64) -> i64 {
        let s = self.denom_power as u64;
        if s == 0 {
            return self.numerator.get(d as usize).copied().unwrap_or(0);
        }
        self.numerator
            .iter()
            .enumerate()
            .filter(|(k, _)| (*k as u64) <= d)
            .map(|(k, c)| c * binomial(d - k as u64 + s - 1, s - 1) as i64)
            .sum()
    }

    /// Order of vanishing of the numerator at `t = 1`; `None` for `N = 0`.
    pub fn pole_cancellation(&self) -> Option<usize> {
        if self.numerator.is_empty() {
            return None;
        }
        let mut p = self.numerator.clone();
        let mut k = 0;
        while let Some(q) = divide_one_minus_t(&p) {
            p = q;
            k += 1;
        }
        Some(k)
    }
}

/// Series of `R/J`.
pub fn hilbert_series_quotient(j: &Ideal) -> Result<HilbertSeries> {
    if !j.ring().is_standard_graded() {
        return Err(Error::InvalidArgument(
            "Hilbert series need a standard graded ring".into(),
        ));
    }
    let mut mons = j.initial_monomials();
    Ok(HilbertSeries {
        numerator: monomial_numerator(&mut mons),
        denom_power: j.ring().nvars(),
    })
}

pub fn hilbert_function(j: &Ideal, deg: u64) -> Result<i64> {
    Ok(hilbert_series_quotient(j)?.coefficient(deg))
}

/// Numerator of the Hilbert series of `k[x]/(mons)` by pivot recursion:
/// `N(J) = N(J + (p)) + t^deg(p) N(J : p)` for a pivot power `p`.
pub fn monomial_numerator(mons: &mut [Monomial]) -> Vec<i64> {
    let gens = minimalize(mons);
    numerator_rec(gens)
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|m| m.is_one()) {
        return Vec::new();
    }
    // base case: pairwise coprime generators
    let coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if coprime {
        return gens.iter().fold(vec![1], |acc, m| {
            let mut f = vec![0; m.degree() as usize + 1];
            f[0] = 1;
            f[m.degree() as usize] = -1;
            poly_mul(&acc, &f)
        });
    }
    let nvars = gens[0].nvars();
    // pivot variable: the one occurring in the most non-pure generators
    let non_pure: Vec<&Monomial> = gens.iter().filter(|m| m.support().count() > 1).collect();
    let var = (0..nvars)
        .max_by_key(|&i| {
            (
                non_pure.iter().filter(|m| m.exponents()[i] > 0).count(),
                std::cmp::Reverse(i),
            )
        })
        .expect("at least one variable");
    let mut exps: Vec<u32> = non_pure.iter().map(|m| m.exponents()[var]).filter(|e| *e > 0).collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let mut pe = vec![0u32; nvars];
    pe[var] = e;
    let pivot = Monomial::new(pe);

    let mut with_pivot: Vec<Monomial> = gens.iter().filter(|m| !pivot.divides(m)).cloned().collect();
    with_pivot.push(pivot.clone());
    let sum = numerator_rec(minimalize(&mut with_pivot));

    let mut quotient: Vec<Monomial> = gens.iter().map(|m| m.colon(&pivot)).collect();
    let colon = numerator_rec(minimalize(&mut quotient));

    let mut shifted = vec![0; e as usize];
    shifted.extend(colon);
    trim(poly_add(&sum, &shifted))
}

/// Krull dimension of `R/J` from the pole order of the series;
/// −∞ for the unit ideal.
pub fn krull_dimension(j: &Ideal) -> Result<ExtDegree> {
    let hs = hilbert_series_quotient(j)?;
    Ok(match hs.pole_cancellation() {
        None => ExtDegree::NegInf,
        Some(k) => ExtDegree::Finite(hs.denom_power as i64 - k as i64),
    })
}

/// Krull dimension as the largest set of variables containing the support
/// of no initial generator.
pub fn dimension_by_independent_sets(j: &Ideal) -> ExtDegree {
    if j.is_unit() {
        return ExtDegree::NegInf;
    }
    let n = j.ring().nvars();
    let masks: Vec<u64> = j.initial_monomials().iter().map(|m| m.support_mask()).collect();
    let mut best = 0;
    for set in 0u64..(1 << n) {
        if masks.iter().all(|m| m & !set != 0) {
            best = best.max(set.count_ones());
        }
    }
    ExtDegree::Finite(best as i64)
}

/// `a(Q/K)` for `K ⊆ Q` with `Q/K` of finite length: the top degree in which
/// `HF(R/K) > HF(R/Q)`, or −∞ when `K = Q`.
pub fn a_invariant_pair(k: &Ideal, q: &Ideal) -> Result<ExtDegree> {
    if !k.is_subset_of(q)? {
        return Err(Error::NotContained);
    }
    let hk = hilbert_series_quotient(k)?;
    let hq = hilbert_series_quotient(q)?;
    let mut diff = trim(poly_sub(&hk.numerator, &hq.numerator));
    for _ in 0..hk.denom_power {
        if diff.is_empty() {
            break;
        }
        diff = divide_one_minus_t(&diff).ok_or(Error::InfiniteLength)?;
    }
    Ok(if diff.is_empty() {
        ExtDegree::NegInf
    } else {
        ExtDegree::Finite(diff.len() as i64 - 1)
    })
}

/// `d`, `epsilon` and the Krull dimension of `R/J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeInvariants {
    /// Largest degree in a minimal homogeneous generating set.
    pub d: u32,
    /// Smallest degree of a nonzero homogeneous element.
    pub epsilon: u32,
    pub dim: i64,
}

pub fn degree_invariants(j: &Ideal) -> Result<DegreeInvariants> {
    if j.is_zero() {
        return Err(Error::Degenerate("zero ideal".into()));
    }
    if j.is_unit() {
        return Err(Error::Degenerate("unit ideal".into()));
    }
    let degs = j.generator_degrees();
    let dim = krull_dimension(j)?.finite().expect("proper ideal");
    Ok(DegreeInvariants {
        d: *degs.last().unwrap(),
        epsilon: degs[0],
        dim,
    })
}

fn divide_one_minus_t(p: &[i64]) -> Option<Vec<i64>> {
    if p.iter().sum::<i64>() != 0 {
        return None;
    }
    let mut q = Vec::with_capacity(p.len().saturating_sub(1));
    let mut acc = 0;
    for c in &p[..p.len() - 1] {
        acc += c;
        q.push(acc);
    }
    Some(trim(q))
}

fn trim(mut p: Vec<i64>) -> Vec<i64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    out
}

fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    let neg: Vec<i64> = b.iter().map(|c| -c).collect();
    poly_add(a, &neg)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::ring::{Ring, RingRef};

    fn xy() -> RingRef {
        Ring::new(&["x", "y"], Field::Rational, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &RingRef, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    /// Brute force: count degree-d monomials outside the initial ideal.
    fn count_standard(j: &Ideal, d: u32) -> i64 {
        let n = j.ring().nvars();
        let init = j.initial_monomials();
        let mut count = 0;
        let mut stack = vec![(0usize, d, vec![0u32; n])];
        while let Some((i, left, e)) = stack.pop() {
            if i == n - 1 {
                let mut e = e.clone();
                e[i] = left;
                let m = Monomial::new(e);
                if !init.iter().any(|g| g.divides(&m)) {
                    count += 1;
                }
                continue;
            }
            for k in 0..=left {
                let mut e2 = e.clone();
                e2[i] = k;
                stack.push((i + 1, left - k, e2));
            }
        }
        count
    }

    #[test]
    fn series_examples() {
        let r = xy();
        let hs = hilbert_series_quotient(&ideal(&r, &["x^2", "x*y"])).unwrap();
        assert_eq!(hs.numerator, vec![1, 0, -2, 1]);
        assert_eq!(hs.denom_power, 2);
        assert_eq!(hilbert_series_quotient(&Ideal::zero(&r)).unwrap().numerator, vec![1]);
        assert_eq!(
            hilbert_series_quotient(&ideal(&r, &["x", "y"])).unwrap().numerator,
            vec![1, -2, 1]
        );
    }

    #[test]
    fn function_examples() {
        let r = xy();
        let i = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(
            (0..5).map(|d| hilbert_function(&i, d).unwrap()).collect::<Vec<_>>(),
            vec![1, 2, 1, 1, 1]
        );
        assert_eq!(hilbert_function(&i, 5).unwrap(), 1);
        assert_eq!(hilbert_function(&Ideal::zero(&r), 3).unwrap(), 4);
        assert_eq!(hilbert_function(&ideal(&r, &["x", "y"]), 0).unwrap(), 1);
    }

    #[test]
    fn function_matches_brute_force() {
        let r = Ring::new(&["x", "y", "z"], Field::Prime(32003), MonomialOrder::Grevlex).unwrap();
        for gens in [
            vec!["x^2*y", "x*y^2*z", "z^3", "x*y*z"],
            vec!["x^2 - y*z", "x*y - z^2"],
            vec!["x^3", "y^3", "z^3", "x*y*z"],
        ] {
            let j = ideal(&r, &gens);
            for d in 0..9 {
                assert_eq!(
                    hilbert_function(&j, d).unwrap(),
                    count_standard(&j, d as u32),
                    "{gens:?} d={d}"
                );
            }
        }
    }

    #[test]
    fn dimension_examples() {
        let r = xy();
        assert_eq!(
            krull_dimension(&ideal(&r, &["x^2", "x*y"])).unwrap(),
            ExtDegree::Finite(1)
        );
        assert_eq!(krull_dimension(&Ideal::zero(&r)).unwrap(), ExtDegree::Finite(2));
        assert_eq!(
            krull_dimension(&ideal(&r, &["x^2", "y^2"])).unwrap(),
            ExtDegree::Finite(0)
        );
        assert_eq!(krull_dimension(&Ideal::unit(&r)).unwrap(), ExtDegree::NegInf);
        assert_eq!(
            dimension_by_independent_sets(&ideal(&r, &["x^2", "x*y"])),
            ExtDegree::Finite(1)
        );
    }

    #[test]
    fn a_invariant_examples() {
        let r = xy();
        let k = ideal(&r, &["x^2", "y^2"]);
        let q = ideal(&r, &["x^2", "y^2", "x*y"]);
        assert_eq!(a_invariant_pair(&k, &q).unwrap(), ExtDegree::Finite(2));
        assert_eq!(a_invariant_pair(&q, &q).unwrap(), ExtDegree::NegInf);
        let k = ideal(&r, &["x^2", "x*y"]);
        assert_eq!(a_invariant_pair(&k, &ideal(&r, &["x"])).unwrap(), ExtDegree::Finite(1));
        // (x, y)/(x^2, xy) contains every y^k
        assert_eq!(
            a_invariant_pair(&k, &ideal(&r, &["x", "y"])).unwrap_err(),
            Error::InfiniteLength
        );
        assert_eq!(
            a_invariant_pair(&ideal(&r, &["x"]), &k).unwrap_err(),
            Error::NotContained
        );
    }

    #[test]
    fn degree_invariant_examples() {
        let r = xy();
        let di = degree_invariants(&ideal(&r, &["x^2", "x*y", "y^3"])).unwrap();
        assert_eq!((di.d, di.epsilon), (3, 2));
        let di = degree_invariants(&ideal(&r, &["x^2", "y^2", "x*y^3"])).unwrap();
        assert_eq!((di.d, di.epsilon), (2, 2));
        let di = degree_invariants(&ideal(&r, &["x", "y"])).unwrap();
        assert_eq!((di.d, di.epsilon, di.dim), (1, 1, 0));
        assert!(degree_invariants(&Ideal::unit(&r)).is_err());
        assert!(degree_invariants(&Ideal::zero(&r)).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
