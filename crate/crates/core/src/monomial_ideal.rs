//! Combinatorial operations on monomial ideals given by generator exponents.

use crate::monomial::Monomial;

/// Minimal generators of the monomial ideal spanned by `mons`, in a
/// canonical order (ascending degree, then exponent vector).
pub fn minimalize(mons: &mut [Monomial]) -> Vec<Monomial> {
    mons.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.exponents().cmp(b.exponents()))
    });
    let mut kept: Vec<Monomial> = Vec::new();
    for m in mons.iter() {
        if !kept.iter().any(|k| k.divides(m)) {
            kept.push(m.clone());
        }
    }
    kept
}

pub fn contains(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

pub fn product(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect();
    minimalize(&mut out)
}

pub fn sum(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = a.iter().chain(b).cloned().collect();
    minimalize(&mut out)
}

pub fn intersect(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
    minimalize(&mut out)
}

pub fn colon(gens: &[Monomial], m: &Monomial) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = gens.iter().map(|g| g.colon(m)).collect();
    minimalize(&mut out)
}

/// `I : (x_1, ..., x_s)`; the unit ideal `[1]` when every variable colon is.
pub fn colon_irrelevant(gens: &[Monomial], nvars: usize) -> Vec<Monomial> {
    let mut acc: Option<Vec<Monomial>> = None;
    for i in 0..nvars {
        let c = colon(gens, &Monomial::variable(nvars, i));
        acc = Some(match acc {
            None => c,
            Some(a) => intersect(&a, &c),
        });
    }
    acc.unwrap_or_else(|| vec![Monomial::one(nvars)])
}

pub fn equal(a: &[Monomial], b: &[Monomial]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    minimalize(&mut a) == minimalize(&mut b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[&[u32]]) -> Vec<Monomial> {
        v.iter().map(|e| Monomial::new(e.iter().copied())).collect()
    }

    fn min(mut v: Vec<Monomial>) -> Vec<Monomial> {
        minimalize(&mut v)
    }

    #[test]
    fn colon_examples() {
        let i = ms(&[&[2, 0], &[1, 1]]);
        assert_eq!(colon(&i, &Monomial::new([0, 1])), ms(&[&[1, 0]]));
        assert_eq!(colon(&i, &Monomial::new([1, 0])), min(ms(&[&[1, 0], &[0, 1]])));
        assert_eq!(colon_irrelevant(&i, 2), ms(&[&[1, 0]]));
        let j = ms(&[&[2, 0], &[0, 2]]);
        assert_eq!(colon_irrelevant(&j, 2), min(ms(&[&[1, 1], &[0, 2], &[2, 0]])));
    }

    #[test]
    fn intersection_and_product() {
        let i = ms(&[&[2, 0], &[1, 1]]);
        assert_eq!(intersect(&i, &ms(&[&[0, 1]])), ms(&[&[1, 1]]));
        assert_eq!(product(&i, &i), min(ms(&[&[4, 0], &[3, 1], &[2, 2]])));
        assert!(equal(&ms(&[&[2, 0], &[0, 2], &[1, 3]]), &ms(&[&[0, 2], &[2, 0]])));
    }
}
