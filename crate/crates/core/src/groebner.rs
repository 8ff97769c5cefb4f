//! Buchberger's algorithm with the Gebauer–Möller pair update.
//!
//! Pairs and input generators are processed by ascending sugar degree, which
//! for graded input is ascending degree. With a degree bound the result is a
//! Gröbner basis up to that degree, enough to decide membership of
//! homogeneous elements of bounded degree.

use std::cmp::Ordering;

use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};

/// Reduced Gröbner basis of the ideal generated by `gens` under the ring's
/// order: monic, auto-reduced, sorted by descending leading monomial.
pub fn reduced_groebner(gens: &[Polynomial]) -> Vec<Polynomial> {
    groebner_with_bound(gens, None)
}

/// Reduced basis of the truncation: every S-pair and generator of sugar
/// degree above `max_degree` is skipped.
pub fn groebner_truncated(gens: &[Polynomial], max_degree: u32) -> Vec<Polynomial> {
    groebner_with_bound(gens, Some(max_degree))
}

fn groebner_with_bound(gens: &[Polynomial], bound: Option<u32>) -> Vec<Polynomial> {
    let gens: Vec<&Polynomial> = gens.iter().filter(|g| !g.is_zero()).collect();
    if gens.is_empty() {
        return Vec::new();
    }
    if gens.iter().all(|g| g.is_monomial()) {
        return monomial_basis(&gens, bound);
    }
    let mut engine = Engine::new(bound);
    for g in &gens {
        engine.queue.push(Item::Input {
            poly: (*g).clone(),
            sugar: g.degree().unwrap_or(0),
        });
    }
    engine.run();
    engine.finish()
}

fn monomial_basis(gens: &[&Polynomial], bound: Option<u32>) -> Vec<Polynomial> {
    let ring = gens[0].ring().clone();
    let w = ring.weights().to_vec();
    let mut mons: Vec<Monomial> = gens
        .iter()
        .map(|g| g.leading_monomial().unwrap().clone())
        .filter(|m| bound.is_none_or(|b| m.weighted_degree(&w) <= b))
        .collect();
    let mons = crate::monomial_ideal::minimalize(&mut mons);
    let mut out: Vec<Polynomial> = mons.into_iter().map(|m| Polynomial::monomial(&ring, m)).collect();
    sort_basis(&mut out);
    out
}

pub(crate) fn sort_basis(basis: &mut [Polynomial]) {
    if let Some(first) = basis.first() {
        let order = first.ring().order();
        basis.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    }
}

enum Item {
    Input {
        poly: Polynomial,
        sugar: u32,
    },
    Pair {
        i: usize,
        j: usize,
        lcm: Monomial,
        sugar: u32,
    },
}

impl Item {
    fn sugar(&self) -> u32 {
        match self {
            Item::Input { sugar, .. } | Item::Pair { sugar, .. } => *sugar,
        }
    }
}

struct Engine {
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    masks: Vec<u64>,
    active: Vec<bool>,
    queue: Vec<Item>,
    bound: Option<u32>,
}

impl Engine {
    fn new(bound: Option<u32>) -> Self {
        Engine {
            polys: Vec::new(),
            sugar: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
            queue: Vec::new(),
            bound,
        }
    }

    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn pop(&mut self) -> Option<Item> {
        if self.queue.is_empty() {
            return None;
        }
        let order = self.polys.first().map(|p| p.ring().order());
        let mut best = 0;
        for k in 1..self.queue.len() {
            if self.item_less(&self.queue[k], &self.queue[best], order) {
                best = k;
            }
        }
        Some(self.queue.swap_remove(best))
    }

    fn item_less(&self, a: &Item, b: &Item, order: Option<crate::monomial::MonomialOrder>) -> bool {
        match a.sugar().cmp(&b.sugar()) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (a, b) {
                // inputs first within a degree
                (Item::Input { .. }, Item::Pair { .. }) => true,
                (Item::Pair { .. }, Item::Input { .. }) => false,
                (Item::Input { poly: p, .. }, Item::Input { poly: q, .. }) => {
                    let o = p.ring().order();
                    o.cmp(p.leading_monomial().unwrap(), q.leading_monomial().unwrap()) == Ordering::Less
                }
                (
                    Item::Pair {
                        lcm: l1, i: i1, j: j1, ..
                    },
                    Item::Pair {
                        lcm: l2, i: i2, j: j2, ..
                    },
                ) => match order.map(|o| o.cmp(l1, l2)) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Greater) => false,
                    _ => (i1, j1) < (i2, j2),
                },
            },
        }
    }

    fn run(&mut self) {
        while let Some(item) = self.pop() {
            if self.bound.is_some_and(|b| item.sugar() > b) {
                continue;
            }
            let (candidate, sugar) = match item {
                Item::Input { poly, sugar } => (poly, sugar),
                Item::Pair { i, j, sugar, .. } => (s_polynomial(&self.polys[i], &self.polys[j]), sugar),
            };
            let active: Vec<usize> = (0..self.polys.len()).filter(|&k| self.active[k]).collect();
            let h = reduce_with(&candidate, &self.polys, &self.masks, &active);
            if h.is_zero() {
                continue;
            }
            let h = h.monic();
            self.insert(h, sugar);
        }
    }

    fn insert(&mut self, h: Polynomial, sugar: u32) {
        let hi = self.polys.len();
        let hm = h.leading_monomial().unwrap().clone();
        self.masks.push(hm.support_mask());
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(false);

        let weights = self.polys[hi].ring().weights().to_vec();
        let active: Vec<usize> = (0..hi).filter(|&k| self.active[k]).collect();

        // Gebauer–Möller: new pairs {h, g}, pruned by the chain criterion
        let cand: Vec<(usize, Monomial)> = active.iter().map(|&g| (g, hm.lcm(self.lm(g)))).collect();
        let mut keep = vec![false; cand.len()];
        for a in 0..cand.len() {
            let (g1, ref l1) = cand[a];
            let coprime = hm.is_coprime(self.lm(g1));
            let dominated =
                (a + 1..cand.len()).any(|b| cand[b].1.divides(l1)) || (0..a).any(|b| keep[b] && cand[b].1.divides(l1));
            keep[a] = coprime || !dominated;
        }
        let new_pairs: Vec<Item> = cand
            .into_iter()
            .zip(keep)
            .filter(|((g, _), k)| *k && !hm.is_coprime(self.lm(*g)))
            .map(|((g, lcm), _)| {
                let sh = self.sugar[hi] + lcm.weighted_degree(&weights) - hm.weighted_degree(&weights);
                let sg = self.sugar[g] + lcm.weighted_degree(&weights) - self.lm(g).weighted_degree(&weights);
                Item::Pair {
                    i: g,
                    j: hi,
                    lcm,
                    sugar: sh.max(sg),
                }
            })
            .collect();

        // drop old pairs made redundant by h
        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().unwrap();
        self.queue.retain(|item| match item {
            Item::Input { .. } => true,
            Item::Pair { i, j, lcm, .. } => !(hm.divides(lcm) && hm.lcm(lm(*i)) != *lcm && hm.lcm(lm(*j)) != *lcm),
        });
        self.queue.extend(new_pairs);

        for &g in &active {
            if hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
    }

    fn finish(self) -> Vec<Polynomial> {
        let basis: Vec<Polynomial> = (0..self.polys.len())
            .filter(|&k| self.active[k])
            .map(|k| self.polys[k].clone())
            .collect();
        interreduce(basis)
    }
}

/// Turns a minimal Gröbner basis into the reduced one.
fn interreduce(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let masks: Vec<u64> = basis
        .iter()
        .map(|p| p.leading_monomial().unwrap().support_mask())
        .collect();
    let mut out = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<usize> = (0..basis.len()).filter(|&o| o != k).collect();
        let r = reduce_with(&basis[k], &basis, &masks, &others);
        debug_assert_eq!(r.leading_monomial(), basis[k].leading_monomial());
        out.push(r.monic());
    }
    sort_basis(&mut out);
    out
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let lcm = fm.lcm(gm);
    let a = fm.quotient_of(&lcm).unwrap();
    let b = gm.quotient_of(&lcm).unwrap();
    let left = f.mul_term(&a, &fc.inverse().unwrap());
    let gi = gc.inverse().unwrap();
    left.sub_scaled(&gi, &b, g)
}

/// Full reduction of `f` modulo `basis`: no term of the result is divisible
/// by a leading monomial of the basis.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let basis: Vec<Polynomial> = basis.iter().filter(|b| !b.is_zero()).cloned().collect();
    let masks: Vec<u64> = basis
        .iter()
        .map(|p| p.leading_monomial().unwrap().support_mask())
        .collect();
    let idx: Vec<usize> = (0..basis.len()).collect();
    reduce_with(f, &basis, &masks, &idx)
}

fn reduce_with(f: &Polynomial, polys: &[Polynomial], masks: &[u64], use_idx: &[usize]) -> Polynomial {
    let ring = f.ring().clone();
    let mut terms: Vec<Term> = f.terms().to_vec();
    let mut pos = 0;
    'outer: while pos < terms.len() {
        let (m, c) = &terms[pos];
        let mask = m.support_mask();
        for &k in use_idx {
            if masks[k] & !mask != 0 {
                continue;
            }
            let (gm, gc) = polys[k].leading_term().unwrap();
            if let Some(q) = gm.quotient_of(m) {
                let coef = c * &gc.inverse().unwrap();
                let tail = Polynomial::from_sorted(&ring, terms.split_off(pos));
                let reduced = tail.sub_scaled(&coef, &q, &polys[k]);
                terms.extend(reduced.into_terms());
                continue 'outer;
            }
        }
        pos += 1;
    }
    Polynomial::from_sorted(&ring, terms)
}

/// Buchberger's criterion: every S-pair of `basis` reduces to zero.
pub fn is_groebner_basis(basis: &[Polynomial]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j]);
            if !normal_form(&s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Checks the reduced-basis conditions: monic and no term of any element
/// divisible by another element's leading monomial.
pub fn is_reduced(basis: &[Polynomial]) -> bool {
    basis.iter().enumerate().all(|(i, p)| {
        p.leading_coefficient().is_some_and(|c| c.is_one())
            && basis
                .iter()
                .enumerate()
                .all(|(j, q)| i == j || p.terms().iter().all(|(m, _)| !q.leading_monomial().unwrap().divides(m)))
    })
}
