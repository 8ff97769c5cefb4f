//! Test corpora and the property suites run by `cmreg selftest`.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::{Field, DEFAULT_PRIME};
use crate::groebner::{is_groebner_basis, reduced_groebner};
use crate::hilbert::{degree_invariants, dimension_by_independent_sets, krull_dimension};
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::monomial_ideal::minimalize;
use crate::poly::Polynomial;
use crate::reductions::{powers, rho};
use crate::regularity::regularity_ideal;
use crate::ring::{Ring, RingRef};

const NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn standard_ring(nvars: usize, field: Field) -> RingRef {
    Ring::new(&NAMES[..nvars], field, MonomialOrder::Grevlex).expect("valid ring")
}

/// Closure of `mons` under the moves `m -> x_j m / x_i` for `j < i`.
pub fn borel_closure(mons: &[Monomial]) -> Vec<Monomial> {
    let mut seen: Vec<Monomial> = Vec::new();
    let mut stack: Vec<Monomial> = mons.to_vec();
    while let Some(m) = stack.pop() {
        if seen.contains(&m) {
            continue;
        }
        let e = m.exponents();
        for i in 0..e.len() {
            if e[i] == 0 {
                continue;
            }
            for j in 0..i {
                let mut f = e.to_vec();
                f[i] -= 1;
                f[j] += 1;
                stack.push(Monomial::new(f));
            }
        }
        seen.push(m);
    }
    minimalize(&mut seen)
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// Strongly stable ideals in 2 or 3 variables with generator degrees in
/// `1..=max_degree`, from the Borel closures of random monomials.
pub fn strongly_stable_catalog(count: usize, max_degree: u32, field: Field, seed: u64) -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Ideal> = Vec::with_capacity(count);
    let mut keys: Vec<Vec<Monomial>> = Vec::new();
    while out.len() < count {
        let nvars = rng.gen_range(2..=3);
        let k = rng.gen_range(1..=3);
        let seeds: Vec<Monomial> = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=max_degree);
                random_monomial(&mut rng, nvars, d)
            })
            .collect();
        let gens = borel_closure(&seeds);
        if keys.contains(&gens) {
            continue;
        }
        keys.push(gens.clone());
        out.push(Ideal::from_monomials(&standard_ring(nvars, field), gens));
    }
    out
}

/// Random monomial ideals in `2..=max_vars` variables with at least two
/// minimal generators of degree at most `max_degree`.
pub fn random_monomial_ideals(count: usize, max_vars: usize, max_degree: u32, field: Field, seed: u64) -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(2..=max_vars);
            loop {
                let k = rng.gen_range(2..=4);
                let mut gens: Vec<Monomial> = (0..k)
                    .map(|_| {
                        let d = rng.gen_range(1..=max_degree);
                        random_monomial(&mut rng, nvars, d)
                    })
                    .collect();
                let gens = minimalize(&mut gens);
                if gens.len() >= 2 {
                    break Ideal::from_monomials(&standard_ring(nvars, field), gens);
                }
            }
        })
        .collect()
}

/// Random homogeneous ideals with two to three short generators.
pub fn random_homogeneous_ideals(count: usize, field: Field, seed: u64) -> Vec<Ideal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(2..=3);
            let r = standard_ring(nvars, field);
            let k = rng.gen_range(2..=3);
            let gens: Vec<Polynomial> = (0..k)
                .map(|_| {
                    let d = rng.gen_range(1..=3);
                    loop {
                        let terms: Vec<_> = (0..rng.gen_range(1..=3))
                            .map(|_| {
                                (
                                    random_monomial(&mut rng, nvars, d),
                                    field.from_i64(rng.gen_range(1..=9)),
                                )
                            })
                            .collect();
                        let f = Polynomial::from_terms(&r, terms);
                        if !f.is_zero() {
                            break f;
                        }
                    }
                })
                .collect();
            Ideal::new(&r, gens).expect("homogeneous by construction")
        })
        .collect()
}

/// A few fixed ideals that are not monomial in any coordinates.
pub fn named_ideals(field: Field) -> Vec<Ideal> {
    let r3 = standard_ring(3, field);
    let r4 = standard_ring(4, field);
    let r2 = standard_ring(2, field);
    let parse = |r: &RingRef, g: &[&str]| Ideal::parse(r, g).expect("valid ideal");
    vec![
        parse(&r4, &["x*z - y^2", "y*w - z^2", "x*w - y*z"]),
        parse(&r2, &["x^2 - y^2", "x*y"]),
        parse(&r3, &["x^2 - y*z", "x*y - z^2"]),
        parse(&r3, &["x^2 + y^2 + z^2", "x*y*z"]),
        parse(&r3, &["x*y - z^2", "x^3", "y^3"]),
    ]
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    pub field: Field,
    /// Random cases for the permutation-determinism suite.
    pub gb_cases: usize,
    pub reg_seeds: Vec<u64>,
    pub max_power: u32,
    pub n_cap: u32,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            seed: 0,
            field: Field::Prime(DEFAULT_PRIME),
            gb_cases: 100,
            reg_seeds: vec![0, 1, 2],
            max_power: 3,
            n_cap: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub millis: u128,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed())
    }
}

/// The corpus shared by the invariant suites.
pub fn corpus(cfg: &SelftestConfig) -> Vec<Ideal> {
    let mut c = named_ideals(cfg.field);
    c.extend(strongly_stable_catalog(6, 4, cfg.field, cfg.seed));
    c.extend(random_monomial_ideals(6, 3, 3, cfg.field, cfg.seed.wrapping_add(1)));
    c.extend(random_homogeneous_ideals(6, cfg.field, cfg.seed.wrapping_add(2)));
    c.retain(|i| !i.is_zero() && !i.is_unit());
    c
}

fn suite(name: &str, body: impl FnOnce(&mut Vec<String>) -> Result<usize>) -> SuiteResult {
    let start = Instant::now();
    let mut failures = Vec::new();
    let cases = match body(&mut failures) {
        Ok(n) => n,
        Err(e) => {
            failures.push(format!("error: {e}"));
            0
        }
    };
    SuiteResult {
        name: name.into(),
        cases,
        failures,
        millis: start.elapsed().as_millis(),
    }
}

pub fn run_selftest(cfg: &SelftestConfig) -> SelftestReport {
    let corpus = corpus(cfg);
    let suites = vec![
        suite("groebner-permutation-determinism", |f| gb_determinism(cfg, f)),
        suite("groebner-s-pair-certificate", |f| s_pair_certificates(&corpus, f)),
        suite("regularity-seed-invariance", |f| seed_invariance(cfg, &corpus, f)),
        suite("generator-degree-bound", |f| generator_degree_bound(cfg, &corpus, f)),
        suite("power-degree-lower-bound", |f| power_lower_bound(cfg, &corpus, f)),
        suite("colon-intersection-laws", |f| colon_intersection_laws(&corpus, f)),
        suite("dimension-agreement", |f| dimension_agreement(&corpus, f)),
    ];
    SelftestReport { suites }
}

/// Reduced bases do not depend on generator order or scaling.
pub fn gb_determinism(cfg: &SelftestConfig, failures: &mut Vec<String>) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(10));
    let ideals = random_homogeneous_ideals(cfg.gb_cases, cfg.field, cfg.seed.wrapping_add(11));
    for i in &ideals {
        let base = reduced_groebner(i.generators());
        let mut gens = i.generators().to_vec();
        gens.shuffle(&mut rng);
        let scale = cfg.field.from_i64(rng.gen_range(2..=7));
        let gens: Vec<Polynomial> = gens.iter().map(|g| g.scale(&scale)).collect();
        if reduced_groebner(&gens) != base {
            failures.push(format!("{i}"));
        }
    }
    Ok(ideals.len())
}

pub fn s_pair_certificates(corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    let mut cases = 0;
    for i in corpus {
        let mut ideals = vec![i.clone(), i.colon_irrelevant()?];
        ideals.extend(powers(i, 2)?);
        for j in &ideals {
            cases += 1;
            if !is_groebner_basis(j.groebner_basis()) {
                failures.push(format!("{j}"));
            }
        }
    }
    Ok(cases)
}

pub fn seed_invariance(cfg: &SelftestConfig, corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    for i in corpus {
        let regs = cfg
            .reg_seeds
            .iter()
            .map(|&s| regularity_ideal(i, s))
            .collect::<Result<Vec<_>>>()?;
        if regs.windows(2).any(|w| w[0] != w[1]) {
            failures.push(format!("{i}: {regs:?}"));
        }
    }
    Ok(corpus.len() * cfg.reg_seeds.len())
}

pub fn generator_degree_bound(cfg: &SelftestConfig, corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    for i in corpus {
        let d = degree_invariants(i)?.d as i64;
        let reg = regularity_ideal(i, cfg.seed)?;
        if d > reg {
            failures.push(format!("{i}: d = {d} > reg = {reg}"));
        }
    }
    Ok(corpus.len())
}

/// `d(I^n) >= rho(I) n` whenever `rho` is not capped.
pub fn power_lower_bound(cfg: &SelftestConfig, corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    let mut cases = 0;
    for i in corpus {
        let r = rho(i, cfg.n_cap)?;
        if r.capped {
            continue;
        }
        for (k, p) in powers(i, cfg.max_power)?.iter().enumerate() {
            cases += 1;
            let n = k as u32 + 1;
            let d = degree_invariants(p)?.d;
            if d < r.rho * n {
                failures.push(format!("{i}: d(I^{n}) = {d} < {} * {n}", r.rho));
            }
        }
    }
    Ok(cases)
}

/// Containments and identities between sums, products, intersections and
/// colons, on consecutive corpus pairs sharing a ring.
pub fn colon_intersection_laws(corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    let mut cases = 0;
    for pair in corpus.windows(2) {
        let (i, j) = (&pair[0], &pair[1]);
        if i.ring() != j.ring() {
            continue;
        }
        cases += 1;
        let meet = i.intersect(j)?;
        let prod = i.product(j)?;
        let n = i.ring().nvars();
        let f = Polynomial::variable(i.ring(), n - 1);
        let g = Polynomial::variable(i.ring(), 0);
        let fg = f.mul(&g)?;
        let i_f = i.colon_poly(&f)?;
        let checks = [
            ("meet in I", meet.is_subset_of(i)?),
            ("meet in J", meet.is_subset_of(j)?),
            ("IJ in meet", prod.is_subset_of(&meet)?),
            ("meet symmetric", meet.equals(&j.intersect(i)?)?),
            ("generic meet", meet.equals(&i.intersect_generic(j)?)?),
            ("I in I:f", i.is_subset_of(&i_f)?),
            (
                "f(I:f) in I",
                i_f.product(&Ideal::new(i.ring(), vec![f.clone()])?)?.is_subset_of(i)?,
            ),
            ("I:fg = (I:f):g", i.colon_poly(&fg)?.equals(&i_f.colon_poly(&g)?)?),
            (
                "(I meet J):f",
                meet.colon_poly(&f)?.equals(&i_f.intersect(&j.colon_poly(&f)?)?)?,
            ),
            ("generic colon", i_f.equals(&i.colon_poly_generic(&f)?)?),
            ("I:R+", i.colon_irrelevant()?.equals(&i.colon_irrelevant_generic()?)?),
        ];
        for (name, ok) in checks {
            if !ok {
                failures.push(format!("{name}: {i} and {j}"));
            }
        }
    }
    Ok(cases)
}

pub fn dimension_agreement(corpus: &[Ideal], failures: &mut Vec<String>) -> Result<usize> {
    for i in corpus {
        let a = krull_dimension(i)?;
        let b = dimension_by_independent_sets(i);
        if a != b {
            failures.push(format!("{i}: {a} vs {b}"));
        }
    }
    Ok(corpus.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_closure_is_strongly_stable() {
        let c = borel_closure(&[Monomial::new([0, 1, 1])]);
        let expect: Vec<Monomial> = [[2, 0, 0], [1, 1, 0], [1, 0, 1], [0, 2, 0], [0, 1, 1]]
            .iter()
            .map(|e| Monomial::new(e.iter().copied()))
            .collect();
        let mut expect = expect;
        assert_eq!(c, minimalize(&mut expect));
    }

    #[test]
    fn catalogs_are_deterministic() {
        let f = Field::Prime(DEFAULT_PRIME);
        let a: Vec<String> = strongly_stable_catalog(5, 4, f, 3)
            .iter()
            .map(|i| i.to_string())
            .collect();
        let b: Vec<String> = strongly_stable_catalog(5, 4, f, 3)
            .iter()
            .map(|i| i.to_string())
            .collect();
        assert_eq!(a, b);
        assert_eq!(random_monomial_ideals(4, 3, 3, f, 1).len(), 4);
    }

    #[test]
    fn small_selftest_passes() {
        let cfg = SelftestConfig {
            gb_cases: 5,
            reg_seeds: vec![0, 1],
            max_power: 2,
            ..Default::default()
        };
        let report = run_selftest(&cfg);
        for s in &report.suites {
            assert!(s.passed(), "{}: {:?}", s.name, s.failures);
        }
    }
}
