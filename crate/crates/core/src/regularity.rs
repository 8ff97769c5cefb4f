//! Castelnuovo–Mumford regularity of `R/J` from a filter-regular sequence of
//! linear forms: after a generic linear change of coordinates the variables
//! (taken last to first) form such a sequence, and
//! `reg(R/J) = max_i a((K_i : R_+) / K_i)` with `K_i = J + (z_1, ..., z_i)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::degree::ExtDegree;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::hilbert::a_invariant_pair;
use crate::ideal::Ideal;
use crate::poly::{same_ring, Polynomial};
use crate::ring::RingRef;

/// Prime fields below this size are rejected unless explicitly allowed.
pub const MIN_FIELD_SIZE: u64 = 11;

/// Draws per seed before giving up on finding an invertible matrix.
const SINGULAR_REDRAWS: u32 = 64;

/// Rational matrix entries are drawn from `[-QQ_RANGE, QQ_RANGE]`.
const QQ_RANGE: i64 = 16;

/// An invertible linear substitution `x_j -> sum_k matrix[j][k] x_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateChange {
    pub matrix: Vec<Vec<FieldElement>>,
    /// Seed that regenerates the matrix; `None` for a supplied matrix.
    pub seed: Option<u64>,
}

impl CoordinateChange {
    pub fn identity(ring: &RingRef) -> CoordinateChange {
        let n = ring.nvars();
        let f = ring.field();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        CoordinateChange { matrix, seed: None }
    }

    /// A caller-supplied matrix; checked for shape, field and invertibility.
    pub fn explicit(ring: &RingRef, matrix: Vec<Vec<FieldElement>>) -> Result<CoordinateChange> {
        let n = ring.nvars();
        if matrix.len() != n {
            return Err(Error::LengthMismatch(matrix.len(), n));
        }
        for row in &matrix {
            if row.len() != n {
                return Err(Error::LengthMismatch(row.len(), n));
            }
            if row.iter().any(|c| !ring.field().contains(c)) {
                return Err(Error::InvalidArgument(format!("matrix entry outside {}", ring.field())));
            }
        }
        if !is_invertible(&matrix) {
            return Err(Error::SingularMatrix);
        }
        Ok(CoordinateChange { matrix, seed: None })
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }
}

/// Seeded random invertible change, subject to the minimum field size.
pub fn random_coordinate_change(ring: &RingRef, seed: u64) -> Result<CoordinateChange> {
    random_coordinate_change_with(ring, seed, false)
}

pub fn random_coordinate_change_with(ring: &RingRef, seed: u64, allow_small_field: bool) -> Result<CoordinateChange> {
    let field = ring.field();
    check_field_size(field, allow_small_field)?;
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SINGULAR_REDRAWS {
        let matrix: Vec<Vec<FieldElement>> = (0..n)
            .map(|_| (0..n).map(|_| random_entry(field, &mut rng)).collect())
            .collect();
        if is_invertible(&matrix) {
            return Ok(CoordinateChange {
                matrix,
                seed: Some(seed),
            });
        }
    }
    Err(Error::SingularMatrix)
}

fn check_field_size(field: Field, allow_small_field: bool) -> Result<()> {
    match field.size() {
        Some(p) if p < MIN_FIELD_SIZE && !allow_small_field => Err(Error::FieldTooSmall {
            field: field.to_string(),
            min: MIN_FIELD_SIZE,
        }),
        _ => Ok(()),
    }
}

fn random_entry(field: Field, rng: &mut ChaCha8Rng) -> FieldElement {
    match field {
        Field::Rational => field.from_i64(rng.gen_range(-QQ_RANGE..=QQ_RANGE)),
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
    }
}

fn is_invertible(matrix: &[Vec<FieldElement>]) -> bool {
    let n = matrix.len();
    let mut m: Vec<Vec<FieldElement>> = matrix.to_vec();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return false;
        };
        m.swap(col, pivot);
        let inv = m[col][col].inverse().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, rest) = m.split_at_mut(r);
            for (target, p) in rest[0].iter_mut().zip(&top[col]).skip(col) {
                *target = &*target - &(&factor * p);
            }
        }
    }
    true
}

/// Substitutes `x_j -> sum_k matrix[j][k] x_k` into every generator.
pub fn apply_change(j: &Ideal, change: &CoordinateChange) -> Result<Ideal> {
    let ring = j.ring();
    let n = ring.nvars();
    if change.size() != n {
        return Err(Error::LengthMismatch(change.size(), n));
    }
    let images: Vec<Polynomial> = change
        .matrix
        .iter()
        .map(|row| {
            Polynomial::from_terms(
                ring,
                row.iter()
                    .enumerate()
                    .map(|(k, c)| (crate::monomial::Monomial::variable(n, k), c.clone())),
            )
        })
        .collect();
    let gens = j.generators().iter().map(|g| g.substitute(ring, &images)).collect();
    Ideal::new(ring, gens)
}

/// Whether `(K : z) / K` has finite length.
pub fn is_filter_regular_step(k: &Ideal, z: &Polynomial) -> Result<bool> {
    if !same_ring(k.ring(), z.ring()) {
        return Err(Error::RingMismatch);
    }
    if z.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !z.is_linear_form() {
        return Err(Error::NotLinear(z.to_string()));
    }
    let colon = k.colon_poly(z)?;
    match a_invariant_pair(k, &colon) {
        Ok(_) => Ok(true),
        Err(Error::InfiniteLength) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug)]
pub struct RegularityOptions {
    pub seed: u64,
    pub allow_small_field: bool,
    /// Use this change instead of a random one; no resampling happens.
    pub change: Option<CoordinateChange>,
    pub max_attempts: u32,
}

impl Default for RegularityOptions {
    fn default() -> Self {
        RegularityOptions {
            seed: 0,
            allow_small_field: false,
            change: None,
            max_attempts: 8,
        }
    }
}

impl RegularityOptions {
    pub fn seeded(seed: u64) -> Self {
        RegularityOptions {
            seed,
            ..Default::default()
        }
    }
}

/// The per-step a-invariants behind a regularity value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    /// `reg(R/J)`; −∞ only for the unit ideal.
    pub reg: ExtDegree,
    /// `a((K_i : R_+) / K_i)` for `i = 0..=s`.
    pub a_values: Vec<ExtDegree>,
    pub change: CoordinateChange,
    /// Every `z_{i+1}` passed the filter-regularity test on `R/K_i`.
    pub verified: bool,
    /// Number of coordinate changes tried, including the accepted one.
    pub attempts: u32,
    /// `J` is the unit ideal.
    pub degenerate: bool,
}

/// `reg(R/J)` with the default options and the given seed.
pub fn regularity_cyclic(j: &Ideal, seed: u64) -> Result<RegularityCertificate> {
    regularity_cyclic_with(j, &RegularityOptions::seeded(seed))
}

pub fn regularity_cyclic_with(j: &Ideal, opts: &RegularityOptions) -> Result<RegularityCertificate> {
    if !j.ring().is_standard_graded() {
        return Err(Error::InvalidArgument("regularity needs a standard graded ring".into()));
    }
    let degenerate = j.is_unit();
    if let Some(change) = &opts.change {
        let a_values = step_invariants(j, change)?
            .ok_or_else(|| Error::InvalidArgument("supplied coordinate change is not generic for this ideal".into()))?;
        return Ok(certificate(a_values, change.clone(), 1, degenerate));
    }
    for attempt in 0..opts.max_attempts {
        let seed = opts.seed.wrapping_add(attempt as u64);
        let change = random_coordinate_change_with(j.ring(), seed, opts.allow_small_field)?;
        if let Some(a_values) = step_invariants(j, &change)? {
            return Ok(certificate(a_values, change, attempt + 1, degenerate));
        }
    }
    Err(Error::RetriesExhausted {
        attempts: opts.max_attempts,
        seed: opts.seed,
    })
}

fn certificate(
    a_values: Vec<ExtDegree>,
    change: CoordinateChange,
    attempts: u32,
    degenerate: bool,
) -> RegularityCertificate {
    RegularityCertificate {
        reg: *a_values.iter().max().expect("s + 1 values"),
        a_values,
        change,
        verified: true,
        attempts,
        degenerate,
    }
}

/// The a-invariants along `z_1 = x_s, z_2 = x_{s-1}, ...` after the change,
/// or `None` as soon as some `z_i` is not filter-regular.
fn step_invariants(j: &Ideal, change: &CoordinateChange) -> Result<Option<Vec<ExtDegree>>> {
    let ring = j.ring();
    let s = ring.nvars();
    let mut k = apply_change(j, change)?;
    let mut a_values = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let z = (i < s).then(|| Polynomial::variable(ring, s - 1 - i));
        if let Some(z) = &z {
            if !is_filter_regular_step(&k, z)? {
                return Ok(None);
            }
        }
        a_values.push(a_invariant_pair(&k, &k.colon_irrelevant()?)?);
        if let Some(z) = z {
            k = k.add_generator(z)?;
        }
    }
    Ok(Some(a_values))
}

/// `reg(I) = reg(R/I) + 1` for a nonzero proper ideal.
pub fn regularity_ideal(i: &Ideal, seed: u64) -> Result<i64> {
    regularity_ideal_with(i, &RegularityOptions::seeded(seed))
}

pub fn regularity_ideal_with(i: &Ideal, opts: &RegularityOptions) -> Result<i64> {
    if i.is_zero() {
        return Err(Error::Degenerate("zero ideal".into()));
    }
    if i.is_unit() {
        return Err(Error::Degenerate("unit ideal".into()));
    }
    let cert = regularity_cyclic_with(i, opts)?;
    Ok(cert.reg.finite().expect("proper ideal") + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::Ring;

    fn ring(vars: &[&str], field: Field) -> RingRef {
        Ring::new(vars, field, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &RingRef, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    fn fin(v: &[i64]) -> Vec<ExtDegree> {
        v.iter().map(|&d| ExtDegree::Finite(d)).collect()
    }

    #[test]
    fn random_change_is_deterministic() {
        let r = ring(&["x", "y"], Field::Prime(32003));
        let a = random_coordinate_change(&r, 0).unwrap();
        let b = random_coordinate_change(&r, 0).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.seed, Some(0));
        assert!(is_invertible(&a.matrix));
        assert_ne!(a, random_coordinate_change(&r, 1).unwrap());
    }

    #[test]
    fn small_fields_need_permission() {
        let r = ring(&["x", "y", "z"], Field::Prime(2));
        assert!(matches!(
            random_coordinate_change(&r, 0),
            Err(Error::FieldTooSmall { min: 11, .. })
        ));
        let c = random_coordinate_change_with(&r, 0, true).unwrap();
        assert!(is_invertible(&c.matrix));
        assert!(random_coordinate_change(&ring(&["x"], Field::Prime(11)), 0).is_ok());
    }

    #[test]
    fn explicit_changes_are_checked() {
        let r = ring(&["x", "y"], Field::Rational);
        let f = r.field();
        assert!(CoordinateChange::explicit(&r, vec![vec![f.one(), f.one()], vec![f.one(), f.one()]]).is_err());
        assert!(CoordinateChange::explicit(&r, vec![vec![f.one()]]).is_err());
        assert!(CoordinateChange::explicit(&r, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).is_ok());
    }

    #[test]
    fn apply_change_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        let f = r.field();
        let swap = CoordinateChange::explicit(&r, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        assert!(apply_change(&ideal(&r, &["x^2"]), &swap)
            .unwrap()
            .equals(&ideal(&r, &["y^2"]))
            .unwrap());
        let j = ideal(&r, &["x^2 - y^2", "x*y"]);
        let same = apply_change(&j, &CoordinateChange::identity(&r)).unwrap();
        assert_eq!(same.groebner_basis(), j.groebner_basis());
        // x -> x, y -> x + y
        let shear = CoordinateChange::explicit(&r, vec![vec![f.one(), f.zero()], vec![f.one(), f.one()]]).unwrap();
        let j = ideal(&r, &["x^2", "x*y"]);
        assert!(apply_change(&j, &shear).unwrap().equals(&j).unwrap());
    }

    #[test]
    fn filter_regular_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        let k = ideal(&r, &["x^2", "x*y"]);
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        assert!(is_filter_regular_step(&k, &y).unwrap());
        assert!(!is_filter_regular_step(&k, &x).unwrap());
        assert!(is_filter_regular_step(&Ideal::zero(&r), &x).unwrap());
        assert_eq!(
            is_filter_regular_step(&k, &Polynomial::zero(&r)),
            Err(Error::ZeroPolynomial)
        );
        assert!(is_filter_regular_step(&k, &x.mul(&y).unwrap()).is_err());
    }

    #[test]
    fn worked_certificate_with_identity() {
        let r = ring(&["x", "y"], Field::Rational);
        let opts = RegularityOptions {
            change: Some(CoordinateChange::identity(&r)),
            ..Default::default()
        };
        let cert = regularity_cyclic_with(&ideal(&r, &["x^2", "x*y"]), &opts).unwrap();
        assert_eq!(cert.a_values, fin(&[1, 1, 0]));
        assert_eq!(cert.reg, ExtDegree::Finite(1));
        assert!(cert.verified);
        // x is a zero divisor of infinite colon length, so the swap is rejected
        let f = r.field();
        let swap = CoordinateChange::explicit(&r, vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]).unwrap();
        let opts = RegularityOptions {
            change: Some(swap),
            ..Default::default()
        };
        assert!(regularity_cyclic_with(&ideal(&r, &["x^2", "x*y"]), &opts).is_err());
    }

    #[test]
    fn cyclic_examples() {
        for field in [Field::Rational, Field::Prime(32003)] {
            let r = ring(&["x", "y"], field);
            for seed in 0..3 {
                assert_eq!(
                    regularity_cyclic(&ideal(&r, &["x^2", "x*y"]), seed).unwrap().reg,
                    ExtDegree::Finite(1)
                );
                assert_eq!(
                    regularity_cyclic(&ideal(&r, &["x", "y"]), seed).unwrap().reg,
                    ExtDegree::Finite(0)
                );
                let cert = regularity_cyclic(&ideal(&r, &["x^2", "y^2"]), seed).unwrap();
                assert_eq!(cert.reg, ExtDegree::Finite(2));
                assert_eq!(cert.a_values[0], ExtDegree::Finite(2));
                assert_eq!(cert.a_values.len(), 3);
            }
        }
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring(&["x", "y"], Field::Prime(32003));
        let cert = regularity_cyclic(&Ideal::unit(&r), 0).unwrap();
        assert!(cert.degenerate);
        assert_eq!(cert.reg, ExtDegree::NegInf);
        assert_eq!(
            regularity_cyclic(&Ideal::zero(&r), 0).unwrap().reg,
            ExtDegree::Finite(0)
        );
        assert!(regularity_ideal(&Ideal::unit(&r), 0).is_err());
        assert!(regularity_ideal(&Ideal::zero(&r), 0).is_err());
    }

    #[test]
    fn ideal_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        assert_eq!(regularity_ideal(&ideal(&r, &["x^2", "x*y"]), 0).unwrap(), 2);
        assert_eq!(regularity_ideal(&ideal(&r, &["x", "y"]), 0).unwrap(), 1);
        assert_eq!(regularity_ideal(&ideal(&r, &["x^5"]), 0).unwrap(), 5);
        assert_eq!(regularity_ideal(&ideal(&r, &["x^2", "y^2"]), 0).unwrap(), 3);
    }

    #[test]
    fn twisted_cubic_and_order_invariance() {
        // the rational normal curve in P^3 has a 2-linear resolution
        let gens = ["x*z - y^2", "y*w - z^2", "x*w - y*z"];
        for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let r = Ring::new(&["x", "y", "z", "w"], Field::Prime(32003), order).unwrap();
            for seed in [0, 7] {
                assert_eq!(
                    regularity_ideal(&ideal(&r, &gens), seed).unwrap(),
                    2,
                    "{order} seed {seed}"
                );
            }
        }
    }

    #[test]
    fn non_saturated_ideal() {
        // (x^2, xy, y^3) in k[x,y,z]: reg equals the top generator degree
        let r = ring(&["x", "y", "z"], Field::Prime(32003));
        for seed in 0..3 {
            assert_eq!(regularity_ideal(&ideal(&r, &["x^2", "x*y", "y^3"]), seed).unwrap(), 3);
        }
    }
}
