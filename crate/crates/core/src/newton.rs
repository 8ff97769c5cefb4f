//! Newton polyhedra `conv(exponents) + R^n_{>=0}` of monomial ideals and the
//! integral closures they describe.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::Monomial;
use crate::monomial_ideal;
use crate::ring::RingRef;

/// Polyhedral operations are limited to this many variables.
pub const MAX_NEWTON_VARS: usize = 4;

/// `normal · a >= offset`, with a primitive non-negative integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl Halfspace {
    pub fn contains(&self, point: &[u32]) -> bool {
        self.value(point) >= self.offset as i128
    }

    fn value(&self, point: &[u32]) -> i128 {
        self.normal
            .iter()
            .zip(point)
            .map(|(w, &p)| *w as i128 * p as i128)
            .sum()
    }

    pub fn is_coordinate(&self) -> bool {
        self.offset == 0 && self.normal.iter().filter(|w| **w != 0).count() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonRegion {
    /// Exponent vectors of the minimal generators.
    pub vertices: Vec<Vec<u32>>,
    pub halfspaces: Vec<Halfspace>,
}

impl NewtonRegion {
    pub fn nvars(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(point))
    }

    /// The `n`-fold dilation: the region of `I^n`.
    pub fn dilate(&self, n: u32) -> NewtonRegion {
        NewtonRegion {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(|e| e * n).collect())
                .collect(),
            halfspaces: self
                .halfspaces
                .iter()
                .map(|h| Halfspace {
                    normal: h.normal.clone(),
                    offset: h.offset * n as i64,
                })
                .collect(),
        }
    }

    /// Minimal lattice points of the region. Points outside the box spanned
    /// by the vertices are never minimal.
    pub fn minimal_lattice_points(&self) -> Vec<Monomial> {
        let n = self.nvars();
        let bounds: Vec<u32> = (0..n)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap())
            .collect();
        let mut found = Vec::new();
        let mut point = vec![0u32; n];
        loop {
            if self.contains(&point) {
                found.push(Monomial::new(point.iter().copied()));
            }
            let mut i = 0;
            loop {
                if i == n {
                    return monomial_ideal::minimalize(&mut found);
                }
                if point[i] < bounds[i] {
                    point[i] += 1;
                    break;
                }
                point[i] = 0;
                i += 1;
            }
        }
    }
}

fn check_vars(ring: &RingRef) -> Result<()> {
    if ring.nvars() > MAX_NEWTON_VARS {
        return Err(Error::TooManyVariables {
            count: ring.nvars(),
            max: MAX_NEWTON_VARS,
        });
    }
    Ok(())
}

fn monomial_gens(i: &Ideal) -> Result<Vec<Monomial>> {
    let gens = i.monomial_generators().ok_or(Error::NotMonomial)?;
    if gens.is_empty() {
        return Err(Error::Degenerate("zero ideal".into()));
    }
    Ok(gens)
}

pub fn newton_region(i: &Ideal) -> Result<NewtonRegion> {
    check_vars(i.ring())?;
    let gens = monomial_gens(i)?;
    let vertices: Vec<Vec<u32>> = gens.iter().map(|m| m.exponents().to_vec()).collect();
    Ok(region_of_points(vertices))
}

/// Halfspace description of `conv(points) + R^n_{>=0}`.
pub fn region_of_points(points: Vec<Vec<u32>>) -> NewtonRegion {
    let support = prune_dominated(&points);
    let halfspaces = project(&support);
    NewtonRegion {
        vertices: points,
        halfspaces,
    }
}

/// Drops points lying above a segment between two other remaining points;
/// the polyhedron is unchanged.
fn prune_dominated(points: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut keep: Vec<bool> = vec![true; points.len()];
    for v in 0..points.len() {
        let others: Vec<usize> = (0..points.len()).filter(|&u| u != v && keep[u]).collect();
        let dominated = others.iter().any(|&u| dominates(&points[v], &points[u], &points[u]))
            || others.iter().enumerate().any(|(k, &u)| {
                others[k + 1..]
                    .iter()
                    .any(|&w| dominates(&points[v], &points[u], &points[w]))
            });
        if dominated {
            keep[v] = false;
        }
    }
    points
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p.clone())
        .collect()
}

/// Whether `v >= t*u + (1-t)*w` for some `t` in `[0, 1]`.
fn dominates(v: &[u32], u: &[u32], w: &[u32]) -> bool {
    // each coordinate gives t*(u_i - w_i) <= v_i - w_i; intersect the t-intervals
    let (mut lo, mut hi) = ((0i64, 1i64), (1i64, 1i64));
    for i in 0..v.len() {
        let a = u[i] as i64 - w[i] as i64;
        let b = v[i] as i64 - w[i] as i64;
        match a.cmp(&0) {
            std::cmp::Ordering::Equal => {
                if b < 0 {
                    return false;
                }
            }
            std::cmp::Ordering::Greater => {
                // t <= b / a
                if b * hi.1 < hi.0 * a {
                    hi = (b, a);
                }
            }
            std::cmp::Ordering::Less => {
                // t >= b / a = (-b) / (-a)
                let (n, d) = (-b, -a);
                if n * lo.1 > lo.0 * d {
                    lo = (n, d);
                }
            }
        }
    }
    lo.0 * hi.1 <= hi.0 * lo.1
}

/// Row `coeffs · (a, lambda, 1) >= 0` and the original rows it combines.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<BigInt>,
    history: Vec<u64>,
}

impl Row {
    fn history_len(&self) -> u32 {
        self.history.iter().map(|w| w.count_ones()).sum()
    }

    fn history_subset(&self, other: &Row) -> bool {
        self.history.iter().zip(&other.history).all(|(a, b)| a & !b == 0)
    }
}

fn normalize(coeffs: &mut [BigInt]) {
    let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !g.is_zero() && g != BigInt::from(1) {
        for c in coeffs.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// Eliminates the convex-combination multipliers from
/// `a >= sum_r lambda_r v_r`, `lambda >= 0`, `sum lambda = 1`
/// by Fourier–Motzkin, pruning with Chernikov's history rule.
fn project(points: &[Vec<u32>]) -> Vec<Halfspace> {
    let n = points[0].len();
    let m = points.len();
    let nl = m - 1;
    // layout: [a_0..a_{n-1}, lambda_0..lambda_{m-2}, const]
    let width = n + nl + 1;
    let words = (m + n).div_ceil(64);
    let last = &points[m - 1];
    let mut rows: Vec<Row> = Vec::new();
    let mut push = |coeffs: Vec<BigInt>, origin: usize| {
        let mut history = vec![0u64; words];
        history[origin / 64] |= 1 << (origin % 64);
        rows.push(Row { coeffs, history });
    };
    for r in 0..nl {
        let mut c = vec![BigInt::zero(); width];
        c[n + r] = 1.into();
        push(c, r);
    }
    // lambda_{m-1} = 1 - sum of the others >= 0
    let mut c = vec![BigInt::zero(); width];
    for r in 0..nl {
        c[n + r] = (-1).into();
    }
    c[width - 1] = 1.into();
    push(c, nl);
    for i in 0..n {
        let mut c = vec![BigInt::zero(); width];
        c[i] = 1.into();
        for r in 0..nl {
            c[n + r] = BigInt::from(last[i] as i64 - points[r][i] as i64);
        }
        c[width - 1] = BigInt::from(-(last[i] as i64));
        push(c, m + i);
    }

    let mut remaining: Vec<usize> = (n..n + nl).collect();
    let mut eliminated = 0u32;
    while !remaining.is_empty() {
        // eliminate the column producing the fewest combinations
        let (pick, col) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &col)| {
                let pos = rows.iter().filter(|r| r.coeffs[col].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[col].is_negative()).count();
                pos * neg
            })
            .map(|(k, &c)| (k, c))
            .unwrap();
        remaining.swap_remove(pick);
        eliminated += 1;
        let (pos, rest): (Vec<Row>, Vec<Row>) = rows.into_iter().partition(|r| r.coeffs[col].is_positive());
        let (neg, mut next): (Vec<Row>, Vec<Row>) = rest.into_iter().partition(|r| r.coeffs[col].is_negative());
        for p in &pos {
            for q in &neg {
                let history: Vec<u64> = p.history.iter().zip(&q.history).map(|(a, b)| a | b).collect();
                let row = Row {
                    coeffs: Vec::new(),
                    history,
                };
                if row.history_len() > eliminated + 1 {
                    continue;
                }
                let pc = &p.coeffs[col];
                let qc = -&q.coeffs[col];
                let mut coeffs: Vec<BigInt> = p.coeffs.iter().zip(&q.coeffs).map(|(x, y)| x * &qc + y * pc).collect();
                normalize(&mut coeffs);
                next.push(Row { coeffs, ..row });
            }
        }
        rows = prune_rows(next, width);
    }

    let mut out: Vec<Halfspace> = rows
        .into_iter()
        .filter(|r| r.coeffs[..n].iter().any(|c| !c.is_zero()))
        .map(|r| Halfspace {
            normal: r.coeffs[..n]
                .iter()
                .map(|c| c.to_i64().expect("small normal"))
                .collect(),
            offset: -r.coeffs[width - 1].to_i64().expect("small offset"),
        })
        .filter(|h| {
            // keep facets touching the hull and the coordinate inequalities
            h.is_coordinate() || points.iter().any(|p| h.value(p) == h.offset as i128)
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Removes trivial and duplicate rows and rows whose history contains
/// another row's history.
fn prune_rows(rows: Vec<Row>, width: usize) -> Vec<Row> {
    let mut rows: Vec<Row> = rows
        .into_iter()
        .filter(|r| {
            let trivially_true =
                r.coeffs[..width - 1].iter().all(|c| c.is_zero()) && !r.coeffs[width - 1].is_negative();
            !trivially_true
        })
        .collect();
    rows.sort_by(|a, b| {
        a.history_len()
            .cmp(&b.history_len())
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    let mut kept: Vec<Row> = Vec::with_capacity(rows.len());
    for r in rows {
        if kept.iter().any(|k| k.coeffs == r.coeffs || k.history_subset(&r)) {
            continue;
        }
        kept.push(r);
    }
    kept
}

/// `overline{I}` for a monomial ideal.
pub fn integral_closure_monomial(i: &Ideal) -> Result<Ideal> {
    let region = newton_region(i)?;
    Ok(Ideal::from_monomials(i.ring(), region.minimal_lattice_points()))
}

/// `overline{I^n}`, from the dilated region of `I`.
pub fn closure_of_power(i: &Ideal, n: u32) -> Result<Ideal> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let region = newton_region(i)?.dilate(n);
    Ok(Ideal::from_monomials(i.ring(), region.minimal_lattice_points()))
}

/// `overline{I^{n+1}} == I * overline{I^n}` for `n = 1..N-1`.
pub fn check_closure_stability(i: &Ideal, max_n: u32) -> Result<Vec<bool>> {
    if max_n < 2 {
        return Err(Error::InvalidArgument("stability needs at least two powers".into()));
    }
    let gens = monomial_gens(i)?;
    let closures = (1..=max_n)
        .map(|n| closure_of_power(i, n))
        .collect::<Result<Vec<_>>>()?;
    closures
        .windows(2)
        .map(|w| {
            let lower = w[0].monomial_generators().expect("monomial");
            let upper = w[1].monomial_generators().expect("monomial");
            Ok(monomial_ideal::equal(&upper, &monomial_ideal::product(&gens, &lower)))
        })
        .collect()
}

/// For monomial `J ⊆ I`: `J` is a reduction of `I` exactly when every
/// generator of `I` lies in the Newton region of `J`.
pub fn is_reduction_monomial(j: &Ideal, i: &Ideal) -> Result<bool> {
    check_vars(i.ring())?;
    let igens = monomial_gens(i)?;
    let jgens = j.monomial_generators().ok_or(Error::NotMonomial)?;
    if jgens.is_empty() {
        return Ok(false);
    }
    let region = region_of_points(jgens.iter().map(|m| m.exponents().to_vec()).collect());
    Ok(igens.iter().all(|m| region.contains(m.exponents())))
}
