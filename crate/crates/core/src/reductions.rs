//! Reductions, the minimal reduction degree `rho(I)`, and the experiment
//! comparing `reg(I^n)` with the line `rho(I) * n + e`.

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hilbert::degree_invariants;
use crate::ideal::Ideal;
use crate::newton::{self, MAX_NEWTON_VARS};
use crate::regularity::{regularity_cyclic_with, RegularityCertificate, RegularityOptions};

/// Default bound on the exponent searched by the reduction test.
pub const DEFAULT_REDUCTION_CAP: u32 = 6;

/// `I_{<= dmax}`: the ideal generated by the elements of `I` of degree at
/// most `dmax`. The reduced basis elements of those degrees generate it.
pub fn truncate_ideal(i: &Ideal, dmax: u32) -> Ideal {
    let gens = i
        .groebner_basis()
        .iter()
        .filter(|g| g.degree().is_some_and(|d| d <= dmax))
        .cloned()
        .collect();
    Ideal::new(i.ring(), gens).expect("basis elements are homogeneous")
}

/// Smallest `n <= n_cap` with `I^{n+1} = J I^n`. `None` does not prove that
/// `J` is not a reduction.
pub fn is_reduction(j: &Ideal, i: &Ideal, n_cap: u32) -> Result<Option<u32>> {
    if !j.is_subset_of(i)? {
        return Err(Error::NotContained);
    }
    let base = Ideal::new(i.ring(), i.minimal_generators())?;
    // power = I^n, starting from I^0 = R
    let mut power = Ideal::unit(i.ring());
    for n in 0..=n_cap {
        let next = if n == 0 { base.clone() } else { power.product(&base)? };
        if next.equals(&j.product(&power)?)? {
            return Ok(Some(n));
        }
        power = next;
    }
    Ok(None)
}

fn serialize_ideal<S: Serializer>(i: &Ideal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(i.minimal_generators().iter().map(|g| g.to_string()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionWitness {
    #[serde(serialize_with = "serialize_ideal")]
    pub ideal: Ideal,
    /// Smallest verified exponent with `I^{n+1} = J I^n`.
    pub n: u32,
    /// Largest minimal generator degree of the reduction.
    pub d: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoResult {
    pub rho: u32,
    pub witness: ReductionWitness,
    /// Some smaller degree could be neither verified nor ruled out within
    /// the cap; `rho` is then only an upper bound.
    pub capped: bool,
}

/// `rho(I)`: the least `d(J)` over reductions `J` of `I`, searched over the
/// truncations `I_{<= d}`. Monomial truncations that fail the cap are ruled
/// out exactly through their Newton regions.
pub fn rho(i: &Ideal, n_cap: u32) -> Result<RhoResult> {
    let inv = degree_invariants(i)?;
    let monomial = i.is_monomial() && i.ring().nvars() <= MAX_NEWTON_VARS;
    let mut capped = false;
    for d in inv.epsilon..=inv.d {
        let j = truncate_ideal(i, d);
        if let Some(n) = is_reduction(&j, i, n_cap)? {
            let witness = ReductionWitness {
                d: *j.generator_degrees().last().expect("nonzero"),
                ideal: j,
                n,
            };
            return Ok(RhoResult {
                rho: witness.d,
                witness,
                capped,
            });
        }
        let ruled_out = monomial && !newton::is_reduction_monomial(&j, i)?;
        if !ruled_out {
            capped = true;
        }
    }
    unreachable!("I itself is a reduction at n = 0")
}

/// `I, I^2, ..., I^N`, each built from the previous one.
pub fn powers(i: &Ideal, max_n: u32) -> Result<Vec<Ideal>> {
    let base = Ideal::new(i.ring(), i.minimal_generators())?;
    let mut out: Vec<Ideal> = Vec::with_capacity(max_n as usize);
    for n in 0..max_n {
        let next = if n == 0 {
            base.clone()
        } else {
            out[n as usize - 1].product(&base)?
        };
        out.push(next);
    }
    Ok(out)
}

fn certify_all(ideals: &[Ideal], opts: &RegularityOptions) -> Result<Vec<RegularityCertificate>> {
    ideals.par_iter().map(|p| regularity_cyclic_with(p, opts)).collect()
}

fn ideal_regularity(cert: &RegularityCertificate) -> i64 {
    cert.reg.finite().expect("proper ideal") + 1
}

/// `[reg(I^1), ..., reg(I^N)]`.
pub fn reg_powers(i: &Ideal, max_n: u32, seed: u64) -> Result<Vec<i64>> {
    reg_powers_with(i, max_n, &RegularityOptions::seeded(seed))
}

pub fn reg_powers_with(i: &Ideal, max_n: u32, opts: &RegularityOptions) -> Result<Vec<i64>> {
    check_experiment_input(i, max_n)?;
    let certs = certify_all(&powers(i, max_n)?, opts)?;
    Ok(certs.iter().map(ideal_regularity).collect())
}

fn check_experiment_input(i: &Ideal, max_n: u32) -> Result<()> {
    if max_n < 1 {
        return Err(Error::InvalidArgument("at least one power is needed".into()));
    }
    if i.is_zero() {
        return Err(Error::Degenerate("zero ideal".into()));
    }
    if i.is_unit() {
        return Err(Error::Degenerate("unit ideal".into()));
    }
    Ok(())
}

/// `seq[n-1] = d n + e` for `n0 <= n <= N` (powers numbered from 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinearTail {
    pub d: i64,
    pub e: i64,
    pub n0: u32,
}

/// The longest suffix of at least three values with constant differences.
pub fn fit_linear_tail(seq: &[i64]) -> Option<LinearTail> {
    if seq.len() < 3 {
        return None;
    }
    let last = seq.len() - 1;
    let d = seq[last] - seq[last - 1];
    let mut start = last - 1;
    while start > 0 && seq[start] - seq[start - 1] == d {
        start -= 1;
    }
    if last - start + 1 < 3 {
        return None;
    }
    let n0 = start as u32 + 1;
    Some(LinearTail {
        d,
        e: seq[start] - d * n0 as i64,
        n0,
    })
}

/// Per-power consistency checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCheck {
    pub n: u32,
    /// Largest minimal generator degree of the power.
    pub d: u32,
    pub reg: i64,
    /// `rho * n`, the lower bound for `d`; absent when `rho` is capped.
    pub lower_bound: Option<i64>,
    pub lower_bound_holds: Option<bool>,
    /// `d <= reg`.
    pub generator_bound_holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeVerdict {
    /// Observed slope equals `rho`.
    Equal,
    /// `rho` is capped; the slope is at most the reported value.
    AtMostCapped,
    NotStabilized,
    /// The closure sequence never became stable in the window.
    Withheld,
    Mismatch,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub variables: Vec<String>,
    pub field: String,
    pub ideal: Vec<String>,
    /// `"powers"` or `"closure"`.
    pub filtration: String,
    /// Seeds of the coordinate changes accepted, one per power.
    pub seeds: Vec<u64>,
    pub max_n: u32,
    pub n_cap: u32,
    pub degenerate: bool,
    pub reg_sequence: Vec<i64>,
    pub rho: Option<RhoResult>,
    pub tail: Option<LinearTail>,
    /// Stabilization is only ever observed inside the window.
    pub tail_status: String,
    pub checks: Vec<PowerCheck>,
    pub slope_verdict: SlopeVerdict,
    /// Closure filtration only: `overline{I^{n+1}} = I overline{I^n}` per n.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stability: Option<Vec<bool>>,
    /// Closure filtration only: minimal generators of each closure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closure_generators: Option<Vec<Vec<String>>>,
    pub warnings: Vec<String>,
}

impl ExperimentReport {
    fn empty(i: &Ideal, filtration: &str, max_n: u32, n_cap: u32) -> ExperimentReport {
        ExperimentReport {
            variables: i.ring().variables().to_vec(),
            field: i.ring().field().to_string(),
            ideal: i.generator_strings(),
            filtration: filtration.into(),
            seeds: Vec::new(),
            max_n,
            n_cap,
            degenerate: false,
            reg_sequence: Vec::new(),
            rho: None,
            tail: None,
            tail_status: "tail not stabilized".into(),
            checks: Vec::new(),
            slope_verdict: SlopeVerdict::NotStabilized,
            stability: None,
            closure_generators: None,
            warnings: Vec::new(),
        }
    }

    fn degenerate(i: &Ideal, filtration: &str, max_n: u32, n_cap: u32) -> ExperimentReport {
        let mut r = ExperimentReport::empty(i, filtration, max_n, n_cap);
        r.degenerate = true;
        r.warnings
            .push(if i.is_unit() { "unit ideal" } else { "zero ideal" }.into());
        r
    }
}

/// Runs the `reg(I^n)` experiment; a violated consistency check is an error.
pub fn run_experiment(i: &Ideal, max_n: u32, n_cap: u32, seed: u64) -> Result<ExperimentReport> {
    run_experiment_with(i, max_n, n_cap, &RegularityOptions::seeded(seed))
}

pub fn run_experiment_with(i: &Ideal, max_n: u32, n_cap: u32, opts: &RegularityOptions) -> Result<ExperimentReport> {
    if i.is_zero() || i.is_unit() {
        return Ok(ExperimentReport::degenerate(i, "powers", max_n, n_cap));
    }
    check_experiment_input(i, max_n)?;
    let mut report = ExperimentReport::empty(i, "powers", max_n, n_cap);
    let rho_result = rho(i, n_cap)?;
    let pows = powers(i, max_n)?;
    let certs = certify_all(&pows, opts)?;
    report.seeds = certs.iter().filter_map(|c| c.change.seed).collect();
    report.reg_sequence = certs.iter().map(ideal_regularity).collect();

    let rho_value = (!rho_result.capped).then_some(rho_result.rho as i64);
    let mut violations = Vec::new();
    for (k, p) in pows.iter().enumerate() {
        let n = k as u32 + 1;
        let d = degree_invariants(p)?.d;
        let reg = report.reg_sequence[k];
        let lower_bound = rho_value.map(|r| r * n as i64);
        let lower_bound_holds = lower_bound.map(|b| d as i64 >= b);
        if lower_bound_holds == Some(false) {
            violations.push(format!("n = {n}: d = {d} below rho * n = {}", lower_bound.unwrap()));
        }
        let generator_bound_holds = d as i64 <= reg;
        if !generator_bound_holds {
            violations.push(format!("n = {n}: d = {d} exceeds reg = {reg}"));
        }
        report.checks.push(PowerCheck {
            n,
            d,
            reg,
            lower_bound,
            lower_bound_holds,
            generator_bound_holds,
        });
    }

    report.tail = fit_linear_tail(&report.reg_sequence);
    report.slope_verdict = slope_verdict(&report.tail, &rho_result, &mut report.warnings, &mut violations);
    if report.tail.is_some() {
        report.tail_status = "tail observed".into();
    }
    report.rho = Some(rho_result);
    if !violations.is_empty() {
        return Err(Error::ConsistencyViolation(violations.join("; ")));
    }
    Ok(report)
}

fn slope_verdict(
    tail: &Option<LinearTail>,
    rho_result: &RhoResult,
    warnings: &mut Vec<String>,
    violations: &mut Vec<String>,
) -> SlopeVerdict {
    if rho_result.capped {
        warnings.push(format!(
            "reduction cap reached: rho = {} is an upper bound",
            rho_result.rho
        ));
    }
    let Some(t) = tail else {
        return SlopeVerdict::NotStabilized;
    };
    let rho = rho_result.rho as i64;
    if t.e < 0 {
        violations.push(format!("tail intercept {} is negative", t.e));
    }
    if t.d > rho_result.witness.d as i64 {
        violations.push(format!(
            "slope {} exceeds the witness degree {}",
            t.d, rho_result.witness.d
        ));
    }
    if rho_result.capped {
        if t.d > rho {
            violations.push(format!("slope {} exceeds the capped rho {rho}", t.d));
            return SlopeVerdict::Mismatch;
        }
        return SlopeVerdict::AtMostCapped;
    }
    if t.d != rho {
        violations.push(format!("slope {} differs from rho {rho}", t.d));
        return SlopeVerdict::Mismatch;
    }
    SlopeVerdict::Equal
}

/// The same experiment for the closures `overline{I^n}` of a monomial ideal.
/// The slope verdict is withheld unless the window ends with
/// `overline{I^N} = I overline{I^{N-1}}`.
pub fn closure_experiment(i: &Ideal, max_n: u32, n_cap: u32, seed: u64) -> Result<ExperimentReport> {
    closure_experiment_with(i, max_n, n_cap, &RegularityOptions::seeded(seed))
}

pub fn closure_experiment_with(
    i: &Ideal,
    max_n: u32,
    n_cap: u32,
    opts: &RegularityOptions,
) -> Result<ExperimentReport> {
    if !i.is_monomial() {
        return Err(Error::NotMonomial);
    }
    if i.is_zero() || i.is_unit() {
        return Ok(ExperimentReport::degenerate(i, "closure", max_n, n_cap));
    }
    check_experiment_input(i, max_n)?;
    let mut report = ExperimentReport::empty(i, "closure", max_n, n_cap);
    let rho_result = rho(i, n_cap)?;
    let closures = (1..=max_n)
        .into_par_iter()
        .map(|n| newton::closure_of_power(i, n))
        .collect::<Result<Vec<_>>>()?;
    let certs = certify_all(&closures, opts)?;
    report.seeds = certs.iter().filter_map(|c| c.change.seed).collect();
    report.reg_sequence = certs.iter().map(ideal_regularity).collect();
    report.closure_generators = Some(closures.iter().map(|c| c.generator_strings()).collect());
    let stability = if max_n >= 2 {
        newton::check_closure_stability(i, max_n)?
    } else {
        Vec::new()
    };

    let mut violations = Vec::new();
    for (k, c) in closures.iter().enumerate() {
        let d = degree_invariants(c)?.d;
        let reg = report.reg_sequence[k];
        let generator_bound_holds = d as i64 <= reg;
        if !generator_bound_holds {
            violations.push(format!("n = {}: d = {d} exceeds reg = {reg}", k + 1));
        }
        report.checks.push(PowerCheck {
            n: k as u32 + 1,
            d,
            reg,
            lower_bound: None,
            lower_bound_holds: None,
            generator_bound_holds,
        });
    }

    report.tail = fit_linear_tail(&report.reg_sequence);
    if report.tail.is_some() {
        report.tail_status = "tail observed".into();
    }
    let stable_at_end = stability.last() == Some(&true);
    report.slope_verdict = match (&report.tail, stable_at_end) {
        (None, _) => SlopeVerdict::NotStabilized,
        (Some(_), false) => {
            report
                .warnings
                .push("closure stability not reached in the window".into());
            SlopeVerdict::Withheld
        }
        (Some(t), true) => {
            let rho = rho_result.rho as i64;
            if rho_result.capped {
                report
                    .warnings
                    .push(format!("reduction cap reached: rho = {rho} is an upper bound"));
                if t.d <= rho {
                    SlopeVerdict::AtMostCapped
                } else {
                    SlopeVerdict::Mismatch
                }
            } else if t.d == rho {
                SlopeVerdict::Equal
            } else {
                SlopeVerdict::Mismatch
            }
        }
    };
    report.stability = Some(stability);
    report.rho = Some(rho_result);
    if !violations.is_empty() {
        return Err(Error::ConsistencyViolation(violations.join("; ")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::MonomialOrder;
    use crate::ring::{Ring, RingRef};

    fn ring(vars: &[&str], field: Field) -> RingRef {
        Ring::new(vars, field, MonomialOrder::Grevlex).unwrap()
    }

    fn ideal(r: &RingRef, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn truncation_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        let i = ideal(&r, &["x^2", "x*y", "y^3"]);
        assert!(truncate_ideal(&i, 2).equals(&ideal(&r, &["x^2", "x*y"])).unwrap());
        assert!(truncate_ideal(&ideal(&r, &["x^2", "x*y"]), 1).is_zero());
        let i = ideal(&r, &["x^2 - y^2", "x*y", "y^3"]);
        let t = truncate_ideal(&i, 2);
        assert!(t.equals(&ideal(&r, &["x^2 - y^2", "x*y"])).unwrap());
        assert!(t.contains(&crate::parse_polynomial("y^3", &r).unwrap()).unwrap());
    }

    #[test]
    fn reduction_examples() {
        let r = ring(&["x", "y", "z"], Field::Prime(32003));
        let i = ideal(&r, &["x^2", "y^2", "z^2", "x*y*z"]);
        let j = ideal(&r, &["x^2", "y^2", "z^2"]);
        assert_eq!(is_reduction(&j, &i, 6).unwrap(), Some(1));
        assert_eq!(is_reduction(&j, &i, 0).unwrap(), None);
        assert_eq!(is_reduction(&i, &i, 0).unwrap(), Some(0));
        let r2 = ring(&["x", "y"], Field::Rational);
        let i = ideal(&r2, &["x^2", "x*y", "y^3"]);
        assert_eq!(is_reduction(&ideal(&r2, &["x^2", "x*y"]), &i, 4).unwrap(), None);
        assert_eq!(is_reduction(&ideal(&r2, &["y^2"]), &i, 2), Err(Error::NotContained));
    }

    #[test]
    fn rho_examples() {
        let r = ring(&["x", "y", "z"], Field::Prime(32003));
        let res = rho(&ideal(&r, &["x^2", "y^2", "z^2", "x*y*z"]), 6).unwrap();
        assert_eq!((res.rho, res.witness.n, res.witness.d, res.capped), (2, 1, 2, false));
        assert!(res.witness.ideal.equals(&ideal(&r, &["x^2", "y^2", "z^2"])).unwrap());
        let capped = rho(&ideal(&r, &["x^2", "y^2", "z^2", "x*y*z"]), 0).unwrap();
        assert_eq!((capped.rho, capped.capped), (3, true));

        let r2 = ring(&["x", "y"], Field::Rational);
        let res = rho(&ideal(&r2, &["x^2", "x*y"]), 6).unwrap();
        assert_eq!((res.rho, res.witness.n, res.capped), (2, 0, false));
        let res = rho(&ideal(&r2, &["x^2", "x*y", "y^3"]), 6).unwrap();
        assert_eq!((res.rho, res.capped), (3, false));
        assert!(rho(&Ideal::unit(&r2), 6).is_err());
    }

    #[test]
    fn non_monomial_rho() {
        let r = ring(&["x", "y"], Field::Prime(32003));
        // generated in a single degree, so the only candidate is I itself
        let res = rho(&ideal(&r, &["x^2 - y^2", "x*y"]), 3).unwrap();
        assert_eq!((res.rho, res.capped), (2, false));
        // (x^2 - y^2, x*y, y^3): the degree-2 truncation contains y^3 already
        let res = rho(&ideal(&r, &["x^2 - y^2", "x*y", "y^3"]), 3).unwrap();
        assert_eq!((res.rho, res.witness.n, res.capped), (2, 0, false));
    }

    #[test]
    fn reg_powers_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        assert_eq!(reg_powers(&ideal(&r, &["x", "y"]), 4, 0).unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(reg_powers(&ideal(&r, &["x^2", "x*y"]), 4, 0).unwrap(), vec![2, 4, 6, 8]);
        assert!(matches!(reg_powers(&Ideal::unit(&r), 3, 0), Err(Error::Degenerate(_))));
    }

    #[test]
    fn tail_examples() {
        assert_eq!(fit_linear_tail(&[2, 4, 6, 8]), Some(LinearTail { d: 2, e: 0, n0: 1 }));
        assert_eq!(
            fit_linear_tail(&[3, 4, 6, 8, 10]),
            Some(LinearTail { d: 2, e: 0, n0: 2 })
        );
        assert_eq!(fit_linear_tail(&[1, 3, 4]), None);
        assert_eq!(fit_linear_tail(&[1, 3]), None);
        assert_eq!(fit_linear_tail(&[3, 5, 7, 9]), Some(LinearTail { d: 2, e: 1, n0: 1 }));
    }

    #[test]
    fn experiment_examples() {
        let r = ring(&["x", "y"], Field::Rational);
        let rep = run_experiment(&ideal(&r, &["x^2", "x*y"]), 5, 6, 0).unwrap();
        assert_eq!(rep.reg_sequence, vec![2, 4, 6, 8, 10]);
        assert_eq!(rep.rho.as_ref().unwrap().rho, 2);
        let t = rep.tail.unwrap();
        assert_eq!((t.d, t.e), (2, 0));
        assert!(t.n0 <= 2);
        assert_eq!(rep.slope_verdict, SlopeVerdict::Equal);
        assert!(rep
            .checks
            .iter()
            .all(|c| c.lower_bound_holds == Some(true) && c.generator_bound_holds));

        let r3 = ring(&["x", "y", "z"], Field::Rational);
        let rep = run_experiment(&ideal(&r3, &["x", "y", "z"]), 4, 6, 0).unwrap();
        assert_eq!(rep.tail, Some(LinearTail { d: 1, e: 0, n0: 1 }));
        assert_eq!(rep.rho.unwrap().rho, 1);

        let rep = run_experiment(&Ideal::unit(&r), 3, 6, 0).unwrap();
        assert!(rep.degenerate);
    }

    #[test]
    fn capped_experiment_warns() {
        let r = ring(&["x", "y", "z"], Field::Prime(32003));
        let rep = run_experiment(&ideal(&r, &["x^2", "y^2", "z^2", "x*y*z"]), 3, 0, 0).unwrap();
        let rho = rep.rho.as_ref().unwrap();
        assert_eq!((rho.rho, rho.capped), (3, true));
        assert!(!rep.warnings.is_empty());
        assert!(rep.checks.iter().all(|c| c.lower_bound.is_none()));
    }

    #[test]
    fn closure_experiment_examples() {
        let r = ring(&["x", "y"], Field::Prime(32003));
        let rep = closure_experiment(&Ideal::irrelevant(&r), 4, 6, 0).unwrap();
        assert_eq!(rep.reg_sequence, vec![1, 2, 3, 4]);
        assert_eq!(rep.slope_verdict, SlopeVerdict::Equal);
        let rep = closure_experiment(&ideal(&r, &["x^2", "y^3"]), 4, 6, 0).unwrap();
        assert_eq!(rep.rho.as_ref().unwrap().rho, 3);
        assert_eq!(rep.closure_generators.as_ref().unwrap().len(), 4);
        assert!(closure_experiment(&ideal(&r, &["x^2 - y^2"]), 3, 6, 0).is_err());
    }
}
