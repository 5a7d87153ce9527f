//! Nonresidue counting decompositions of `Σ_{n<=x} χ(n)` and the empirical test of
//! "some `n <= z` is a nonresidue" for `z = x^(1/sqrt e)` and `z = x^(1/e)`.
//!
//! Conclusions are measured, never asserted.

use std::f64::consts::E;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{chunk_bounds, legendre, CharValue, PrimeModulus, PrimeRange};
use crate::charsums::{frac_ratio, SumReport};
use crate::error::{Error, Result};
use crate::nonresidue::least_nonresidue;
use crate::primesums::{AsymptoticReport, EULER_GAMMA};
use crate::report::{fmt_real, CsvRecord, ReportParams};

/// Verdicts with `x` below this are tagged below the asymptotic range.
pub const ASYMPTOTIC_FLOOR: f64 = 100.0;

fn check_below_p(p: PrimeModulus, x: f64) -> Result<()> {
    if !(x >= 1.0) || x >= p.get() as f64 {
        return Err(Error::Domain(format!("need 1 <= x < p (x = {x}, p = {p})")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub p: u64,
    pub x: f64,
    pub z: f64,
    pub n_p: u64,
    /// `Σ_{n<=x} χ(n)`
    pub lhs: i64,
    /// `[x] - 2 #{n <= x : χ(n) = -1}`
    pub count_form: i64,
    /// `[x] - 2 Σ_{z<=q<=x, χ(q)=-1} [x/q]`
    pub prime_form: i64,
    /// `Σ_{z<=q<=x} [x/q]`
    pub s0: i64,
    /// `Σ_{z<=q<=x} [x/q] χ(q)`
    pub s1: i64,
    /// `χ(n) = +1` for every `n <= z`
    pub hypothesis_holds: bool,
    /// every `n <= x` has as many nonresidue prime divisors in `[z, x]` as `[χ(n) = -1]`
    pub structural_holds: bool,
    /// `lhs - prime_form`
    pub residual: i64,
}

impl DecompositionReport {
    pub fn conclusion_holds(&self) -> bool {
        !self.hypothesis_holds
    }
}

/// The flat `decompose` output schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionRow {
    pub p: u64,
    pub x: f64,
    pub z: f64,
    pub n_p: u64,
    pub lhs: i64,
    pub count_form: i64,
    pub prime_form: i64,
    pub residual: i64,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

impl From<&DecompositionReport> for DecompositionRow {
    fn from(d: &DecompositionReport) -> Self {
        DecompositionRow {
            p: d.p,
            x: d.x,
            z: d.z,
            n_p: d.n_p,
            lhs: d.lhs,
            count_form: d.count_form,
            prime_form: d.prime_form,
            residual: d.residual,
            hypothesis_holds: d.hypothesis_holds,
            conclusion_holds: d.conclusion_holds(),
        }
    }
}

impl CsvRecord for DecompositionRow {
    const HEADER: &'static [&'static str] = &[
        "p",
        "x",
        "z",
        "n_p",
        "lhs",
        "count_form",
        "prime_form",
        "residual",
        "hypothesis_holds",
        "conclusion_holds",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            fmt_real(self.x),
            fmt_real(self.z),
            self.n_p.to_string(),
            self.lhs.to_string(),
            self.count_form.to_string(),
            self.prime_form.to_string(),
            self.residual.to_string(),
            self.hypothesis_holds.to_string(),
            self.conclusion_holds.to_string(),
        ]
    }
}

/// Exact evaluation of the three forms of `Σ_{n<=x} χ(n)`. Any `0 <= z <= x` is
/// accepted; `z < 2` makes the hypothesis vacuous.
pub fn decompose(p: PrimeModulus, x: f64, z: f64) -> Result<DecompositionReport> {
    check_below_p(p, x)?;
    if !(z >= 0.0) || z > x {
        return Err(Error::Domain(format!(
            "need 0 <= z <= x (z = {z}, x = {x})"
        )));
    }
    let xf = x.floor() as u64;
    let chi: Vec<CharValue> = (0..=xf).map(|n| legendre(n, p)).collect();
    let lhs: i64 = chi[1..].iter().map(|c| c.as_i64()).sum();
    let nonres = chi[1..]
        .iter()
        .filter(|&&c| c == CharValue::NonResidue)
        .count() as i64;

    // c[n] = number of nonresidue primes q in [z, x] dividing n
    let mut c = vec![0u32; xf as usize + 1];
    let (mut s0, mut s1) = (0i64, 0i64);
    for q in PrimeRange::new(z.ceil() as u64, xf) {
        let k = (xf / q) as i64;
        s0 += k;
        s1 += k * chi[q as usize].as_i64();
        if chi[q as usize] == CharValue::NonResidue {
            for m in (q..=xf).step_by(q as usize) {
                c[m as usize] += 1;
            }
        }
    }
    let floor_x = xf as i64;
    let prime_form = floor_x - s0 + s1;
    let structural_holds =
        (1..=xf as usize).all(|n| c[n] == (chi[n] == CharValue::NonResidue) as u32);
    let n_p = least_nonresidue(p).n_p;
    Ok(DecompositionReport {
        p: p.get(),
        x,
        z,
        n_p,
        lhs,
        count_form: floor_x - 2 * nonres,
        prime_form,
        s0,
        s1,
        hypothesis_holds: (n_p as f64) > z,
        structural_holds,
        residual: lhs - prime_form,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `z = x^(1/sqrt e)`, premise `Σχ = o(x)`
    Classic,
    /// `z = x^(1/e)`, premise `Σχ = o(x/log x)`
    Shrinking,
}

impl Variant {
    pub fn cutoff(self, x: f64) -> f64 {
        match self {
            Variant::Classic => x.powf(1.0 / E.sqrt()),
            Variant::Shrinking => x.powf(1.0 / E),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShrinkingVerdict {
    pub variant: Variant,
    pub p: u64,
    pub x: f64,
    pub z: f64,
    pub n_p: u64,
    /// `n_p <= z`
    pub conclusion_holds: bool,
    pub premise: SumReport,
    pub below_asymptotic_range: bool,
}

fn verdict(variant: Variant, p: PrimeModulus, x: f64) -> Result<ShrinkingVerdict> {
    check_below_p(p, x)?;
    let z = variant.cutoff(x);
    let n_p = least_nonresidue(p).n_p;
    let value: i64 = (1..=x.floor() as u64)
        .map(|n| legendre(n, p).as_i64())
        .sum();
    let (id, bound) = match variant {
        Variant::Classic => ("T1234.000", x),
        Variant::Shrinking => ("T1234.500", x / x.ln()),
    };
    let params = ReportParams {
        p: Some(p.get()),
        x: Some(x),
        z: Some(z),
        ..Default::default()
    };
    Ok(ShrinkingVerdict {
        variant,
        p: p.get(),
        x,
        z,
        n_p,
        conclusion_holds: n_p as f64 <= z,
        premise: SumReport::real(id, value as f64, bound, params),
        below_asymptotic_range: x < ASYMPTOTIC_FLOOR,
    })
}

pub fn vinogradov_test(p: PrimeModulus, x: f64) -> Result<ShrinkingVerdict> {
    verdict(Variant::Classic, p, x)
}

pub fn shrinking_test(p: PrimeModulus, x: f64) -> Result<ShrinkingVerdict> {
    verdict(Variant::Shrinking, p, x)
}

/// Aggregates over `x = p^(1/4+ε)` for every prime in a range. Failure counts
/// exclude `x < 100` unless suffixed `_all`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    pub primes: u64,
    pub counted: u64,
    pub classic_failures: u64,
    pub shrinking_failures: u64,
    pub classic_failures_all: u64,
    pub shrinking_failures_all: u64,
    /// `max n_p / p^(1/(4e)+ε)` over counted primes, with the prime attaining it
    pub min_c: Option<(f64, u64)>,
}

impl SweepSummary {
    pub fn empty() -> Self {
        SweepSummary {
            primes: 0,
            counted: 0,
            classic_failures: 0,
            shrinking_failures: 0,
            classic_failures_all: 0,
            shrinking_failures_all: 0,
            min_c: None,
        }
    }

    pub fn merge(self, o: Self) -> Self {
        let min_c = match (self.min_c, o.min_c) {
            (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        };
        SweepSummary {
            primes: self.primes + o.primes,
            counted: self.counted + o.counted,
            classic_failures: self.classic_failures + o.classic_failures,
            shrinking_failures: self.shrinking_failures + o.shrinking_failures,
            classic_failures_all: self.classic_failures_all + o.classic_failures_all,
            shrinking_failures_all: self.shrinking_failures_all + o.shrinking_failures_all,
            min_c,
        }
    }

    pub fn shrinking_failure_fraction(&self) -> f64 {
        self.shrinking_failures as f64 / self.counted as f64
    }

    pub fn classic_failure_fraction(&self) -> f64 {
        self.classic_failures as f64 / self.counted as f64
    }
}

fn sweep_chunk(lo: u64, hi: u64, eps: f64) -> SweepSummary {
    let mut s = SweepSummary::empty();
    for p in PrimeRange::new(lo.max(3), hi) {
        let pf = p as f64;
        let x = pf.powf(0.25 + eps);
        let n_p = least_nonresidue(PrimeModulus::new(p).expect("odd prime")).n_p;
        let npf = n_p as f64;
        let classic_fail = npf > Variant::Classic.cutoff(x);
        let shrink_fail = npf > Variant::Shrinking.cutoff(x);
        s.primes += 1;
        s.classic_failures_all += classic_fail as u64;
        s.shrinking_failures_all += shrink_fail as u64;
        if x >= ASYMPTOTIC_FLOOR {
            s.counted += 1;
            s.classic_failures += classic_fail as u64;
            s.shrinking_failures += shrink_fail as u64;
            let c = npf / pf.powf(1.0 / (4.0 * E) + eps);
            s = s.merge(SweepSummary {
                min_c: Some((c, p)),
                ..SweepSummary::empty()
            });
        }
    }
    s
}

/// Both variants over all primes `p` in `[lo, hi]` with `x = p^(1/4+ε)`.
pub fn shrinking_sweep(lo: u64, hi: u64, eps: f64) -> SweepSummary {
    chunk_bounds(lo.max(3), hi, 1 << 16)
        .into_par_iter()
        .map(|(a, b)| sweep_chunk(a, b, eps))
        .reduce(SweepSummary::empty, SweepSummary::merge)
}

/// Every term of the `z = x^(1/e)` substitution, evaluated separately.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub p: u64,
    pub x: f64,
    pub z: f64,
    pub n_p: u64,
    pub floor_x: i64,
    pub s0: i64,
    pub s1: i64,
    /// `x log(log x / log z)`, which is `x` up to rounding
    pub log_term: f64,
    /// `(1-γ)(x/log x - z/log z)`
    pub gamma_term: f64,
    /// `[x] - log_term`
    pub cancellation: f64,
    /// `Σ_{z<=q<=x} {x/q}`
    pub frac_sum: f64,
    pub lhs: i64,
    /// `[x] - S_0 + S_1`
    pub prime_form: i64,
    /// `lhs - prime_form`
    pub residual: i64,
    /// `[x] - (log_term - gamma_term) + S_1`
    pub asymptotic_form: f64,
}

impl AuditReport {
    /// `Σχ(n)` against the asymptotic form, on the scale `x / (log x)^2`.
    pub fn as_asymptotic(&self) -> AsymptoticReport {
        let params = ReportParams {
            p: Some(self.p),
            x: Some(self.x),
            z: Some(self.z),
            ..Default::default()
        };
        let scale = self.x / self.x.ln().powi(2);
        AsymptoticReport::new(
            "E1234.525",
            self.lhs as f64,
            self.asymptotic_form,
            scale,
            params,
        )
    }

    /// `[x] - S_0 + S_1 = prime_form` in integers.
    pub fn bookkeeping_holds(&self) -> bool {
        self.floor_x - self.s0 + self.s1 == self.prime_form
    }
}

impl CsvRecord for AuditReport {
    const HEADER: &'static [&'static str] = &[
        "p",
        "x",
        "z",
        "n_p",
        "floor_x",
        "s0",
        "s1",
        "log_term",
        "gamma_term",
        "cancellation",
        "frac_sum",
        "lhs",
        "prime_form",
        "residual",
        "asymptotic_form",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.p.to_string(),
            fmt_real(self.x),
            fmt_real(self.z),
            self.n_p.to_string(),
            self.floor_x.to_string(),
            self.s0.to_string(),
            self.s1.to_string(),
            fmt_real(self.log_term),
            fmt_real(self.gamma_term),
            fmt_real(self.cancellation),
            fmt_real(self.frac_sum),
            self.lhs.to_string(),
            self.prime_form.to_string(),
            self.residual.to_string(),
            fmt_real(self.asymptotic_form),
        ]
    }
}

pub fn contradiction_audit(p: PrimeModulus, x: f64) -> Result<AuditReport> {
    check_below_p(p, x)?;
    let z = Variant::Shrinking.cutoff(x);
    let d = decompose(p, x, z)?;
    if !d.hypothesis_holds {
        return Err(Error::Precondition(format!(
            "n_p = {} <= x^(1/e) = {z}: no nonresidue-free range to audit",
            d.n_p
        )));
    }
    let frac_sum = PrimeRange::new(z.ceil() as u64, x.floor() as u64)
        .map(|q| frac_ratio(x, q))
        .collect::<crate::summation::Neumaier>()
        .value();
    let floor_x = x.floor() as i64;
    let log_term = x * (x.ln() / z.ln()).ln();
    let gamma_term = (1.0 - EULER_GAMMA) * (x / x.ln() - z / z.ln());
    Ok(AuditReport {
        p: d.p,
        x,
        z,
        n_p: d.n_p,
        floor_x,
        s0: d.s0,
        s1: d.s1,
        log_term,
        gamma_term,
        cancellation: floor_x as f64 - log_term,
        frac_sum,
        lhs: d.lhs,
        prime_form: d.prime_form,
        residual: d.residual,
        asymptotic_form: floor_x as f64 - (log_term - gamma_term) + d.s1 as f64,
    })
}
