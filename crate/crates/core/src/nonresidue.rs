//! Least quadratic nonresidues: single moduli, residue classes, and parallel range scans.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{
    chunk_bounds, gcd, is_prime, legendre, primes_up_to, CharValue, PrimeModulus, PrimeRange,
};
use crate::error::{Error, Result};
use crate::verdict::{CheckKind, VerificationVerdict};

/// Integers per scan chunk. Fixed so chunking never depends on the thread count.
pub const SCAN_CHUNK: u64 = 1 << 18;

fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(1 << 16))
}

/// Candidate prime arguments 2, 3, 5, ... (table first, then Miller-Rabin).
fn prime_candidates() -> impl Iterator<Item = u64> {
    let table = small_primes();
    let tail_start = table.last().copied().unwrap_or(1) + 2;
    table
        .iter()
        .copied()
        .chain((tail_start..).step_by(2).filter(|&n| is_prime(n)))
}

/// The two exponents `n_p` is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExponentThresholds {
    /// `1 / (4 sqrt e)`
    pub burgess: f64,
    /// `1 / (4 e)`
    pub claimed: f64,
    pub gap: f64,
}

impl Default for ExponentThresholds {
    fn default() -> Self {
        let e = std::f64::consts::E;
        let burgess = 1.0 / (4.0 * e.sqrt());
        let claimed = 1.0 / (4.0 * e);
        ExponentThresholds {
            burgess,
            claimed,
            gap: burgess - claimed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonresidueRecord {
    pub p: u64,
    pub n_p: u64,
    /// `ln n_p / ln p`
    pub exponent: f64,
    /// `(a, q)` when the search was restricted to `n = a (mod q)`
    pub progression: Option<(u64, u64)>,
}

impl NonresidueRecord {
    fn new(p: PrimeModulus, n_p: u64, progression: Option<(u64, u64)>) -> Self {
        NonresidueRecord {
            p: p.get(),
            n_p,
            exponent: (n_p as f64).ln() / p.ln(),
            progression,
        }
    }
}

/// Smallest `n >= 2` with `(n | p) = -1`.
///
/// Only prime `n` are tried: by multiplicativity a composite is a nonresidue only
/// if one of its prime factors is, and that factor is smaller.
pub fn least_nonresidue(p: PrimeModulus) -> NonresidueRecord {
    let n_p = prime_candidates()
        .find(|&q| legendre(q, p) == CharValue::NonResidue)
        .expect("every odd prime has a nonresidue below it");
    NonresidueRecord::new(p, n_p, None)
}

/// Smallest `n >= 2`, `n = a (mod q)`, with `(n | p) = -1`.
///
/// Requires `gcd(a, q) = 1` and `1 <= a < q`, except that `q = 1` accepts any `a`
/// and reduces to [`least_nonresidue`].
pub fn least_nonresidue_in_ap(p: PrimeModulus, a: u64, q: u64) -> Result<NonresidueRecord> {
    if q == 0 || a == 0 {
        return Err(Error::Domain(format!(
            "progression needs a, q >= 1 (a = {a}, q = {q})"
        )));
    }
    if q > 1 && a >= q {
        return Err(Error::Domain(format!(
            "progression needs a < q (a = {a}, q = {q})"
        )));
    }
    if gcd(a, q) != 1 {
        return Err(Error::Domain(format!("gcd({a}, {q}) != 1")));
    }
    let r = a % q;
    let mut n = if r >= 2 {
        r
    } else {
        r + q * (2 - r).div_ceil(q)
    };
    while n < p.get() {
        if legendre(n, p) == CharValue::NonResidue {
            return Ok(NonresidueRecord::new(p, n, Some((a, q))));
        }
        n += q;
    }
    Err(Error::Exhausted { p: p.get(), a, q })
}

/// Whether `q <= (ln p)^b`, the size regime in which the progression bound is stated.
pub fn progression_within_advisory(p: PrimeModulus, q: u64, b: f64) -> bool {
    (q as f64) <= p.ln().powf(b)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub p: u64,
    pub n_p: u64,
    pub exponent: f64,
    /// `n_p` exceeds every earlier `n_p` in the scan
    pub is_record: bool,
}

/// Mergeable scan statistics. `merge` is associative, so per-chunk summaries can be
/// combined in any grouping as long as chunk order is kept.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub primes: u64,
    /// `(exponent, p, n_p)`; ties keep the smaller `p`
    pub max_exponent: Option<(f64, u64, u64)>,
    pub above_claimed: u64,
    pub above_burgess: u64,
    /// `(p, n_p)` at which `n_p` set a new maximum
    pub record_breakers: Vec<(u64, u64)>,
}

impl ScanSummary {
    pub fn empty() -> Self {
        ScanSummary {
            primes: 0,
            max_exponent: None,
            above_claimed: 0,
            above_burgess: 0,
            record_breakers: Vec::new(),
        }
    }

    fn push(&mut self, r: &NonresidueRecord, t: &ExponentThresholds) -> bool {
        self.primes += 1;
        if self.max_exponent.is_none_or(|(e, _, _)| r.exponent > e) {
            self.max_exponent = Some((r.exponent, r.p, r.n_p));
        }
        self.above_claimed += (r.exponent > t.claimed) as u64;
        self.above_burgess += (r.exponent > t.burgess) as u64;
        let is_record = r.n_p > self.max_n_p();
        if is_record {
            self.record_breakers.push((r.p, r.n_p));
        }
        is_record
    }

    pub fn max_n_p(&self) -> u64 {
        self.record_breakers.last().map_or(0, |&(_, n)| n)
    }

    /// Combines the summary of an earlier range with that of the range right after it.
    pub fn merge(mut self, later: ScanSummary) -> ScanSummary {
        self.primes += later.primes;
        if let Some(le) = later.max_exponent {
            if self.max_exponent.is_none_or(|(e, _, _)| le.0 > e) {
                self.max_exponent = Some(le);
            }
        }
        self.above_claimed += later.above_claimed;
        self.above_burgess += later.above_burgess;
        let floor = self.max_n_p();
        self.record_breakers.extend(
            later
                .record_breakers
                .into_iter()
                .filter(|&(_, n)| n > floor),
        );
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanOutput {
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

/// `n_p` for every prime in `[lo, hi]`, computed in parallel over fixed chunks and
/// handed to `sink` in ascending `p`. With `records_only`, only record-breaking rows
/// reach the sink. Memory stays bounded by a window of chunks.
pub fn scan_streaming<F>(
    lo: u64,
    hi: u64,
    thresholds: &ExponentThresholds,
    records_only: bool,
    mut sink: F,
) -> Result<ScanSummary>
where
    F: FnMut(&ScanRow) -> Result<()>,
{
    let mut summary = ScanSummary::empty();
    if lo > hi {
        return Ok(summary);
    }
    let chunks = chunk_bounds(lo.max(3), hi, SCAN_CHUNK);
    let window = (rayon::current_num_threads() * 4).max(1);
    for group in chunks.chunks(window) {
        let computed: Vec<Vec<NonresidueRecord>> = group
            .par_iter()
            .map(|&(a, b)| {
                PrimeRange::new(a, b)
                    .map(|p| {
                        least_nonresidue(PrimeModulus::new(p).expect("sieve yields odd primes"))
                    })
                    .collect()
            })
            .collect();
        for rec in computed.iter().flatten() {
            let is_record = summary.push(rec, thresholds);
            if !records_only || is_record {
                sink(&ScanRow {
                    p: rec.p,
                    n_p: rec.n_p,
                    exponent: rec.exponent,
                    is_record,
                })?;
            }
        }
    }
    Ok(summary)
}

/// Collected form of [`scan_streaming`].
pub fn scan(lo: u64, hi: u64, thresholds: &ExponentThresholds) -> ScanOutput {
    let mut rows = Vec::new();
    let summary = scan_streaming(lo, hi, thresholds, false, |r| {
        rows.push(*r);
        Ok(())
    })
    .expect("collecting sink cannot fail");
    ScanOutput { rows, summary }
}

/// Summary of `[lo, hi]` computed chunk-by-chunk in parallel and merged; equal to
/// the summary returned by [`scan`].
pub fn scan_summary(lo: u64, hi: u64, thresholds: &ExponentThresholds) -> ScanSummary {
    if lo > hi {
        return ScanSummary::empty();
    }
    chunk_bounds(lo.max(3), hi, SCAN_CHUNK)
        .par_iter()
        .map(|&(a, b)| {
            let mut s = ScanSummary::empty();
            for p in PrimeRange::new(a, b) {
                s.push(&least_nonresidue(PrimeModulus::new(p).unwrap()), thresholds);
            }
            s
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(ScanSummary::empty(), ScanSummary::merge)
}

/// `n_p < 2 sqrt(p) + 1` for every prime in `[lo, hi]`.
pub fn gauss_bound_check(lo: u64, hi: u64) -> VerificationVerdict {
    structure_checks(lo, hi).gauss
}

#[derive(Debug, Clone)]
pub struct StructureVerdicts {
    /// `n_p` is prime
    pub prime: VerificationVerdict,
    /// `n_p = 2` for `p = 3, 5 (mod 8)`
    pub class_mod8: VerificationVerdict,
    /// `n_p < 2 sqrt(p) + 1`
    pub gauss: VerificationVerdict,
}

/// The exact structural facts about `n_p`, checked over every prime in `[lo, hi]`
/// in one parallel pass.
pub fn structure_checks(lo: u64, hi: u64) -> StructureVerdicts {
    let grid = format!("primes in [{lo}, {hi}]");
    let mut out = StructureVerdicts {
        prime: VerificationVerdict::new("S1221.prime", grid.clone(), CheckKind::Exact),
        class_mod8: VerificationVerdict::new("E1221.420.np2", grid.clone(), CheckKind::Exact),
        gauss: VerificationVerdict::new("S1221.1", grid, CheckKind::Exact),
    };
    let t = ExponentThresholds::default();
    scan_streaming(lo, hi, &t, false, |r| {
        out.prime.check(is_prime(r.n_p), || {
            format!("p={} n_p={} composite", r.p, r.n_p)
        });
        if matches!(r.p % 8, 3 | 5) {
            out.class_mod8.check(r.n_p == 2, || {
                format!("p={} (mod 8 = {}) n_p={}", r.p, r.p % 8, r.n_p)
            });
        }
        let bound = 2.0 * (r.p as f64).sqrt() + 1.0;
        // integer form of n_p < 2 sqrt(p) + 1: (n_p - 1)^2 < 4p
        let holds = (r.n_p as u128 - 1).pow(2) < 4 * r.p as u128;
        out.gauss.check(holds, || {
            format!("p={} n_p={} bound={bound:.4}", r.p, r.n_p)
        });
        out.gauss
            .observe(r.n_p as f64 / bound, || format!("p={} n_p={}", r.p, r.n_p));
        Ok(())
    })
    .expect("checking sink cannot fail");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::euler_criterion;

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn brute_np(p: u64) -> u64 {
        let m = pm(p);
        (2..p)
            .find(|&n| euler_criterion(n, m) == CharValue::NonResidue)
            .unwrap()
    }

    #[test]
    fn thresholds() {
        let t = ExponentThresholds::default();
        assert!((t.burgess - 0.151632664928158).abs() < 1e-12);
        assert!((t.claimed - 0.091969860293).abs() < 1e-10);
        assert!((t.gap - 0.0596628046352978).abs() < 1e-13);
    }

    #[test]
    fn examples() {
        assert_eq!(least_nonresidue(pm(3)).n_p, 2);
        assert_eq!(least_nonresidue(pm(7)).n_p, 3);
        assert_eq!(least_nonresidue(pm(17)).n_p, 3);
        let r = least_nonresidue(pm(71));
        assert_eq!(r.n_p, 7);
        assert!((r.exponent - 7f64.ln() / 71f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn matches_brute_force() {
        for p in crate::arith::primes_in(3, 5_000) {
            assert_eq!(least_nonresidue(pm(p)).n_p, brute_np(p), "p = {p}");
        }
    }

    #[test]
    fn progression_examples() {
        assert_eq!(least_nonresidue_in_ap(pm(7), 1, 2).unwrap().n_p, 3);
        assert_eq!(least_nonresidue_in_ap(pm(17), 1, 1).unwrap().n_p, 3);
        let r = least_nonresidue_in_ap(pm(23), 2, 3).unwrap();
        assert_eq!((r.n_p, r.progression), (5, Some((2, 3))));
    }

    #[test]
    fn progression_errors() {
        assert!(matches!(
            least_nonresidue_in_ap(pm(23), 2, 4),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            least_nonresidue_in_ap(pm(23), 5, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            least_nonresidue_in_ap(pm(23), 0, 3),
            Err(Error::Domain(_))
        ));
        // n = 1 (mod 8) below 7 is only 1, a residue
        assert_eq!(
            least_nonresidue_in_ap(pm(7), 1, 8),
            Err(Error::Exhausted { p: 7, a: 1, q: 8 })
        );
    }

    #[test]
    fn progression_with_unit_modulus_is_plain() {
        for p in crate::arith::primes_in(3, 3_000) {
            let m = pm(p);
            assert_eq!(
                least_nonresidue_in_ap(m, 1, 1).unwrap().n_p,
                least_nonresidue(m).n_p
            );
        }
    }

    #[test]
    fn progression_brute_force() {
        for p in crate::arith::primes_in(5, 600) {
            let m = pm(p);
            for q in 2..8u64 {
                for a in (1..q).filter(|&a| gcd(a, q) == 1) {
                    let want = (2..p)
                        .find(|&n| n % q == a && euler_criterion(n, m) == CharValue::NonResidue);
                    let got = least_nonresidue_in_ap(m, a, q).ok().map(|r| r.n_p);
                    assert_eq!(got, want, "p={p} a={a} q={q}");
                }
            }
        }
    }

    #[test]
    fn advisory_bound() {
        // ln(10007)^2 ~ 84.8
        assert!(progression_within_advisory(pm(10007), 84, 2.0));
        assert!(!progression_within_advisory(pm(10007), 85, 2.0));
    }

    #[test]
    fn scan_small_ranges() {
        let t = ExponentThresholds::default();
        let out = scan(3, 100, &t);
        assert_eq!(out.rows.len(), 24);
        // brute force over the 24 primes: the largest exponent is ln 2 / ln 3 at p = 3,
        // the largest n_p is 7, first reached at p = 71
        let (e, p, n) = out.summary.max_exponent.unwrap();
        assert_eq!((p, n), (3, 2));
        assert!((e - 2f64.ln() / 3f64.ln()).abs() < 1e-15);
        assert_eq!(
            out.summary.record_breakers,
            vec![(3, 2), (7, 3), (23, 5), (71, 7)]
        );
        let recs: Vec<u64> = out
            .rows
            .iter()
            .filter(|r| r.is_record)
            .map(|r| r.p)
            .collect();
        assert_eq!(recs, vec![3, 7, 23, 71]);
        assert_eq!(out.summary.above_burgess, 24);

        let one = scan(3, 3, &t);
        assert_eq!(one.rows.len(), 1);
        assert_eq!((one.rows[0].p, one.rows[0].n_p), (3, 2));
        assert!((one.rows[0].exponent - 0.6309297535714574).abs() < 1e-15);

        let none = scan(24, 28, &t);
        assert!(none.rows.is_empty());
        assert_eq!(none.summary, ScanSummary::empty());
    }

    #[test]
    fn parallel_summary_equals_sequential() {
        let t = ExponentThresholds::default();
        let (lo, hi) = (3, 3 * SCAN_CHUNK + 17);
        let seq = scan(lo, hi, &t);
        assert_eq!(scan_summary(lo, hi, &t), seq.summary);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let single = pool.install(|| scan(lo, hi, &t));
        assert_eq!(single, seq);
    }

    #[test]
    fn merge_is_associative() {
        let t = ExponentThresholds::default();
        let parts: Vec<ScanSummary> = [(3, 500), (501, 2_000), (2_001, 9_000)]
            .iter()
            .map(|&(a, b)| scan(a, b, &t).summary)
            .collect();
        let left = parts[0]
            .clone()
            .merge(parts[1].clone())
            .merge(parts[2].clone());
        let right = parts[0]
            .clone()
            .merge(parts[1].clone().merge(parts[2].clone()));
        assert_eq!(left, right);
        assert_eq!(left, scan(3, 9_000, &t).summary);
    }

    #[test]
    fn exponent_decreases_in_p_for_fixed_n_p() {
        let out = scan(3, 200_000, &ExponentThresholds::default());
        let mut last = std::collections::HashMap::new();
        for r in &out.rows {
            if let Some(prev) = last.insert(r.n_p, r.exponent) {
                assert!(r.exponent < prev, "n_p = {} at p = {}", r.n_p, r.p);
            }
        }
    }

    #[test]
    fn gauss_check() {
        let v = gauss_bound_check(3, 3);
        assert!(v.passed());
        assert!((v.worst.unwrap().ratio - 2.0 / (2.0 * 3f64.sqrt() + 1.0)).abs() < 1e-15);
        let v = gauss_bound_check(3, 100);
        assert!(v.passed());
        assert_eq!(v.checked, 24);
        // brute force: largest n_p / (2 sqrt p + 1) below 100 is 3 / 6.29 at p = 7
        assert_eq!(v.worst.unwrap().at, "p=7 n_p=3");
    }

    #[test]
    fn structure_small() {
        let s = structure_checks(3, 50_000);
        assert!(s.prime.passed() && s.class_mod8.passed() && s.gauss.passed());
        assert_eq!(s.prime.checked, 5_132);
    }
}
