//! Lemma verification grids. Exact identities produce pass/fail verdicts; bounds
//! with unspecified constants produce ratio data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::{
    chunk_bounds, euler_criterion, is_prime, legendre, next_prime, primes_in, supplementary_two,
    PrimeModulus, PrimeRange,
};
use crate::charsums::{
    char_sum, equivalent_sum_difference, geometric_sum, l_one_partial_sum, period_extremes,
    prefix_sums, sine_sums, weighted_sum, EquivWeight, GeometricReport, SumParams, SumRange,
    Weight,
};
use crate::error::{Error, Result};
use crate::nonresidue::structure_checks;
use crate::primesums::{
    prime_char_sum, prime_char_sum_single_delta, prime_indicator_numeric, prime_indicator_table,
    slice_reports, twisted_floor_prime_sum, IntervalKind, PrimeSumParams,
};
use crate::shrinking::{contradiction_audit, decompose, shrinking_sweep, Variant};
use crate::verdict::{CheckKind, VerificationVerdict};

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).expect("odd prime")
}

/// Runs `f` on every odd prime in `[lo, hi]` in parallel chunks and merges the
/// partial verdicts in ascending order.
fn per_prime<F>(
    id: &str,
    grid: String,
    kind: CheckKind,
    lo: u64,
    hi: u64,
    f: F,
) -> VerificationVerdict
where
    F: Fn(PrimeModulus, &mut VerificationVerdict) + Sync,
{
    let parts: Vec<VerificationVerdict> = chunk_bounds(lo.max(3), hi, 1 << 14)
        .into_par_iter()
        .map(|(a, b)| {
            let mut v = VerificationVerdict::new(id, grid.clone(), kind);
            for p in PrimeRange::new(a, b) {
                f(pm(p), &mut v);
            }
            v
        })
        .collect();
    let mut out = VerificationVerdict::new(id, grid, kind);
    for part in parts {
        out.absorb(part);
    }
    out
}

/// About `count` primes spread evenly over `[lo, hi]`.
pub fn sample_primes(lo: u64, hi: u64, count: u64) -> Vec<u64> {
    let lo = lo.max(3);
    let mut out: Vec<u64> = Vec::new();
    if lo > hi || count == 0 {
        return out;
    }
    let steps = count.max(2) - 1;
    for i in 0..=steps {
        let target = lo + ((hi - lo) as u128 * i as u128 / steps as u128) as u64;
        let mut q = next_prime(target);
        if q > hi {
            q = (lo..=target).rev().find(|&n| is_prime(n)).unwrap_or(0);
        }
        if q >= lo && out.last().is_none_or(|&l| l < q) {
            out.push(q);
        }
    }
    out
}

/// `legendre(n, p)` equals Euler's criterion for every `0 <= n < p`.
pub fn legendre_oracle(hi: u64) -> VerificationVerdict {
    per_prime(
        "euler-criterion",
        format!("p <= {hi}, 0 <= n < p"),
        CheckKind::Exact,
        3,
        hi,
        |p, v| {
            for n in 0..p.get() {
                let (a, b) = (legendre(n, p), euler_criterion(n, p));
                v.check(a == b, || {
                    format!("p={p} n={n} legendre={} euler={}", a.as_i64(), b.as_i64())
                });
            }
        },
    )
}

/// `(2/p) = (-1)^((p^2-1)/8)`.
pub fn supplementary_law(hi: u64) -> VerificationVerdict {
    per_prime(
        "E1221.420",
        format!("odd p <= {hi}"),
        CheckKind::Exact,
        3,
        hi,
        |p, v| {
            let (a, b) = (legendre(2, p), supplementary_two(p));
            v.check(a == b, || {
                format!("p={p} legendre={} formula={}", a.as_i64(), b.as_i64())
            });
        },
    )
}

/// `max_{x<p} |Σ_{n<=x} χ(n)| <= sqrt(p) log p`, and the full period sums to 0.
pub fn polya_vinogradov(hi: u64) -> VerificationVerdict {
    per_prime(
        "T2212.455",
        format!("p <= {hi}, all x < p"),
        CheckKind::Exact,
        3,
        hi,
        |p, v| {
            let e = period_extremes(p);
            let bound = (p.get() as f64).sqrt() * p.ln();
            v.check(e.max_prefix as f64 <= bound, || {
                format!(
                    "p={p} max={} at x={} bound={bound:.4}",
                    e.max_prefix, e.argmax
                )
            });
            v.observe(e.max_prefix as f64 / bound, || {
                format!("p={p} x={}", e.argmax)
            });
            let full = prefix_sums(p)[p.get() as usize - 1];
            v.check(full == 0, || format!("p={p} full-period sum {full}"));
        },
    )
}

/// The `x` values probed for each `N` in the indicator grid.
fn indicator_xs(n: u64) -> Vec<f64> {
    if n <= 101 {
        return (1..n).map(|x| x as f64).collect();
    }
    let mut xs: Vec<f64> = [1, 2, n / 4, n / 2, 3 * n / 4, n - 1]
        .iter()
        .map(|&x| x as f64)
        .collect();
    xs.push(n as f64 / 2.0 + 0.25);
    xs
}

/// Prime indicator by orthogonality: the exact route equals primality for every
/// `n < N`, and the complex route rounds to the same value within `1e-6`.
pub fn indicator_identity(nmax: u64) -> Result<VerificationVerdict> {
    let grid = format!("N prime <= {nmax}, x < N, n <= x");
    let parts: Vec<Result<VerificationVerdict>> = primes_in(3, nmax)
        .into_par_iter()
        .map(|n| {
            let mut v = VerificationVerdict::new("L5515.200", grid.clone(), CheckKind::Exact);
            for x in indicator_xs(n) {
                let exact = match prime_indicator_table(x, n) {
                    Ok(t) => t,
                    Err(Error::IdentityViolation(msg)) => {
                        v.check(false, || msg);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let numeric = prime_indicator_numeric(x, n)?;
                for (i, z) in numeric.iter().enumerate() {
                    let k = i + 1;
                    let want = (k as f64 <= x && is_prime(k as u64)) as u8;
                    v.check(exact[k] == want, || {
                        format!("N={n} x={x} n={k} exact={} prime={want}", exact[k])
                    });
                    let dev = (z - want as f64).norm();
                    v.check(dev < 1e-6, || format!("N={n} x={x} n={k} numeric={z}"));
                    v.observe(dev, || format!("N={n} x={x} n={k}"));
                }
            }
            Ok(v)
        })
        .collect();
    let mut out = VerificationVerdict::new("L5515.200", grid, CheckKind::Exact);
    for part in parts {
        out.absorb(part?);
    }
    Ok(out)
}

/// Normalized residuals of the three slice sums at `z = x^(1/e)`.
pub fn slice_asymptotics(xs: &[f64]) -> Result<VerificationVerdict> {
    let grid = format!("z = x^(1/e), x in {xs:?}");
    let mut v = VerificationVerdict::new("L1220.500", grid, CheckKind::Ratio);
    for &x in xs {
        for r in slice_reports(&PrimeSumParams::shrinking_cutoff(x))? {
            let label = format!("{} x={x}", r.lemma_id);
            v.observe(r.normalized_residual.abs(), || label.clone());
            v.push_series(label, r.normalized_residual);
        }
    }
    Ok(v)
}

/// `count` deterministic pseudo-random `(x, z)` with `2 <= z <= x <= xmax`.
pub fn random_slice_grids(count: usize, xmax: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let x = rng.random_range(2.0..=xmax);
            let z = rng.random_range(2.0..=x);
            (x, z)
        })
        .collect()
}

/// `S_0 = x Σ 1/q - Σ {x/q}` to `tol` absolute.
pub fn floor_frac_identity(grids: &[(f64, f64)], tol: f64) -> Result<VerificationVerdict> {
    let mut v = VerificationVerdict::new(
        "L1220.500.floor",
        format!("{} (x, z) grids", grids.len()),
        CheckKind::Exact,
    );
    for &(x, z) in grids {
        let [fl, me, fr] = slice_reports(&PrimeSumParams::new(x, z))?;
        let gap = (fl.exact - (x * me.exact - fr.exact)).abs();
        v.check(gap <= tol, || format!("x={x} z={z} gap={gap:e}"));
        v.observe(gap, || format!("x={x} z={z}"));
    }
    Ok(v)
}

/// `x = ceil(k (p-1) / points)` for `k = 1..=points`, deduplicated.
pub fn decomposition_xs(p: u64, points: u64) -> Vec<f64> {
    let mut xs: Vec<u64> = (1..=points)
        .map(|k| (k * (p - 1)).div_ceil(points).max(1))
        .collect();
    xs.dedup();
    xs.into_iter().map(|x| x as f64).collect()
}

/// `lhs = count_form` exactly; the residual vanishes wherever the structural
/// condition holds; `|residual| / x` is tracked.
pub fn decomposition_exactness(hi: u64, points: u64) -> VerificationVerdict {
    let grid = format!("p <= {hi}, {points} x per p, z = x^(1/e)");
    per_prime("E1234.510", grid, CheckKind::Exact, 3, hi, |p, v| {
        for x in decomposition_xs(p.get(), points) {
            let d = decompose(p, x, Variant::Shrinking.cutoff(x)).expect("x < p");
            v.check(d.lhs == d.count_form, || {
                format!("p={p} x={x} lhs={} count_form={}", d.lhs, d.count_form)
            });
            if d.structural_holds {
                v.check(d.residual == 0, || {
                    format!("p={p} x={x} structural but residual={}", d.residual)
                });
            }
            v.observe(d.residual.unsigned_abs() as f64 / x, || {
                format!("p={p} x={x} residual={}", d.residual)
            });
        }
    })
}

/// Parameter grids for the two `S_1` routes with `x N <= cap`.
pub fn route_grids(cap: f64) -> Vec<PrimeSumParams> {
    let mut out = Vec::new();
    for p in [101u64, 1_009, 10_007, 100_003, 1_000_003] {
        let pf = p as f64;
        for x in [
            pf.powf(0.35),
            pf.sqrt(),
            pf.powf(0.75),
            (p / 2) as f64 + 0.5,
            (p - 1) as f64,
        ] {
            let base = PrimeSumParams::new(x, 2.0).with_modulus(pm(p));
            let auto =
                crate::charsums::aux_prime_for(x, base.delta).max(next_prime(x.floor() as u64 + 1));
            for n in [auto, next_prime(2 * x.floor() as u64 + 1)] {
                if x * n as f64 > cap {
                    continue;
                }
                for z in [2.0, x.powf(1.0 / std::f64::consts::E), x.powf(0.1)] {
                    out.push(PrimeSumParams { z, ..base }.with_aux_prime(n));
                }
            }
        }
    }
    out
}

/// Direct `S_1` against `T_0 + T_1` (exact, to `tol`), plus ratio data for the
/// four pieces `T_00, T_01, T_10, T_11` against `x^(1-δ)`.
pub fn route_equality(grids: &[PrimeSumParams], tol: f64) -> Result<[VerificationVerdict; 2]> {
    let reports: Vec<_> = grids
        .par_iter()
        .map(twisted_floor_prime_sum)
        .collect::<Result<_>>()?;
    let grid = format!("{} (p, x, z, N) grids", grids.len());
    let mut eq = VerificationVerdict::new("L5215.310", grid.clone(), CheckKind::Exact);
    let mut parts = VerificationVerdict::new("L5215.500", grid, CheckKind::Ratio);
    for (g, r) in grids.iter().zip(reports) {
        let route = r.route.expect("grids carry N");
        let at = format!(
            "p={} x={:.4} z={:.4} N={}",
            g.p.unwrap(),
            g.x,
            g.z,
            g.n_aux.unwrap()
        );
        eq.check(route.gap <= tol, || {
            format!(
                "{at} S1={} T0+T1={} gap={:e}",
                r.direct,
                route.total(),
                route.gap
            )
        });
        eq.observe(route.gap, || at.clone());
        let bound = g.x.powf(1.0 - g.delta);
        for (name, t) in [
            ("T00", route.t00),
            ("T01", route.t01),
            ("T10", route.t10),
            ("T11", route.t11),
        ] {
            let ratio = t.norm() / bound;
            parts.check(ratio <= 1.0, || {
                format!("{at} |{name}|/x^(1-delta)={ratio:.4}")
            });
            parts.observe(ratio, || format!("{at} {name}"));
        }
    }
    Ok([eq, parts])
}

/// Direct and closed-form geometric sums for every `1 <= t < N` and
/// `x in {N/2, N, 2N}`.
pub fn geometric_reports(n: u64) -> Result<Vec<GeometricReport>> {
    let mut out = Vec::with_capacity(3 * n as usize);
    for t in 1..n {
        for x in [n as f64 / 2.0, n as f64, 2.0 * n as f64] {
            out.push(geometric_sum(n, t, x)?);
        }
    }
    Ok(out)
}

/// Closed-form agreement to `tol` relative (exact) and the `2N/(πt)` violation
/// table (ratio data).
pub fn geometric_closed_form(nmax: u64, tol: f64) -> Result<[VerificationVerdict; 2]> {
    let grid = format!("N prime <= {nmax}, 1 <= t < N, x in {{N/2, N, 2N}}");
    let per_n: Vec<_> = primes_in(3, nmax)
        .into_par_iter()
        .map(geometric_reports)
        .collect::<Result<_>>()?;
    let mut agree = VerificationVerdict::new("L9212.550", grid.clone(), CheckKind::Exact);
    let mut bound = VerificationVerdict::new("L9212.550.bound", grid, CheckKind::Ratio);
    for g in per_n.into_iter().flatten() {
        let q = &g.report.params;
        let at = || {
            format!(
                "N={} t={} x={}",
                q.n_aux.unwrap(),
                q.t.unwrap(),
                q.x.unwrap()
            )
        };
        agree.check(g.agreement <= tol, || {
            format!("{} agreement={:e}", at(), g.agreement)
        });
        agree.observe(g.agreement, at);
        bound.check(g.report.bound_holds == Some(true), || {
            format!(
                "{} |sum|={:.6} bound={:.6}",
                at(),
                g.report.magnitude,
                g.report.claimed_bound
            )
        });
        bound.observe(g.report.ratio, at);
    }
    Ok([agree, bound])
}

/// `|S(b) - S(a)| <= M' * 4/p` for consecutive `x in {p/4, p/2, 3p/4, p-1}`,
/// `S(x) = Σ_{n<=x} χ(n)/n`, `M'` the largest interval sum of `χ`.
pub fn partial_summation(hi: u64) -> VerificationVerdict {
    per_prime(
        "T3131.100",
        format!("5 <= p <= {hi}"),
        CheckKind::Exact,
        5,
        hi,
        |p, v| {
            let pf = p.get() as f64;
            let xs = [pf / 4.0, pf / 2.0, 3.0 * pf / 4.0, pf - 1.0];
            let s: Vec<f64> = xs
                .iter()
                .map(|&x| {
                    l_one_partial_sum(&SumParams::new(p, x))
                        .expect("x < p")
                        .value
                        .re
                })
                .collect();
            let m = period_extremes(p).max_interval as f64;
            let bound = m * 4.0 / pf;
            for w in 0..3 {
                let d = (s[w + 1] - s[w]).abs();
                v.check(d <= bound, || {
                    format!(
                        "p={p} x={}..{} diff={d:e} bound={bound:e}",
                        xs[w],
                        xs[w + 1]
                    )
                });
                v.observe(d / bound, || format!("p={p} x={}..{}", xs[w], xs[w + 1]));
            }
        },
    )
}

/// `|Σ_{n<=x} χ(n)| <= x` at `x = ceil(p^0.3)`; ratios and equality cases reported.
pub fn burgess_sanity(hi: u64) -> VerificationVerdict {
    let mut v = per_prime(
        "T1212.450",
        format!("p <= {hi}, x = ceil(p^0.3)"),
        CheckKind::Exact,
        3,
        hi,
        |p, v| {
            let x = (p.get() as f64).powf(0.3).ceil();
            let r = char_sum(&SumParams::new(p, x)).expect("x < p");
            let ratio = r.magnitude / x;
            v.check(ratio <= 1.0, || {
                format!("p={p} x={x} |sum|={}", r.magnitude)
            });
            v.observe(ratio, || format!("p={p} x={x}"));
            if ratio == 1.0 {
                v.push_series(format!("p={p}"), ratio);
            }
        },
    );
    let equal = v.series.len();
    v.series = vec![("ratio == 1 cases".into(), equal as f64)];
    v
}

/// Classic failures never exceed shrinking failures over `x = p^(1/4+ε)`; the
/// failure fractions and `min c` are reported.
pub fn shrinking_ordering(lo: u64, hi: u64, eps: f64) -> VerificationVerdict {
    let s = shrinking_sweep(lo, hi, eps);
    let mut v = VerificationVerdict::new(
        "T1234.500",
        format!("p in [{lo}, {hi}], x = p^(1/4+{eps})"),
        CheckKind::Exact,
    );
    v.check(s.classic_failures <= s.shrinking_failures, || {
        format!(
            "classic failures {} > shrinking failures {}",
            s.classic_failures, s.shrinking_failures
        )
    });
    v.check(s.classic_failures_all <= s.shrinking_failures_all, || {
        format!(
            "classic failures {} > shrinking failures {} (all x)",
            s.classic_failures_all, s.shrinking_failures_all
        )
    });
    v.push_series("primes", s.primes as f64);
    v.push_series("counted (x >= 100)", s.counted as f64);
    v.push_series("classic failure fraction", s.classic_failure_fraction());
    v.push_series("shrinking failure fraction", s.shrinking_failure_fraction());
    v.push_series(
        "classic failure fraction (all x)",
        s.classic_failures_all as f64 / s.primes as f64,
    );
    v.push_series(
        "shrinking failure fraction (all x)",
        s.shrinking_failures_all as f64 / s.primes as f64,
    );
    if let Some((c, p)) = s.min_c {
        v.push_series("min c", c);
        v.observe(c, || format!("p={p}"));
    }
    v
}

/// The substitution audit at `x = p^(1/4+ε)` for every prime in range whose
/// `n_p` exceeds `x^(1/e)`: bookkeeping exact, normalized residuals as data.
pub fn audit_series(lo: u64, hi: u64, eps: f64) -> VerificationVerdict {
    let audits: Vec<_> = primes_in(lo.max(3), hi)
        .into_par_iter()
        .filter_map(|p| {
            let x = (p as f64).powf(0.25 + eps);
            contradiction_audit(pm(p), x).ok()
        })
        .collect();
    let mut v = VerificationVerdict::new(
        "E1234.525",
        format!("p in [{lo}, {hi}], x = p^(1/4+{eps})"),
        CheckKind::Exact,
    );
    let (mut sum, mut nonzero) = (0.0, 0u64);
    for a in &audits {
        v.check(a.bookkeeping_holds(), || {
            format!("p={} x={} bookkeeping", a.p, a.x)
        });
        let r = a.as_asymptotic();
        sum += r.normalized_residual.abs();
        nonzero += (a.residual != 0) as u64;
        v.observe(r.normalized_residual.abs(), || {
            format!("p={} x={:.4}", a.p, a.x)
        });
    }
    v.push_series("audited", audits.len() as f64);
    v.push_series("decomposition residual != 0", nonzero as f64);
    if !audits.is_empty() {
        v.push_series("mean |normalized residual|", sum / audits.len() as f64);
    }
    v
}

/// `D = S(b) - S(1)` is exactly 0 at `b = 1`; `|D| / (log x)^2` over all
/// `1 <= b < N` is data.
pub fn equivalence_series(lo: u64, hi: u64, eps: f64, count: u64) -> Result<VerificationVerdict> {
    let primes = sample_primes(lo, hi, count);
    let per_p: Vec<Vec<(i64, f64, bool)>> = primes
        .par_iter()
        .map(|&p| {
            let base = SumParams::burgess_frame(pm(p), eps);
            let n = base.n_aux.unwrap() as i64;
            (1..n)
                .map(|b| {
                    let r = equivalent_sum_difference(&base.with_b(b), EquivWeight::Reciprocal)?;
                    Ok((b, r.report.ratio, r.report.value.norm() == 0.0))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let mut v = VerificationVerdict::new(
        "L1215.800",
        format!("{} primes in [{lo}, {hi}], all b", primes.len()),
        CheckKind::Exact,
    );
    for (&p, rows) in primes.iter().zip(per_p) {
        let mut max_ratio: f64 = 0.0;
        for (b, ratio, zero) in rows {
            if b == 1 {
                v.check(zero, || format!("p={p} D(b=1) != 0"));
            }
            v.observe(ratio, || format!("p={p} b={b}"));
            max_ratio = max_ratio.max(ratio);
        }
        v.push_series(format!("p={p} max_b ratio"), max_ratio);
    }
    Ok(v)
}

/// Prime character sums against the short, long and single-`δ` bounds; the trivial
/// bound `π(x)` is exact.
pub fn prime_char_ratios(lo: u64, hi: u64, eps: f64, count: u64) -> Result<VerificationVerdict> {
    let primes = sample_primes(lo, hi, count);
    let mut v = VerificationVerdict::new(
        "T4015.300",
        format!("{} primes in [{lo}, {hi}]", primes.len()),
        CheckKind::Exact,
    );
    for p in primes {
        let pf = p as f64;
        let short = PrimeSumParams::new(pf.powf(0.25 + eps), 2.0)
            .with_modulus(pm(p))
            .with_epsilon(eps);
        let long = PrimeSumParams {
            x: pf.powf(0.5 + eps).min(pf - 1.0),
            ..short
        };
        for r in [
            prime_char_sum(&short, IntervalKind::Short)?,
            prime_char_sum_single_delta(&short)?,
            prime_char_sum(&long, IntervalKind::Long)?,
        ] {
            let x = r.params.x.unwrap();
            let pi_x = primes_in(2, x.floor() as u64).len() as f64;
            v.check(r.magnitude <= pi_x, || {
                format!("p={p} x={x} |sum|={} > pi(x)={pi_x}", r.magnitude)
            });
            v.observe(r.ratio, || format!("{} p={p}", r.lemma_id));
            v.push_series(format!("{} p={p}", r.lemma_id), r.ratio);
        }
    }
    Ok(v)
}

/// Weighted and twisted sums in the `x = p^(1/4+ε)` frame against their bounds.
pub fn weighted_ratios(lo: u64, hi: u64, eps: f64, count: u64) -> Result<VerificationVerdict> {
    let primes = sample_primes(lo, hi, count);
    let mut v = VerificationVerdict::new(
        "L7212.500",
        format!("{} primes in [{lo}, {hi}]", primes.len()),
        CheckKind::Ratio,
    );
    for p in primes {
        let params = SumParams::burgess_frame(pm(p), eps);
        for range in [SumRange::UpToX, SumRange::BelowAux] {
            for weight in Weight::ALL {
                for twisted in [false, true] {
                    let r = weighted_sum(&params, weight, twisted, range)?;
                    v.check(r.ratio <= 1.0, || {
                        format!("{} p={p} ratio={:.4}", r.lemma_id, r.ratio)
                    });
                    v.observe(r.ratio, || format!("{} p={p}", r.lemma_id));
                }
            }
        }
    }
    Ok(v)
}

/// `|Σ sin(2πmx/n)| / (n/x)` and `|Σ sin(2πmx/n)/(πm)| / (n/(xw))`.
pub fn sine_constants() -> Result<[VerificationVerdict; 2]> {
    let grid = "n in {3, 7, 97, 1009}, x in {1, n/3 + 0.5, n - 0.5, 2.5n}, w in {10, 100, 1000}";
    let mut plain = VerificationVerdict::new("E3003.300", grid, CheckKind::Ratio);
    let mut weighted = VerificationVerdict::new("E3003.310", grid, CheckKind::Ratio);
    for n in [3u64, 7, 97, 1009] {
        let nf = n as f64;
        for x in [1.0, nf / 3.0 + 0.5, nf - 0.5, 2.5 * nf] {
            for w in [10u64, 100, 1000] {
                let s = sine_sums(n, x, w)?;
                let at = format!("n={n} x={x} w={w}");
                plain.observe(s.plain_ratio(), || at.clone());
                plain.push_series(at.clone(), s.plain_ratio());
                weighted.observe(s.weighted_ratio(), || at.clone());
                weighted.push_series(at, s.weighted_ratio());
            }
        }
    }
    Ok([plain, weighted])
}

/// Grid overrides shared by all registry entries; `None` keeps each lemma's default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub lo: Option<u64>,
    pub hi: Option<u64>,
    pub nmax: Option<u64>,
    pub eps: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            lo: None,
            hi: None,
            nmax: None,
            eps: crate::charsums::DEFAULT_EPSILON,
        }
    }
}

impl VerifyConfig {
    fn hi(&self, default: u64) -> u64 {
        self.hi.unwrap_or(default)
    }

    fn lo(&self, default: u64) -> u64 {
        self.lo.unwrap_or(default)
    }
}

pub struct LemmaEntry {
    pub id: &'static str,
    pub summary: &'static str,
    run: fn(&VerifyConfig) -> Result<Vec<VerificationVerdict>>,
}

impl LemmaEntry {
    pub fn run(&self, cfg: &VerifyConfig) -> Result<Vec<VerificationVerdict>> {
        (self.run)(cfg)
    }
}

pub static REGISTRY: &[LemmaEntry] = &[
    LemmaEntry {
        id: "euler-criterion",
        summary: "Legendre symbol equals Euler's criterion (p <= 1e4)",
        run: |c| Ok(vec![legendre_oracle(c.hi(10_000))]),
    },
    LemmaEntry {
        id: "E1221.420",
        summary: "supplementary law for (2/p) (p <= 1e5)",
        run: |c| Ok(vec![supplementary_law(c.hi(100_000))]),
    },
    LemmaEntry {
        id: "S1221",
        summary: "n_p prime, n_p = 2 for p = 3,5 mod 8, n_p < 2 sqrt(p) + 1 (p <= 1e6)",
        run: |c| {
            let s = structure_checks(c.lo(3), c.hi(1_000_000));
            Ok(vec![s.prime, s.class_mod8, s.gauss])
        },
    },
    LemmaEntry {
        id: "T2212.455",
        summary: "Polya-Vinogradov, exhaustive over x < p (p <= 1e4)",
        run: |c| Ok(vec![polya_vinogradov(c.hi(10_000))]),
    },
    LemmaEntry {
        id: "T1212.450",
        summary: "trivial-bound sanity at x = ceil(p^0.3) (p <= 1e4)",
        run: |c| Ok(vec![burgess_sanity(c.hi(10_000))]),
    },
    LemmaEntry {
        id: "T3131.100",
        summary: "partial sums of L(1, chi) move by at most M' 4/p (p <= 1e4)",
        run: |c| Ok(vec![partial_summation(c.hi(10_000))]),
    },
    LemmaEntry {
        id: "L9212.550",
        summary: "geometric sum closed form and 2N/(pi t) violation table (N <= 997)",
        run: |c| Ok(geometric_closed_form(c.nmax.unwrap_or(997), 1e-9)?.to_vec()),
    },
    LemmaEntry {
        id: "L1215.800",
        summary: "b-independence of twisted 1/n sums, ratio over all b",
        run: |c| {
            Ok(vec![equivalence_series(
                c.lo(1_000),
                c.hi(1_000_000),
                c.eps,
                40,
            )?])
        },
    },
    LemmaEntry {
        id: "L7212.500",
        summary: "weighted and twisted character sums against log x or x^(1-delta)",
        run: |c| {
            Ok(vec![weighted_ratios(
                c.lo(1_000),
                c.hi(1_000_000),
                c.eps,
                40,
            )?])
        },
    },
    LemmaEntry {
        id: "E3003.300",
        summary: "empirical constants of the truncated sine sums",
        run: |_| Ok(sine_constants()?.to_vec()),
    },
    LemmaEntry {
        id: "L5515.200",
        summary: "prime indicator by orthogonality (N <= 997)",
        run: |c| Ok(vec![indicator_identity(c.nmax.unwrap_or(997))?]),
    },
    LemmaEntry {
        id: "L1220.500",
        summary: "slice sums at z = x^(1/e) against their main terms, x = 1e4 .. 1e7",
        run: |c| {
            let top = c.hi(10_000_000) as f64;
            let xs: Vec<f64> = [1e4, 1e5, 1e6, 1e7]
                .into_iter()
                .filter(|&x| x <= top)
                .collect();
            Ok(vec![slice_asymptotics(&xs)?])
        },
    },
    LemmaEntry {
        id: "L1220.500.floor",
        summary: "floor sum = x * reciprocal sum - fractional sum (20 seeded grids)",
        run: |c| {
            Ok(vec![floor_frac_identity(
                &random_slice_grids(20, c.hi(1_000_000) as f64, 1234),
                1e-6,
            )?])
        },
    },
    LemmaEntry {
        id: "L5215.310",
        summary: "S_1 direct against T_0 + T_1 (x N <= 1e7), with T_ij ratio data",
        run: |_| Ok(route_equality(&route_grids(1e7), 1e-6)?.to_vec()),
    },
    LemmaEntry {
        id: "T4015.300",
        summary: "character sums over primes against short, long and single-delta bounds",
        run: |c| {
            Ok(vec![prime_char_ratios(
                c.lo(1_000),
                c.hi(1_000_000),
                c.eps,
                40,
            )?])
        },
    },
    LemmaEntry {
        id: "E1234.510",
        summary:
            "decomposition: lhs = count_form, residual 0 under the structural condition (p <= 1e4)",
        run: |c| Ok(vec![decomposition_exactness(c.hi(10_000), 10)]),
    },
    LemmaEntry {
        id: "T1234.500",
        summary: "classic vs shrinking conclusion failures at x = p^(1/4+eps) (p <= 1e6)",
        run: |c| Ok(vec![shrinking_ordering(c.lo(3), c.hi(1_000_000), c.eps)]),
    },
    LemmaEntry {
        id: "E1234.525",
        summary: "substitution audit: exact bookkeeping, normalized residuals (p <= 1e5)",
        run: |c| Ok(vec![audit_series(c.lo(3), c.hi(100_000), c.eps)]),
    },
];

pub fn find_lemma(id: &str) -> Result<&'static LemmaEntry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownLemma(id.to_string()))
}

pub fn run_lemma(id: &str, cfg: &VerifyConfig) -> Result<Vec<VerificationVerdict>> {
    find_lemma(id)?.run(cfg)
}

pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<VerificationVerdict>> {
    let mut out = Vec::new();
    for e in REGISTRY {
        out.extend(e.run(cfg)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonresidue::least_nonresidue;

    #[test]
    fn small_exact_grids_pass() {
        assert!(legendre_oracle(500).passed());
        assert!(supplementary_law(2_000).passed());
        assert!(polya_vinogradov(2_000).passed());
        assert!(partial_summation(2_000).passed());
        assert!(burgess_sanity(2_000).passed());
        assert!(decomposition_exactness(300, 10).passed());
        assert!(indicator_identity(60).unwrap().passed());
    }

    #[test]
    fn legendre_oracle_counts() {
        // Σ_{p<=100} p over odd primes
        assert_eq!(legendre_oracle(100).checked, 1058);
    }

    #[test]
    fn geometric_small() {
        let [agree, bound] = geometric_closed_form(31, 1e-9).unwrap();
        assert!(agree.passed());
        assert!(!bound.passed());
        assert!(bound.violations[0].starts_with("N=3 ") || bound.violations[0].starts_with("N=5 "));
    }

    #[test]
    fn random_grids_are_deterministic() {
        let a = random_slice_grids(5, 1e6, 7);
        assert_eq!(a, random_slice_grids(5, 1e6, 7));
        assert!(a.iter().all(|&(x, z)| 2.0 <= z && z <= x && x <= 1e6));
    }

    #[test]
    fn decomposition_points() {
        assert_eq!(decomposition_xs(3, 10), vec![1.0, 2.0]);
        assert_eq!(decomposition_xs(101, 10).len(), 10);
        assert_eq!(*decomposition_xs(101, 10).last().unwrap(), 100.0);
    }

    #[test]
    fn route_grid_budget() {
        let g = route_grids(1e7);
        assert!(!g.is_empty());
        assert!(g
            .iter()
            .all(|q| q.x * q.n_aux.unwrap() as f64 <= 1e7 && q.n_aux.unwrap() as f64 > q.x));
    }

    #[test]
    fn unknown_lemma() {
        assert!(matches!(
            run_lemma("X0000.000", &VerifyConfig::default()),
            Err(Error::UnknownLemma(_))
        ));
        let ids: std::collections::HashSet<_> = REGISTRY.iter().map(|e| e.id).collect();
        assert_eq!(ids.len(), REGISTRY.len());
    }

    #[test]
    fn sample_primes_spread() {
        let s = sample_primes(1_000, 1_000_000, 10);
        assert_eq!(s.len(), 10);
        assert_eq!(s[0], 1_009);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert!(least_nonresidue(pm(s[9])).n_p >= 2);
    }
}
