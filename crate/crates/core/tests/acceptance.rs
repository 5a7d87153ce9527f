//! The twelve acceptance criteria, each at its stated tolerance. Prints one
//! PASS/FAIL line per criterion. The process fails on any FAIL that is not in
//! `KNOWN_FAILING`; those are reported as FAIL all the same.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nrlab::arith::{PrimeModulus, PrimeRange};
use nrlab::dossier::dossier;
use nrlab::nonresidue::structure_checks;
use nrlab::primesums::{frac_part_prime_sum, mertens_slice, PrimeSumParams, EULER_GAMMA};
use nrlab::report::{render, Format};
use nrlab::shrinking::decompose;
use nrlab::verify::{
    decomposition_xs, floor_frac_identity, geometric_closed_form, indicator_identity,
    legendre_oracle, polya_vinogradov, random_slice_grids, route_equality, route_grids,
    supplementary_law,
};

/// Criteria that do not hold at the stated scale and tolerance.
const KNOWN_FAILING: &[u32] = &[7];

struct Outcome {
    pass: bool,
    detail: String,
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!("{} [{:.2}s", o.detail, elapsed.as_secs_f64());
    if let Some(b) = budget {
        o.detail.push_str(&format!(" of {}s", b.as_secs()));
        o.pass &= elapsed < b;
    }
    o.detail.push(']');
    o
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(f)
}

fn ac1() -> Outcome {
    let v = single_threaded(|| legendre_oracle(10_000));
    Outcome {
        pass: v.passed() && v.checked == 5_736_394,
        detail: format!(
            "legendre = Euler for p <= 1e4, 0 <= n < p: {} pairs, {} mismatches",
            v.checked, v.violation_count
        ),
    }
}

fn ac2() -> Outcome {
    let v = supplementary_law(100_000);
    Outcome {
        pass: v.passed() && v.checked == 9_591,
        detail: format!(
            "(2/p) = (-1)^((p^2-1)/8) for odd p <= 1e5: {} primes, {} mismatches",
            v.checked, v.violation_count
        ),
    }
}

fn ac3() -> Outcome {
    let s = structure_checks(3, 1_000_000);
    let pass =
        s.prime.passed() && s.class_mod8.passed() && s.gauss.passed() && s.prime.checked == 78_497;
    Outcome {
        pass,
        detail: format!(
            "p <= 1e6: n_p prime {}/{}, n_p = 2 on 3,5 mod 8 {}/{}, n_p < 2 sqrt(p) + 1 {}/{}",
            s.prime.checked - s.prime.violation_count,
            s.prime.checked,
            s.class_mod8.checked - s.class_mod8.violation_count,
            s.class_mod8.checked,
            s.gauss.checked - s.gauss.violation_count,
            s.gauss.checked
        ),
    }
}

fn ac4() -> Outcome {
    let v = polya_vinogradov(10_000);
    let worst = v.worst.as_ref().unwrap();
    Outcome {
        pass: v.passed(),
        detail: format!(
            "max |sum| <= sqrt(p) log p for p <= 1e4: worst ratio {:.6} at {}",
            worst.ratio, worst.at
        ),
    }
}

fn ac5() -> Outcome {
    match indicator_identity(997) {
        Ok(v) => Outcome {
            pass: v.passed(),
            detail: format!(
                "prime indicator, N prime <= 997: {} checks, {} violations",
                v.checked, v.violation_count
            ),
        },
        Err(e) => Outcome {
            pass: false,
            detail: e.to_string(),
        },
    }
}

fn ac6() -> Outcome {
    let r = mertens_slice(&PrimeSumParams::shrinking_cutoff(1e6)).unwrap();
    Outcome {
        pass: (r.exact - 1.0).abs() <= 0.05,
        detail: format!(
            "sum 1/q over x^(1/e) <= q <= 1e6 = {:.6}, |. - 1| = {:.6} <= 0.05",
            r.exact,
            (r.exact - 1.0).abs()
        ),
    }
}

fn ac7() -> Outcome {
    let p = PrimeSumParams::shrinking_cutoff(1e7);
    let r = frac_part_prime_sum(&p).unwrap();
    let ratio = r.exact / (p.x / p.x.ln() - p.z / p.z.ln());
    let target = 1.0 - EULER_GAMMA;
    let rel = ratio / target - 1.0;
    Outcome {
        pass: rel.abs() <= 0.05,
        detail: format!("x = 1e7: frac sum / (x/log x - z/log z) = {ratio:.6} vs 1 - gamma = {target:.6}, relative {:+.4} (tolerance 0.05)", rel),
    }
}

fn ac8() -> Outcome {
    let grids = random_slice_grids(20, 1e6, 1234);
    let v = floor_frac_identity(&grids, 1e-6).unwrap();
    Outcome {
        pass: v.passed() && v.checked == 20,
        detail: format!(
            "floor = x * mertens - frac on 20 seeded grids: worst gap {:e}",
            v.worst.as_ref().unwrap().ratio
        ),
    }
}

fn ac9() -> Outcome {
    let (mut checked, mut bad) = (0u64, 0u64);
    for p in PrimeRange::new(3, 10_000) {
        let m = PrimeModulus::new(p).unwrap();
        for x in decomposition_xs(p, 10) {
            let d = decompose(m, x, x.powf(1.0 / std::f64::consts::E)).unwrap();
            checked += 1;
            bad += (d.lhs != d.count_form) as u64;
        }
    }
    Outcome {
        pass: bad == 0,
        detail: format!(
            "lhs = count_form for p <= 1e4, 10 x per p: {checked} cases, {bad} mismatches"
        ),
    }
}

fn ac10() -> Outcome {
    let grids = route_grids(1e7);
    let [eq, _] = route_equality(&grids, 1e-6).unwrap();
    Outcome {
        pass: eq.passed() && eq.checked == grids.len() as u64,
        detail: format!(
            "S_1 direct vs T_0 + T_1 on {} grids with x N <= 1e7: worst gap {:e}",
            eq.checked,
            eq.worst.as_ref().unwrap().ratio
        ),
    }
}

fn ac11() -> Outcome {
    let [agree, bound] = geometric_closed_form(997, 1e-9).unwrap();
    Outcome {
        pass: agree.passed(),
        detail: format!(
            "geometric closed form, {} grids: worst relative gap {:e}; 2N/(pi t) violated on {} grids (reported)",
            agree.checked,
            agree.worst.as_ref().unwrap().ratio,
            bound.violation_count
        ),
    }
}

fn ac12() -> Outcome {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| dossier(1_000, 1_000_000, 0.1))
    };
    let (a, b) = match (run(1), run(4)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            return Outcome {
                pass: false,
                detail: e.to_string(),
            }
        }
    };
    let bytes_a = render(&a, Format::Csv).unwrap();
    let bytes_b = render(&b, Format::Csv).unwrap();
    let populated = a
        .iter()
        .all(|r| r.ratio.is_finite() && r.claimed_bound > 0.0);
    Outcome {
        pass: bytes_a == bytes_b && populated && a.len() == 4 * 78_330,
        detail: format!(
            "dossier p in [1e3, 1e6], eps = 0.1: {} rows, {} bytes, identical across 1 and 4 threads: {}, ratios populated: {populated}",
            a.len(),
            bytes_a.len(),
            bytes_a == bytes_b
        ),
    }
}

/// Number, runtime budget in seconds, check.
type Criterion = (u32, Option<u64>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        (1, Some(30), ac1),
        (2, None, ac2),
        (3, Some(120), ac3),
        (4, None, ac4),
        (5, None, ac5),
        (6, None, ac6),
        (7, Some(60), ac7),
        (8, None, ac8),
        (9, None, ac9),
        (10, None, ac10),
        (11, None, ac11),
        (12, None, ac12),
    ];
    let mut unexpected = Vec::new();
    for (id, budget, f) in criteria {
        let o = timed(budget.map(Duration::from_secs), f);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if !o.pass && KNOWN_FAILING.contains(&id) {
            " (known failing)"
        } else {
            ""
        };
        println!("[{tag}] AC{id}{note}: {}", o.detail);
        if !o.pass && !KNOWN_FAILING.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
