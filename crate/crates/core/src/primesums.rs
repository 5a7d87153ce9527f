//! Sums over primes: the von Mangoldt function, the additive-character prime
//! indicator, Mertens-type slices `z <= q <= x`, and character sums over primes.

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{is_prime, legendre, PrimeModulus, PrimeRange};
use crate::charsums::{delta_from_epsilon, frac_ratio, DeltaRule, SumReport, DEFAULT_EPSILON};
use crate::error::{Error, Result};
use crate::report::{ReportParams, SumRow};
use crate::summation::{ComplexSum, Neumaier, UnitRoots};

/// Euler's constant to 16 significant digits.
pub const EULER_GAMMA: f64 = 0.5772156649015329;

/// Operation cap for the indicator-rewrite route (`x * N`).
pub const REWRITE_COST_CAP: u128 = 1_000_000_000;

fn integer_root(n: u64, k: u32) -> u64 {
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    let pow = |b: u64| (b as u128).checked_pow(k).unwrap_or(u128::MAX);
    while r > 0 && pow(r) > n as u128 {
        r -= 1;
    }
    while pow(r + 1) <= n as u128 {
        r += 1;
    }
    r
}

/// `Λ(n)`: `log q` if `n = q^k` for a prime `q` and `k >= 1`, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    if is_prime(n) {
        return (n as f64).ln();
    }
    for k in 2..=(64 - n.leading_zeros()) {
        let r = integer_root(n, k);
        if r < 2 {
            break;
        }
        if (r as u128).pow(k) == n as u128 && is_prime(r) {
            return (r as f64).ln();
        }
    }
    0.0
}

fn check_indicator_domain(n: u64, x: f64, big_n: u64) -> Result<()> {
    if !is_prime(big_n) {
        return Err(Error::Domain(format!("N = {big_n} is not prime")));
    }
    if !(x >= 1.0) || x >= big_n as f64 {
        return Err(Error::Domain(format!(
            "need 1 <= x < N (x = {x}, N = {big_n})"
        )));
    }
    if n == 0 || n >= big_n {
        return Err(Error::Domain(format!(
            "need 1 <= n < N (n = {n}, N = {big_n})"
        )));
    }
    Ok(())
}

/// The indicator for every `0 <= n < N` at once: `(1/N) Σ_{q<=x} Σ_{0<=a<N} e^{2πi a(q-n)/N}`
/// by orthogonality, where the inner sum is `N` exactly when `q = n (mod N)`.
/// Each entry is cross-checked against primality.
pub fn prime_indicator_table(x: f64, big_n: u64) -> Result<Vec<u8>> {
    check_indicator_domain(1, x, big_n)?;
    let mut hits = vec![0u64; big_n as usize];
    for q in PrimeRange::new(2, x.floor() as u64) {
        hits[(q % big_n) as usize] += big_n;
    }
    hits.iter()
        .enumerate()
        .map(|(n, &h)| {
            let value = h / big_n;
            let expected = (n >= 1 && n as f64 <= x && is_prime(n as u64)) as u64;
            if value != expected {
                return Err(Error::IdentityViolation(format!(
                    "indicator({n}; x = {x}, N = {big_n}) = {value}, primality says {expected}"
                )));
            }
            Ok(value as u8)
        })
        .collect()
}

/// Single entry of [`prime_indicator_table`]; requires `1 <= n < N`.
pub fn prime_indicator(n: u64, x: f64, big_n: u64) -> Result<u8> {
    check_indicator_domain(n, x, big_n)?;
    Ok(prime_indicator_table(x, big_n)?[n as usize])
}

/// The `log q`-weighted indicator: `log n` when `n <= x` is prime, else 0.
pub fn weighted_prime_indicator(n: u64, x: f64, big_n: u64) -> Result<f64> {
    Ok(prime_indicator(n, x, big_n)? as f64 * (n as f64).ln())
}

/// Prime exponential sums `P(a) = Σ_{q<=x} e^{2πi a q/N}` for `0 <= a < N`.
fn prime_exponential_sums(x: u64, roots: &UnitRoots) -> Vec<Complex64> {
    let primes: Vec<u64> = PrimeRange::new(2, x).collect();
    (0..roots.modulus() as i64)
        .map(|a| {
            primes
                .iter()
                .map(|&q| roots.pow(a, q))
                .collect::<ComplexSum>()
                .value()
        })
        .collect()
}

/// The indicator for every `1 <= n <= x` by explicit complex summation over `a`.
/// Entry `n - 1` should be numerically `1` or `0`.
pub fn prime_indicator_numeric(x: f64, big_n: u64) -> Result<Vec<Complex64>> {
    check_indicator_domain(1, x, big_n)?;
    let roots = UnitRoots::new(big_n);
    let xf = x.floor() as u64;
    let pa = prime_exponential_sums(xf, &roots);
    let inv = 1.0 / big_n as f64;
    Ok((1..=xf)
        .map(|n| {
            let s: ComplexSum = pa
                .iter()
                .enumerate()
                .map(|(a, &p)| p * roots.pow(-(a as i64), n))
                .collect();
            s.value() * inv
        })
        .collect())
}

/// Parameters for sums over primes in `z <= q <= x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrimeSumParams {
    pub p: Option<PrimeModulus>,
    pub x: f64,
    pub z: f64,
    pub n_aux: Option<u64>,
    pub epsilon: f64,
    pub delta: f64,
}

impl PrimeSumParams {
    pub fn new(x: f64, z: f64) -> Self {
        PrimeSumParams {
            p: None,
            x,
            z,
            n_aux: None,
            epsilon: DEFAULT_EPSILON,
            delta: delta_from_epsilon(DEFAULT_EPSILON, DeltaRule::Exact),
        }
    }

    /// `z = x^(1/e)`.
    pub fn shrinking_cutoff(x: f64) -> Self {
        Self::new(x, x.powf((-1.0f64).exp()))
    }

    pub fn with_modulus(mut self, p: PrimeModulus) -> Self {
        self.p = Some(p);
        self
    }

    pub fn with_aux_prime(mut self, n: u64) -> Self {
        self.n_aux = Some(n);
        self
    }

    pub fn with_epsilon(mut self, eps: f64) -> Self {
        self.epsilon = eps;
        self.delta = delta_from_epsilon(eps, DeltaRule::Exact);
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn floor_x(&self) -> u64 {
        self.x.floor() as u64
    }

    /// Primes `q` with `z <= q <= x`.
    pub fn primes(&self) -> PrimeRange {
        PrimeRange::new(self.z.ceil().max(0.0) as u64, self.floor_x())
    }

    fn check_slice(&self) -> Result<()> {
        if !(self.z >= 2.0) || self.z > self.x {
            return Err(Error::Domain(format!(
                "need 2 <= z <= x (z = {}, x = {})",
                self.z, self.x
            )));
        }
        Ok(())
    }

    fn modulus(&self) -> Result<PrimeModulus> {
        let p = self
            .p
            .ok_or_else(|| Error::Domain("modulus p is required".into()))?;
        if !(self.x >= 1.0) || self.x >= p.get() as f64 {
            return Err(Error::Domain(format!(
                "need 1 <= x < p (x = {}, p = {p})",
                self.x
            )));
        }
        Ok(p)
    }

    pub fn report_params(&self) -> ReportParams {
        ReportParams {
            p: self.p.map(|m| m.get()),
            x: Some(self.x),
            z: Some(self.z),
            n_aux: self.n_aux,
            eps: Some(self.epsilon),
            delta: Some(self.delta),
            ..Default::default()
        }
    }
}

/// Exact value against an asymptotic main term and its error scale.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub lemma_id: String,
    pub exact: f64,
    pub main_term: f64,
    pub predicted_error_scale: f64,
    /// `exact - main_term`
    pub residual: f64,
    /// `residual / predicted_error_scale`
    pub normalized_residual: f64,
    pub params: ReportParams,
}

impl AsymptoticReport {
    pub fn new(
        lemma_id: impl Into<String>,
        exact: f64,
        main_term: f64,
        scale: f64,
        params: ReportParams,
    ) -> Self {
        let residual = exact - main_term;
        AsymptoticReport {
            lemma_id: lemma_id.into(),
            exact,
            main_term,
            predicted_error_scale: scale,
            residual,
            normalized_residual: residual / scale,
            params,
        }
    }

    /// Sum-report row: `re` is the exact value, `magnitude` the absolute residual,
    /// `claimed_bound` the error scale, `ratio` the absolute normalized residual.
    pub fn row(&self) -> SumRow {
        SumRow {
            lemma_id: self.lemma_id.clone(),
            params: self.params,
            re: self.exact,
            im: 0.0,
            magnitude: self.residual.abs(),
            claimed_bound: self.predicted_error_scale,
            ratio: self.normalized_residual.abs(),
        }
    }
}

/// The three slice sums over `z <= q <= x`, from one pass over the primes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceSums {
    pub primes: u64,
    /// `Σ [x/q]`
    pub floor_sum: u64,
    /// `Σ 1/q`
    pub reciprocal_sum: f64,
    /// `Σ {x/q}`
    pub frac_sum: f64,
}

pub fn slice_sums(params: &PrimeSumParams) -> SliceSums {
    let xf = params.floor_x();
    let (mut primes, mut floor_sum) = (0u64, 0u64);
    let mut recip = Neumaier::new();
    let mut frac = Neumaier::new();
    for q in params.primes() {
        primes += 1;
        floor_sum += xf / q;
        recip.add(1.0 / q as f64);
        frac.add(frac_ratio(params.x, q));
    }
    SliceSums {
        primes,
        floor_sum,
        reciprocal_sum: recip.value(),
        frac_sum: frac.value(),
    }
}

fn log_ratio(params: &PrimeSumParams) -> f64 {
    (params.x.ln() / params.z.ln()).ln()
}

fn gamma_term(params: &PrimeSumParams) -> f64 {
    (1.0 - EULER_GAMMA) * (params.x / params.x.ln() - params.z / params.z.ln())
}

fn slice_scale(params: &PrimeSumParams) -> f64 {
    params.x / params.x.ln().powi(2)
}

fn floor_report(params: &PrimeSumParams, s: &SliceSums) -> AsymptoticReport {
    let main = params.x * log_ratio(params) - gamma_term(params);
    AsymptoticReport::new(
        "L1220.500",
        s.floor_sum as f64,
        main,
        slice_scale(params),
        params.report_params(),
    )
}

fn mertens_report(params: &PrimeSumParams, s: &SliceSums) -> AsymptoticReport {
    let scale = 1.0 / params.x.ln().powi(2);
    AsymptoticReport::new(
        "E1234.515",
        s.reciprocal_sum,
        log_ratio(params),
        scale,
        params.report_params(),
    )
}

fn frac_report(params: &PrimeSumParams, s: &SliceSums) -> AsymptoticReport {
    AsymptoticReport::new(
        "E1234.520",
        s.frac_sum,
        gamma_term(params),
        slice_scale(params),
        params.report_params(),
    )
}

/// `S_0(x) = Σ_{z<=q<=x} [x/q]` against `x log(log x/log z) - (1-γ)(x/log x - z/log z)`.
pub fn floor_weight_prime_sum(params: &PrimeSumParams) -> Result<AsymptoticReport> {
    params.check_slice()?;
    Ok(floor_report(params, &slice_sums(params)))
}

/// `Σ_{z<=q<=x} 1/q` against `log(log x / log z)`.
pub fn mertens_slice(params: &PrimeSumParams) -> Result<AsymptoticReport> {
    params.check_slice()?;
    Ok(mertens_report(params, &slice_sums(params)))
}

/// `Σ_{z<=q<=x} {x/q}` against `(1-γ)(x/log x - z/log z)`.
pub fn frac_part_prime_sum(params: &PrimeSumParams) -> Result<AsymptoticReport> {
    params.check_slice()?;
    Ok(frac_report(params, &slice_sums(params)))
}

/// All three slice reports from a single sieve pass, in the order
/// floor, Mertens, fractional part.
pub fn slice_reports(params: &PrimeSumParams) -> Result<[AsymptoticReport; 3]> {
    params.check_slice()?;
    let s = slice_sums(params);
    Ok([
        floor_report(params, &s),
        mertens_report(params, &s),
        frac_report(params, &s),
    ])
}

/// `S_1` rebuilt through the prime indicator and split as `T_0 + T_1`, with each
/// part further split into its `a = 0` and `a != 0` contributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IndicatorRoute {
    pub t0: Complex64,
    pub t1: Complex64,
    pub t00: Complex64,
    pub t01: Complex64,
    pub t10: Complex64,
    pub t11: Complex64,
    /// `|T_0 + T_1 - S_1|`
    pub gap: f64,
}

impl IndicatorRoute {
    pub fn total(&self) -> Complex64 {
        self.t0 + self.t1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwistedFloorReport {
    pub report: SumReport,
    /// `S_1` by direct integer summation
    pub direct: i64,
    pub route: Option<IndicatorRoute>,
}

fn indicator_route(
    p: PrimeModulus,
    params: &PrimeSumParams,
    big_n: u64,
    direct: i64,
) -> Result<IndicatorRoute> {
    let xf = params.floor_x();
    if !is_prime(big_n) || big_n as f64 <= params.x {
        return Err(Error::Domain(format!(
            "need a prime N > x (N = {big_n}, x = {})",
            params.x
        )));
    }
    let ops = xf as u128 * big_n as u128;
    if ops > REWRITE_COST_CAP {
        return Err(Error::TooCostly {
            ops,
            cap: REWRITE_COST_CAP,
        });
    }
    let roots = UnitRoots::new(big_n);
    let pa = prime_exponential_sums(xf, &roots);
    let inv_n = 1.0 / big_n as f64;

    let (mut t00, mut t01, mut t10, mut t11) = (
        ComplexSum::new(),
        ComplexSum::new(),
        ComplexSum::new(),
        ComplexSum::new(),
    );
    let n_lo = (params.z.ceil().max(1.0)) as u64;
    for n in n_lo..=xf {
        let c = legendre(n, p).as_f64();
        if c == 0.0 {
            continue;
        }
        let head = pa[0];
        let tail: ComplexSum = pa[1..]
            .iter()
            .enumerate()
            .map(|(i, &s)| s * roots.pow(-(i as i64 + 1), n))
            .collect();
        let tail = tail.value();
        let w0 = params.x * inv_n * c / n as f64;
        let w1 = -inv_n * frac_ratio(params.x, n) * c;
        t00.add(head * w0);
        t01.add(tail * w0);
        t10.add(head * w1);
        t11.add(tail * w1);
    }
    let (t00, t01, t10, t11) = (t00.value(), t01.value(), t10.value(), t11.value());
    let (t0, t1) = (t00 + t01, t10 + t11);
    Ok(IndicatorRoute {
        t0,
        t1,
        t00,
        t01,
        t10,
        t11,
        gap: (t0 + t1 - Complex64::new(direct as f64, 0.0)).norm(),
    })
}

/// `S_1(x) = Σ_{z<=q<=x} [x/q] χ(q)` exactly, against `x^(1-δ)`. When `N` is set the
/// indicator-rewrite route is evaluated as well (cost `O(x N)`, capped).
pub fn twisted_floor_prime_sum(params: &PrimeSumParams) -> Result<TwistedFloorReport> {
    let p = params.modulus()?;
    let xf = params.floor_x();
    let direct: i64 = params
        .primes()
        .map(|q| (xf / q) as i64 * legendre(q, p).as_i64())
        .sum();
    let bound = params.x.powf(1.0 - params.delta);
    let report = SumReport::real("L5215.300", direct as f64, bound, params.report_params());
    let route = match params.n_aux {
        Some(n) => Some(indicator_route(p, params, n, direct)?),
        None => None,
    };
    Ok(TwistedFloorReport {
        report,
        direct,
        route,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntervalKind {
    /// `x >= p^(1/4+ε)`, bound `x^(1-2δ)`
    Short,
    /// `x >= p^(1/2+ε)`, bound `sqrt(p) log p`
    Long,
}

fn prime_char_value(p: PrimeModulus, x: f64) -> i64 {
    if x < 2.0 {
        return 0;
    }
    PrimeRange::new(2, x.floor() as u64)
        .map(|q| legendre(q, p).as_i64())
        .sum()
}

/// `Σ_{q<=x} χ(q)` over primes, against the bound of the chosen interval kind.
pub fn prime_char_sum(params: &PrimeSumParams, kind: IntervalKind) -> Result<SumReport> {
    let p = params
        .p
        .ok_or_else(|| Error::Domain("modulus p is required".into()))?;
    if params.x >= p.get() as f64 {
        return Err(Error::Domain(format!(
            "need x < p (x = {}, p = {p})",
            params.x
        )));
    }
    let v = prime_char_value(p, params.x);
    let pf = p.get() as f64;
    let (id, bound) = match kind {
        IntervalKind::Short => ("T4015.300s", params.x.powf(1.0 - 2.0 * params.delta)),
        IntervalKind::Long => ("T4015.300l", pf.sqrt() * pf.ln()),
    };
    Ok(SumReport::real(id, v as f64, bound, params.report_params()))
}

/// The same sum against `x^(1-δ)`, the exponent shown at the end of the
/// supporting lemma rather than in the theorem.
pub fn prime_char_sum_single_delta(params: &PrimeSumParams) -> Result<SumReport> {
    let r = prime_char_sum(params, IntervalKind::Short)?;
    Ok(SumReport::new(
        "L4015.750",
        r.value,
        params.x.powf(1.0 - params.delta),
        r.params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{euler_criterion, primes_in};

    fn pm(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    #[test]
    fn von_mangoldt_examples() {
        assert!((von_mangoldt(8) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(1), 0.0);
        assert_eq!(von_mangoldt(12), 0.0);
        assert!((von_mangoldt(7) - 7f64.ln()).abs() < 1e-15);
        assert!((von_mangoldt(3u64.pow(40)) - 3f64.ln()).abs() < 1e-15);
        assert!((von_mangoldt(1 << 63) - 2f64.ln()).abs() < 1e-15);
        assert_eq!(von_mangoldt(36), 0.0);
    }

    #[test]
    fn von_mangoldt_sums_to_log_n() {
        // Σ_{d | n} Λ(d) = log n
        for n in 1..2_000u64 {
            let s: f64 = (1..=n).filter(|d| n % d == 0).map(von_mangoldt).sum();
            assert!((s - (n as f64).ln()).abs() < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(prime_indicator(3, 10.0, 11).unwrap(), 1);
        assert_eq!(prime_indicator(4, 10.0, 11).unwrap(), 0);
        assert_eq!(prime_indicator(7, 5.0, 11).unwrap(), 0);
        assert!(matches!(
            prime_indicator(3, 11.0, 11),
            Err(Error::Domain(_))
        ));
        assert!(matches!(prime_indicator(3, 5.0, 12), Err(Error::Domain(_))));
        assert!(matches!(
            prime_indicator(12, 5.0, 11),
            Err(Error::Domain(_))
        ));
        assert!((weighted_prime_indicator(7, 10.0, 11).unwrap() - 7f64.ln()).abs() < 1e-15);
        assert_eq!(weighted_prime_indicator(9, 10.0, 11).unwrap(), 0.0);
    }

    #[test]
    fn numeric_indicator_rounds_to_primality() {
        let v = prime_indicator_numeric(96.0, 97).unwrap();
        for (i, z) in v.iter().enumerate() {
            let n = i as u64 + 1;
            let want = is_prime(n) as u8 as f64;
            assert!(
                (z.re - want).abs() < 1e-9 && z.im.abs() < 1e-9,
                "n = {n}: {z}"
            );
        }
    }

    #[test]
    fn slice_examples() {
        let s = slice_sums(&PrimeSumParams::new(100.0, 50.0));
        assert_eq!((s.primes, s.floor_sum), (10, 10));
        // exact rational Σ (100 mod q)/q over 53..97, evaluated with Python fractions
        assert!((s.frac_sum - 4.117068403307461).abs() < 1e-13);
        let m = mertens_slice(&PrimeSumParams::new(100.0, 10.0)).unwrap();
        assert!((m.exact - 0.6266267248583948).abs() < 1e-14);
        assert!((m.main_term - 2f64.ln()).abs() < 1e-15);
        assert!((m.exact - m.main_term).abs() < 0.15);
    }

    #[test]
    fn degenerate_slices() {
        let at_prime = slice_sums(&PrimeSumParams::new(97.0, 97.0));
        assert_eq!((at_prime.primes, at_prime.floor_sum), (1, 1));
        assert!((at_prime.reciprocal_sum - 1.0 / 97.0).abs() < 1e-18);
        assert_eq!(at_prime.frac_sum, 0.0);
        let composite = slice_sums(&PrimeSumParams::new(100.0, 100.0));
        assert_eq!((composite.primes, composite.floor_sum), (0, 0));
        let f = frac_part_prime_sum(&PrimeSumParams::new(100.0, 100.0)).unwrap();
        assert_eq!(f.exact, 0.0);
        assert_eq!(f.main_term, 0.0);
        assert!(matches!(
            mertens_slice(&PrimeSumParams::new(100.0, 1.5)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            mertens_slice(&PrimeSumParams::new(10.0, 11.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn shrinking_cutoff_main_term_is_one() {
        let m = mertens_slice(&PrimeSumParams::shrinking_cutoff(1e5)).unwrap();
        assert!((m.main_term - 1.0).abs() < 1e-12);
    }

    #[test]
    fn floor_identity_small_grid() {
        for (x, z) in [
            (100.0, 2.0),
            (1000.5, 7.3),
            (5000.0, 5000f64.powf(1.0 / std::f64::consts::E)),
        ] {
            let p = PrimeSumParams::new(x, z);
            let [fl, me, fr] = slice_reports(&p).unwrap();
            assert!((fl.exact - (x * me.exact - fr.exact)).abs() < 1e-9);
        }
    }

    #[test]
    fn s1_examples() {
        let params = PrimeSumParams::new(50.0, 5.0).with_modulus(pm(101));
        let r = twisted_floor_prime_sum(&params).unwrap();
        let oracle: i64 = primes_in(5, 50)
            .into_iter()
            .map(|q| (50 / q) as i64 * euler_criterion(q, pm(101)).as_i64())
            .sum();
        assert_eq!(r.direct, oracle);
        assert_eq!(r.direct, 10);
        assert!(r.route.is_none());

        let empty = PrimeSumParams::new(50.0, 60.0).with_modulus(pm(101));
        assert_eq!(twisted_floor_prime_sum(&empty).unwrap().direct, 0);
        assert!(matches!(
            twisted_floor_prime_sum(&PrimeSumParams::new(101.0, 5.0).with_modulus(pm(101))),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn s1_route_equality() {
        let params = PrimeSumParams::new(50.0, 5.0)
            .with_modulus(pm(101))
            .with_aux_prime(53);
        let r = twisted_floor_prime_sum(&params).unwrap();
        let route = r.route.unwrap();
        assert!(route.gap < 1e-6, "gap {}", route.gap);
        assert!((route.t00 + route.t01 - route.t0).norm() < 1e-12);
        // a = 0 pieces carry π(50) = 15 from P(0)
        let recip: f64 = (5..=50u64)
            .map(|n| legendre(n, pm(101)).as_f64() / n as f64)
            .sum();
        assert!((route.t00.re - 50.0 / 53.0 * 15.0 * recip).abs() < 1e-10);
    }

    #[test]
    fn route_guards() {
        let base = PrimeSumParams::new(50.0, 5.0).with_modulus(pm(101));
        assert!(matches!(
            twisted_floor_prime_sum(&base.with_aux_prime(47)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            twisted_floor_prime_sum(&base.with_aux_prime(51)),
            Err(Error::Domain(_))
        ));
        let big = PrimeSumParams::new(1_000_000.0, 5.0)
            .with_modulus(pm(1_000_003))
            .with_aux_prime(1_000_033);
        assert!(matches!(
            twisted_floor_prime_sum(&big),
            Err(Error::TooCostly { .. })
        ));
    }

    #[test]
    fn prime_char_examples() {
        let p13 = PrimeSumParams::new(12.0, 2.0).with_modulus(pm(13));
        assert_eq!(
            prime_char_sum(&p13, IntervalKind::Long).unwrap().value.re,
            -3.0
        );
        let tiny = PrimeSumParams::new(1.5, 2.0).with_modulus(pm(13));
        assert_eq!(
            prime_char_sum(&tiny, IntervalKind::Short).unwrap().value.re,
            0.0
        );
        let x = (10007f64.powf(0.3)).ceil();
        assert_eq!(x, 16.0);
        let r = prime_char_sum(
            &PrimeSumParams::new(x, 2.0).with_modulus(pm(10007)),
            IntervalKind::Short,
        )
        .unwrap();
        // χ(2, 3, 5, 7, 11, 13) mod 10007 = +1 +1 -1 -1 +1 +1
        assert_eq!(r.value.re, 2.0);
        assert_eq!(r.lemma_id, "T4015.300s");
        let alt = prime_char_sum_single_delta(&PrimeSumParams::new(x, 2.0).with_modulus(pm(10007)))
            .unwrap();
        assert_eq!(alt.lemma_id, "L4015.750");
        assert!(alt.ratio < r.ratio);
    }

    #[test]
    fn prime_char_sum_within_prime_count() {
        for p in primes_in(3, 3_000).into_iter().step_by(7) {
            for x in [2.0, (p / 3) as f64, (p - 1) as f64] {
                let r = prime_char_sum(
                    &PrimeSumParams::new(x, 2.0).with_modulus(pm(p)),
                    IntervalKind::Long,
                )
                .unwrap();
                assert!(r.magnitude <= primes_in(2, x as u64).len() as f64);
            }
        }
    }
}
