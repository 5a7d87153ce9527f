//! Interval character sums evaluated exactly and set against their stated bounds.
//!
//! Every `≪` statement becomes a ratio `|sum| / bound` with implied constant 1. The
//! ratios are data; nothing here fails because a ratio is large.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{is_prime, legendre, next_prime, PrimeModulus};
use crate::error::{Error, Result};
use crate::report::{ReportParams, SumRow};
use crate::summation::{ComplexSum, Neumaier, UnitRoots};

/// Relative slack for floating comparisons of the parameter frame.
const FRAME_SLACK: f64 = 1e-12;

/// How `δ` is derived from `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum DeltaRule {
    /// `ε²(1 + 4ε) / (1 + 5ε)`
    #[default]
    Exact,
    /// `ε²`
    Square,
}

pub fn delta_from_epsilon(eps: f64, rule: DeltaRule) -> f64 {
    match rule {
        DeltaRule::Exact => eps * eps * (1.0 + 4.0 * eps) / (1.0 + 5.0 * eps),
        DeltaRule::Square => eps * eps,
    }
}

pub const DEFAULT_EPSILON: f64 = 0.1;

/// Smallest prime `>= x^(1+δ)`.
pub fn aux_prime_for(x: f64, delta: f64) -> u64 {
    next_prime(x.powf(1.0 + delta).ceil() as u64)
}

/// `{x / n}` for real `x >= 0` and integer `n >= 1`, reduced through `floor(x) mod n`.
#[inline]
pub fn frac_ratio(x: f64, n: u64) -> f64 {
    let whole = x.floor();
    let r = (whole as u64) % n;
    (r as f64 + (x - whole)) / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `x <= p^(1/4+ε)`; only the trivial bound `x` applies
    Trivial,
    /// `p^(1/4+ε) < x < p^(1/2+ε)`
    Short,
    /// `x >= p^(1/2+ε)`
    Long,
}

/// Parameters shared by the character-sum evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumParams {
    pub p: PrimeModulus,
    pub x: f64,
    pub z: Option<f64>,
    /// auxiliary prime `N ≈ x^(1+δ)`
    pub n_aux: Option<u64>,
    pub epsilon: f64,
    pub delta: f64,
    pub a: i64,
    pub b: i64,
    pub t: u64,
}

impl SumParams {
    pub fn new(p: PrimeModulus, x: f64) -> Self {
        SumParams {
            p,
            x,
            z: None,
            n_aux: None,
            epsilon: DEFAULT_EPSILON,
            delta: delta_from_epsilon(DEFAULT_EPSILON, DeltaRule::Exact),
            a: 1,
            b: 1,
            t: 1,
        }
    }

    /// `x = p^(1/4+ε)`, `N` the smallest prime `>= x^(1+δ)`.
    pub fn burgess_frame(p: PrimeModulus, eps: f64) -> Self {
        let x = (p.get() as f64).powf(0.25 + eps);
        SumParams::new(p, x).with_epsilon(eps).with_auto_aux_prime()
    }

    /// Sets `ε` and resets `δ` to the exact rule.
    pub fn with_epsilon(mut self, eps: f64) -> Self {
        self.epsilon = eps;
        self.delta = delta_from_epsilon(eps, DeltaRule::Exact);
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_z(mut self, z: f64) -> Self {
        self.z = Some(z);
        self
    }

    pub fn with_aux_prime(mut self, n: u64) -> Self {
        self.n_aux = Some(n);
        self
    }

    pub fn with_auto_aux_prime(mut self) -> Self {
        self.n_aux = Some(aux_prime_for(self.x, self.delta));
        self
    }

    pub fn with_a(mut self, a: i64) -> Self {
        self.a = a;
        self
    }

    pub fn with_b(mut self, b: i64) -> Self {
        self.b = b;
        self
    }

    pub fn with_t(mut self, t: u64) -> Self {
        self.t = t;
        self
    }

    pub fn floor_x(&self) -> u64 {
        self.x.floor() as u64
    }

    /// `1 <= x < p`.
    pub fn check_x(&self) -> Result<()> {
        if !(self.x >= 1.0) || self.x >= self.p.get() as f64 {
            return Err(Error::Domain(format!(
                "need 1 <= x < p (x = {}, p = {})",
                self.x, self.p
            )));
        }
        Ok(())
    }

    /// The auxiliary prime, which must be set and prime.
    pub fn aux_prime(&self) -> Result<u64> {
        match self.n_aux {
            Some(n) if is_prime(n) => Ok(n),
            Some(n) => Err(Error::Domain(format!("N = {n} is not prime"))),
            None => Err(Error::Domain("auxiliary prime N is required".into())),
        }
    }

    /// `p^(1/4+ε) <= x < x^(1+δ) <= N < p` with `N` prime.
    pub fn check_frame(&self) -> Result<()> {
        self.check_x()?;
        let n = self.aux_prime()?;
        let p = self.p.get() as f64;
        let lower = p.powf(0.25 + self.epsilon);
        let grown = self.x.powf(1.0 + self.delta);
        let slack = 1.0 + FRAME_SLACK;
        if self.x * slack < lower {
            return Err(Error::Domain(format!(
                "x = {} below p^(1/4+eps) = {lower}",
                self.x
            )));
        }
        if !(self.x < grown || self.x == 1.0) {
            return Err(Error::Domain(format!("x^(1+delta) = {grown} not above x")));
        }
        if grown > n as f64 * slack {
            return Err(Error::Domain(format!(
                "x^(1+delta) = {grown} exceeds N = {n}"
            )));
        }
        if n >= self.p.get() {
            return Err(Error::Domain(format!("N = {n} not below p = {}", self.p)));
        }
        Ok(())
    }

    pub fn regime(&self) -> Regime {
        let p = self.p.get() as f64;
        if self.x >= p.powf(0.5 + self.epsilon) {
            Regime::Long
        } else if self.x > p.powf(0.25 + self.epsilon) {
            Regime::Short
        } else {
            Regime::Trivial
        }
    }

    pub fn report_params(&self) -> ReportParams {
        ReportParams {
            p: Some(self.p.get()),
            x: Some(self.x),
            z: self.z,
            n_aux: self.n_aux,
            eps: Some(self.epsilon),
            delta: Some(self.delta),
            a: Some(self.a),
            b: Some(self.b),
            t: Some(self.t),
        }
    }
}

/// An exactly evaluated sum next to the bound it is claimed to satisfy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumReport {
    pub lemma_id: String,
    pub value: Complex64,
    pub magnitude: f64,
    pub claimed_bound: f64,
    /// `magnitude / claimed_bound`
    pub ratio: f64,
    pub params: ReportParams,
    pub regime: Option<Regime>,
    /// set for bounds stated with an explicit constant
    pub bound_holds: Option<bool>,
}

impl SumReport {
    pub fn new(
        lemma_id: impl Into<String>,
        value: Complex64,
        claimed_bound: f64,
        params: ReportParams,
    ) -> Self {
        let magnitude = value.norm();
        let ratio = if claimed_bound > 0.0 {
            magnitude / claimed_bound
        } else if magnitude == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        SumReport {
            lemma_id: lemma_id.into(),
            value,
            magnitude,
            claimed_bound,
            ratio,
            params,
            regime: None,
            bound_holds: None,
        }
    }

    pub fn real(
        lemma_id: impl Into<String>,
        value: f64,
        claimed_bound: f64,
        params: ReportParams,
    ) -> Self {
        Self::new(lemma_id, Complex64::new(value, 0.0), claimed_bound, params)
    }

    pub fn with_regime(mut self, regime: Regime) -> Self {
        self.regime = Some(regime);
        self
    }

    pub fn row(&self) -> SumRow {
        SumRow {
            lemma_id: self.lemma_id.clone(),
            params: self.params,
            re: self.value.re,
            im: self.value.im,
            magnitude: self.magnitude,
            claimed_bound: self.claimed_bound,
            ratio: self.ratio,
        }
    }
}

/// Prefix sums `A(0..p)` of the character, `A(0) = 0`.
pub fn prefix_sums(p: PrimeModulus) -> Vec<i64> {
    let mut acc = 0i64;
    let mut out = Vec::with_capacity(p.get() as usize);
    out.push(0);
    for n in 1..p.get() {
        acc += legendre(n, p).as_i64();
        out.push(acc);
    }
    out
}

/// `Σ_{n<=x} χ(n)`, exactly, against `x^(1-δ)` (short) or `sqrt(p) log p` (long).
pub fn char_sum(params: &SumParams) -> Result<SumReport> {
    params.check_x()?;
    let s: i64 = (1..=params.floor_x())
        .map(|n| legendre(n, params.p).as_i64())
        .sum();
    let regime = params.regime();
    let p = params.p.get() as f64;
    let (id, bound) = match regime {
        Regime::Long => ("T2212.455", p.sqrt() * p.ln()),
        Regime::Short => ("T1212.450", params.x.powf(1.0 - params.delta)),
        Regime::Trivial => ("T1212.450", params.x),
    };
    Ok(SumReport::real(id, s as f64, bound, params.report_params()).with_regime(regime))
}

/// Weight attached to `χ(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Weight {
    /// `1/n`
    Reciprocal,
    /// `{x/n}/n`
    FracOverN,
    /// `{x/n}`
    Frac,
    /// `1`
    Unit,
}

impl Weight {
    pub const ALL: [Weight; 4] = [
        Weight::Reciprocal,
        Weight::FracOverN,
        Weight::Unit,
        Weight::Frac,
    ];

    #[inline]
    fn at(self, n: u64, x: f64) -> f64 {
        match self {
            Weight::Reciprocal => 1.0 / n as f64,
            Weight::FracOverN => frac_ratio(x, n) / n as f64,
            Weight::Frac => frac_ratio(x, n),
            Weight::Unit => 1.0,
        }
    }

    fn is_logarithmic(self) -> bool {
        matches!(self, Weight::Reciprocal | Weight::FracOverN)
    }
}

/// Index range of a weighted sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SumRange {
    /// `1 <= n <= x`
    UpToX,
    /// `1 <= n < N`
    BelowAux,
}

fn weighted_lemma_id(weight: Weight, range: SumRange, twisted: bool) -> String {
    let base = match (range, weight) {
        (SumRange::UpToX, Weight::Reciprocal) => "L7212.500",
        (SumRange::UpToX, Weight::FracOverN) => "L7212.530",
        (SumRange::UpToX, Weight::Unit) => "L7212.580",
        (SumRange::UpToX, Weight::Frac) => "L7212.590",
        (SumRange::BelowAux, Weight::Reciprocal) => "L9212.530",
        (SumRange::BelowAux, Weight::FracOverN) => "L9212.540",
        (SumRange::BelowAux, Weight::Unit) => "L9212.535",
        (SumRange::BelowAux, Weight::Frac) => "L9212.545",
    };
    format!("{base}({})", if twisted { "ii" } else { "i" })
}

/// `Σ χ(n) w(n) e^{2πi b n / N}` over `1 <= n <= x`, with one reusable root table.
fn twisted_sum(
    params: &SumParams,
    weight: Weight,
    upper: u64,
    twist: Option<(&UnitRoots, i64)>,
) -> Complex64 {
    let mut acc = ComplexSum::new();
    for n in 1..=upper {
        let c = legendre(n, params.p).as_f64();
        if c == 0.0 {
            continue;
        }
        let w = c * weight.at(n, params.x);
        match twist {
            Some((roots, k)) => acc.add(roots.pow(k, n) * w),
            None => acc.add(Complex64::new(w, 0.0)),
        }
    }
    acc.value()
}

/// Weighted (and optionally twisted by `e^{2πi a n/N}`) character sum over
/// `n <= x` or `n < N`. Bounds: `log x` for the `1/n`-weighted forms, `x^(1-δ)` otherwise.
pub fn weighted_sum(
    params: &SumParams,
    weight: Weight,
    twisted: bool,
    range: SumRange,
) -> Result<SumReport> {
    params.check_x()?;
    let uses_aux = twisted || range == SumRange::BelowAux;
    if uses_aux {
        params.check_frame()?;
    }
    let upper = match range {
        SumRange::UpToX => params.floor_x(),
        SumRange::BelowAux => params.aux_prime()? - 1,
    };
    let roots = if twisted {
        Some(UnitRoots::new(params.aux_prime()?))
    } else {
        None
    };
    let value = twisted_sum(params, weight, upper, roots.as_ref().map(|r| (r, params.a)));
    let bound = if weight.is_logarithmic() {
        params.x.ln()
    } else {
        params.x.powf(1.0 - params.delta)
    };
    Ok(SumReport::new(
        weighted_lemma_id(weight, range, twisted),
        value,
        bound,
        params.report_params(),
    )
    .with_regime(params.regime()))
}

/// Partial sum `Σ_{n<=x} χ(n)/n` of `L(1, χ)` against `log p`.
pub fn l_one_partial_sum(params: &SumParams) -> Result<SumReport> {
    params.check_x()?;
    let value = twisted_sum(params, Weight::Reciprocal, params.floor_x(), None);
    Ok(SumReport::new(
        "T3131.100",
        value,
        params.p.ln(),
        params.report_params(),
    ))
}

/// Geometric sum `Σ_{n<=x} ω^{nt}`, `ω = e^{2πi/N}`, by direct summation and by
/// the closed form.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeometricReport {
    pub report: SumReport,
    pub closed_form: Complex64,
    /// `|direct - closed| / max(|direct|, |closed|, 1)`
    pub agreement: f64,
}

/// Checks `|Σ_{n<=x} ω^{nt}| <= 2N/(πt)`; records whether it holds.
pub fn geometric_sum(n_aux: u64, t: u64, x: f64) -> Result<GeometricReport> {
    if !is_prime(n_aux) {
        return Err(Error::Domain(format!("N = {n_aux} is not prime")));
    }
    if t == 0 || t >= n_aux {
        return Err(Error::Domain(format!(
            "need 1 <= t < N (t = {t}, N = {n_aux})"
        )));
    }
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("need x >= 1 (x = {x})")));
    }
    let m = x.floor() as u64;
    let roots = UnitRoots::new(n_aux);
    let t_i = t as i64;
    let direct: ComplexSum = (1..=m).map(|n| roots.pow(t_i, n)).collect();
    let direct = direct.value();

    let w = roots.pow(t_i, 1);
    let closed =
        w * (Complex64::new(1.0, 0.0) - roots.pow(t_i, m)) / (Complex64::new(1.0, 0.0) - w);

    let agreement = (direct - closed).norm() / direct.norm().max(closed.norm()).max(1.0);
    let bound = 2.0 * n_aux as f64 / (PI * t as f64);
    let params = ReportParams {
        x: Some(x),
        n_aux: Some(n_aux),
        t: Some(t),
        ..Default::default()
    };
    let mut report = SumReport::new("L9212.550", direct, bound, params);
    report.bound_holds = Some(report.magnitude <= bound);
    Ok(GeometricReport {
        report,
        closed_form: closed,
        agreement,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EquivWeight {
    /// `χ(n)/n`
    Reciprocal,
    /// `χ(n)`
    Unit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalentReport {
    /// value is `D(x) = S(b) - S(1)`
    pub report: SumReport,
    pub at_b: Complex64,
    pub at_one: Complex64,
}

/// `D(x) = Σ_{n<=x} c(n) e^{2πi b n/N} - Σ_{n<=x} c(n) e^{2πi n/N}` with
/// `c(n) = χ(n)/n` (bound `(log x)^2`) or `χ(n)` (bound `x^(1-δ)`).
pub fn equivalent_sum_difference(
    params: &SumParams,
    weight: EquivWeight,
) -> Result<EquivalentReport> {
    params.check_frame()?;
    let n = params.aux_prime()?;
    if params.b.rem_euclid(n as i64) == 0 {
        return Err(Error::Domain(format!("b = {} is 0 mod N = {n}", params.b)));
    }
    let w = match weight {
        EquivWeight::Reciprocal => Weight::Reciprocal,
        EquivWeight::Unit => Weight::Unit,
    };
    let roots = UnitRoots::new(n);
    let upper = params.floor_x();
    let at_b = twisted_sum(params, w, upper, Some((&roots, params.b)));
    let at_one = twisted_sum(params, w, upper, Some((&roots, 1)));
    let (id, bound) = match weight {
        EquivWeight::Reciprocal => ("L1215.800", params.x.ln().powi(2)),
        EquivWeight::Unit => ("L1215.850", params.x.powf(1.0 - params.delta)),
    };
    Ok(EquivalentReport {
        report: SumReport::new(id, at_b - at_one, bound, params.report_params()),
        at_b,
        at_one,
    })
}

/// `sin(2π num/den)` with exact zeros at whole and half turns.
fn sin_turns(num: u64, den: u64, extra: f64) -> f64 {
    let r = num % den;
    if extra == 0.0 && (r == 0 || 2 * r == den) {
        return 0.0;
    }
    let turns = (r as f64 / den as f64 + extra).fract();
    (2.0 * PI * turns).sin()
}

/// Truncated Fourier expansion of the fractional part at `x/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierApprox {
    /// `1/2 - Σ_{m<=w} sin(2πmx/n)/(πm)`
    pub series: f64,
    pub exact: f64,
    /// `series - exact`
    pub error: f64,
    /// `x/n` is an integer; the series tends to 1/2 there, not to `{x/n} = 0`
    pub at_jump: bool,
}

fn sine_terms(n: u64, x: f64, w: u64) -> impl Iterator<Item = (u64, f64)> {
    let whole = x.floor();
    let r = whole as u64 % n;
    let fx = x - whole;
    (1..=w).map(move |m| {
        let num = (m as u128 * r as u128 % n as u128) as u64;
        let extra = (m as f64 * fx / n as f64).fract();
        (m, sin_turns(num, n, extra))
    })
}

pub fn frac_fourier_error(n: u64, x: f64, w: u64) -> Result<FourierApprox> {
    if n == 0 || w == 0 || !(x >= 0.0) {
        return Err(Error::Domain(format!(
            "need n >= 1, w >= 1, x >= 0 (n = {n}, x = {x}, w = {w})"
        )));
    }
    let tail: Neumaier = sine_terms(n, x, w)
        .map(|(m, s)| s / (PI * m as f64))
        .collect();
    let series = 0.5 - tail.value();
    let exact = frac_ratio(x, n);
    Ok(FourierApprox {
        series,
        exact,
        error: series - exact,
        at_jump: exact == 0.0,
    })
}

/// The two sine sums whose constants are charted empirically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SineSums {
    /// `Σ_{m<=w} sin(2πmx/n)`
    pub plain: f64,
    /// `n / x`
    pub plain_scale: f64,
    /// `Σ_{m<=w} sin(2πmx/n)/(πm)`
    pub weighted: f64,
    /// `n / (x w)`
    pub weighted_scale: f64,
}

impl SineSums {
    pub fn plain_ratio(&self) -> f64 {
        self.plain.abs() / self.plain_scale
    }

    pub fn weighted_ratio(&self) -> f64 {
        self.weighted.abs() / self.weighted_scale
    }
}

pub fn sine_sums(n: u64, x: f64, w: u64) -> Result<SineSums> {
    if n == 0 || w == 0 || !(x > 0.0) {
        return Err(Error::Domain(format!(
            "need n >= 1, w >= 1, x > 0 (n = {n}, x = {x}, w = {w})"
        )));
    }
    let mut plain = Neumaier::new();
    let mut weighted = Neumaier::new();
    for (m, s) in sine_terms(n, x, w) {
        plain.add(s);
        weighted.add(s / (PI * m as f64));
    }
    Ok(SineSums {
        plain: plain.value(),
        plain_scale: n as f64 / x,
        weighted: weighted.value(),
        weighted_scale: n as f64 / (x * w as f64),
    })
}

/// Extremes of the prefix sums of `χ` over one full period.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodExtremes {
    /// `max_{x<p} |Σ_{n<=x} χ(n)|`
    pub max_prefix: i64,
    pub argmax: u64,
    /// `max - min` of the prefix sums: the largest `|Σ_{a<n<=b} χ(n)|`
    pub max_interval: i64,
}

pub fn period_extremes(p: PrimeModulus) -> PeriodExtremes {
    let a = prefix_sums(p);
    let (mut max_prefix, mut argmax) = (0i64, 0u64);
    let (mut hi, mut lo) = (0i64, 0i64);
    for (x, &v) in a.iter().enumerate() {
        if v.abs() > max_prefix {
            max_prefix = v.abs();
            argmax = x as u64;
        }
        hi = hi.max(v);
        lo = lo.min(v);
    }
    PeriodExtremes {
        max_prefix,
        argmax,
        max_interval: hi - lo,
    }
}
