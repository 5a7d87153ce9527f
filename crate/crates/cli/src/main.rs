use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nrlab::arith::PrimeModulus;
use nrlab::charsums::{
    char_sum, equivalent_sum_difference, l_one_partial_sum, weighted_sum, EquivWeight, SumParams,
    SumRange, Weight, DEFAULT_EPSILON,
};
use nrlab::dossier::dossier;
use nrlab::nonresidue::{scan_streaming, ExponentThresholds};
use nrlab::primesums::{
    prime_char_sum, prime_char_sum_single_delta, slice_reports, twisted_floor_prime_sum,
    IntervalKind, PrimeSumParams,
};
use nrlab::report::{CsvRecord, Format, ReportWriter, SumRow};
use nrlab::shrinking::{contradiction_audit, decompose, DecompositionRow, Variant};
use nrlab::verdict::VerdictRow;
use nrlab::verify::{geometric_reports, run_all, run_lemma, VerifyConfig};
use nrlab::Error;

const EXIT_VIOLATION: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(
    name = "nrlab",
    version,
    about = "Least quadratic nonresidues, character sums and prime sums"
)]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "NRLAB_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output file (default: stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or jsonl
    #[arg(long, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct Frame {
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    eps: f64,
    /// Overrides delta = eps^2 (1 + 4 eps) / (1 + 5 eps)
    #[arg(long)]
    delta: Option<f64>,
    /// Auxiliary prime (default: smallest prime >= x^(1+delta))
    #[arg(long = "N")]
    n_aux: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Least nonresidue of every prime in [lo, hi]
    Scan {
        #[arg(long, default_value_t = 3)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        /// Only primes whose n_p exceeds all earlier ones
        #[arg(long)]
        records_only: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Character sums for one prime, or the geometric sum table with --lemma L9212.550
    Sums {
        #[arg(long)]
        p: Option<u64>,
        /// Default: p^(1/4+eps)
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, default_value_t = 2)]
        b: i64,
        #[arg(long)]
        t: Option<u64>,
        /// Keep only rows whose lemma id starts with this
        #[arg(long)]
        lemma: Option<String>,
        /// Geometric table: only rows violating 2N/(pi t)
        #[arg(long)]
        violations_only: bool,
        #[command(flatten)]
        frame: Frame,
        #[command(flatten)]
        output: Output,
    },
    /// Sums over primes z <= q <= x, twisted by (q/p) when --p is given
    PrimeSums {
        #[arg(long)]
        x: f64,
        /// Default: x^(1/e)
        #[arg(long)]
        z: Option<f64>,
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        frame: Frame,
        #[command(flatten)]
        output: Output,
    },
    /// Run one lemma's verification grid, or all of them
    Verify {
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        lemma: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        lo: Option<u64>,
        #[arg(long)]
        hi: Option<u64>,
        /// Largest auxiliary prime in N-indexed grids
        #[arg(long)]
        nmax: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact decomposition of the character sum up to x
    Decompose {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        x: f64,
        /// Default: x^(1/e)
        #[arg(long)]
        z: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// Term-by-term audit of the z = x^(1/e) substitution
    Audit {
        #[arg(long)]
        p: u64,
        /// Default: p^(1/4+eps)
        #[arg(long)]
        x: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Ratio rows L1215.800, L5215.300, T1234.500, T4015.300s for every prime in [lo, hi]
    Dossier {
        #[arg(long, default_value_t = 1_000)]
        lo: u64,
        #[arg(long)]
        hi: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        eps: f64,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Violation(String),
    Config(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::IdentityViolation(m) => Failure::Violation(m),
            other => Failure::Config(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn open(output: &Output) -> Result<Box<dyn Write>, Failure> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Config(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit<T: CsvRecord>(output: &Output, rows: &[T]) -> Outcome {
    let mut w = ReportWriter::<_, T>::new(open(output)?, output.format)?;
    for r in rows {
        w.write(r)?;
    }
    w.finish()?.flush()?;
    Ok(())
}

fn modulus(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn apply_frame(mut params: SumParams, frame: &Frame) -> SumParams {
    params = params.with_epsilon(frame.eps);
    if let Some(d) = frame.delta {
        params = params.with_delta(d);
    }
    match frame.n_aux {
        Some(n) => params.with_aux_prime(n),
        None => params.with_auto_aux_prime(),
    }
}

fn run_scan(lo: u64, hi: u64, records_only: bool, output: &Output) -> Outcome {
    let t = ExponentThresholds::default();
    let mut w = ReportWriter::new(open(output)?, output.format)?;
    let summary = scan_streaming(lo, hi, &t, records_only, |row| w.write(row))?;
    w.finish()?.flush()?;
    let max = summary
        .max_exponent
        .map(|(e, p, n)| format!(" max_exponent={e:.6} at p={p} (n_p={n})"))
        .unwrap_or_default();
    eprintln!(
        "primes={} max_n_p={}{max} above_claimed={} above_burgess={} records={}",
        summary.primes,
        summary.max_n_p(),
        summary.above_claimed,
        summary.above_burgess,
        summary.record_breakers.len()
    );
    Ok(())
}

fn run_geometric(
    n: u64,
    t: Option<u64>,
    x: Option<f64>,
    violations_only: bool,
    output: &Output,
) -> Outcome {
    let reports = match (t, x) {
        (Some(t), Some(x)) => vec![nrlab::charsums::geometric_sum(n, t, x)?],
        _ => geometric_reports(n)?
            .into_iter()
            .filter(|g| t.is_none_or(|t| g.report.params.t == Some(t)))
            .filter(|g| x.is_none_or(|x| g.report.params.x == Some(x)))
            .collect(),
    };
    let worst_agreement = reports.iter().map(|g| g.agreement).fold(0.0, f64::max);
    let rows: Vec<SumRow> = reports
        .iter()
        .filter(|g| !violations_only || g.report.bound_holds == Some(false))
        .map(|g| g.report.row())
        .collect();
    let violations = reports
        .iter()
        .filter(|g| g.report.bound_holds == Some(false))
        .count();
    emit(output, &rows)?;
    eprintln!(
        "N={n} rows={} bound_violations={violations} worst_agreement={worst_agreement:e}",
        reports.len()
    );
    if worst_agreement > 1e-9 {
        return Err(Failure::Violation(format!(
            "closed form disagrees: {worst_agreement:e}"
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn run_sums(
    p: Option<u64>,
    x: Option<f64>,
    b: i64,
    t: Option<u64>,
    lemma: Option<&str>,
    violations_only: bool,
    frame: &Frame,
    output: &Output,
) -> Outcome {
    if lemma == Some("L9212.550") {
        let n = frame
            .n_aux
            .ok_or_else(|| Failure::Config("--lemma L9212.550 needs --N".into()))?;
        return run_geometric(n, t, x, violations_only, output);
    }
    let p = modulus(p.ok_or_else(|| Failure::Config("--p is required".into()))?)?;
    let x = x.unwrap_or_else(|| (p.get() as f64).powf(0.25 + frame.eps));
    let params = apply_frame(SumParams::new(p, x), frame)
        .with_b(b)
        .with_t(t.unwrap_or(1));

    let mut reports = vec![char_sum(&params)?, l_one_partial_sum(&params)?];
    let framed = params.check_frame().is_ok();
    for range in [SumRange::UpToX, SumRange::BelowAux] {
        for weight in Weight::ALL {
            for twisted in [false, true] {
                if (twisted || range == SumRange::BelowAux) && !framed {
                    continue;
                }
                reports.push(weighted_sum(&params, weight, twisted, range)?);
            }
        }
    }
    if framed {
        for w in [EquivWeight::Reciprocal, EquivWeight::Unit] {
            reports.push(equivalent_sum_difference(&params, w)?.report);
        }
    } else {
        eprintln!("frame p^(1/4+eps) <= x < N < p does not hold; N-dependent sums skipped");
    }
    let rows: Vec<SumRow> = reports
        .iter()
        .filter(|r| lemma.is_none_or(|l| r.lemma_id.starts_with(l)))
        .map(|r| r.row())
        .collect();
    if rows.is_empty() {
        return Err(Failure::Config(format!(
            "no sum matches --lemma {}",
            lemma.unwrap_or("")
        )));
    }
    emit(output, &rows)
}

fn run_prime_sums(
    x: f64,
    z: Option<f64>,
    p: Option<u64>,
    frame: &Frame,
    output: &Output,
) -> Outcome {
    let z = z.unwrap_or_else(|| Variant::Shrinking.cutoff(x));
    let mut params = PrimeSumParams::new(x, z).with_epsilon(frame.eps);
    if let Some(d) = frame.delta {
        params = params.with_delta(d);
    }
    let mut rows: Vec<SumRow> = if z >= 2.0 {
        slice_reports(&params)?.iter().map(|r| r.row()).collect()
    } else {
        Vec::new()
    };
    let mut gap = None;
    if let Some(p) = p {
        params = params.with_modulus(modulus(p)?);
        if let Some(n) = frame.n_aux {
            params = params.with_aux_prime(n);
        }
        let s1 = twisted_floor_prime_sum(&params)?;
        rows.push(s1.report.row());
        if let Some(route) = s1.route {
            let bound = x.powf(1.0 - params.delta);
            let rp = params.report_params();
            rows.push(nrlab::charsums::SumReport::new("L5215.500", route.t0, bound, rp).row());
            rows.push(nrlab::charsums::SumReport::new("L5215.750", route.t1, bound, rp).row());
            gap = Some((route.gap, s1.direct, route.total()));
        }
        let kind = if x >= (p as f64).powf(0.5 + frame.eps) {
            IntervalKind::Long
        } else {
            IntervalKind::Short
        };
        rows.push(prime_char_sum(&params, kind)?.row());
        rows.push(prime_char_sum_single_delta(&params)?.row());
    }
    emit(output, &rows)?;
    if let Some((g, direct, total)) = gap {
        eprintln!("S1 direct={direct} T0+T1={total} gap={g:e}");
        if g > 1e-6 {
            return Err(Failure::Violation(format!(
                "S1 routes disagree: direct={direct} T0+T1={total}"
            )));
        }
    }
    Ok(())
}

fn run_verify(lemma: Option<&str>, cfg: &VerifyConfig, output: &Output) -> Outcome {
    let verdicts = match lemma {
        Some(id) => run_lemma(id, cfg)?,
        None => run_all(cfg)?,
    };
    let rows: Vec<VerdictRow> = verdicts.iter().map(VerdictRow::from).collect();
    emit(output, &rows)?;
    let mut fatal = Vec::new();
    for v in &verdicts {
        eprintln!("{v}");
        for (label, value) in &v.series {
            eprintln!("    {label}: {value}");
        }
        if v.is_fatal() {
            for m in &v.violations {
                eprintln!("    violation: {m}");
            }
            fatal.push(v.lemma_id.clone());
        }
    }
    if fatal.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "exact checks failed: {}",
            fatal.join(", ")
        )))
    }
}

fn run_decompose(p: u64, x: f64, z: Option<f64>, output: &Output) -> Outcome {
    let z = z.unwrap_or_else(|| Variant::Shrinking.cutoff(x));
    let d = decompose(modulus(p)?, x, z)?;
    emit(output, &[DecompositionRow::from(&d)])?;
    if d.lhs != d.count_form {
        return Err(Failure::Violation(format!(
            "p={p} x={x}: lhs={} count_form={}",
            d.lhs, d.count_form
        )));
    }
    Ok(())
}

fn run_audit(p: u64, x: Option<f64>, eps: f64, output: &Output) -> Outcome {
    let x = x.unwrap_or_else(|| (p as f64).powf(0.25 + eps));
    let a = contradiction_audit(modulus(p)?, x)?;
    emit(output, std::slice::from_ref(&a))?;
    let r = a.as_asymptotic();
    eprintln!(
        "lhs={} asymptotic_form={:.6} normalized_residual={:.6} cancellation={:.6}",
        a.lhs, a.asymptotic_form, r.normalized_residual, a.cancellation
    );
    if !a.bookkeeping_holds() {
        return Err(Failure::Violation(format!(
            "[x] - S0 + S1 != prime_form at p={p} x={x}"
        )));
    }
    Ok(())
}

fn run_dossier(lo: u64, hi: u64, eps: f64, output: &Output) -> Outcome {
    let rows = dossier(lo, hi, eps)?;
    emit(output, &rows)?;
    let above = rows.iter().filter(|r| r.ratio > 1.0).count();
    eprintln!("rows={} ratio>1: {above}", rows.len());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Scan {
            lo,
            hi,
            records_only,
            output,
        } => run_scan(lo, hi, records_only, &output),
        Command::Sums {
            p,
            x,
            b,
            t,
            lemma,
            violations_only,
            frame,
            output,
        } => run_sums(
            p,
            x,
            b,
            t,
            lemma.as_deref(),
            violations_only,
            &frame,
            &output,
        ),
        Command::PrimeSums {
            x,
            z,
            p,
            frame,
            output,
        } => run_prime_sums(x, z, p, &frame, &output),
        Command::Verify {
            lemma,
            all: _,
            lo,
            hi,
            nmax,
            eps,
            output,
        } => {
            let cfg = VerifyConfig { lo, hi, nmax, eps };
            run_verify(lemma.as_deref(), &cfg, &output)
        }
        Command::Decompose { p, x, z, output } => run_decompose(p, x, z, &output),
        Command::Audit { p, x, eps, output } => run_audit(p, x, eps, &output),
        Command::Dossier {
            lo,
            hi,
            eps,
            output,
        } => run_dossier(lo, hi, eps, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_CONFIG);
        }
        pool = pool.num_threads(n);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(m)) => {
            eprintln!("invariant violated: {m}");
            ExitCode::from(EXIT_VIOLATION)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_identity_violations_map_to_exit_1() {
        assert!(matches!(
            Failure::from(Error::IdentityViolation("x".into())),
            Failure::Violation(_)
        ));
        assert!(matches!(
            Failure::from(Error::Domain("x".into())),
            Failure::Config(_)
        ));
        assert!(matches!(
            Failure::from(Error::UnknownLemma("x".into())),
            Failure::Config(_)
        ));
    }
}
