//! Command-line front end: parses arguments, calls the library and renders the result.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cubic_core::analytic::{
    poisson_radial_check, poisson_twisted_check, sieve_weights, PeriodicTable, PoissonOptions, SieveFlavor,
    SmoothWindow,
};
use cubic_core::experiments::{
    comb_identity_check, corrected_sieve_sum, kummer_histogram_from_sweep, large_sieve_form, operator_norm,
    patterson_sum_from_sweep, power_sum_k_from_sweep, sharpness_probe, type1_sum, ExperimentReport,
    PattersonWindow, SieveSequence,
};
use cubic_core::store::{resolve_cache_path, ExportFormat, GaussCache, ReportEnvelope, Table};
use cubic_core::{
    cubic_symbol, gauss_sum_direct, gtilde, kummer_sum_sp, multiplicative_functions, split_rational_prime,
    symbol_euler_prime, EisensteinInt, Error, GaussTable, Predicate,
};

#[derive(Parser, Debug)]
#[command(name = "cubic", version, about = "Cubic Gauss sums, cubic symbols and the cubic large sieve")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the rendered output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Gauss sum cache file.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Compute sweeps without reading or writing the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Report a wall time of zero so that output is byte-stable.
    #[arg(long, global = true)]
    deterministic: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum WindowShape {
    Bump,
    Sharp,
}

#[derive(Args, Debug, Clone)]
struct WindowArgs {
    #[arg(long, value_enum, default_value_t = WindowShape::Bump)]
    window: WindowShape,
    /// Left end of the window support.
    #[arg(long, default_value_t = 1.0)]
    wl: f64,
    /// Right end of the window support.
    #[arg(long, default_value_t = 2.0)]
    wr: f64,
}

impl WindowArgs {
    fn build(&self) -> cubic_core::Result<SmoothWindow> {
        match self.window {
            WindowShape::Bump => SmoothWindow::bump(self.wl, self.wr),
            WindowShape::Sharp => SmoothWindow::sharp(self.wl, self.wr),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BetaKind {
    Random,
    Smooth,
    Witness,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The two primary primes above a rational prime p = 1 mod 3.
    Split {
        #[arg(long)]
        p: u64,
    },
    /// The cubic residue symbol (a/b)_3 for primary b.
    Symbol {
        #[arg(long, allow_hyphen_values = true)]
        a: EisensteinInt,
        #[arg(long, allow_hyphen_values = true)]
        b: EisensteinInt,
    },
    /// The normalized Gauss sum at a primary element.
    Gauss {
        #[arg(long, allow_hyphen_values = true)]
        c: EisensteinInt,
        /// Sum over all residues instead of using the prime factorization.
        #[arg(long)]
        direct: bool,
    },
    /// The cubic exponential sum S_p over Z/pZ.
    Sp {
        #[arg(long)]
        p: u64,
    },
    /// Histogram of cos(2 pi theta_p) over p <= X.
    Kummer {
        #[arg(long)]
        x: u64,
    },
    /// Partial sums of S_p / (2 sqrt p) against the predicted main term.
    Patterson {
        #[arg(long)]
        x: u64,
        /// Use the smooth window given by --wl/--wr instead of the sharp cutoff.
        #[arg(long)]
        smooth: bool,
        #[arg(long, default_value_t = 0.5)]
        wl: f64,
        #[arg(long, default_value_t = 1.0)]
        wr: f64,
    },
    /// Sums of g(pi)^k over primary primes.
    Powersum {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = 0.5)]
        wl: f64,
        #[arg(long, default_value_t = 1.0)]
        wr: f64,
    },
    /// Type-I sums of g(ur) against the squarefree main term.
    Type1 {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        r: EisensteinInt,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        ell: i32,
        #[arg(long)]
        u: u64,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// The large sieve quadratic form for a chosen coefficient sequence.
    SieveForm {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum, default_value_t = BetaKind::Random)]
        beta: BetaKind,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The operator norm B(A, B) by power iteration.
    SieveNorm {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, default_value_t = 20_000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Growth exponent of the witness sequence at A = B = N.
    Sharpness {
        #[arg(long, value_delimiter = ',', default_values_t = [128u64, 256, 512, 1024, 2048])]
        ns: Vec<u64>,
    },
    /// The large sieve with and without the main-term correction.
    CorrectedSieve {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum, default_value_t = BetaKind::Smooth)]
        beta: BetaKind,
    },
    /// Poisson summation twisted by cubic characters modulo n1 and n2.
    PoissonCheck {
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        n1: EisensteinInt,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        n2: EisensteinInt,
        #[arg(long)]
        m: f64,
        /// Check the radial form with psi = (./q)_3 instead.
        #[arg(long, allow_hyphen_values = true)]
        q: Option<EisensteinInt>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Exact coefficient check of the log zeta decomposition.
    CombCheck {
        #[arg(long, default_value_t = 10_000)]
        nmax: u64,
        #[arg(long, default_value_t = 10)]
        w: u64,
        #[arg(long, default_value_t = 50)]
        z: u64,
    },
    /// Quick invariant suite.
    Selftest,
}

struct Rendered {
    envelope: ReportEnvelope,
    text: String,
    table: Option<Table>,
    ok: bool,
}

impl Rendered {
    fn new(envelope: ReportEnvelope, text: String) -> Self {
        Rendered { envelope, text, table: None, ok: true }
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code:
/// 0 on success, 1 on numeric failure, 2 on a usage error.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(r) => match emit(&cli, &r, out) {
            Ok(()) if r.ok => 0,
            Ok(()) => {
                let _ = writeln!(err, "numeric check failed");
                1
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::NotPrimary(_) | Error::NotOneModThree(_) | Error::NotPrime(_) => 2,
                _ => 1,
            }
        }
    }
}

fn emit(cli: &Cli, r: &Rendered, out: &mut dyn Write) -> cubic_core::Result<()> {
    let mut buf = Vec::new();
    match cli.format {
        Format::Text => writeln!(buf, "{}", r.text)?,
        Format::Json => cubic_core::store::export_table(&r.envelope, &Table { header: vec![], rows: vec![] }, ExportFormat::Json, &mut buf)?,
        Format::Csv => {
            let table = r
                .table
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument(format!("{} has no tabular output", r.envelope.command)))?;
            cubic_core::store::export_table(&r.envelope, table, ExportFormat::Csv, &mut buf)?;
        }
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(())
}

fn envelope<T: serde::Serialize>(
    cli: &Cli,
    command: &str,
    params: Value,
    results: &T,
    provenance: Vec<String>,
    start: Instant,
) -> cubic_core::Result<ReportEnvelope> {
    let wall = if cli.deterministic { 0.0 } else { start.elapsed().as_secs_f64() };
    ReportEnvelope::new(command, params, results, provenance, wall)
}

fn from_report(cli: &Cli, report: ExperimentReport) -> cubic_core::Result<Rendered> {
    let report = if cli.deterministic { report.without_timing() } else { report };
    let mut text = String::new();
    for i in 0..report.checkpoints.len() {
        let ratio = report.ratio[i].map_or("-".to_string(), |q| format!("{q:.6}"));
        text.push_str(&format!(
            "x = {}  observed = {}  predicted = {}  ratio = {ratio}\n",
            report.checkpoints[i], report.observed[i], report.predicted[i]
        ));
    }
    text.pop();
    let mut r = Rendered::new(ReportEnvelope::from_report(&report)?, text);
    r.table = Some(Table::from_report(&report));
    Ok(r)
}

fn sweep(cli: &Cli, x: u64) -> cubic_core::Result<Vec<cubic_core::gauss::PrimeGauss>> {
    if cli.no_cache {
        return cubic_core::gauss::prime_sweep(x);
    }
    GaussCache::open(resolve_cache_path(cli.cache.as_deref()))?.sweep(x)
}

fn execute(cli: &Cli) -> cubic_core::Result<Rendered> {
    let start = Instant::now();
    match &cli.command {
        Command::Split { p } => {
            let (pi, pib) = split_rational_prime(*p)?;
            let env = envelope(cli, "split", json!({ "p": p }), &(pi, pib), vec![], start)?;
            Ok(Rendered::new(env, format!("{pi}\n{pib}")))
        }
        Command::Symbol { a, b } => {
            let v = cubic_symbol(*a, *b)?;
            let env = envelope(cli, "symbol", json!({ "a": a, "b": b }), &v, vec![], start)?;
            Ok(Rendered::new(env, v.to_string()))
        }
        Command::Gauss { c, direct } => {
            let v = if *direct { gauss_sum_direct(*c, EisensteinInt::ONE)? } else { gtilde(*c)? };
            let env = envelope(cli, "gauss", json!({ "c": c, "direct": direct }), &v, vec![], start)?;
            let text = format!("{} {:+}i  (err <= {:e})", v.value.re, v.value.im, v.err_bound);
            Ok(Rendered::new(env, text))
        }
        Command::Sp { p } => {
            let s = kummer_sum_sp(*p)?;
            let env = envelope(cli, "sp", json!({ "p": p }), &s, vec!["sum_{n mod p} e(n^3/p)".into()], start)?;
            Ok(Rendered::new(env, s.to_string()))
        }
        Command::Kummer { x } => {
            let h = kummer_histogram_from_sweep(*x, &sweep(cli, *x)?)?;
            let results = json!({ "x": h.x, "counts": h.counts, "frequencies": h.frequencies, "mean_cos": h.mean_cos() });
            let env = envelope(cli, "kummer", json!({ "x": x }), &results, vec![], start)?;
            let text = format!(
                "I1 {} ({:.4})\nI2 {} ({:.4})\nI3 {} ({:.4})",
                h.counts[0], h.frequencies[0], h.counts[1], h.frequencies[1], h.counts[2], h.frequencies[2]
            );
            let mut r = Rendered::new(env, text);
            r.table = Some(Table::from_kummer(&h));
            Ok(r)
        }
        Command::Patterson { x, smooth, wl, wr } => {
            let window =
                if *smooth { PattersonWindow::Smooth(SmoothWindow::bump(*wl, *wr)?) } else { PattersonWindow::Sharp };
            let reach = if *smooth { (wr * *x as f64).ceil() as u64 } else { *x };
            from_report(cli, patterson_sum_from_sweep(*x, window, &sweep(cli, reach)?)?)
        }
        Command::Powersum { k, x, wl, wr } => {
            let w = SmoothWindow::bump(*wl, *wr)?;
            let reach = (wr * *x as f64).ceil() as u64;
            from_report(cli, power_sum_k_from_sweep(*k, *x, &w, &sweep(cli, reach)?)?)
        }
        Command::Type1 { r, ell, u, window } => {
            let w = window.build()?;
            let need = (w.support().1 * *u as f64).ceil() as u64 * r.norm_u64();
            let table = GaussTable::from_sweep(need, &sweep(cli, need)?)?;
            from_report(cli, type1_sum(*r, *ell, *u, &w, Some(&table))?)
        }
        Command::SieveForm { a, b, beta, seed } => {
            let w = SmoothWindow::bump(1.0, 2.0)?;
            let seq = beta_sequence(cli, *beta, *b, *seed, &w)?;
            let form = large_sieve_form(*a, &seq)?;
            let results = json!({ "form": form, "norm_sq": seq.norm_sq(), "support": seq.len() });
            let env = envelope(cli, "sieve-form", json!({ "a": a, "b": b, "beta": format!("{beta:?}"), "seed": seed }), &results, vec![], start)?;
            Ok(Rendered::new(env, format!("{form}  (|beta|^2 = {})", seq.norm_sq())))
        }
        Command::SieveNorm { a, b, iters, tol } => {
            let est = operator_norm(*a, *b, *iters, *tol)?;
            let env = envelope(cli, "sieve-norm", json!({ "a": a, "b": b, "iters": iters, "tol": tol }), &est, vec![], start)?;
            Ok(Rendered::new(env, format!("{}  ({} iterations)", est.value, est.iterations)))
        }
        Command::Sharpness { ns } => {
            let w = SmoothWindow::bump(1.0, 2.0)?;
            let rep = sharpness_probe(ns, &w)?;
            let mut text: String =
                rep.points.iter().map(|p| format!("N = {}  value = {}\n", p.n, p.value)).collect();
            text.push_str(&format!("slope = {}", rep.slope));
            let env = envelope(cli, "sharpness", json!({ "ns": ns }), &rep, vec!["target slope 2/3".into()], start)?;
            Ok(Rendered::new(env, text))
        }
        Command::CorrectedSieve { a, b, beta } => {
            let w = SmoothWindow::bump(1.0, 2.0)?;
            let seq = beta_sequence(cli, *beta, *b, 1, &w)?;
            let r = corrected_sieve_sum(*a, &seq, &w, None)?;
            let env = envelope(cli, "corrected-sieve", json!({ "a": a, "b": b, "beta": format!("{beta:?}") }), &r, vec![], start)?;
            Ok(Rendered::new(env, format!("corrected = {}\nuncorrected = {}", r.corrected, r.uncorrected)))
        }
        Command::PoissonCheck { n1, n2, m, q, tol } => {
            let w = SmoothWindow::bump(1.0, 2.0)?;
            let opts = PoissonOptions { rel_tol: *tol, ..PoissonOptions::default() };
            let rep = match q {
                Some(q) => {
                    let q = *q;
                    let psi = PeriodicTable::from_fn(q, |x| cubic_symbol(x, q).map(|v| v.to_complex()).unwrap_or_default())?;
                    poisson_radial_check(&psi, &w, *m, &opts)?
                }
                None => poisson_twisted_check(*n1, *n2, &w, *m, &opts)?,
            };
            let params = json!({ "n1": n1, "n2": n2, "m": m, "q": q, "tol": tol });
            let env = envelope(cli, "poisson-check", params, &rep, vec![], start)?;
            let text = format!("lhs = {}\nrhs = {}\ndiscrepancy = {:e}  (K = {})", rep.lhs, rep.rhs, rep.discrepancy, rep.truncation);
            let mut r = Rendered::new(env, text);
            r.ok = rep.passes(*tol);
            Ok(r)
        }
        Command::CombCheck { nmax, w, z } => {
            let rep = comb_identity_check(*nmax, *w, *z)?;
            let env = envelope(cli, "comb-check", json!({ "nmax": nmax, "w": w, "z": z }), &rep, vec![], start)?;
            let text = format!("checked {} coefficients, max discrepancy {}", rep.checked, rep.max_discrepancy);
            let mut r = Rendered::new(env, text);
            r.ok = rep.exact();
            Ok(r)
        }
        Command::Selftest => {
            let results = selftest();
            let ok = results.iter().all(|r| r.1);
            let text: Vec<String> = results
                .iter()
                .map(|(name, pass, detail)| format!("{} {name}: {detail}", if *pass { "ok  " } else { "FAIL" }))
                .collect();
            let env = envelope(cli, "selftest", json!({}), &results, vec![], start)?;
            let mut r = Rendered::new(env, text.join("\n"));
            r.ok = ok;
            Ok(r)
        }
    }
}

fn beta_sequence(cli: &Cli, kind: BetaKind, b: u64, seed: u64, w: &SmoothWindow) -> cubic_core::Result<SieveSequence> {
    match kind {
        BetaKind::Random => SieveSequence::random(b, seed),
        BetaKind::Smooth => SieveSequence::smooth(b, w),
        BetaKind::Witness => {
            let reach = 2 * b;
            SieveSequence::witness(b, w, &GaussTable::from_sweep(reach, &sweep(cli, reach)?)?)
        }
    }
}

type Check = (String, bool, String);

fn selftest() -> Vec<Check> {
    let mut out = Vec::new();
    let mut record = |name: &str, r: cubic_core::Result<(bool, String)>| match r {
        Ok((pass, detail)) => out.push((name.to_string(), pass, detail)),
        Err(e) => out.push((name.to_string(), false, e.to_string())),
    };
    record("cube relation", (|| {
        let mut worst: f64 = 0.0;
        for c in cubic_core::enumerate_primary(1, 500, Predicate::Squarefree) {
            let mu = multiplicative_functions(c)?.mobius as f64;
            let g = gtilde(c)?.value;
            worst = worst.max((g.powi(3) - c.to_complex() / c.abs() * mu).norm());
        }
        Ok((worst < 1e-8, format!("max error {worst:e}")))
    })());
    record("symbol vs Euler criterion", (|| {
        let mut bad = 0;
        for pi in cubic_core::eisenstein::primary_primes_up_to(300) {
            for a in -6i128..=6 {
                for b in -6i128..=6 {
                    let x = EisensteinInt::new(a, b);
                    bad += (cubic_symbol(x, pi)? != symbol_euler_prime(x, pi)?) as usize;
                }
            }
        }
        Ok((bad == 0, format!("{bad} mismatches")))
    })());
    record("S_p identity", (|| {
        let mut n = 0;
        for p in cubic_core::arith::primes_up_to(2000).into_iter().filter(|p| p % 3 == 1) {
            kummer_sum_sp(p)?;
            n += 1;
        }
        Ok((true, format!("{n} primes")))
    })());
    record("combinatorial identity", (|| {
        let r = comb_identity_check(2000, 10, 50)?;
        Ok((r.exact(), format!("max discrepancy {} over {} coefficients", r.max_discrepancy, r.checked)))
    })());
    record("sieve weights", (|| {
        let sw = sieve_weights(30.0, SieveFlavor::Squarefree)?;
        let l1 = sw.get(EisensteinInt::ONE);
        Ok((l1 == 1.0, format!("lambda_1 = {l1}")))
    })());
    out
}
