use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tornzeta::closed_form::closed_form;
use tornzeta::exact::bernoulli;
use tornzeta::numeric::consts::{const_ln2, const_pi, const_zeta, zx_numeric};
use tornzeta::numeric::oracle;
use tornzeta::{emit, run_suite, verify, Format, Method, NormalMode, NumericCfg, SeriesSpec, SuiteManifest};

const SHOWN_DIGITS: usize = 30;

#[derive(Parser)]
#[command(name = "tornzeta", version, about = "Closed forms and numerical checks for Tornheim-like series")]
struct Cli {
    /// Working precision in decimal digits (default: $TORNZETA_DIGITS or 50).
    #[arg(long, global = true)]
    digits: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OracleOpts {
    #[arg(long, value_enum, default_value_t = MethodArg::Diagonal)]
    method: MethodArg,
    /// Cutoff: box side for raw sums, last index for diagonal sums.
    #[arg(long)]
    nmax: Option<u64>,
    /// Quadrature halving levels.
    #[arg(long)]
    levels: Option<u32>,
    /// Plain truncation without the Euler–Maclaurin tail estimate.
    #[arg(long)]
    no_accel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed form of a series, symbolic and numeric.
    Eval {
        spec: SeriesSpec,
        /// Rewrite even zeta values as powers of pi.
        #[arg(long)]
        pi: bool,
    },
    /// Evaluate a series numerically.
    Oracle {
        spec: SeriesSpec,
        #[command(flatten)]
        opts: OracleOpts,
    },
    /// Compare closed form and oracle.
    Verify {
        spec: SeriesSpec,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        opts: OracleOpts,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
    },
    /// Run a named suite of verifications.
    Suite {
        #[arg(long, default_value = "paper-full")]
        preset: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Evaluate entries one at a time.
        #[arg(long)]
        sequential: bool,
    },
    /// Print pi, ln 2 and optionally zeta(K).
    Constants {
        #[arg(long)]
        zeta: Option<i64>,
    },
    /// Print the Bernoulli number B_N.
    Bernoulli { n: usize },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Raw,
    Diagonal,
    Quadrature,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Raw => Method::Raw,
            MethodArg::Diagonal => Method::Diagonal,
            MethodArg::Quadrature => Method::Quadrature,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn base_cfg(digits: Option<u32>) -> Result<NumericCfg> {
    let mut cfg = NumericCfg::from_env()?;
    if let Some(d) = digits {
        cfg.digits = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn oracle_cfg(base: NumericCfg, opts: &OracleOpts) -> Result<NumericCfg> {
    let mut cfg = base.with_method(opts.method.into()).with_accelerate(!opts.no_accel);
    if let Some(n) = opts.nmax {
        cfg.n_max = n;
    }
    if let Some(l) = opts.levels {
        cfg.quad_levels = l;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool> {
    let digits = cli.digits;
    let base = || base_cfg(digits);
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval { spec, pi } => {
            let mut cf = closed_form(&spec)?;
            if pi {
                cf = cf.normalize(NormalMode::PreferPi);
            }
            let v = zx_numeric(&cf, base()?.digits)?;
            writeln!(out, "{spec} = {cf}")?;
            writeln!(out, "  = {}", v.to_decimal_string(SHOWN_DIGITS))?;
        }
        Command::Oracle { spec, opts } => {
            let cfg = oracle_cfg(base()?, &opts)?;
            let r = oracle(&spec, &cfg)?;
            writeln!(out, "{spec} ~ {}", r.value.to_decimal_string(SHOWN_DIGITS))?;
            writeln!(out, "  method: {}{}", r.method, if r.accelerated { " (tail estimated)" } else { "" })?;
            if let Some(n) = r.n_used {
                writeln!(out, "  cutoff: {n}")?;
            }
            if let Some(l) = r.levels_used {
                writeln!(out, "  levels: {l}")?;
            }
            let show = |b: &Option<tornzeta::numeric::BigFl>| {
                b.as_ref().map(|x| x.to_decimal_string(3)).unwrap_or_else(|| "none".into())
            };
            writeln!(out, "  tail bound: {}", show(&r.tail_bound))?;
            if r.accelerated {
                writeln!(out, "  truncation bound: {}", show(&r.truncation_bound))?;
            }
            writeln!(out, "  error estimate: {}", r.error_estimate.to_decimal_string(3))?;
            writeln!(out, "  elapsed: {:.3}s", r.elapsed_secs)?;
        }
        Command::Verify { spec, tol, opts, format } => {
            let cfg = oracle_cfg(base()?, &opts)?;
            let report = verify(&spec, &cfg, tol)?;
            emit(std::slice::from_ref(&report), format.into(), &mut out)?;
            return Ok(report.pass);
        }
        Command::Suite { preset, format, out: path, sequential } => {
            let manifest = SuiteManifest::preset(&preset, &base()?)?;
            let outcome = run_suite(&manifest, !sequential)?;
            match path {
                Some(p) => {
                    let f = File::create(&p).with_context(|| format!("creating {}", p.display()))?;
                    let mut w = BufWriter::new(f);
                    emit(&outcome.reports, format.into(), &mut w)?;
                    eprintln!(
                        "{}/{} passed; report written to {}",
                        outcome.passed(),
                        outcome.reports.len(),
                        p.display()
                    );
                }
                None => emit(&outcome.reports, format.into(), &mut out)?,
            }
            return Ok(outcome.all_pass());
        }
        Command::Constants { zeta } => {
            let base = base()?;
            writeln!(out, "pi    = {}", const_pi(base.digits)?.to_decimal_string(base.digits as usize))?;
            writeln!(out, "ln2   = {}", const_ln2(base.digits)?.to_decimal_string(base.digits as usize))?;
            if let Some(k) = zeta {
                let z = const_zeta(k, base.digits)?;
                writeln!(out, "z({k}) = {}", z.to_decimal_string(base.digits as usize))?;
            }
        }
        Command::Bernoulli { n } => writeln!(out, "B_{n} = {}", bernoulli(n))?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
