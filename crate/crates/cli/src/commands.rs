use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtheta::qspecial::{c_q, log_q_gamma, theta4, theta4_imag, zeta_q, NomeP, QBase};
use qtheta::series_core::{partition_gf, partition_numbers, TruncationPolicy};
use qtheta::special_functions::{d2_hyp2f1_dc2, d_hyp2f1_dc, dilog, hyp2f1_11};
use qtheta::verify::{run_selected, GridOverrides, Tolerances, FAMILIES};
use qtheta::Complex64;

use crate::document::{ReportDocument, RunConfig};
use crate::exit;
use crate::numfmt::format_g;

const TOL_ENV: &str = "QTHETA_TOL";

#[derive(Debug, Parser)]
#[command(name = "qtheta", version, about = "q-gamma / theta identity harness")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run identity checks and write a report.
    Check(CheckArgs),
    /// Evaluate a single function.
    Eval(EvalArgs),
    /// Tabulate θ₄(it, p) on an even grid as CSV.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Check names, `genfunc`, or `all`.
    #[arg(required = true)]
    pub names: Vec<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Tolerance applied to every non-exact check (overrides QTHETA_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Qgamma,
    Theta4,
    Dilog,
    Zetaq,
    Partition,
    Cq,
    Hyp2f1,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: Function,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub z: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Order of the derivative in c at c = 1 (hyp2f1 only).
    #[arg(long)]
    pub deriv: Option<u8>,
    /// Print the logarithm (qgamma, cq).
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub p: f64,
    /// Defaults to −L = log(p)/2.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Defaults to L = −log(p)/2.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    /// Output file; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Runs one parsed command and returns its exit code.
pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Check(args) => cmd_check(&args),
        Command::Eval(args) => cmd_eval(&args),
        Command::Sample(args) => cmd_sample(&args),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("qtheta: {}", failure.message);
            failure.code
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::USAGE,
            message: message.into(),
        }
    }

    fn io(path: Option<&Path>, err: impl std::fmt::Display) -> Self {
        let target = path.map_or_else(|| "standard output".to_string(), |p| p.display().to_string());
        Self {
            code: exit::IO,
            message: format!("cannot write {target}: {err}"),
        }
    }
}

impl From<qtheta::Error> for Failure {
    fn from(err: qtheta::Error) -> Self {
        Self::usage(err.to_string())
    }
}

fn tolerances(flag: Option<f64>) -> Result<Tolerances, Failure> {
    let global = match flag {
        Some(v) => Some(v),
        None => match std::env::var(TOL_ENV) {
            Ok(text) => Some(
                text.trim()
                    .parse::<f64>()
                    .map_err(|_| Failure::usage(format!("{TOL_ENV}={text:?} is not a number")))?,
            ),
            Err(std::env::VarError::NotPresent) => None,
            Err(err) => return Err(Failure::usage(format!("{TOL_ENV}: {err}"))),
        },
    };
    match global {
        Some(v) => Ok(Tolerances::uniform(v)?),
        None => Ok(Tolerances::default()),
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::io(path, e)),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::io(None, e))
        }
    }
}

fn cmd_check(args: &CheckArgs) -> Result<u8, Failure> {
    if let Some(bad) = args
        .names
        .iter()
        .find(|n| n.as_str() != "all" && !qtheta::verify::is_known_name(n))
    {
        return Err(Failure::usage(format!(
            "unknown check {bad:?}; valid names: all, genfunc, {}",
            FAMILIES.join(", ")
        )));
    }
    let tol = tolerances(args.tol)?;
    let overrides = GridOverrides {
        q: args.q,
        t: args.t,
        p: args.p,
        x: args.x,
        s: args.s,
        y: args.y,
        n: args.n,
    };
    let reports = run_selected(&args.names, &overrides, &tol)?;
    let generated_at = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
    let doc = ReportDocument::new(RunConfig::new(&args.names, &overrides, &tol), reports, generated_at);

    let bytes = match args.format {
        Format::Json => doc.to_json().into_bytes(),
        Format::Csv => {
            let mut buf = Vec::new();
            doc.write_csv(&mut buf).map_err(|e| Failure::io(args.out.as_deref(), e))?;
            buf
        }
    };
    write_output(args.out.as_deref(), &bytes)?;

    let failed: Vec<_> = doc.reports.iter().filter(|r| !r.pass).collect();
    eprintln!("{} checks, {} failed", doc.reports.len(), failed.len());
    for r in &failed {
        eprintln!("  FAIL {} {:?}: {}", r.check_id, r.params, r.notes);
    }
    Ok(if failed.is_empty() { exit::OK } else { exit::CHECK_FAILED })
}

fn need<T: Copy>(value: Option<T>, flag: &str, function: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::usage(format!("eval {function} needs --{flag}")))
}

fn cmd_eval(args: &EvalArgs) -> Result<u8, Failure> {
    let policy = TruncationPolicy::default();
    let line = match args.function {
        Function::Qgamma => {
            let base = QBase::new(need(args.q, "q", "qgamma")?)?;
            let v = log_q_gamma(need(args.x, "x", "qgamma")?, &base, &policy)?;
            format_g(if args.log { v } else { v.exp() }, 15)
        }
        Function::Cq => {
            let base = QBase::new(need(args.q, "q", "cq")?)?;
            let v = c_q(&base, &policy)?;
            format_g(if args.log { v } else { v.exp() }, 15)
        }
        Function::Theta4 => {
            let nome = NomeP::new(need(args.p, "p", "theta4")?)?;
            let t = args.t.unwrap_or(0.0);
            match args.x {
                None | Some(0.0) => format_g(theta4_imag(t, &nome, &policy)?, 15),
                Some(x) => complex(theta4(Complex64::new(x, t), &nome, &policy)?),
            }
        }
        Function::Dilog => format_g(dilog(need(args.z, "z", "dilog")?)?, 15),
        Function::Zetaq => {
            let base = QBase::new(need(args.q, "q", "zetaq")?)?;
            let s = Complex64::new(need(args.s, "s", "zetaq")?, 0.0);
            complex(zeta_q(s, need(args.x, "x", "zetaq")?, &base, &policy)?)
        }
        Function::Partition => match (args.n, args.p) {
            (Some(n), _) => partition_numbers(n).values()[n].to_string(),
            (None, Some(p)) => format_g(partition_gf(p, 20_000, &policy)?, 15),
            (None, None) => return Err(Failure::usage("eval partition needs --n or --p")),
        },
        Function::Hyp2f1 => {
            let z = need(args.z, "z", "hyp2f1")?;
            match args.deriv {
                None | Some(0) => {
                    let c = Complex64::new(need(args.c, "c", "hyp2f1")?, 0.0);
                    complex(hyp2f1_11(c, z, &policy)?)
                }
                Some(1) => format_g(d_hyp2f1_dc(z)?, 15),
                Some(2) => format_g(d2_hyp2f1_dc2(z)?, 15),
                Some(k) => return Err(Failure::usage(format!("--deriv must be 0, 1 or 2, got {k}"))),
            }
        }
    };
    write_output(None, format!("{line}\n").as_bytes())?;
    Ok(exit::OK)
}

fn complex(v: Complex64) -> String {
    if v.im == 0.0 {
        format_g(v.re, 15)
    } else {
        format!("{} {}", format_g(v.re, 15), format_g(v.im, 15))
    }
}

fn cmd_sample(args: &SampleArgs) -> Result<u8, Failure> {
    let nome = NomeP::new(args.p)?;
    if args.steps < 2 {
        return Err(Failure::usage(format!("--steps must be at least 2, got {}", args.steps)));
    }
    let from = args.from.unwrap_or(-nome.half_gap());
    let to = args.to.unwrap_or(nome.half_gap());
    if !(from.is_finite() && to.is_finite()) {
        return Err(Failure::usage("--from and --to must be finite"));
    }
    let policy = TruncationPolicy::default();
    let steps = args.steps as f64;
    let mut csv = String::from("t,theta4\n");
    for i in 0..=args.steps {
        let k = i as f64;
        // Weighted form keeps a symmetric range exactly symmetric.
        let t = (from * (steps - k) + to * k) / steps;
        let value = theta4_imag(t, &nome, &policy)?;
        csv.push_str(&format!("{},{}\n", format_g(t, 17), format_g(value, 17)));
    }
    write_output(args.out.as_deref(), csv.as_bytes())?;
    Ok(exit::OK)
}
