//! Command-line front end.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::{self, AsymptoticKind, BoundError, Evaluation, Violation};
use crate::enumerators::{
    self, enumerate_from_additive_code, enumerate_from_projector_with_limit, extract_distances,
    rational_to_string, verify_identities, DistributionTables, EnumError, DEFAULT_PROJECTOR_MAX_N,
};
use crate::example;
use crate::gf4::{AdditiveCode, CodeError};
use crate::krawtchouk::{self, KrawtchoukError, KrawtchoukTable};
use crate::pauli::{self, PauliError};

pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_BUDGET: i32 = 5;
pub const EXIT_IDENTITY: i32 = 6;
pub const EXIT_INVALID: i32 = 7;

/// Overrides the `n` ceiling of the projector path.
pub const MAX_N_ENV: &str = "QENUM_MAX_N";

#[derive(Debug, Parser)]
#[command(name = "qenum", version, about = "Quantum weight enumerators, MacWilliams identities and code bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weight, double weight and complete weight enumerators of a code.
    Enumerate(CodeArgs),
    /// Enumerators of the symplectic dual, or the dual code itself.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        /// Print the dual additive code instead of its enumerators.
        #[arg(long)]
        code_only: bool,
    },
    /// Verify every enumerator identity; exits nonzero if one fails.
    MacwilliamsCheck(CodeArgs),
    /// Symmetric distance and asymmetric distance frontier.
    Distances(CodeArgs),
    /// Exact Krawtchouk values.
    Krawtchouk(KrawtchoukArgs),
    /// Singleton, Hamming and linear programming bounds.
    Bound(BoundArgs),
    /// Reproduce the built-in [[5,1,3]] example.
    Example {
        #[arg(value_parser = ["513"])]
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Count codewords of the additive code and its dual.
    Counting,
    /// Brute force over all Pauli errors against the code projector.
    Projector,
}

#[derive(Debug, Args)]
pub struct CodeArgs {
    /// Code file: header `n=<int> format=<f4|ab>` followed by one generator per line.
    #[arg(long)]
    pub code: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Method::Counting)]
    pub method: Method,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
pub struct KrawtchoukArgs {
    #[command(subcommand)]
    pub table: Option<KrawtchoukCommand>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub x: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum KrawtchoukCommand {
    /// Full table `P_i(x)` as CSV.
    Table {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    Singleton,
    Hamming,
    Lp,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub kind: BoundKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub dx: Option<usize>,
    #[arg(long)]
    pub dz: Option<usize>,
    /// Also test `[[n,k,d_z/d_x]]` against the bound.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub asymptotic: bool,
    #[arg(long)]
    pub deltax: Option<f64>,
    #[arg(long)]
    pub deltaz: Option<f64>,
    /// Write `(delta, bound)` pairs at step 0.005 to this CSV file.
    #[arg(long)]
    pub emit_curve: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Krawtchouk(#[from] KrawtchoukError),
    #[error("{0}")]
    Invalid(String),
    /// Identity check failed; carries the full report.
    #[error("{0}")]
    IdentityFailure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            CliError::Code(CodeError::TooLarge { .. } | CodeError::LengthTooLarge(_))
            | CliError::Enum(EnumError::BudgetExceeded { .. })
            | CliError::Enum(EnumError::Code(CodeError::TooLarge { .. }))
            | CliError::Enum(EnumError::Pauli(PauliError::BudgetExceeded { .. }))
            | CliError::Pauli(PauliError::BudgetExceeded { .. }) => EXIT_BUDGET,
            CliError::Code(_) | CliError::Enum(EnumError::InvalidTable(_)) => EXIT_PARSE,
            CliError::IdentityFailure(_) => EXIT_IDENTITY,
            _ => EXIT_INVALID,
        }
    }
}

fn projector_limit() -> Result<usize, CliError> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Invalid(format!("{MAX_N_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_PROJECTOR_MAX_N),
    }
}

fn read_code(path: &PathBuf) -> Result<AdditiveCode, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(AdditiveCode::parse(&text)?)
}

fn tables(args: &CodeArgs) -> Result<(DistributionTables, DistributionTables, bool), CliError> {
    let code = read_code(&args.code)?;
    match args.method {
        Method::Counting => {
            let e = enumerate_from_additive_code(&code)?;
            Ok((e.primal, e.dual, e.self_orthogonal))
        }
        Method::Projector => {
            let limit = projector_limit()?;
            if code.len() > limit {
                return Err(EnumError::BudgetExceeded { n: code.len(), limit }.into());
            }
            let p = pauli::projector_from_code(&code)?;
            let (a, b) = enumerate_from_projector_with_limit(&p, limit)?;
            Ok((a, b, true))
        }
    }
}

fn render_tables(t: &DistributionTables, format: Format) -> String {
    let suffix = if t.dual { "⊥" } else { "" };
    match format {
        Format::Json => {
            let mut s = t.to_json();
            s.push('\n');
            s
        }
        Format::Text => format!(
            "n = {}, K = {}\nB{suffix} = {}\nC{suffix} = {}\nD{suffix} = {}\n",
            t.n,
            t.k,
            example::render_b(&t.b_polynomial()),
            example::render_c(&t.c_polynomial()),
            example::render_d(&t.d_polynomial()),
        ),
        Format::Csv => {
            let mut s = String::from("table,i,j,k,value\n");
            for (i, v) in t.b.iter().enumerate() {
                let _ = writeln!(s, "B,{i},,,{}", rational_to_string(v));
            }
            for (i, row) in t.c.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(s, "C,{i},{j},,{}", rational_to_string(v));
                }
            }
            for (&(i, j, k), v) in &t.d {
                let _ = writeln!(s, "D,{i},{j},{k},{}", rational_to_string(v));
            }
            s
        }
    }
}

fn identity_report(p: &DistributionTables, d: &DistributionTables) -> (String, bool) {
    let checks = verify_identities(p, d);
    let mut out = String::new();
    for c in &checks {
        let _ = writeln!(out, "{:4} {}", if c.holds { "ok" } else { "FAIL" }, c.name);
    }
    let all = checks.iter().all(|c| c.holds);
    out.push_str(if all { "ALL IDENTITIES HOLD\n" } else { "IDENTITY CHECK FAILED\n" });
    (out, all)
}

fn violations_text(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  {x}\n")).collect()
}

fn evaluation_text<T: bounds::CertValue>(name: &str, ev: &Evaluation<T>) -> String {
    let mut s = String::new();
    match &ev.bound {
        Some(b) => {
            let _ = writeln!(s, "{name} bound: K <= {}", b.describe());
            if let Some((i, j)) = ev.argmax {
                let _ = writeln!(s, "maximum at (i, j) = ({i}, {j})");
            }
        }
        None => {
            let _ = writeln!(s, "{name} bound: unbounded");
        }
    }
    if ev.violations.is_empty() {
        s.push_str("certificate conditions: all hold\n");
    } else {
        let _ = writeln!(s, "certificate conditions: {} violated", ev.violations.len());
        s.push_str(&violations_text(&ev.violations));
    }
    s
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("missing --{flag}")))
}

fn run_bound(args: &BoundArgs) -> Result<String, CliError> {
    let mut out = String::new();
    if let Some(path) = &args.emit_curve {
        let csv = match args.kind {
            BoundKind::Hamming => bounds::asymptotic_curve_csv(AsymptoticKind::Hamming),
            BoundKind::Lp => bounds::asymptotic_curve_csv(AsymptoticKind::LinearProgramming),
            BoundKind::Singleton => {
                let mut s = String::from("delta,bound\n");
                for k in 0..=100 {
                    let d = k as f64 * 0.005;
                    let _ = writeln!(s, "{d:.3},{:.9}", 1.0 - 2.0 * d);
                }
                s
            }
        };
        std::fs::write(path, csv).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        let _ = writeln!(out, "curve written to {}", path.display());
    }
    if args.asymptotic {
        let (dx, dz) = match (args.deltax, args.deltaz) {
            (Some(x), Some(z)) => (x, z),
            (Some(x), None) => (x, x),
            _ => return Err(CliError::Invalid("missing --deltax".into())),
        };
        match args.kind {
            BoundKind::Singleton => {
                let _ = writeln!(out, "log2(K)/n <= {:.9}", 1.0 - dx - dz);
            }
            BoundKind::Hamming | BoundKind::Lp => {
                let (b, closed) = if args.kind == BoundKind::Hamming {
                    (bounds::hamming_asymptotic_bound(dx, dz)?, bounds::hamming_closed_form(dx, dz)?)
                } else {
                    (bounds::lp_asymptotic_bound(dx, dz)?, bounds::lp_closed_form(dx, dz)?)
                };
                let _ = writeln!(out, "log2(K)/n <= {:.9}", b.value);
                let _ = writeln!(out, "tau = {:.9}, sigma = {:.9}", b.params.tau, b.params.sigma);
                let _ = writeln!(out, "maximum at xi = {:.7}, eta = {:.7}", b.xi.arg, b.eta.arg);
                let _ = writeln!(out, "closed form (xi = eta = 0): {closed:.9}");
            }
        }
        return Ok(out);
    }
    if args.emit_curve.is_some() && args.n.is_none() {
        return Ok(out);
    }
    let n = need(args.n, "n")?;
    let dx = need(args.dx, "dx")?;
    let dz = need(args.dz, "dz")?;
    match args.kind {
        BoundKind::Singleton => {
            let ev = bounds::singleton_bound(n, dx, dz)?;
            out.push_str(&evaluation_text("Singleton", &ev));
            if let Some(k) = args.k {
                let ok = bounds::singleton_check(n, k, dx, dz);
                let _ = writeln!(
                    out,
                    "[[{n},{k},{dz}/{dx}]]: n >= k + d_x + d_z - 2 is {}",
                    if ok { "satisfied" } else { "violated" }
                );
            }
        }
        BoundKind::Hamming => {
            let cert = bounds::hamming_finite_certificate(n, dx, dz)?;
            out.push_str(&evaluation_text("Hamming", &bounds::evaluate_key_inequality(&cert)));
        }
        BoundKind::Lp => {
            let r = bounds::finite_lp_certificate(n, dx, dz)?;
            let _ = writeln!(
                out,
                "t = {}, a = {:.10}; s = {}, b = {:.10}",
                r.x_axis.t, r.x_axis.a, r.z_axis.t, r.z_axis.a
            );
            out.push_str(&evaluation_text("linear programming", &r.evaluation));
            if r.exceeds_singleton {
                out.push_str("warning: bound exceeds the Singleton bound\n");
            }
        }
    }
    Ok(out)
}

fn run_example() -> Result<String, CliError> {
    let report = example::run()?;
    let mut out = String::new();
    for c in &report.polynomials {
        let _ = writeln!(
            out,
            "{} = {}{}",
            c.name,
            c.rendered,
            if c.matches() { "" } else { "   MISMATCH" }
        );
    }
    let (text, all) = identity_report(&report.enumeration.primal, &report.enumeration.dual);
    out.push_str(&text);
    if !all || !report.all_match() {
        return Err(CliError::IdentityFailure(out));
    }
    Ok(out)
}

/// Runs a parsed command and returns what it prints on success.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Enumerate(args) => {
            let (p, _, _) = tables(args)?;
            Ok(render_tables(&p, args.format))
        }
        Command::Dual { code, code_only } => {
            if *code_only {
                return Ok(read_code(&code.code)?.symplectic_dual().to_text());
            }
            let (_, d, _) = tables(code)?;
            Ok(render_tables(&d, code.format))
        }
        Command::MacwilliamsCheck(args) => {
            let (p, d, self_orthogonal) = tables(args)?;
            let (mut text, all) = identity_report(&p, &d);
            if !self_orthogonal {
                text.insert_str(0, "warning: code is not symplectic self-orthogonal\n");
            }
            if all {
                Ok(text)
            } else {
                Err(CliError::IdentityFailure(text))
            }
        }
        Command::Distances(args) => {
            let (p, d, _) = tables(args)?;
            let dist = extract_distances(&p, &d)?;
            Ok(match args.format {
                Format::Json => format!("{}\n", serde_json::to_string(&dist).expect("serializable")),
                Format::Csv => {
                    let mut s = format!("symmetric_d,{}\nt_x,t_z\n", dist.symmetric_d);
                    for (x, z) in &dist.asymmetric_frontier {
                        let _ = writeln!(s, "{x},{z}");
                    }
                    s
                }
                Format::Text => {
                    let pairs: Vec<String> =
                        dist.asymmetric_frontier.iter().map(|(x, z)| format!("({x}, {z})")).collect();
                    format!(
                        "symmetric distance: {}\nasymmetric frontier (t_x, t_z): {}\n",
                        dist.symmetric_d,
                        pairs.join(" ")
                    )
                }
            })
        }
        Command::Krawtchouk(args) => match &args.table {
            Some(KrawtchoukCommand::Table { n }) => Ok(KrawtchoukTable::new(*n).to_csv()),
            None => {
                let n = need(args.n, "n")?;
                let i = need(args.i, "i")?;
                let x = args.x.ok_or_else(|| CliError::Invalid("missing --x".into()))?;
                Ok(format!("{}\n", krawtchouk::eval_integer(n, i, x)?))
            }
        },
        Command::Bound(args) => run_bound(args),
        Command::Example { .. } => run_example(),
    }
}

/// Reads a tables file written by `enumerate --format json`.
pub fn read_tables_json(text: &str, dual: bool) -> Result<DistributionTables, CliError> {
    Ok(enumerators::DistributionTables::from_json(text, dual)?)
}
