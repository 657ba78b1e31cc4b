use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use comax::analysis::{analyze, enestrom_kakeya, find_roots, Annulus};
use comax::closed_forms::Shape;
use comax::config::{OutputFormat, RunConfig};
use comax::export::{roots_csv, roots_svg};
use comax::graph::{comaximal_graph_direct, to_dot};
use comax::number_theory::factorize;
use comax::survey::{compute, scan, verify_range, ScanRow, VerifyReport};
use comax::{Error, Method, PolyKind};

#[derive(Parser)]
#[command(name = "comax", version, about = "Polynomials of comaximal graphs of Z_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum, env = "COMAX_FORMAT")]
    format: Option<Format>,

    /// Largest graph order for maximal-independent-set enumeration.
    #[arg(long, global = true, env = "COMAX_ORACLE_LIMIT_MIS", default_value_t = 150)]
    oracle_limit_mis: usize,

    /// Largest graph order for independent-set counting.
    #[arg(long, global = true, env = "COMAX_ORACLE_LIMIT_IND", default_value_t = 100)]
    oracle_limit_ind: usize,

    /// Largest graph order the graph builders accept.
    #[arg(long, global = true, env = "COMAX_VERTEX_CAPACITY", default_value_t = 5000)]
    vertex_capacity: usize,

    /// Root residual tolerance, relative to the coefficient norm.
    #[arg(long, global = true, env = "COMAX_TOL", default_value_t = 1e-10)]
    tol: f64,

    /// Iteration cap for the root finder.
    #[arg(long, global = true, env = "COMAX_MAX_ITERATIONS", default_value_t = 1000)]
    max_iterations: usize,

    /// Use the literal reference formula instead of the default method.
    #[arg(long, global = true)]
    as_printed: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Svg,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Dot => OutputFormat::Dot,
            Format::Svg => OutputFormat::Svg,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Di,
    Independence,
}

impl From<Kind> for PolyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Di => PolyKind::Di,
            Kind::Independence => PolyKind::Independence,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Closed,
    Structured,
    Oracle,
    AsPrinted,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Closed => Method::Closed,
            MethodArg::Structured => Method::Structured,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::AsPrinted => Method::AsPrinted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Prime,
    PrimePower,
    Pq,
    TwoPrimePowers,
    Pqr,
    ThreePrimePowers,
    Generic,
}

impl From<ShapeArg> for Shape {
    fn from(s: ShapeArg) -> Self {
        match s {
            ShapeArg::Prime => Shape::Prime,
            ShapeArg::PrimePower => Shape::PrimePower,
            ShapeArg::Pq => Shape::Pq,
            ShapeArg::TwoPrimePowers => Shape::TwoPrimePowers,
            ShapeArg::Pqr => Shape::Pqr,
            ShapeArg::ThreePrimePowers => Shape::ThreePrimePowers,
            ShapeArg::Generic => Shape::Generic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Artifact {
    GraphDot,
    RootsCsv,
    RootsSvg,
}

#[derive(Subcommand)]
enum Command {
    /// Print D_i or I of Γ(Z_n).
    Poly {
        n: u64,
        #[arg(value_enum, default_value = "di")]
        kind: Kind,
        #[arg(value_enum, default_value = "structured")]
        method: MethodArg,
    },
    /// Cross-check every applicable method over a range of n.
    Verify {
        n_min: u64,
        /// Defaults to `n_min`.
        n_max: Option<u64>,
    },
    /// Shape diagnostics and zeros of one polynomial.
    Analyze {
        n: u64,
        #[arg(value_enum, default_value = "di")]
        kind: Kind,
        #[arg(long, value_enum, default_value = "structured")]
        method: MethodArg,
    },
    /// One row of shape diagnostics per n.
    Scan {
        n_min: u64,
        n_max: u64,
        #[arg(long, value_enum, default_value = "di")]
        kind: Kind,
        /// Keep only n of this factorization shape.
        #[arg(long, value_enum)]
        shape: Option<ShapeArg>,
    },
    /// Write a graph or root artifact.
    Export {
        n: u64,
        #[arg(value_enum)]
        what: Artifact,
        #[arg(long, value_enum, default_value = "di")]
        kind: Kind,
        /// Write here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    body: serde_json::Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Convergence { .. } => 3,
            Error::Inconsistency(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            body: json!({ "error": e.kind(), "message": e.to_string() }),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure {
            code: 2,
            body: json!({ "error": "io", "message": e.to_string() }),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn emit(text: &str, output: Option<&PathBuf>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn method_for(cli: &Cli, method: MethodArg) -> Method {
    if cli.as_printed {
        Method::AsPrinted
    } else {
        method.into()
    }
}

fn cmd_poly(cfg: &RunConfig, n: u64, kind: PolyKind, method: Method) -> Outcome {
    let computed = compute(n, kind, method, cfg)?;
    for note in &computed.discrepancy_notes {
        warn(note);
    }
    let p = &computed.polynomial;
    let text = match cfg.output_format {
        OutputFormat::Text => format!("{p}\n"),
        OutputFormat::Csv => {
            let mut s = String::from("exponent,coefficient\n");
            for (e, c) in p.terms() {
                s.push_str(&format!("{e},{c}\n"));
            }
            s
        }
        _ => format!("{}\n", computed.record(n, kind, method).to_json()),
    };
    emit(&text, None)?;
    Ok(0)
}

fn verify_text(reports: &[VerifyReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let failures: Vec<String> = r
            .failures()
            .map(|c| format!("{} {} vs {}", c.kind.as_str(), c.left.as_str(), c.right.as_str()))
            .collect();
        let expected: Vec<String> = r
            .expected_mismatches()
            .map(|c| format!("{} {} vs {}", c.kind.as_str(), c.left.as_str(), c.right.as_str()))
            .collect();
        let status = if failures.is_empty() { "ok" } else { "MISMATCH" };
        out.push_str(&format!("n={} shape={} {status} checks={}", r.n, r.shape.as_str(), r.checks.len()));
        if !failures.is_empty() {
            out.push_str(&format!(" mismatches=[{}]", failures.join("; ")));
        }
        if !expected.is_empty() {
            out.push_str(&format!(" expected_mismatches=[{}]", expected.join("; ")));
        }
        out.push('\n');
    }
    out
}

fn cmd_verify(cfg: &RunConfig, n_min: u64, n_max: u64) -> Outcome {
    if n_min > n_max || n_max < 2 {
        return Err(Error::Domain(format!("empty range {n_min}..={n_max}")).into());
    }
    let reports = verify_range(n_min, n_max, cfg)?;
    let failures: usize = reports.iter().map(|r| r.failures().count()).sum();
    let expected: usize = reports.iter().map(|r| r.expected_mismatches().count()).sum();
    let text = match cfg.output_format {
        OutputFormat::Text => verify_text(&reports),
        _ => json_line(&json!({
            "reports": reports,
            "mismatches": failures,
            "expected_mismatches": expected,
        })),
    };
    emit(&text, None)?;
    if expected > 0 {
        warn(&format!("{expected} literal-formula mismatches (expected)"));
    }
    Ok(if failures > 0 { 1 } else { 0 })
}

fn cmd_analyze(cfg: &RunConfig, n: u64, kind: PolyKind, method: Method) -> Outcome {
    let computed = compute(n, kind, method, cfg)?;
    for note in &computed.discrepancy_notes {
        warn(note);
    }
    let report = analyze(&computed.polynomial, &cfg.root_options())?;
    if let Some(reason) = &report.annulus_omitted {
        warn(&format!("annulus omitted: {reason}"));
    }
    let text = match cfg.output_format {
        OutputFormat::Text => {
            let mut s = format!("n = {n}, {} ({})\n{}\n", kind.as_str(), method.as_str(), report.polynomial);
            s.push_str(&format!(
                "unimodal: {}{}\n",
                report.unimodal,
                report.mode_index.map(|t| format!(" (mode {t})")).unwrap_or_default()
            ));
            s.push_str(&format!("oscillation: {}\n", report.oscillation));
            s.push_str(&format!(
                "log-concave: {} {:?}\nnewton: {}\n",
                report.log_concave, report.log_concave_violations, report.newton_holds
            ));
            if let Some(a) = &report.annulus {
                s.push_str(&format!("annulus: {} <= |z| <= {}\n", a.inner_exact, a.outer_exact));
            }
            s.push_str(&format!("real roots: {}\n", report.real_root_count));
            for r in &report.roots {
                s.push_str(&format!("  {:+.9} {:+.9}i  (residual {:.1e})\n", r.re, r.im, r.residual));
            }
            s
        }
        _ => json_line(&json!({ "n": n, "kind": kind, "method": method, "report": report })),
    };
    emit(&text, None)?;
    Ok(0)
}

fn scan_text(rows: &[ScanRow], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str("n,shape,unimodal,oscillation,log_concave,gamma_i,alpha\n");
        for r in rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.n,
                r.shape.as_str(),
                r.unimodal,
                r.oscillation,
                r.log_concave,
                r.gamma_i,
                r.alpha
            ));
        }
    } else {
        out.push_str(&format!(
            "{:>8}  {:<12} {:<9} {:>3}  {:<12} {:>7} {:>7}\n",
            "n", "shape", "unimodal", "eta", "log-concave", "gamma_i", "alpha"
        ));
        for r in rows {
            out.push_str(&format!(
                "{:>8}  {:<12} {:<9} {:>3}  {:<12} {:>7} {:>7}\n",
                r.n,
                r.shape.as_str(),
                r.unimodal,
                r.oscillation,
                r.log_concave,
                r.gamma_i,
                r.alpha
            ));
        }
    }
    out
}

fn cmd_scan(cfg: &RunConfig, n_min: u64, n_max: u64, kind: PolyKind, shape: Option<Shape>) -> Outcome {
    if n_min > n_max || n_max < 2 {
        return Err(Error::Domain(format!("empty range {n_min}..={n_max}")).into());
    }
    let mut ns = Vec::new();
    for n in n_min.max(2)..=n_max {
        if shape.is_none_or(|s| Shape::of(&factorize(n).expect("n ≥ 2")) == s) {
            ns.push(n);
        }
    }
    let rows = scan(&ns, kind)?;
    let text = match cfg.output_format {
        OutputFormat::Json => json_line(&json!(rows)),
        OutputFormat::Csv => scan_text(&rows, true),
        _ => scan_text(&rows, false),
    };
    emit(&text, None)?;
    Ok(0)
}

fn cmd_export(cfg: &RunConfig, n: u64, what: Artifact, kind: PolyKind, method: Method, output: Option<&PathBuf>) -> Outcome {
    let text = match what {
        Artifact::GraphDot => {
            let (g, partition) = comaximal_graph_direct(n, cfg.vertex_capacity)?;
            to_dot(&g, &partition)
        }
        Artifact::RootsCsv | Artifact::RootsSvg => {
            let computed = compute(n, kind, method, cfg)?;
            for note in &computed.discrepancy_notes {
                warn(note);
            }
            let p = &computed.polynomial;
            let roots = find_roots(p, &cfg.root_options())?;
            if matches!(what, Artifact::RootsCsv) {
                roots_csv(&roots)
            } else {
                let annulus = match enestrom_kakeya(p) {
                    Ok((a, b)) => Some(Annulus::from_exact(&a, &b)),
                    Err(Error::Precondition(reason)) => {
                        warn(&format!("annulus omitted: {reason}"));
                        None
                    }
                    Err(e) => return Err(e.into()),
                };
                let title = format!("zeros of {} of Gamma(Z_{n})", kind.as_str());
                roots_svg(&title, &roots, annulus.as_ref())
            }
        }
    };
    emit(&text, output)?;
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    let default_format = match &cli.command {
        Command::Scan { .. } => OutputFormat::Text,
        Command::Export { what: Artifact::GraphDot, .. } => OutputFormat::Dot,
        Command::Export { what: Artifact::RootsCsv, .. } => OutputFormat::Csv,
        Command::Export { what: Artifact::RootsSvg, .. } => OutputFormat::Svg,
        _ => OutputFormat::Json,
    };
    let cfg = RunConfig {
        oracle_limit_mis: cli.oracle_limit_mis,
        oracle_limit_ind: cli.oracle_limit_ind,
        vertex_capacity: cli.vertex_capacity,
        root_tol: cli.tol,
        max_iterations: cli.max_iterations,
        output_format: cli.format.map_or(default_format, Into::into),
    };
    cfg.validate()?;
    match &cli.command {
        Command::Poly { n, kind, method } => cmd_poly(&cfg, *n, (*kind).into(), method_for(cli, *method)),
        Command::Verify { n_min, n_max } => cmd_verify(&cfg, *n_min, n_max.unwrap_or(*n_min)),
        Command::Analyze { n, kind, method } => cmd_analyze(&cfg, *n, (*kind).into(), method_for(cli, *method)),
        Command::Scan {
            n_min,
            n_max,
            kind,
            shape,
        } => cmd_scan(&cfg, *n_min, *n_max, (*kind).into(), shape.map(Into::into)),
        Command::Export { n, what, kind, output } => cmd_export(
            &cfg,
            *n,
            *what,
            (*kind).into(),
            method_for(cli, MethodArg::Structured),
            output.as_ref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
