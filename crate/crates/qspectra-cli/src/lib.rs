//! Command-line front end for `qspectra`.
//!
//! Exit codes: 0 success, 1 verification or numeric failure, 2 usage error.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

use clap::{Args, Parser, Subcommand};
use commands::{CmdResult, CommandError};
use config::{parse_complex, BetaSpec, Format, RunConfig};
use num_complex::Complex64 as C64;
use output::Table;
use qspectra::QError;
use std::io::Write;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "qspectra", version, about = "Continuous q-Jacobi polynomials and the spectrum of the Askey-Wilson right inverse")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Base q in (0, 1).
    #[arg(long, global = true, default_value_t = 0.5)]
    q: f64,
    /// α; complex values as `a+bi`.
    #[arg(long, global = true, default_value = "0.3", value_parser = parse_complex, allow_hyphen_values = true)]
    alpha: C64,
    /// β, or `conj` for the conjugate of α.
    #[arg(long, global = true, default_value = "-0.2", allow_hyphen_values = true)]
    beta: BetaSpec,
    #[arg(long, global = true, default_value_t = 1e-14)]
    tol: f64,
    /// Initial truncation of the eigenvalue matrix.
    #[arg(long, global = true, default_value_t = 80)]
    trunc: usize,
    /// Initial quadrature nodes.
    #[arg(long, global = true, default_value_t = 32)]
    nodes: usize,
    #[arg(long, global = true, default_value = "csv")]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certified eigenvalues of T.
    Eigen {
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Coefficients and sampled values of one eigenfunction.
    Eigfun {
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 30)]
        terms: usize,
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
    /// P_n(x) for n ≤ degree on a grid.
    Poly {
        #[arg(long, default_value_t = 6)]
        degree: usize,
        #[arg(long, default_value_t = 21)]
        grid: usize,
    },
    /// K(x, y) on a grid.
    Kernel {
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// q-exponential expansion coefficients and residuals.
    Expand {
        #[arg(long, default_value = "0.3", value_parser = parse_complex, allow_hyphen_values = true)]
        r: C64,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        #[arg(long, default_value_t = 11)]
        grid: usize,
    },
    /// q-Coulomb wave function on a ρ-grid.
    Coulomb {
        #[arg(long)]
        l: f64,
        #[arg(long, allow_hyphen_values = true)]
        eta: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        rho_max: f64,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Run named invariant suites (`all` for every suite).
    Verify {
        suite: Option<String>,
        #[arg(long = "suite", conflicts_with = "suite")]
        suite_flag: Option<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
    },
}

fn run_config(g: GlobalArgs) -> RunConfig {
    RunConfig { q: g.q, alpha: g.alpha, beta: g.beta, tol: g.tol, trunc: g.trunc, nodes: g.nodes, format: g.format, out: g.out }
}

fn emit(cfg: &RunConfig, table: &Table) -> Result<(), String> {
    let text = match cfg.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(&cfg.describe()),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}")),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

/// Structured error record on stderr.
fn report_error(kind: &str, message: &str) {
    let rec = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{rec}");
}

fn verify(cfg: &RunConfig, suite: Option<String>, list: bool) -> CmdResult {
    if list {
        let mut t = Table::new(&["suite", "invariant"]);
        for s in suites::SUITES {
            t.push(vec![s.name.into(), s.invariant.into()]);
        }
        return Ok(t);
    }
    let name = suite.ok_or_else(|| CommandError::Usage("verify needs a suite name, `all`, or --list".into()))?;
    let chosen: Vec<&suites::Suite> = if name == "all" {
        suites::SUITES.iter().collect()
    } else {
        vec![suites::find(&name).ok_or_else(|| CommandError::Usage(format!("unknown suite '{name}'; see verify --list")))?]
    };
    // independent suites run concurrently; the table keeps registry order
    let outcomes: Vec<suites::Outcome> = std::thread::scope(|sc| {
        let handles: Vec<_> = chosen.iter().map(|s| sc.spawn(move || suites::run_suite(s, cfg))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    Ok(suites::outcomes_table(&outcomes))
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = run_config(cli.global);
    if let Err(msg) = cfg.validate() {
        report_error("usage", &msg);
        return EXIT_USAGE;
    }
    let is_verify = matches!(cli.command, Command::Verify { list: false, .. });
    let result = match cli.command {
        Command::Eigen { count } => commands::eigen(&cfg, count),
        Command::Eigfun { index, terms, grid } => commands::eigfun(&cfg, index, terms, grid),
        Command::Poly { degree, grid } => commands::poly(&cfg, degree, grid),
        Command::Kernel { grid } => commands::kernel(&cfg, grid),
        Command::Expand { r, terms, grid } => commands::expand(&cfg, r, terms, grid),
        Command::Coulomb { l, eta, rho_max, grid } => commands::coulomb(&cfg, l, eta, rho_max, grid),
        Command::Verify { suite, suite_flag, list } => verify(&cfg, suite.or(suite_flag), list),
    };
    let table = match result {
        Ok(t) => t,
        Err(CommandError::Usage(msg)) => {
            report_error("usage", &msg);
            return EXIT_USAGE;
        }
        // inadmissible parameters are a configuration problem, not a numeric one
        Err(CommandError::Numeric(QError::InvalidParameter(msg))) => {
            report_error("usage", &msg);
            return EXIT_USAGE;
        }
        Err(CommandError::Numeric(e)) => {
            report_error("numeric", &e.to_string());
            return EXIT_FAILURE;
        }
    };
    if let Err(msg) = emit(&cfg, &table) {
        report_error("io", &msg);
        return EXIT_FAILURE;
    }
    // a verify table fails if any row is neither pass nor skip
    if is_verify && table.rows.iter().any(|r| !matches!(&r[1], output::Cell::Text(s) if s == "pass" || s == "skip")) {
        return EXIT_FAILURE;
    }
    EXIT_OK
}
