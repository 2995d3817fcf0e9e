//! Command-line front end: verification suites, tableau listings, state
//! residual reports, and the cosmology table, with deterministic text or
//! JSON output.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage or configuration errors. Reports are byte-identical for identical
//! inputs; wall-clock timing goes to stderr only.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use parafock::conformal::{
    build_generators, build_poincare, closure_table, jacobi_check, TripleSelection,
};
use parafock::cosmo::{cosmo_table, CosmoConstants, CosmoTable, RowStatus};
use parafock::fock::{verify_green_relations, FockBasis, ModeConfig};
use parafock::states::{
    check_invariance, lorentz_vacuum, neutrino, zeron, ResidualReport, TruncatedSeriesState,
};
use parafock::young::{
    dimension_consistency, enumerate_diagrams, enumerate_schemes, formal_dependence_check,
    mixed_reference_112, mixed_reference_122, symmetric_reference, verify_sum_squares,
};

const DEFAULT_MAX_BASIS: usize = 200_000;

#[derive(Parser)]
#[command(
    name = "parafock",
    version,
    about = "Exact verification of parabose Fock-space identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check defining relations, closure, or Jacobi identities exactly.
    Verify(VerifyArgs),
    /// List diagrams, counting identities, and the worked small tensors.
    Tableaux(TableauxArgs),
    /// Build a series state and report shell-resolved residuals.
    State(StateArgs),
    /// Compare the large-number estimates against their quoted decades.
    Cosmo(CosmoArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    Green,
    Closure,
    Jacobi,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which identities to verify; closure and jacobi need --R 4.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Number of sorts.
    #[arg(long = "R", default_value_t = 4)]
    sorts: u32,
    /// Parabose order.
    #[arg(long, default_value_t = 1)]
    p: u32,
    /// Occupation cutoff for the truncated space.
    #[arg(long = "nmax", default_value_t = 6)]
    n_max: u32,
    /// Shells of margin below the cutoff; green and closure default to 4,
    /// jacobi to 6 (a double commutator needs the extra margin).
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Args)]
struct TableauxArgs {
    /// Word length.
    #[arg(long)]
    n: u32,
    /// Number of letters (sorts) for schemes and tensors.
    #[arg(long, default_value_t = 2)]
    r: u8,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum StateKind {
    Vacuum,
    Zeron,
    Neutrino,
}

#[derive(Args)]
struct StateArgs {
    #[arg(long, value_enum)]
    kind: StateKind,
    /// Series cutoff of the underlying vacuum.
    #[arg(long = "K", default_value_t = 2)]
    k: u32,
    /// Series cutoff of the zeron stage; defaults to K.
    #[arg(long = "Kprime")]
    k_prime: Option<u32>,
    /// Light-cone eigenvalue parameter as an exact rational "a/b".
    #[arg(long, default_value = "1/1")]
    epsilon: String,
    /// Occupation cutoff for the truncated space.
    #[arg(long = "nmax", default_value_t = 10)]
    n_max: u32,
    /// Shells excluded below the truncation edge when certifying.
    #[arg(long = "boundary-width", default_value_t = 4)]
    boundary_width: u32,
}

#[derive(Args)]
struct CosmoArgs {
    /// JSON file of constant overrides [{name, mantissa, exponent, unit}].
    #[arg(long, value_name = "FILE")]
    constants: Option<PathBuf>,
}

/// One verified statement in a report.
#[derive(Serialize)]
struct CheckRecord {
    id: String,
    status: String,
    detail: String,
}

impl CheckRecord {
    fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            status: if pass { "pass" } else { "fail" }.to_string(),
            detail: detail.into(),
        }
    }
}

/// Deterministic result of one subcommand run.
#[derive(Serialize)]
struct SuiteReport {
    schema: u32,
    suite: String,
    config: String,
    checks: Vec<CheckRecord>,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    cosmo: Option<CosmoTable>,
}

impl SuiteReport {
    fn new(suite: &str, config: String, checks: Vec<CheckRecord>, pass: bool) -> Self {
        SuiteReport {
            schema: 1,
            suite: suite.to_string(),
            config,
            checks,
            pass,
            cosmo: None,
        }
    }
}

enum CliError {
    Usage(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn max_basis() -> Result<usize, CliError> {
    match std::env::var("PARAFOCK_MAX_BASIS") {
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::Usage(format!("PARAFOCK_MAX_BASIS is not a size: {text}"))),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}

fn build_basis(sorts: u32, order: u32, n_max: u32, limit: usize) -> Result<FockBasis, CliError> {
    let config = ModeConfig::new(sorts, order, n_max)?;
    Ok(FockBasis::build(config, limit)?)
}

fn parse_epsilon(text: &str) -> Result<BigRational, CliError> {
    let bad = || CliError::Usage(format!("epsilon must be an exact rational a/b, got {text}"));
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (
            BigInt::from_str(n).map_err(|_| bad())?,
            BigInt::from_str(d).map_err(|_| bad())?,
        ),
        None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
    };
    if denom.is_zero() {
        return Err(CliError::Usage(format!("epsilon denominator is zero: {text}")));
    }
    Ok(BigRational::new(numer, denom))
}

fn cmd_verify(args: &VerifyArgs, limit: usize) -> Result<SuiteReport, CliError> {
    let suite_name = match args.suite {
        Suite::Green => "green",
        Suite::Closure => "closure",
        Suite::Jacobi => "jacobi",
        Suite::All => "all",
    };
    let needs_generators = args.suite != Suite::Green;
    if needs_generators && args.sorts != 4 {
        return Err(CliError::Usage(format!(
            "suite {suite_name} exercises the 15 generators and needs --R 4, got {}",
            args.sorts
        )));
    }
    let green_depth = args.depth.unwrap_or(4);
    let jacobi_depth = args.depth.unwrap_or(6);
    if matches!(args.suite, Suite::Jacobi | Suite::All) && jacobi_depth < 6 {
        return Err(CliError::Usage(format!(
            "jacobi needs --depth at least 6, got {jacobi_depth}"
        )));
    }

    let basis = build_basis(args.sorts, args.p, args.n_max, limit)?;
    let mut checks = Vec::new();

    if matches!(args.suite, Suite::Green | Suite::All) {
        let report = verify_green_relations(&basis, green_depth)?;
        for check in &report.checks {
            let detail = match &check.worst {
                None => format!("exact on {} interior columns", report.interior_columns),
                Some(w) => format!("violated at ({}, {}): {}", w.row, w.col, w.value),
            };
            checks.push(CheckRecord::new(&check.id, check.pass, detail));
        }
    }

    if matches!(args.suite, Suite::Closure | Suite::All) {
        let generators = build_generators(&basis)?;
        let table = closure_table(&generators, green_depth)?;
        for row in &table.rows {
            let terms: Vec<String> = row
                .coefficients
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(label, c)| format!("{label}: {c}"))
                .collect();
            let detail = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(", ")
            };
            checks.push(CheckRecord::new(
                format!("[{}, {}]", row.left, row.right),
                row.in_span,
                detail,
            ));
        }
    }

    if matches!(args.suite, Suite::Jacobi | Suite::All) {
        let generators = build_generators(&basis)?;
        let report = jacobi_check(&generators, jacobi_depth, TripleSelection::All)?;
        let detail = if report.failures.is_empty() {
            format!(
                "{} triples exact on {} interior columns",
                report.triples_checked, report.interior_columns
            )
        } else {
            format!("failing triples: {}", report.failures.join(", "))
        };
        checks.push(CheckRecord::new("jacobi identity", report.pass, detail));
    }

    let pass = checks.iter().all(|c| c.status == "pass");
    let config = format!(
        "R={} p={} n_max={} depth={}",
        args.sorts,
        args.p,
        args.n_max,
        if args.suite == Suite::Jacobi { jacobi_depth } else { green_depth }
    );
    Ok(SuiteReport::new(suite_name, config, checks, pass))
}

fn cmd_tableaux(args: &TableauxArgs) -> Result<SuiteReport, CliError> {
    if args.n == 0 || args.n > 12 {
        return Err(CliError::Usage(format!(
            "word length must be between 1 and 12, got {}",
            args.n
        )));
    }
    if args.r == 0 || args.r > 6 {
        return Err(CliError::Usage(format!(
            "letter count must be between 1 and 6, got {}",
            args.r
        )));
    }

    let mut checks = Vec::new();
    let counting = verify_sum_squares(args.n)?;
    for (diagram, count) in enumerate_diagrams(args.n)?.iter().zip(&counting.counts) {
        let schemes = enumerate_schemes(diagram, args.r).len();
        checks.push(CheckRecord::new(
            format!("diagram {}", count.diagram),
            count.tableaux == count.hook_oracle,
            format!(
                "tableaux={} hook oracle={} schemes={}",
                count.tableaux, count.hook_oracle, schemes
            ),
        ));
    }
    checks.push(CheckRecord::new(
        "sum of squared counts",
        counting.pass,
        format!("{} = {}! = {}", counting.sum_of_squares, counting.n, counting.factorial),
    ));
    checks.push(CheckRecord::new(
        "dimension consistency",
        dimension_consistency(args.r, args.n)?,
        format!("sum of tableaux x schemes = {}^{}", args.r, args.n),
    ));

    if args.n == 3 && args.r == 2 {
        for content in [[1u8, 1, 1], [1, 1, 2], [1, 2, 2], [2, 2, 2]] {
            let tensor = symmetric_reference(&content);
            checks.push(CheckRecord::new(
                format!("symmetric tensor {content:?}"),
                !tensor.is_zero(),
                tensor.to_string(),
            ));
        }
        let [t112, t211, t121] = mixed_reference_112();
        let [t122, t221] = mixed_reference_122();
        checks.push(CheckRecord::new(
            "mixed span {1,1,2}",
            true,
            format!("{t112}; {t211}; dependent: {t121}"),
        ));
        checks.push(CheckRecord::new(
            "mixed span {1,2,2}",
            true,
            format!("{t122}; {t221}"),
        ));
        let dependence = formal_dependence_check();
        checks.push(CheckRecord::new(
            "dependence identities",
            dependence.pass,
            "pair sums vanish and the sort swap lands in the mirror span".to_string(),
        ));
    }

    let pass = checks.iter().all(|c| c.status == "pass");
    Ok(SuiteReport::new(
        "tableaux",
        format!("n={} r={}", args.n, args.r),
        checks,
        pass,
    ))
}

fn residual_checks(report: &ResidualReport) -> Vec<CheckRecord> {
    report
        .conditions
        .iter()
        .map(|condition| {
            let mut detail = String::new();
            match &condition.recorded_constant {
                Some(c) => write!(detail, "constant {c}").expect("string write"),
                None => detail.push_str("no proportionality constant fits"),
            }
            if condition.shells.is_empty() {
                detail.push_str("; no residual");
            } else {
                let shells: Vec<String> = condition
                    .shells
                    .iter()
                    .map(|s| format!("{}({})", s.n, s.residual_component_count))
                    .collect();
                write!(detail, "; residual shells {}", shells.join(" ")).expect("string write");
            }
            CheckRecord::new(&condition.condition, condition.interior_clean, detail)
        })
        .collect()
}

fn cmd_state(args: &StateArgs, limit: usize) -> Result<SuiteReport, CliError> {
    let basis = build_basis(4, 1, args.n_max, limit)?;
    let generators = build_generators(&basis)?;
    let poincare = build_poincare(&generators)?;
    let k_prime = args.k_prime.unwrap_or(args.k);
    let epsilon = parse_epsilon(&args.epsilon)?;

    let state: TruncatedSeriesState = match args.kind {
        StateKind::Vacuum => lorentz_vacuum(&basis, args.k)?,
        StateKind::Zeron => {
            let omega = lorentz_vacuum(&basis, args.k)?;
            zeron(&basis, &omega, &epsilon, k_prime)?
        }
        StateKind::Neutrino => {
            let omega = lorentz_vacuum(&basis, args.k)?;
            let psi = zeron(&basis, &omega, &epsilon, k_prime)?;
            neutrino(&basis, &psi)?
        }
    };
    let report = check_invariance(&state, &poincare, args.boundary_width)?;
    let checks = residual_checks(&report);
    let config = format!(
        "{} n_max={} width={} interior<{}",
        report.state, args.n_max, report.boundary_width, report.interior_limit
    );
    Ok(SuiteReport::new("state", config, checks, report.pass))
}

fn cmd_cosmo(args: &CosmoArgs) -> Result<SuiteReport, CliError> {
    let constants = match &args.constants {
        Some(path) => CosmoConstants::from_file(path)?,
        None => CosmoConstants::default(),
    };
    let table = cosmo_table(&constants)?;
    let checks = table
        .rows
        .iter()
        .map(|row| CheckRecord {
            id: row.quantity.clone(),
            status: match row.status {
                RowStatus::Pass => "pass",
                RowStatus::Flagged => "flagged",
                RowStatus::Fail => "fail",
            }
            .to_string(),
            detail: format!(
                "computed {} vs quoted e{}, {} decades off",
                row.computed, row.quoted_exponent, row.decade_difference
            ),
        })
        .collect();
    let config = match &args.constants {
        Some(path) => format!("constants from {}", path.display()),
        None => "default constants".to_string(),
    };
    let mut report = SuiteReport::new("cosmo", config, checks, table.pass);
    report.cosmo = Some(table);
    Ok(report)
}

fn render_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    writeln!(out, "suite: {} ({})", report.suite, report.config).expect("string write");
    for check in &report.checks {
        writeln!(out, "[{}] {}: {}", check.status, check.id, check.detail).expect("string write");
    }
    writeln!(out, "overall: {}", if report.pass { "pass" } else { "FAIL" }).expect("string write");
    out
}

fn run(cli: &Cli) -> Result<SuiteReport, CliError> {
    // Validated up front so a broken override fails every subcommand the
    // same way, not only the ones that build a basis.
    let limit = max_basis()?;
    match &cli.command {
        Command::Verify(args) => cmd_verify(args, limit),
        Command::Tableaux(args) => cmd_tableaux(args),
        Command::State(args) => cmd_state(args, limit),
        Command::Cosmo(args) => cmd_cosmo(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match run(&cli) {
        Ok(report) => report,
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let rendered = if cli.json {
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        text
    } else {
        render_text(&report)
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            eprintln!("report written to {}", path.display());
        }
        None => print!("{rendered}"),
    }
    eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
