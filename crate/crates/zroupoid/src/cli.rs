//! Command-line interface: check, chain, enumerate, lemmas, iso, order.
//!
//! Exit codes: 0 when the command succeeds (and any asserted property
//! holds), 1 when a checked property fails (the witness is printed), 2 on
//! usage or input validation errors. Usage errors go to standard error;
//! standard output never carries partial JSON.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::algebra::{AlgebraJson, FiniteZroupoid};
use crate::chain::build_chain;
use crate::enumeration::{
    are_isomorphic, enumerate, SearchConfig, SearchMode,
};
use crate::lemmas::{
    builtin_catalog, chain_universe, i20_universe, run_catalog, SuiteReport, UniverseAlgebra,
};
use crate::order::{order_report, OrderReport, PropertyVerdict};
use crate::term::parse_statement;

#[derive(Debug, Parser)]
#[command(
    name = "zroupoid",
    version,
    about = "Workbench for finite implication zroupoids"
)]
struct Cli {
    /// Output format; `count` is only meaningful for `enumerate`.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Table)]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Table,
    Count,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check an identity or quasi-identity on an algebra.
    Check {
        /// Algebra JSON file, or `-` for standard input.
        algebra: String,
        /// Statement text, e.g. "x'' = x" or "x <= y & y <= z => x <= z".
        #[arg(long, conflicts_with = "statement_file")]
        statement: Option<String>,
        /// File containing the statement text.
        #[arg(long)]
        statement_file: Option<PathBuf>,
    },
    /// Report the order relation of an algebra.
    Order {
        /// Algebra JSON file, or `-` for standard input.
        algebra: String,
    },
    /// Decide whether two algebras are isomorphic.
    Iso {
        algebra_a: String,
        algebra_b: String,
    },
    /// Build the chain with N negative and M positive elements.
    Chain {
        #[arg(long)]
        neg: usize,
        #[arg(long)]
        pos: usize,
    },
    /// Enumerate algebras of a given size up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        /// Chains only (the default).
        #[arg(long, conflicts_with = "all_i20")]
        chains: bool,
        /// All involutive algebras, not just chains.
        #[arg(long = "all-i20")]
        all_i20: bool,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Run the bundled law catalog over a universe of algebras.
    Lemmas {
        /// Universe: `chains:N` (all chains of size <= N), `i20:K`
        /// (all involutive algebras of size <= K), or `file:PATH`
        /// (one algebra object or an array of them).
        #[arg(long)]
        universe: String,
        /// Comma-separated check ids to run.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
    },
}

/// Parse arguments and run a command, writing to the provided streams.
/// Returns the process exit code.
pub fn run<I, S>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let rendered = err.render().to_string();
            return if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                let _ = write!(stdout, "{rendered}");
                0
            } else {
                let _ = write!(stderr, "{rendered}");
                2
            };
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> CliError {
        CliError(e.to_string())
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let emit = cli.emit;
    if emit == Emit::Count && !matches!(cli.command, Command::Enumerate { .. }) {
        return Err(CliError("--emit count only applies to enumerate".into()));
    }
    match cli.command {
        Command::Check {
            algebra,
            statement,
            statement_file,
        } => {
            let alg = load_algebra(&algebra)?;
            let text = match (statement, statement_file) {
                (Some(text), None) => text,
                (None, Some(path)) => std::fs::read_to_string(&path)
                    .map_err(|e| CliError(format!("{}: {e}", path.display())))?,
                _ => {
                    return Err(CliError(
                        "exactly one of --statement or --statement-file is required".into(),
                    ))
                }
            };
            let st = parse_statement(text.trim())?;
            let result = alg.check_statement(&st);
            match emit {
                Emit::Json => print_json(out, &VersionedCheck::new(&result))?,
                _ => writeln!(out, "{result}")?,
            }
            Ok(if result.holds() { 0 } else { 1 })
        }
        Command::Order { algebra } => {
            let alg = load_algebra(&algebra)?;
            let report = order_report(&alg);
            match emit {
                Emit::Json => print_json(out, &VersionedOrder::new(&report))?,
                _ => write_order_table(out, &alg, &report)?,
            }
            Ok(0)
        }
        Command::Iso {
            algebra_a,
            algebra_b,
        } => {
            let a = load_algebra(&algebra_a)?;
            let b = load_algebra(&algebra_b)?;
            let result = are_isomorphic(&a, &b);
            match emit {
                Emit::Json => print_json(out, &VersionedIso::new(&result))?,
                _ => match &result.map {
                    Some(map) => writeln!(out, "isomorphic: {map:?}")?,
                    None => writeln!(out, "not isomorphic")?,
                },
            }
            Ok(if result.isomorphic { 0 } else { 1 })
        }
        Command::Chain { neg, pos } => {
            let alg = build_chain(neg, pos);
            match emit {
                Emit::Json => print_json(out, &alg.to_json())?,
                _ => write!(out, "{}", format_table(&alg))?,
            }
            Ok(0)
        }
        Command::Enumerate {
            size,
            chains: _,
            all_i20,
            workers,
        } => {
            let mode = if all_i20 {
                SearchMode::AllI20
            } else {
                SearchMode::ChainsOnly
            };
            let mut config = SearchConfig::new(size, mode);
            if let Some(w) = workers {
                config = config.with_workers(w);
            }
            let found = enumerate(&config)?;
            match emit {
                Emit::Count => writeln!(out, "{}", found.len())?,
                Emit::Json => print_json(out, &VersionedEnumeration::new(size, mode, &found))?,
                Emit::Table => {
                    writeln!(out, "{} algebras of size {size}", found.len())?;
                    for (i, alg) in found.iter().enumerate() {
                        writeln!(out, "#{i}")?;
                        write!(out, "{}", format_table(alg))?;
                    }
                }
            }
            Ok(0)
        }
        Command::Lemmas { universe, only } => {
            let universe = load_universe(&universe)?;
            let mut checks = builtin_catalog();
            if let Some(only) = only {
                for id in &only {
                    if !checks.iter().any(|c| &c.id == id) {
                        return Err(CliError(format!("unknown check id {id:?}")));
                    }
                }
                checks.retain(|c| only.contains(&c.id));
            }
            let report = run_catalog(&universe, &checks);
            match emit {
                Emit::Json => print_json(out, &VersionedLemmas::new(&report))?,
                _ => write_lemma_table(out, &report)?,
            }
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn load_algebra(path: &str) -> Result<FiniteZroupoid, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))?
    };
    let json: AlgebraJson =
        serde_json::from_str(&text).map_err(|e| CliError(format!("{path}: {e}")))?;
    Ok(FiniteZroupoid::from_json(json)?)
}

fn load_universe(spec: &str) -> Result<Vec<UniverseAlgebra>, CliError> {
    if let Some(n) = spec.strip_prefix("chains:") {
        let n: usize = n.parse().map_err(|_| bad_universe(spec))?;
        if n == 0 {
            return Err(bad_universe(spec));
        }
        Ok(chain_universe(n))
    } else if let Some(k) = spec.strip_prefix("i20:") {
        let k: usize = k.parse().map_err(|_| bad_universe(spec))?;
        if k == 0 {
            return Err(bad_universe(spec));
        }
        Ok(i20_universe(k)?)
    } else if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{path}: {e}")))?;
        let algebras: Vec<AlgebraJson> = if text.trim_start().starts_with('[') {
            serde_json::from_str(&text).map_err(|e| CliError(format!("{path}: {e}")))?
        } else {
            vec![serde_json::from_str(&text).map_err(|e| CliError(format!("{path}: {e}")))?]
        };
        algebras
            .into_iter()
            .enumerate()
            .map(|(i, json)| {
                Ok(UniverseAlgebra::new(
                    format!("{path}#{i}"),
                    FiniteZroupoid::from_json(json)?,
                ))
            })
            .collect()
    } else {
        Err(bad_universe(spec))
    }
}

fn bad_universe(spec: &str) -> CliError {
    CliError(format!(
        "invalid universe {spec:?}; expected chains:N, i20:K, or file:PATH"
    ))
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Operation table in the row/column layout used for the worked examples,
/// with element labels when the algebra carries them.
pub fn format_table(alg: &FiniteZroupoid) -> String {
    let n = alg.size();
    let labels: Vec<String> = (0..n).map(|x| alg.label_of(x)).collect();
    let width = labels
        .iter()
        .map(|l| l.len())
        .chain(std::iter::once(2))
        .max()
        .expect("nonempty");
    let mut out = String::new();
    let mut line = format!("{:>width$}", "=>");
    for l in &labels {
        let _ = write!(line, "  {l:>width$}");
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for x in 0..n {
        let mut line = format!("{:>width$}", labels[x]);
        for y in 0..n {
            let _ = write!(line, "  {:>width$}", labels[alg.apply(x, y)]);
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn write_order_table(
    out: &mut dyn Write,
    alg: &FiniteZroupoid,
    report: &OrderReport,
) -> Result<(), CliError> {
    fn line<W: Serialize + std::fmt::Debug>(name: &str, v: &PropertyVerdict<W>) -> String {
        match v {
            PropertyVerdict::Holds => format!("{name}: holds"),
            PropertyVerdict::Fails { witness } => format!("{name}: fails at {witness:?}"),
        }
    }
    writeln!(out, "{}", line("reflexive", &report.reflexive))?;
    writeln!(out, "{}", line("antisymmetric", &report.antisymmetric))?;
    writeln!(out, "{}", line("transitive", &report.transitive))?;
    writeln!(out, "{}", line("total", &report.total))?;
    if let Some(g) = report.greatest {
        writeln!(out, "greatest: {}", alg.label_of(g))?;
    }
    if report.is_total_order() {
        let listing: Vec<String> = report
            .sorted_elements()
            .into_iter()
            .map(|x| alg.label_of(x))
            .collect();
        writeln!(out, "order: {}", listing.join(" < "))?;
    }
    Ok(())
}

fn write_lemma_table(out: &mut dyn Write, report: &SuiteReport) -> Result<(), CliError> {
    writeln!(
        out,
        "applied {} checks over {} algebras: {} passed, {} failed",
        report.summary.applied,
        report.summary.algebras,
        report.summary.passed,
        report.summary.failed
    )?;
    for entry in report.failures() {
        let note = entry
            .note
            .as_deref()
            .map(|n| format!(" ({n})"))
            .unwrap_or_default();
        writeln!(
            out,
            "FAIL {} on {}: {}{note}",
            entry.check_id, entry.algebra, entry.result
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VersionedCheck<'a> {
    schema: &'static str,
    #[serde(flatten)]
    result: &'a crate::algebra::CheckResult,
}

impl<'a> VersionedCheck<'a> {
    fn new(result: &'a crate::algebra::CheckResult) -> Self {
        VersionedCheck {
            schema: "check-result-v1",
            result,
        }
    }
}

#[derive(Serialize)]
struct VersionedOrder<'a> {
    schema: &'static str,
    #[serde(flatten)]
    report: &'a OrderReport,
}

impl<'a> VersionedOrder<'a> {
    fn new(report: &'a OrderReport) -> Self {
        VersionedOrder {
            schema: "order-report-v1",
            report,
        }
    }
}

#[derive(Serialize)]
struct VersionedIso<'a> {
    schema: &'static str,
    #[serde(flatten)]
    result: &'a crate::enumeration::IsoResult,
}

impl<'a> VersionedIso<'a> {
    fn new(result: &'a crate::enumeration::IsoResult) -> Self {
        VersionedIso {
            schema: "iso-result-v1",
            result,
        }
    }
}

#[derive(Serialize)]
struct VersionedEnumeration {
    schema: &'static str,
    size: usize,
    mode: SearchMode,
    count: usize,
    algebras: Vec<AlgebraJson>,
}

impl VersionedEnumeration {
    fn new(size: usize, mode: SearchMode, found: &[FiniteZroupoid]) -> Self {
        VersionedEnumeration {
            schema: "enumeration-v1",
            size,
            mode,
            count: found.len(),
            algebras: found.iter().map(|a| a.to_json()).collect(),
        }
    }
}

#[derive(Serialize)]
struct VersionedLemmas<'a> {
    schema: &'static str,
    #[serde(flatten)]
    report: &'a SuiteReport,
}

impl<'a> VersionedLemmas<'a> {
    fn new(report: &'a SuiteReport) -> Self {
        VersionedLemmas {
            schema: "lemma-report-v1",
            report,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("zroupoid").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn chain_table_matches_worked_layout() {
        let (code, out, _) = run_capture(&["chain", "--neg", "2", "--pos", "3", "--emit", "table"]);
        assert_eq!(code, 0);
        let expected = "\
=>  -2  -1   0   1   2   3
-2  -2  -2  -2  -2  -2  -2
-1  -2  -1  -1  -1  -1  -1
 0  -2  -1   3   3   3   3
 1  -2  -1   2   2   2   3
 2  -2  -1   1   1   2   3
 3  -2  -1   0   1   2   3
";
        assert_eq!(out, expected);
    }

    #[test]
    fn enumerate_count_of_three_element_chains() {
        let (code, out, _) = run_capture(&["enumerate", "--size", "3", "--chains", "--emit", "count"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3\n");
    }

    #[test]
    fn enumerate_output_is_worker_independent() {
        let one = run_capture(&[
            "enumerate", "--size", "4", "--workers", "1", "--emit", "json",
        ]);
        let four = run_capture(&[
            "enumerate", "--size", "4", "--workers", "4", "--emit", "json",
        ]);
        assert_eq!(one, four);
        assert_eq!(one.0, 0);
    }

    #[test]
    fn check_exit_codes_follow_verdicts() {
        let dir = std::env::temp_dir().join("zroupoid-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chain11.json");
        std::fs::write(&path, build_chain(1, 1).to_json_string()).unwrap();
        let path = path.to_str().unwrap();

        let (code, out, _) = run_capture(&["check", path, "--statement", "x = x"]);
        assert_eq!((code, out.trim()), (0, "holds"));

        let (code, out, _) = run_capture(&["check", path, "--statement", "x = y"]);
        assert_eq!(code, 1);
        assert!(out.contains("fails at"));

        let (code, _, err) = run_capture(&["check", path, "--statement", "x ="]);
        assert_eq!(code, 2);
        assert!(err.contains("syntax error"));
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_capture(&["chain", "--neg", "2"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());

        let (code, _, err) = run_capture(&["order", "/nonexistent.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("error"));

        let (code, _, _) = run_capture(&["chain", "--neg", "1", "--pos", "1", "--emit", "count"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("zroupoid"));
    }
}
