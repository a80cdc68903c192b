//! `adjoint-atlas`: classify invariant tuples, compute invariants of a
//! variety spec, verify the catalog and evaluate the bounds.
//!
//! Exit codes: 0 success, 1 usage error, 2 out of scope (`d > n`),
//! 3 catalog verification failure.

mod table;

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use adjoint_atlas_core::bounds::{barth_checks, clifford_rr_h0_bound, harris_bound, lemma1_check, lemma2_check};
use adjoint_atlas_core::catalog::{self, CatalogEntry};
use adjoint_atlas_core::classify::{classify_input, enumerate_cases, ClassifyInput};
use adjoint_atlas_core::varieties::{invariants, VarietySpec};

/// Bumped whenever a payload changes shape.
const SCHEMA_VERSION: u32 = 1;
const CATALOG_ENV: &str = "ADJOINT_ATLAS_CATALOG";

const EXIT_USAGE: u8 = 1;
const EXIT_OUT_OF_SCOPE: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "adjoint-atlas",
    version,
    about = "Invariants and case analysis for manifolds with d <= n"
)]
struct Cli {
    /// Output format; defaults to `table` on a terminal and `json` otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run the case analysis on numeric data (r, d, n).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// `h^0(O(H))`; defaults to `n + 1` (linear normality).
        #[arg(long, allow_negative_numbers = true)]
        h0: Option<i64>,
        /// Sectional genus, when known.
        #[arg(long, allow_negative_numbers = true)]
        g: Option<i64>,
    },
    /// Compute the invariants of a variety spec.
    Invariants {
        /// JSON spec, or `@path` to read it from a file.
        #[arg(long)]
        spec: String,
    },
    /// List or verify the catalog.
    Catalog(CatalogArgs),
    /// Print the series table from closed forms.
    Enumerate {
        #[arg(long)]
        r_max: i64,
    },
    /// Evaluate one of the bounds.
    #[command(subcommand)]
    Bound(BoundCommand),
}

#[derive(Args)]
struct CatalogArgs {
    /// Recompute every entry and compare with the stored values.
    #[arg(long, conflicts_with = "list", required_unless_present = "list")]
    verify: bool,
    /// Print the instantiated entries.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = 12)]
    r_max: i64,
    /// Print one JSON record per line instead of an envelope.
    #[arg(long)]
    jsonl: bool,
    /// Catalog file; overrides the ADJOINT_ATLAS_CATALOG variable.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundCommand {
    /// Harris' bound on the geometric genus.
    Harris {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// Genus and degree bounds when d <= r + s and r <= s + 1.
    Lemma2 {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
    },
    /// Clifford / Riemann-Roch bound on h0 of a line bundle on a curve.
    Clifford {
        #[arg(long)]
        d: i64,
        #[arg(long)]
        g: i64,
        #[arg(long)]
        special: bool,
    },
    /// Barth-type dimension checks.
    Barth {
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
}

#[derive(Serialize)]
struct OutputEnvelope {
    command: Value,
    schema_version: u32,
    status: &'static str,
    exit_code: u8,
    result: Value,
}

struct Outcome {
    command: Value,
    exit_code: u8,
    result: Value,
    /// Replaces the envelope when set (line-delimited output).
    raw: Option<String>,
}

fn status_name(code: u8) -> &'static str {
    match code {
        0 => "ok",
        EXIT_USAGE => "usage_error",
        EXIT_OUT_OF_SCOPE => "out_of_scope",
        _ => "verification_failed",
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payloads serialize")
}

fn ok(command: Value, result: Value) -> Result<Outcome, String> {
    Ok(Outcome {
        command,
        exit_code: 0,
        result,
        raw: None,
    })
}

fn read_spec(arg: &str) -> Result<VarietySpec, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?,
        None => arg.to_string(),
    };
    VarietySpec::from_json(&text).map_err(|e| e.to_string())
}

fn load_entries(args: &CatalogArgs) -> Result<Vec<CatalogEntry>, String> {
    let path = args
        .file
        .clone()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    match path {
        Some(p) => catalog::load_catalog(&p, args.r_max),
        None => catalog::build_catalog(args.r_max),
    }
    .map_err(|e| e.to_string())
}

fn jsonl<T: Serialize>(items: &[T]) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&to_value(item).to_string());
        out.push('\n');
    }
    out
}

fn run(command: Command) -> Result<Outcome, String> {
    match command {
        Command::Classify { r, d, n, h0, g } => {
            let echo = json!({"name": "classify", "r": r, "d": d, "n": n, "h0": h0, "g": g});
            let rec = classify_input(&ClassifyInput { r, d, n, h0, g }).map_err(|e| e.to_string())?;
            let exit_code = if rec.out_of_scope { EXIT_OUT_OF_SCOPE } else { 0 };
            Ok(Outcome {
                command: echo,
                exit_code,
                result: to_value(&rec),
                raw: None,
            })
        }
        Command::Invariants { spec } => {
            let parsed = read_spec(&spec)?;
            let rec = invariants(&parsed).map_err(|e| e.to_string())?;
            ok(json!({"name": "invariants", "spec": to_value(&parsed)}), to_value(&rec))
        }
        Command::Catalog(args) => {
            let entries = load_entries(&args)?;
            let mode = if args.verify { "verify" } else { "list" };
            let echo = json!({"name": "catalog", "mode": mode, "r_max": args.r_max});
            if args.list {
                let raw = args.jsonl.then(|| jsonl(&entries));
                return Ok(Outcome {
                    command: echo,
                    exit_code: 0,
                    result: json!({"count": entries.len(), "entries": to_value(&entries)}),
                    raw,
                });
            }
            let report = catalog::verify_catalog(&entries);
            Ok(Outcome {
                command: echo,
                exit_code: if report.pass { 0 } else { EXIT_VERIFY_FAILED },
                raw: args.jsonl.then(|| report.to_jsonl()),
                result: to_value(&report),
            })
        }
        Command::Enumerate { r_max } => {
            let rows = enumerate_cases(r_max).map_err(|e| e.to_string())?;
            ok(
                json!({"name": "enumerate", "r_max": r_max}),
                json!({"count": rows.len(), "rows": to_value(&rows)}),
            )
        }
        Command::Bound(b) => match b {
            BoundCommand::Harris { d, r, s } => {
                if s < 1 || r < 1 || d < 1 {
                    return Err("harris needs d, r, s >= 1".into());
                }
                ok(
                    json!({"name": "bound harris", "d": d, "r": r, "s": s}),
                    to_value(&harris_bound(d, r, s)),
                )
            }
            BoundCommand::Lemma2 { r, s, d, g } => ok(
                json!({"name": "bound lemma2", "r": r, "s": s, "d": d, "g": g}),
                to_value(&lemma2_check(r, s, d, g)),
            ),
            BoundCommand::Clifford { d, g, special } => ok(
                json!({"name": "bound clifford", "d": d, "g": g, "special": special}),
                json!({
                    "h0_bound": clifford_rr_h0_bound(d, g, special),
                    "h0_at_most_degree": to_value(&lemma1_check(d, g)),
                }),
            ),
            BoundCommand::Barth { r, s } => ok(
                json!({"name": "bound barth", "r": r, "s": s}),
                to_value(&barth_checks(r, s)),
            ),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() {
        Format::Table
    } else {
        Format::Json
    });
    let outcome = match run(cli.command) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let text = match (&outcome.raw, format) {
        (Some(raw), _) => raw.clone(),
        (None, _) => {
            let envelope = OutputEnvelope {
                command: outcome.command,
                schema_version: SCHEMA_VERSION,
                status: status_name(outcome.exit_code),
                exit_code: outcome.exit_code,
                result: outcome.result,
            };
            let value = to_value(&envelope);
            match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("json renders") + "\n",
                Format::Table => table::render(&value),
            }
        }
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    ExitCode::from(outcome.exit_code)
}
