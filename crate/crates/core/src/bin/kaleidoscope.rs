use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use kaleidoscope::apparitions::Kind;
use kaleidoscope::golden::Golden;
use kaleidoscope::hexagon::SquareId;
use kaleidoscope::records::{self, ListKind};
use kaleidoscope::verify::{self, Scope};
use kaleidoscope::Kaleidoscope;

#[derive(Parser)]
#[command(name = "kaleidoscope", version, about = "Two-qubit magic squares, tetrads and parity proofs, verified exactly")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Damage one embedded table before running (exercises failure paths).
    #[arg(long, global = true, hide = true)]
    corrupt: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    JsonArray,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[arg(value_enum, default_value_t = ScopeArg::All)]
        scope: ScopeArg,
    },
    /// List observables, triads, states, squares, tetrads, lines or MUB sets.
    List {
        #[arg(value_enum)]
        kind: KindArg,
        /// Restrict tetrads or lines to one square.
        #[arg(long)]
        square: Option<SquareId>,
    },
    /// Stream parity-proof apparitions.
    Apparitions {
        /// A square id or "all".
        #[arg(long, default_value = "all")]
        square: String,
        /// 18, 20 or all.
        #[arg(long, default_value = "all", value_parser = ["18", "20", "all"])]
        kind: String,
        /// Every square and kind (same as --square all --kind all).
        #[arg(long)]
        all: bool,
        /// Also run the parity test and an exhaustive coloring search.
        #[arg(long)]
        check: bool,
    },
    /// Symplectic maps carrying one square onto another.
    FindMap {
        from: SquareId,
        to: SquareId,
        /// Include an exact unitary realizing each map.
        #[arg(long)]
        lift: bool,
    },
    /// Dump every derived object as one JSON document.
    Export {
        /// Dump the embedded reference tables instead.
        #[arg(long)]
        dump_golden: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScopeArg {
    All,
    Observables,
    Squares,
    States,
    Reye,
    Apparitions,
    Designs,
    Transforms,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::All => Scope::All,
            ScopeArg::Observables => Scope::Observables,
            ScopeArg::Squares => Scope::Squares,
            ScopeArg::States => Scope::States,
            ScopeArg::Reye => Scope::Reye,
            ScopeArg::Apparitions => Scope::Apparitions,
            ScopeArg::Designs => Scope::Designs,
            ScopeArg::Transforms => Scope::Transforms,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Observables,
    Triads,
    States,
    Squares,
    Tetrads,
    Lines,
    #[value(name = "mubsets")]
    MubSets,
}

impl From<KindArg> for ListKind {
    fn from(k: KindArg) -> ListKind {
        match k {
            KindArg::Observables => ListKind::Observables,
            KindArg::Triads => ListKind::Triads,
            KindArg::States => ListKind::States,
            KindArg::Squares => ListKind::Squares,
            KindArg::Tetrads => ListKind::Tetrads,
            KindArg::Lines => ListKind::Lines,
            KindArg::MubSets => ListKind::MubSets,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// The reader went away, as with `| head`.
    ClosedPipe,
}

impl From<kaleidoscope::Error> for Failure {
    fn from(e: kaleidoscope::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Runtime(e.to_string())
    }
}

fn golden(corrupt: Option<&str>) -> Result<Golden, Failure> {
    let mut g = Golden::embedded()?;
    if let Some(t) = corrupt {
        verify::corrupt(&mut g, t).map_err(|_| {
            Failure::Usage(format!("unknown table {t:?}; expected one of {}", verify::CORRUPTIBLE.join(", ")))
        })?;
    }
    Ok(g)
}

/// `Ok(false)` means a verification failure.
fn run(cli: Cli) -> Result<bool, Failure> {
    let golden = golden(cli.corrupt.as_deref())?;
    let out = &mut io::stdout().lock();
    match cli.command {
        Command::Verify { scope } => {
            let report = verify::run(scope.into(), golden);
            match cli.format {
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes"))?,
                Format::JsonArray => writeln!(out, "[{}]", serde_json::to_string(&report).expect("report serializes"))?,
                Format::Csv => {
                    let rows: Vec<Value> = report.checks.iter().map(|c| serde_json::to_value(c).expect("check")).collect();
                    render(out, &rows, Format::Csv, "check")?;
                }
            }
            Ok(report.passed)
        }
        Command::List { kind, square } => {
            if square.is_some() && !matches!(kind, KindArg::Tetrads | KindArg::Lines) {
                return Err(Failure::Usage("--square applies to tetrads and lines only".into()));
            }
            let k = Kaleidoscope::from_golden(golden)?;
            let column = match kind {
                KindArg::Tetrads => "tetrad",
                _ => "value",
            };
            render(out, &records::list(&k, kind.into(), square)?, cli.format, column)?;
            Ok(true)
        }
        Command::Apparitions { square, kind, all, check } => {
            let squares: Vec<SquareId> = if all || square == "all" {
                SquareId::all().collect()
            } else {
                vec![square.parse().map_err(|e: kaleidoscope::Error| Failure::Usage(e.to_string()))?]
            };
            let kind = match (all, kind.as_str()) {
                (true, _) | (_, "all") => None,
                (_, "18") => Some(Kind::Eighteen),
                _ => Some(Kind::Twenty),
            };
            let k = Kaleidoscope::from_golden(golden)?;
            let recs = records::apparitions(&k, &squares, kind, check)?;
            render(out, &recs, cli.format, "apparition")?;
            Ok(!check || recs.iter().all(|r| r["colorings"] == 0 && r["parity"] == true))
        }
        Command::FindMap { from, to, lift } => {
            let k = Kaleidoscope::from_golden(golden)?;
            let recs = records::maps(&k, from, to, lift)?;
            render(out, &recs, cli.format, "map")?;
            Ok(!recs.is_empty())
        }
        Command::Export { dump_golden } => {
            let doc = if dump_golden {
                serde_json::to_value(&golden).expect("tables serialize")
            } else {
                records::export(&Kaleidoscope::from_golden(golden)?)?
            };
            match cli.format {
                Format::Json | Format::JsonArray => writeln!(out, "{}", doc)?,
                _ => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"))?,
            }
            Ok(true)
        }
    }
}

/// Text rendering of one JSON value: arrays of scalars joined by commas,
/// arrays of arrays by spaces.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().any(|i| i.is_array()) => {
            items.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(","),
        Value::Object(_) => v.to_string(),
        other => other.to_string(),
    }
}

fn columns(records: &[Value], fallback: &str) -> Vec<String> {
    match records.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => vec![fallback.to_string()],
    }
}

fn field<'a>(r: &'a Value, key: &str, single: bool) -> &'a Value {
    if single {
        r
    } else {
        r.get(key).unwrap_or(&Value::Null)
    }
}

fn render(out: &mut impl Write, records: &[Value], format: Format, fallback: &str) -> io::Result<()> {
    let single = !matches!(records.first(), Some(Value::Object(_)));
    let cols = columns(records, fallback);
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{r}")?;
            }
        }
        Format::JsonArray => writeln!(out, "{}", Value::Array(records.to_vec()))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&cols)?;
            for r in records {
                w.write_record(cols.iter().map(|c| cell(field(r, c, single))))?;
            }
            w.flush()?;
        }
        Format::Text => {
            let rows: Vec<Vec<String>> =
                records.iter().map(|r| cols.iter().map(|c| cell(field(r, c, single))).collect()).collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| rows.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.len()))
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}", w = *w)).collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(&cols))?;
            for r in &rows {
                writeln!(out, "{}", line(r))?;
            }
        }
    }
    Ok(())
}
