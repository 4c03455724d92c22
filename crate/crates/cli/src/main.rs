//! `macronet`: build sector exposure networks and event-study reports from
//! quarterly who-to-whom CSV exports.
//!
//! Exit status is 0 on success, 1 on a data or validation error and 2 on a
//! usage error (bad flags, unreadable input or store file).

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use macronet::analysis::{
    default_event_date, growth_since, paper_report, series_table, BaselineRule, ReportOptions,
};
use macronet::macronet::{
    aggregate_to_macro, build_snapshot, export_snapshot, normalize_shares, snapshot_json_value,
    ExportFormat, MacroNetSnapshot, SnapshotOptions,
};
use macronet::series::{
    load_store, save_store, DuplicatePolicy, GapPolicy, IngestOptions, InstrumentKind,
    ProgrammeSet, Quarter, SeriesKey, SeriesStore,
};
use macronet::{baseline_for, Error};

#[derive(Parser)]
#[command(
    name = "macronet",
    version,
    about = "Sector exposure networks and event-study growth from quarterly data"
)]
struct Cli {
    /// Series store to read.
    #[arg(long, global = true, env = "MACRONET_STORE")]
    store: Option<PathBuf>,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Render missing inputs as MISSING instead of failing.
    #[arg(long, global = true)]
    allow_partial: bool,

    /// Record the wall-clock time in outputs (breaks byte-for-byte reproducibility).
    #[arg(long, global = true)]
    stamp: bool,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Validate CSV exports and write a series store.
    Ingest(IngestArgs),
    /// Build the exposure network at one quarter.
    Snapshot(SnapshotArgs),
    /// Growth since the event baseline plus end-quarter exposure shares.
    Report(ReportArgs),
    /// Tabulate series over a quarter range.
    Series(SeriesArgs),
    /// Percent change of one series between two quarters.
    Growth(GrowthArgs),
}

#[derive(Args)]
struct IngestArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Downgrade interior gaps to warnings.
    #[arg(long)]
    allow_gaps: bool,
    /// Keep the later of duplicate (series, period) rows.
    #[arg(long)]
    last_wins: bool,
}

#[derive(Args)]
struct SnapshotArgs {
    #[arg(long)]
    quarter: Quarter,
    /// Comma-separated layers: `loans`, `app`, `label:<NAME>`.
    #[arg(long, value_delimiter = ',', value_parser = parse_instrument, default_value = "loans,app")]
    instruments: Vec<InstrumentKind>,
    /// Normalize edge weights to shares of the denominator series.
    #[arg(long)]
    shares: bool,
    #[arg(long, default_value = "TOTAL_ASSETS:MFI_EXCL")]
    denominator: SeriesKey,
    /// Aggregate sectors to FINANCIAL / REAL / PUBLIC.
    #[arg(long = "macro")]
    macro_level: bool,
    #[arg(long, default_value = "CBPP3,ABSPP,PSPP,CSPP")]
    app_programmes: ProgrammeSet,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long, default_value_t = default_event_date())]
    event: NaiveDate,
    #[arg(long, default_value = "last-full-quarter-before")]
    baseline_rule: BaselineRule,
    /// Overrides the baseline rule.
    #[arg(long)]
    baseline: Option<Quarter>,
    /// Defaults to the latest quarter common to all report series.
    #[arg(long)]
    end: Option<Quarter>,
    #[arg(long, default_value = "CBPP3,ABSPP,PSPP,CSPP")]
    app_programmes: ProgrammeSet,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, required = true, value_delimiter = ',')]
    keys: Vec<SeriesKey>,
    #[arg(long)]
    from: Option<Quarter>,
    #[arg(long)]
    to: Option<Quarter>,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(long)]
    key: SeriesKey,
    #[arg(long, conflicts_with = "event")]
    from: Option<Quarter>,
    /// Defaults to the last quarter of the series.
    #[arg(long)]
    to: Option<Quarter>,
    /// Derive the start quarter from an event date instead of `--from`.
    #[arg(long)]
    event: Option<NaiveDate>,
    #[arg(long, default_value = "last-full-quarter-before", requires = "event")]
    baseline_rule: Option<BaselineRule>,
}

fn parse_instrument(token: &str) -> Result<InstrumentKind, String> {
    match token.trim() {
        "loans" => Ok(InstrumentKind::Loans),
        "app" => Ok(InstrumentKind::App),
        t => match t.strip_prefix("label:") {
            Some(l) => match l.to_ascii_uppercase().parse::<InstrumentKind>() {
                Ok(InstrumentKind::Other(k)) => Ok(InstrumentKind::Other(k)),
                Ok(_) => Err(format!("{l:?} is a built-in layer; use `loans` or `app`")),
                Err(e) => Err(e.to_string()),
            },
            None => Err(format!(
                "unknown instrument {t:?} (expected loans, app or label:<NAME>)"
            )),
        },
    }
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

/// Flags that shaped an output, echoed into every JSON document.
#[derive(Serialize)]
struct CliConfig {
    command: &'static str,
    store: Option<String>,
    format: Format,
    allow_partial: bool,
    #[serde(flatten)]
    options: serde_json::Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at: Option<String>,
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn format(&self, default: Format, allowed: &[Format], command: &str) -> CmdResult<Format> {
        let f = self.cli.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Failure::Usage(
                format!("{command} does not support --format {f:?}").to_lowercase(),
            ))
        }
    }

    fn now(&self) -> Option<String> {
        self.cli.stamp.then(|| chrono::Utc::now().to_rfc3339())
    }

    fn config(&self, command: &'static str, format: Format, options: Value) -> Value {
        let Value::Object(options) = options else {
            unreachable!("options are an object")
        };
        let cfg = CliConfig {
            command,
            store: self.cli.store.as_ref().map(|p| p.display().to_string()),
            format,
            allow_partial: self.cli.allow_partial,
            options,
            generated_at: self.now(),
        };
        serde_json::to_value(cfg).expect("config serializes")
    }

    fn load(&self) -> CmdResult<SeriesStore> {
        let path = self.cli.store.as_ref().ok_or_else(|| {
            Failure::Usage("no store given (use --store or MACRONET_STORE)".into())
        })?;
        let file = open(path)?;
        Ok(load_store(BufReader::new(file))?)
    }

    fn emit(&self, bytes: &[u8]) -> CmdResult {
        let res = match &self.cli.out {
            Some(p) => std::fs::write(p, bytes),
            None => io::stdout().lock().write_all(bytes),
        };
        res.map_err(|e| Failure::Data(format!("cannot write output: {e}")))
    }
}

fn open(path: &Path) -> CmdResult<File> {
    File::open(path).map_err(|e| Failure::Usage(format!("cannot open {}: {e}", path.display())))
}

fn json_bytes(v: &Value) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(v).expect("json serializes");
    out.push(b'\n');
    out
}

fn with_config(mut doc: Value, config: Value) -> Value {
    if let Value::Object(m) = &mut doc {
        m.insert("config".into(), config);
    }
    doc
}

fn cmd_ingest(ctx: &Ctx, args: &IngestArgs) -> CmdResult {
    let format = ctx.format(Format::Text, &[Format::Text, Format::Json], "ingest")?;
    let mut store = SeriesStore::new();
    let mut rows = 0;
    let mut warnings = Vec::new();
    let stamp = ctx.now();
    for path in &args.files {
        let file = open(path)?;
        let opts = IngestOptions {
            gaps: if args.allow_gaps {
                GapPolicy::Allow
            } else {
                GapPolicy::Strict
            },
            duplicates: if args.last_wins {
                DuplicatePolicy::LastWins
            } else {
                DuplicatePolicy::Strict
            },
            source_name: path.file_name().map_or_else(
                || path.display().to_string(),
                |n| n.to_string_lossy().into_owned(),
            ),
            timestamp: stamp.clone(),
            reference_period: None,
        };
        let report = store
            .ingest_csv(BufReader::new(file), &opts)
            .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
        rows += report.rows;
        for w in report.warnings {
            let at = w.line.map(|l| format!(":{l}")).unwrap_or_default();
            warnings.push(format!("{}{at}: {}", path.display(), w.message));
        }
    }

    let mut bytes = Vec::new();
    save_store(&store, &mut bytes)?;
    let span = store
        .span()
        .map(|(a, b)| format!("{a}..{b}"))
        .unwrap_or_else(|| "empty".into());

    let summary = match format {
        Format::Json => {
            let doc = json!({
                "series": store.len(),
                "span": span,
                "rows": rows,
                "warnings": warnings,
                "config": ctx.config("ingest", format, json!({
                    "files": args.files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
                    "gaps": if args.allow_gaps { "allow" } else { "strict" },
                    "duplicates": if args.last_wins { "last-wins" } else { "strict" },
                })),
            });
            json_bytes(&doc)
        }
        _ => {
            let mut s = String::new();
            for w in &warnings {
                let _ = writeln!(s, "warning: {w}");
            }
            let _ = writeln!(
                s,
                "{} series, {span} ({rows} rows, {} warnings)",
                store.len(),
                warnings.len()
            );
            s.into_bytes()
        }
    };

    // the store goes wherever output goes; without --out the summary moves to stderr
    ctx.emit(&bytes)?;
    let res = if ctx.cli.out.is_some() {
        io::stdout().lock().write_all(&summary)
    } else {
        io::stderr().lock().write_all(&summary)
    };
    res.map_err(|e| Failure::Data(e.to_string()))
}

fn snapshot_text(s: &MacroNetSnapshot) -> String {
    let mut out = String::new();
    let level = match s.level {
        macronet::Level::Sector => "sector",
        macronet::Level::Macro => "macro",
    };
    let _ = writeln!(
        out,
        "Exposure network {} ({level} level), {} edges",
        s.quarter,
        s.edge_count()
    );
    let width = s
        .edges()
        .map(|e| e.creditor.to_string().len())
        .max()
        .unwrap_or(0);
    let dwidth = s
        .edges()
        .map(|e| e.debtor.to_string().len())
        .max()
        .unwrap_or(0);
    for e in s.edges() {
        let share = e
            .share_pct
            .map(|p| format!("{:>6}%", p.to_string()))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:<width$} -> {:<dwidth$}  {:<6} {:>16} {share}",
            e.creditor.to_string(),
            e.debtor.to_string(),
            e.instrument.name(),
            e.weight.to_string(),
        );
    }
    if let Some(d) = &s.denominator {
        let _ = writeln!(out, "  (denominator {} = {})", d.key, d.amount);
    }
    out
}

fn snapshot_csv(s: &MacroNetSnapshot) -> String {
    let mut out = String::from("creditor,debtor,instrument,weight,share_pct\n");
    for e in s.edges() {
        let share = e.share_pct.map(|p| p.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{share}",
            e.creditor, e.debtor, e.instrument, e.weight
        );
    }
    out
}

fn cmd_snapshot(ctx: &Ctx, args: &SnapshotArgs) -> CmdResult {
    let format = ctx.format(
        Format::Text,
        &[Format::Text, Format::Json, Format::Csv, Format::Dot],
        "snapshot",
    )?;
    let store = ctx.load()?;
    let opts = SnapshotOptions {
        app_programmes: args.app_programmes.clone(),
    };
    let mut snap = build_snapshot(&store, args.quarter, &args.instruments, &opts)?;
    for o in &snap.omitted {
        eprintln!("warning: omitted {o}");
    }
    if args.shares {
        snap = normalize_shares(&snap, &store, &args.denominator)?;
    }
    if args.macro_level {
        snap = aggregate_to_macro(&snap)?;
    }
    let bytes = match format {
        Format::Json => {
            let instruments: Vec<String> = args.instruments.iter().map(|i| i.to_string()).collect();
            let config = ctx.config(
                "snapshot",
                format,
                json!({
                    "quarter": args.quarter,
                    "instruments": instruments,
                    "shares": args.shares,
                    "denominator": args.shares.then(|| args.denominator.to_string()),
                    "macro": args.macro_level,
                    "app_programmes": args.app_programmes.to_string(),
                }),
            );
            json_bytes(&with_config(snapshot_json_value(&snap), config))
        }
        Format::Dot => export_snapshot(&snap, ExportFormat::Dot),
        Format::Csv => snapshot_csv(&snap).into_bytes(),
        Format::Text => snapshot_text(&snap).into_bytes(),
    };
    ctx.emit(&bytes)
}

fn cmd_report(ctx: &Ctx, args: &ReportArgs) -> CmdResult {
    let format = ctx.format(Format::Text, &[Format::Text, Format::Json], "report")?;
    let store = ctx.load()?;
    let opts = ReportOptions {
        event_date: args.event,
        rule: args.baseline_rule,
        baseline: args.baseline,
        end: args.end,
        app_programmes: args.app_programmes.clone(),
        allow_partial: ctx.cli.allow_partial,
    };
    let report = paper_report(&store, &opts)?;
    let bytes = match format {
        Format::Json => {
            let config = ctx.config(
                "report",
                format,
                json!({
                    "event": args.event.to_string(),
                    "baseline_rule": args.baseline_rule.name(),
                    "baseline": args.baseline,
                    "end": args.end,
                    "app_programmes": args.app_programmes.to_string(),
                }),
            );
            json_bytes(&with_config(report.to_json_value(), config))
        }
        _ => report.to_text().into_bytes(),
    };
    ctx.emit(&bytes)
}

fn cmd_series(ctx: &Ctx, args: &SeriesArgs) -> CmdResult {
    let format = ctx.format(
        Format::Csv,
        &[Format::Csv, Format::Text, Format::Json],
        "series",
    )?;
    let store = ctx.load()?;
    let mut first = None;
    let mut last = None;
    for k in &args.keys {
        match store.series(k) {
            Ok(s) => {
                first = first.min(s.first_quarter()).or(s.first_quarter());
                last = last.max(s.last_quarter());
            }
            Err(e) if !ctx.cli.allow_partial => return Err(e.into()),
            Err(_) => {}
        }
    }
    let (Some(from), Some(to)) = (args.from.or(first), args.to.or(last)) else {
        return Err(Failure::Data(
            "none of the requested series has data".into(),
        ));
    };
    let table = series_table(&store, &args.keys, from, to, ctx.cli.allow_partial)?;
    let bytes = match format {
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|(q, cells)| {
                    let values: Vec<Value> = cells
                        .iter()
                        .map(|c| c.map_or(Value::Null, |a| Value::String(a.to_string())))
                        .collect();
                    json!({ "quarter": q, "values": values })
                })
                .collect();
            let keys: Vec<String> = table.columns.iter().map(|k| k.to_string()).collect();
            let config = ctx.config(
                "series",
                format,
                json!({ "keys": keys, "from": from, "to": to }),
            );
            json_bytes(
                &json!({ "macronet_series": 1, "columns": keys, "rows": rows, "config": config }),
            )
        }
        _ => table.to_csv().into_bytes(),
    };
    ctx.emit(&bytes)
}

fn cmd_growth(ctx: &Ctx, args: &GrowthArgs) -> CmdResult {
    let format = ctx.format(Format::Text, &[Format::Text, Format::Json], "growth")?;
    let store = ctx.load()?;
    let from = match (args.from, args.event) {
        (Some(q), _) => q,
        (None, Some(d)) => baseline_for(d, args.baseline_rule.unwrap_or_default()),
        (None, None) => return Err(Failure::Usage("growth needs --from or --event".into())),
    };
    let to = match args.to {
        Some(q) => q,
        None => store
            .series(&args.key)?
            .last_quarter()
            .ok_or_else(|| Error::MissingSeries(args.key.to_string()))?,
    };
    let g = growth_since(&store, &args.key, from, to)?;
    let bytes = match format {
        Format::Json => {
            let config = ctx.config("growth", format, json!({
                "key": args.key.to_string(),
                "from": args.from,
                "to": args.to,
                "event": args.event.map(|d| d.to_string()),
                "baseline_rule": args.event.map(|_| args.baseline_rule.unwrap_or_default().name()),
            }));
            json_bytes(&json!({
                "macronet_growth": 1,
                "key": g.key.to_string(),
                "baseline": g.baseline,
                "end": g.end,
                "baseline_value": g.baseline_value,
                "end_value": g.end_value,
                "growth_pct": g.growth.to_string(),
                "config": config,
            }))
        }
        _ => format!(
            "{} {}..{}: {} -> {}, growth {}%\n",
            g.key, g.baseline, g.end, g.baseline_value, g.end_value, g.growth
        )
        .into_bytes(),
    };
    ctx.emit(&bytes)
}

fn run(cli: &Cli) -> CmdResult {
    let ctx = Ctx { cli };
    match &cli.command {
        Command::Ingest(a) => cmd_ingest(&ctx, a),
        Command::Snapshot(a) => cmd_snapshot(&ctx, a),
        Command::Report(a) => cmd_report(&ctx, a),
        Command::Series(a) => cmd_series(&ctx, a),
        Command::Growth(a) => cmd_growth(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
