//! Event-study growth rates around a policy date and the report that ties
//! them to the end-quarter exposure shares.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use chrono::NaiveDate;
use serde::Serialize;

use crate::amount::{Amount, Percent};
use crate::error::{Error, Result};
use crate::macronet::{
    bank_total_assets_key, build_snapshot, normalize_shares, sum_outgoing, Denominator, Node,
    SnapshotOptions,
};
use crate::series::{InstrumentKind, ProgrammeSet, Quarter, SeriesKey, SeriesStore};
use crate::taxonomy::SectorCode;

/// Start of the first purchase programme (CBPP3).
pub fn default_event_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2014, 10, 20).expect("valid date")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BaselineRule {
    /// Latest quarter that ends strictly before the event date.
    #[default]
    LastFullQuarterBefore,
    /// Quarter containing the event date.
    QuarterOfEvent,
}

impl BaselineRule {
    pub fn name(self) -> &'static str {
        match self {
            BaselineRule::LastFullQuarterBefore => "last-full-quarter-before",
            BaselineRule::QuarterOfEvent => "quarter-of-event",
        }
    }
}

impl FromStr for BaselineRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "last-full-quarter-before" => Ok(BaselineRule::LastFullQuarterBefore),
            "quarter-of-event" => Ok(BaselineRule::QuarterOfEvent),
            _ => Err(Error::SchemaError {
                line: 0,
                reason: format!("unknown baseline rule {s:?}"),
            }),
        }
    }
}

impl fmt::Display for BaselineRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn baseline_for(event_date: NaiveDate, rule: BaselineRule) -> Quarter {
    let q = Quarter::of_date(event_date);
    match rule {
        // a quarter always ends on or after any of its own days
        BaselineRule::LastFullQuarterBefore => q.pred(),
        BaselineRule::QuarterOfEvent => q,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventWindow {
    pub event_date: NaiveDate,
    pub rule: BaselineRule,
    pub baseline: Quarter,
    pub end: Quarter,
}

impl EventWindow {
    pub fn new(event_date: NaiveDate, rule: BaselineRule, end: Quarter) -> Result<Self> {
        Self::with_baseline(event_date, rule, baseline_for(event_date, rule), end)
    }

    pub fn with_baseline(
        event_date: NaiveDate,
        rule: BaselineRule,
        baseline: Quarter,
        end: Quarter,
    ) -> Result<Self> {
        if baseline >= end {
            return Err(Error::InvertedWindow { baseline, end });
        }
        Ok(EventWindow {
            event_date,
            rule,
            baseline,
            end,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthResult {
    pub key: SeriesKey,
    pub baseline: Quarter,
    pub end: Quarter,
    pub baseline_value: Amount,
    pub end_value: Amount,
    pub growth: Percent,
}

/// Simple percent change of `key` from `baseline` to `end`.
pub fn growth_since(
    store: &SeriesStore,
    key: &SeriesKey,
    baseline: Quarter,
    end: Quarter,
) -> Result<GrowthResult> {
    if baseline >= end {
        return Err(Error::InvertedWindow { baseline, end });
    }
    let baseline_value = store.get(key, baseline)?;
    let end_value = store.get(key, end)?;
    if baseline_value.cents() <= 0 {
        return Err(Error::NonPositiveBaseline {
            key: key.clone(),
            quarter: baseline,
        });
    }
    Ok(GrowthResult {
        key: key.clone(),
        baseline,
        end,
        baseline_value,
        end_value,
        growth: Percent::change(baseline_value, end_value),
    })
}

/// A report cell: a value, or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell<T> {
    Value(T),
    Missing(String),
}

impl<T> Cell<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Cell::Value(v) => Some(v),
            Cell::Missing(_) => None,
        }
    }
}

pub const MISSING: &str = "MISSING";

/// Report rows in display order: six bank loan series, then GDP and HICP.
pub fn report_series() -> Vec<(&'static str, SeriesKey)> {
    let loans = |d| SeriesKey::loans(SectorCode::MfiExcl, d);
    vec![
        ("MFI", loans(SectorCode::Mfi)),
        ("HH", loans(SectorCode::HhNpish)),
        ("NFC", loans(SectorCode::Nfc)),
        ("GG", loans(SectorCode::Gg)),
        ("ICPF", loans(SectorCode::Icpf)),
        ("FC_EXCL", loans(SectorCode::FcExcl)),
        ("GDP", SeriesKey::Indicator("GDP".into())),
        ("HICP", SeriesKey::Indicator("HICP".into())),
    ]
}

pub const INTRA_FINANCIAL_DEBTORS: [SectorCode; 3] =
    [SectorCode::Mfi, SectorCode::Icpf, SectorCode::FcExcl];
pub const REAL_SECTOR_DEBTORS: [SectorCode; 2] = [SectorCode::HhNpish, SectorCode::Nfc];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub label: &'static str,
    pub key: SeriesKey,
    pub result: Cell<GrowthResult>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoanShare {
    pub label: &'static str,
    pub debtor: SectorCode,
    pub share: Cell<Percent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareBlock {
    pub quarter: Quarter,
    pub app_programmes: ProgrammeSet,
    pub denominator: Cell<Denominator>,
    pub app: Cell<Percent>,
    pub loans: Vec<LoanShare>,
    pub intra_financial: Cell<Percent>,
    pub real_sector: Cell<Percent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub event: EventWindow,
    pub growth: Vec<GrowthRow>,
    pub shares: ShareBlock,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub event_date: NaiveDate,
    pub rule: BaselineRule,
    /// Overrides the rule.
    pub baseline: Option<Quarter>,
    /// Defaults to the latest quarter common to all report series.
    pub end: Option<Quarter>,
    pub app_programmes: ProgrammeSet,
    pub allow_partial: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            event_date: default_event_date(),
            rule: BaselineRule::default(),
            baseline: None,
            end: None,
            app_programmes: ProgrammeSet::all(),
            allow_partial: false,
        }
    }
}

fn cell<T>(r: Result<T>, allow_partial: bool) -> Result<Cell<T>> {
    match r {
        Ok(v) => Ok(Cell::Value(v)),
        Err(e) if allow_partial => Ok(Cell::Missing(e.to_string())),
        Err(e) => Err(e),
    }
}

fn shares_at(store: &SeriesStore, quarter: Quarter, opts: &ReportOptions) -> Result<ShareBlock> {
    let partial = opts.allow_partial;
    let snap = build_snapshot(
        store,
        quarter,
        &[InstrumentKind::Loans, InstrumentKind::App],
        &SnapshotOptions {
            app_programmes: opts.app_programmes.clone(),
        },
    )
    .and_then(|s| normalize_shares(&s, store, &bank_total_assets_key()));

    let snap = match snap {
        Ok(s) => s,
        Err(e) if partial => {
            let why = e.to_string();
            fn missing<T>(why: &str) -> Cell<T> {
                Cell::Missing(why.to_string())
            }
            return Ok(ShareBlock {
                quarter,
                app_programmes: opts.app_programmes.clone(),
                denominator: missing(&why),
                app: missing(&why),
                loans: report_series()
                    .into_iter()
                    .filter_map(|(label, key)| match key {
                        SeriesKey::Exposure { debtor, .. } => Some(LoanShare {
                            label,
                            debtor,
                            share: missing(&why),
                        }),
                        _ => None,
                    })
                    .collect(),
                intra_financial: missing(&why),
                real_sector: missing(&why),
            });
        }
        Err(e) => return Err(e),
    };

    let bank = Node::Sector(SectorCode::MfiExcl);
    let edge_share = |creditor: Node, debtor: Node, kind: &InstrumentKind| -> Result<Percent> {
        snap.edge(creditor, debtor, kind)
            .and_then(|e| e.share_pct)
            .ok_or_else(|| {
                Error::MissingSeries(format!("{kind} edge {creditor} -> {debtor} at {quarter}"))
            })
    };
    let group_share = |debtors: &[SectorCode]| -> Result<Percent> {
        for d in debtors {
            edge_share(bank, (*d).into(), &InstrumentKind::Loans)?;
        }
        let nodes: Vec<Node> = debtors.iter().map(|d| Node::Sector(*d)).collect();
        Ok(sum_outgoing(&snap, bank, &InstrumentKind::Loans, &nodes)
            .1
            .expect("normalized snapshot"))
    };

    let mut loans = Vec::new();
    for (label, key) in report_series() {
        if let SeriesKey::Exposure { debtor, .. } = key {
            let share = cell(
                edge_share(bank, debtor.into(), &InstrumentKind::Loans),
                partial,
            )?;
            loans.push(LoanShare {
                label,
                debtor,
                share,
            });
        }
    }
    Ok(ShareBlock {
        quarter,
        app_programmes: opts.app_programmes.clone(),
        denominator: Cell::Value(snap.denominator.clone().expect("normalized snapshot")),
        app: cell(
            edge_share(
                SectorCode::EcbNcb.into(),
                SectorCode::MfiExcl.into(),
                &InstrumentKind::App,
            ),
            partial,
        )?,
        loans,
        intra_financial: cell(group_share(&INTRA_FINANCIAL_DEBTORS), partial)?,
        real_sector: cell(group_share(&REAL_SECTOR_DEBTORS), partial)?,
    })
}

/// Growth of the six bank loan series, GDP and HICP over the event window,
/// plus exposure shares of bank total assets at the window's end quarter.
pub fn paper_report(store: &SeriesStore, opts: &ReportOptions) -> Result<Report> {
    let rows = report_series();
    let end = match opts.end {
        Some(q) => q,
        None => {
            let present: Vec<&SeriesKey> = rows
                .iter()
                .map(|(_, k)| k)
                .filter(|k| !opts.allow_partial || store.contains(k))
                .collect();
            store.latest_common_quarter(present)?
        }
    };
    let event = match opts.baseline {
        Some(b) => EventWindow::with_baseline(opts.event_date, opts.rule, b, end)?,
        None => EventWindow::new(opts.event_date, opts.rule, end)?,
    };
    let growth = rows
        .into_iter()
        .map(|(label, key)| {
            let result = cell(
                growth_since(store, &key, event.baseline, event.end),
                opts.allow_partial,
            )?;
            Ok(GrowthRow { label, key, result })
        })
        .collect::<Result<Vec<_>>>()?;
    let shares = shares_at(store, event.end, opts)?;
    Ok(Report {
        event,
        growth,
        shares,
    })
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let ev = &self.event;
        let _ = writeln!(
            out,
            "Event {} ({}): baseline {}, end {}",
            ev.event_date, ev.rule, ev.baseline, ev.end
        );
        let _ = writeln!(out);
        let _ = writeln!(out, "Growth since baseline (%)");
        let mut header = String::new();
        let mut values = String::new();
        for row in &self.growth {
            let _ = write!(header, "{:>9}", row.label);
            let v = match &row.result {
                Cell::Value(g) => g.growth.to_string(),
                Cell::Missing(_) => MISSING.to_string(),
            };
            let _ = write!(values, "{v:>9}");
        }
        let _ = writeln!(out, "{header}");
        let _ = writeln!(out, "{values}");
        let _ = writeln!(out);

        let sh = &self.shares;
        let _ = writeln!(out, "Shares of bank total assets at {} (%)", sh.quarter);
        let fmt_cell = |c: &Cell<Percent>| match c {
            Cell::Value(p) => p.to_string(),
            Cell::Missing(_) => MISSING.to_string(),
        };
        let mut lines: Vec<(String, String)> =
            vec![(format!("APP ({})", sh.app_programmes), fmt_cell(&sh.app))];
        for l in &sh.loans {
            lines.push((format!("loans to {}", l.label), fmt_cell(&l.share)));
        }
        lines.push((
            "intra-financial loans".into(),
            fmt_cell(&sh.intra_financial),
        ));
        lines.push(("real-sector loans".into(), fmt_cell(&sh.real_sector)));
        let width = lines.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        for (label, v) in lines {
            let _ = writeln!(out, "  {label:<width$} {v:>8}");
        }
        if let Cell::Value(d) = &sh.denominator {
            let _ = writeln!(out, "  (denominator {} = {})", d.key, d.amount);
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ReportDoc::from(self)).expect("report serializes")
    }
}

#[derive(Serialize)]
pub struct ReportDoc {
    macronet_report: u64,
    event: EventDoc,
    growth: Vec<GrowthDoc>,
    shares: SharesDoc,
}

#[derive(Serialize)]
struct EventDoc {
    date: String,
    rule: &'static str,
    baseline: Quarter,
    end: Quarter,
}

#[derive(Serialize)]
struct GrowthDoc {
    label: &'static str,
    key: SeriesKey,
    baseline: Quarter,
    end: Quarter,
    baseline_value: String,
    end_value: String,
    growth_pct: String,
    missing: Option<String>,
}

#[derive(Serialize)]
struct DenominatorDoc {
    key: SeriesKey,
    amount: Amount,
}

#[derive(Serialize)]
struct LoanShareDoc {
    label: &'static str,
    debtor: SectorCode,
    share_pct: String,
}

#[derive(Serialize)]
struct SharesDoc {
    quarter: Quarter,
    app_programmes: String,
    denominator: Option<DenominatorDoc>,
    app: String,
    loans: Vec<LoanShareDoc>,
    intra_financial: String,
    real_sector: String,
}

fn pct_cell(c: &Cell<Percent>) -> String {
    c.value()
        .map_or_else(|| MISSING.to_string(), Percent::to_string)
}

impl From<&Report> for ReportDoc {
    fn from(r: &Report) -> Self {
        let growth = r
            .growth
            .iter()
            .map(|row| {
                let (bv, ev, g, missing) = match &row.result {
                    Cell::Value(g) => (
                        g.baseline_value.to_string(),
                        g.end_value.to_string(),
                        g.growth.to_string(),
                        None,
                    ),
                    Cell::Missing(why) => (
                        MISSING.into(),
                        MISSING.into(),
                        MISSING.into(),
                        Some(why.clone()),
                    ),
                };
                GrowthDoc {
                    label: row.label,
                    key: row.key.clone(),
                    baseline: r.event.baseline,
                    end: r.event.end,
                    baseline_value: bv,
                    end_value: ev,
                    growth_pct: g,
                    missing,
                }
            })
            .collect();
        let sh = &r.shares;
        ReportDoc {
            macronet_report: 1,
            event: EventDoc {
                date: r.event.event_date.to_string(),
                rule: r.event.rule.name(),
                baseline: r.event.baseline,
                end: r.event.end,
            },
            growth,
            shares: SharesDoc {
                quarter: sh.quarter,
                app_programmes: sh.app_programmes.to_string(),
                denominator: sh.denominator.value().map(|d| DenominatorDoc {
                    key: d.key.clone(),
                    amount: d.amount,
                }),
                app: pct_cell(&sh.app),
                loans: sh
                    .loans
                    .iter()
                    .map(|l| LoanShareDoc {
                        label: l.label,
                        debtor: l.debtor,
                        share_pct: pct_cell(&l.share),
                    })
                    .collect(),
                intra_financial: pct_cell(&sh.intra_financial),
                real_sector: pct_cell(&sh.real_sector),
            },
        }
    }
}

/// Quarters in rows, series in columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable {
    pub columns: Vec<SeriesKey>,
    pub rows: Vec<(Quarter, Vec<Option<Amount>>)>,
}

pub fn series_table(
    store: &SeriesStore,
    keys: &[SeriesKey],
    from: Quarter,
    to: Quarter,
    allow_partial: bool,
) -> Result<SeriesTable> {
    if from > to {
        return Err(Error::InvertedWindow {
            baseline: from,
            end: to,
        });
    }
    for k in keys {
        store.series(k)?;
    }
    let mut rows = Vec::new();
    for q in Quarter::range(from, to) {
        let cells = keys
            .iter()
            .map(|k| match store.get(k, q) {
                Ok(v) => Ok(Some(v)),
                Err(Error::MissingQuarter { .. }) if allow_partial => Ok(None),
                Err(e) => Err(e),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push((q, cells));
    }
    Ok(SeriesTable {
        columns: keys.to_vec(),
        rows,
    })
}

impl SeriesTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("quarter");
        for k in &self.columns {
            let _ = write!(out, ",{k}");
        }
        out.push('\n');
        for (q, cells) in &self.rows {
            let _ = write!(out, "{q}");
            for c in cells {
                match c {
                    Some(v) => {
                        let _ = write!(out, ",{v}");
                    }
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }
}
