//! CSV ingestion.
//!
//! Input rows follow
//! `series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value`.
//! Quarterly rows are treated as observations of the quarter's last month so
//! that monthly and quarterly rows share one duplicate check and one
//! end-of-quarter reduction.

use std::collections::BTreeMap;
use std::io::Read;

use crate::amount::Amount;
use crate::error::{Error, Result};
use crate::taxonomy::{parse_sector, SectorCode};

use super::key::{Adjustment, Instrument, InstrumentKind, Programme, SeriesKey, Unit};
use super::period::{Month, Quarter};
use super::{QuarterlySeries, SeriesStore, SourceRecord};

pub const CSV_HEADER: [&str; 10] = [
    "series_id",
    "kind",
    "programme",
    "creditor",
    "debtor",
    "unit",
    "adjustment",
    "freq",
    "period",
    "value",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GapPolicy {
    #[default]
    Strict,
    Allow,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DuplicatePolicy {
    #[default]
    Strict,
    LastWins,
}

#[derive(Clone, Debug, Default)]
pub struct IngestOptions {
    pub gaps: GapPolicy,
    pub duplicates: DuplicatePolicy,
    /// Recorded in the manifest.
    pub source_name: String,
    /// Recorded in the manifest when set; leave `None` for byte-stable stores.
    pub timestamp: Option<String>,
    pub reference_period: Option<(Quarter, Quarter)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<u64>,
    pub message: String,
}

#[derive(Clone, Debug, Default)]
pub struct IngestReport {
    pub rows: u64,
    pub series: Vec<SeriesKey>,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EndOfQuarter {
    pub values: BTreeMap<Quarter, Amount>,
    /// Quarters whose last month was absent; their value comes from an
    /// earlier month.
    pub partial: Vec<Quarter>,
}

/// Keeps, for every quarter with at least one month, the value of the
/// latest month present.
pub fn end_of_quarter(monthly: &BTreeMap<Month, Amount>) -> EndOfQuarter {
    let mut out = EndOfQuarter::default();
    let mut last_month: BTreeMap<Quarter, Month> = BTreeMap::new();
    // ascending iteration: later months overwrite earlier ones
    for (m, v) in monthly {
        out.values.insert(m.quarter(), *v);
        last_month.insert(m.quarter(), *m);
    }
    out.partial = last_month
        .into_iter()
        .filter(|(_, m)| !m.is_quarter_end())
        .map(|(q, _)| q)
        .collect();
    out
}

struct Staged {
    label: String,
    unit: Unit,
    adjustment: Adjustment,
    first_line: u64,
    months: BTreeMap<Month, (Amount, u64)>,
}

fn schema(line: u64, reason: impl Into<String>) -> Error {
    Error::SchemaError {
        line,
        reason: reason.into(),
    }
}

fn at_line(line: u64, e: Error) -> Error {
    match e {
        Error::SchemaError { reason, .. } => Error::SchemaError { line, reason },
        Error::UnknownSector(s) => schema(line, format!("unknown sector acronym {s:?}")),
        other => other,
    }
}

struct Row {
    key: SeriesKey,
    label: String,
    unit: Unit,
    adjustment: Adjustment,
    month: Month,
    period: String,
    value: Amount,
}

fn parse_row(rec: &csv::StringRecord, line: u64) -> Result<Row> {
    let field = |i: usize| rec.get(i).unwrap_or("").trim();
    let label = field(0);
    if label.is_empty() {
        return Err(schema(line, "empty series_id"));
    }
    let kind = field(1);
    let programme = field(2);
    let (creditor, debtor) = (field(3), field(4));

    let key = if kind == "INDICATOR" {
        if !programme.is_empty() || !creditor.is_empty() || !debtor.is_empty() {
            return Err(schema(
                line,
                "INDICATOR rows take no programme, creditor or debtor",
            ));
        }
        SeriesKey::indicator(label)?
    } else {
        let kind: InstrumentKind = kind.parse()?;
        let programme = if programme.is_empty() {
            None
        } else {
            Some(programme.parse::<Programme>()?)
        };
        let is_app = kind == InstrumentKind::App;
        let instrument = Instrument::new(kind, programme)?;
        let sector = |text: &str, app_default: SectorCode, role: &str| -> Result<SectorCode> {
            match text {
                "" if is_app => Ok(app_default),
                "" => Err(schema(line, format!("missing {role}"))),
                t => parse_sector(t),
            }
        };
        SeriesKey::exposure(
            instrument,
            sector(creditor, SectorCode::EcbNcb, "creditor")?,
            sector(debtor, SectorCode::MfiExcl, "debtor")?,
        )
    };

    let unit: Unit = field(5).parse()?;
    let adjustment = match field(6) {
        "" => Adjustment::Unknown,
        a => a.parse()?,
    };
    let period = field(8);
    let month = match field(7) {
        "M" => period.parse::<Month>()?,
        "Q" => period.parse::<Quarter>()?.end_month(),
        f => return Err(schema(line, format!("freq must be M or Q, got {f:?}"))),
    };
    let value: Amount = field(9)
        .parse()
        .map_err(|e: crate::amount::ParseAmountError| schema(line, e.to_string()))?;
    if key.is_stock() && value.is_negative() {
        return Err(Error::NegativeStock {
            key,
            period: period.to_string(),
            value: value.to_string(),
            line,
        });
    }
    Ok(Row {
        key,
        label: label.to_string(),
        unit,
        adjustment,
        month,
        period: period.to_string(),
        value,
    })
}

impl SeriesStore {
    /// Parses one CSV source and merges it into the store. On error the
    /// store is left unchanged.
    pub fn ingest_csv<R: Read>(&mut self, source: R, opts: &IngestOptions) -> Result<IngestReport> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(source);

        let header = reader.headers().map_err(|e| schema(1, e.to_string()))?;
        if header.iter().ne(CSV_HEADER.iter().copied()) {
            return Err(schema(
                1,
                format!("header must be {}", CSV_HEADER.join(",")),
            ));
        }

        let mut report = IngestReport::default();
        let mut staged: BTreeMap<SeriesKey, Staged> = BTreeMap::new();

        for rec in reader.records() {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                schema(line, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            let row = parse_row(&rec, line).map_err(|e| at_line(line, e))?;
            report.rows += 1;

            let entry = staged.entry(row.key.clone()).or_insert_with(|| Staged {
                label: row.label.clone(),
                unit: row.unit,
                adjustment: row.adjustment,
                first_line: line,
                months: BTreeMap::new(),
            });
            if entry.unit != row.unit || entry.adjustment != row.adjustment {
                return Err(Error::MetadataConflict {
                    key: row.key,
                    reason: format!(
                        "line {line} disagrees with line {} on unit or adjustment",
                        entry.first_line
                    ),
                });
            }
            if let Some((_, prev)) = entry.months.get(&row.month) {
                match opts.duplicates {
                    DuplicatePolicy::Strict => {
                        return Err(Error::DuplicatePoint {
                            key: row.key,
                            period: row.period,
                            line,
                        });
                    }
                    DuplicatePolicy::LastWins => report.warnings.push(Diagnostic {
                        line: Some(line),
                        message: format!("{} at {} replaces line {prev}", row.key, row.period),
                    }),
                }
            }
            entry.months.insert(row.month, (row.value, line));
        }

        let mut next = self.clone();
        for (key, st) in staged {
            let monthly: BTreeMap<Month, Amount> =
                st.months.iter().map(|(m, (v, _))| (*m, *v)).collect();
            let reduced = end_of_quarter(&monthly);
            for q in &reduced.partial {
                report.warnings.push(Diagnostic {
                    line: Some(st.first_line),
                    message: format!(
                        "{key}: last month of {q} missing, using latest month present"
                    ),
                });
            }
            match next.series_mut(&key) {
                Some(existing) => {
                    if existing.unit != st.unit || existing.adjustment != st.adjustment {
                        return Err(Error::MetadataConflict {
                            key,
                            reason: "unit or adjustment differs from the stored series".into(),
                        });
                    }
                    for (q, v) in reduced.values {
                        if existing.values.insert(q, v).is_some() {
                            match opts.duplicates {
                                DuplicatePolicy::Strict => {
                                    return Err(Error::DuplicatePoint {
                                        key,
                                        period: q.to_string(),
                                        line: st.first_line,
                                    })
                                }
                                DuplicatePolicy::LastWins => report.warnings.push(Diagnostic {
                                    line: Some(st.first_line),
                                    message: format!("{key} at {q} replaces the stored value"),
                                }),
                            }
                        }
                    }
                }
                None => next.insert(QuarterlySeries {
                    key: key.clone(),
                    label: st.label,
                    unit: st.unit,
                    adjustment: st.adjustment,
                    gappy: false,
                    values: reduced.values,
                }),
            }

            let series = next.series_mut(&key).expect("just inserted");
            let missing = series.interior_gaps();
            if !missing.is_empty() {
                match opts.gaps {
                    GapPolicy::Strict => return Err(Error::GapError { key, missing }),
                    GapPolicy::Allow => {
                        series.gappy = true;
                        report.warnings.push(Diagnostic {
                            line: None,
                            message: format!(
                                "{key}: {} interior quarter(s) missing",
                                missing.len()
                            ),
                        });
                    }
                }
            }
            report.series.push(key);
        }
        next.check_composite_debtors()?;

        next.manifest.sources.push(SourceRecord {
            name: opts.source_name.clone(),
            rows: report.rows,
            series: report.series.len(),
            ingested_at: opts.timestamp.clone(),
        });
        if opts.reference_period.is_some() {
            next.manifest.reference_period = opts.reference_period;
        }
        *self = next;
        Ok(report)
    }

    pub fn from_csv<R: Read>(source: R, opts: &IngestOptions) -> Result<(Self, IngestReport)> {
        let mut store = SeriesStore::new();
        let report = store.ingest_csv(source, opts)?;
        Ok((store, report))
    }
}
