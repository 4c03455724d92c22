//! Store file: one JSON document with a version header, series sorted by
//! key and amounts written as decimal strings.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::amount::Amount;
use crate::error::{Error, Result};

use super::key::{Adjustment, SeriesKey, Unit};
use super::period::Quarter;
use super::{Manifest, QuarterlySeries, SeriesStore};

pub const STORE_FORMAT_VERSION: u64 = 1;
const VERSION_FIELD: &str = "macronet_store";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StoreDoc {
    macronet_store: u64,
    manifest: Manifest,
    series: Vec<SeriesDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    key: SeriesKey,
    label: String,
    unit: Unit,
    adjustment: Adjustment,
    gappy: bool,
    values: BTreeMap<Quarter, Amount>,
}

/// Writes the canonical form. The document ends at its closing brace so that
/// any truncation leaves invalid JSON.
pub fn save_store<W: Write>(store: &SeriesStore, mut sink: W) -> Result<()> {
    let doc = StoreDoc {
        macronet_store: STORE_FORMAT_VERSION,
        manifest: store.manifest.clone(),
        series: store
            .iter()
            .map(|s| SeriesDoc {
                key: s.key.clone(),
                label: s.label.clone(),
                unit: s.unit,
                adjustment: s.adjustment,
                gappy: s.gappy,
                values: s.values.clone(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut sink, &doc).map_err(std::io::Error::from)?;
    sink.flush()?;
    Ok(())
}

pub fn load_store<R: Read>(mut source: R) -> Result<SeriesStore> {
    let mut text = String::new();
    source
        .read_to_string(&mut text)
        .map_err(|e| Error::CorruptStore(e.to_string()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::CorruptStore(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::CorruptStore("top level is not an object".into()))?;
    match obj.get(VERSION_FIELD) {
        Some(v) if v.as_u64() == Some(STORE_FORMAT_VERSION) => {}
        Some(v) => return Err(Error::FormatVersionError(v.to_string())),
        None => {
            return Err(Error::FormatVersionError(format!(
                "missing {VERSION_FIELD:?} header"
            )))
        }
    }
    let doc: StoreDoc =
        serde_json::from_value(value).map_err(|e| Error::CorruptStore(e.to_string()))?;

    let mut store = SeriesStore::new();
    store.manifest = doc.manifest;
    let mut seen = BTreeSet::new();
    for s in doc.series {
        if !seen.insert(s.key.clone()) {
            return Err(Error::CorruptStore(format!(
                "series {} appears twice",
                s.key
            )));
        }
        if s.key.is_stock() {
            if let Some((q, v)) = s.values.iter().find(|(_, v)| v.is_negative()) {
                return Err(Error::CorruptStore(format!(
                    "{} has negative stock {v} at {q}",
                    s.key
                )));
            }
        }
        let series = QuarterlySeries {
            key: s.key,
            label: s.label,
            unit: s.unit,
            adjustment: s.adjustment,
            gappy: s.gappy,
            values: s.values,
        };
        if !series.gappy && !series.interior_gaps().is_empty() {
            return Err(Error::CorruptStore(format!(
                "{} has gaps but is not flagged gappy",
                series.key
            )));
        }
        store.insert(series);
    }
    store
        .check_composite_debtors()
        .map_err(|e| Error::CorruptStore(e.to_string()))?;
    Ok(store)
}
