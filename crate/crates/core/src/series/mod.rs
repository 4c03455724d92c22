//! Quarterly series store.
//!
//! Every series is a map from [`Quarter`] to a fixed-point [`Amount`]. Monthly
//! input is reduced to quarters by keeping the latest month present in each
//! quarter (see [`end_of_quarter`]). The store is built once by ingestion and
//! only read afterwards.

mod ingest;
mod key;
mod period;
mod persist;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::amount::Amount;
use crate::error::{Error, Result};
use crate::taxonomy::SectorCode;

pub use ingest::{
    end_of_quarter, Diagnostic, DuplicatePolicy, EndOfQuarter, GapPolicy, IngestOptions,
    IngestReport, CSV_HEADER,
};
pub use key::{
    Adjustment, Instrument, InstrumentKind, Programme, ProgrammeSet, SeriesKey, Unit,
    TOTAL_ASSETS_PREFIX,
};
pub use period::{Month, Quarter};
pub use persist::{load_store, save_store, STORE_FORMAT_VERSION};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarterlySeries {
    pub key: SeriesKey,
    /// `series_id` column of the source file.
    pub label: String,
    pub unit: Unit,
    pub adjustment: Adjustment,
    /// Set when interior quarters were allowed to be missing at ingestion.
    pub gappy: bool,
    pub values: BTreeMap<Quarter, Amount>,
}

impl QuarterlySeries {
    pub fn first_quarter(&self) -> Option<Quarter> {
        self.values.keys().next().copied()
    }

    pub fn last_quarter(&self) -> Option<Quarter> {
        self.values.keys().next_back().copied()
    }

    /// Quarters strictly inside the span that carry no value.
    pub fn interior_gaps(&self) -> Vec<Quarter> {
        match (self.first_quarter(), self.last_quarter()) {
            (Some(a), Some(b)) => Quarter::range(a, b)
                .filter(|q| !self.values.contains_key(q))
                .collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SourceRecord {
    pub name: String,
    pub rows: u64,
    pub series: usize,
    /// Only filled when the caller asks for a timestamp.
    pub ingested_at: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub reference_period: Option<(Quarter, Quarter)>,
    pub sources: Vec<SourceRecord>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SeriesStore {
    series: BTreeMap<SeriesKey, QuarterlySeries>,
    pub manifest: Manifest,
}

impl SeriesStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &QuarterlySeries> {
        self.series.values()
    }

    pub fn keys(&self) -> impl Iterator<Item = &SeriesKey> {
        self.series.keys()
    }

    pub fn contains(&self, key: &SeriesKey) -> bool {
        self.series.contains_key(key)
    }

    pub fn series(&self, key: &SeriesKey) -> Result<&QuarterlySeries> {
        self.series
            .get(key)
            .ok_or_else(|| Error::MissingSeries(key.to_string()))
    }

    pub fn get(&self, key: &SeriesKey, quarter: Quarter) -> Result<Amount> {
        self.series(key)?
            .values
            .get(&quarter)
            .copied()
            .ok_or_else(|| Error::MissingQuarter {
                key: key.clone(),
                quarter,
            })
    }

    /// Earliest and latest quarter over all series.
    pub fn span(&self) -> Option<(Quarter, Quarter)> {
        let first = self
            .iter()
            .filter_map(QuarterlySeries::first_quarter)
            .min()?;
        let last = self
            .iter()
            .filter_map(QuarterlySeries::last_quarter)
            .max()?;
        Some((first, last))
    }

    /// Latest quarter at which every one of `keys` still has data, i.e. the
    /// minimum of their last quarters.
    pub fn latest_common_quarter<'a>(
        &self,
        keys: impl IntoIterator<Item = &'a SeriesKey>,
    ) -> Result<Quarter> {
        let mut latest: Option<Quarter> = None;
        for k in keys {
            let last = self
                .series(k)?
                .last_quarter()
                .ok_or_else(|| Error::MissingSeries(k.to_string()))?;
            latest = Some(latest.map_or(last, |l| l.min(last)));
        }
        latest.ok_or_else(|| Error::MissingSeries("no series requested".into()))
    }

    fn app_series(&self) -> impl Iterator<Item = (Programme, &QuarterlySeries)> {
        self.iter().filter_map(|s| match s.key.instrument() {
            Some(i) if *i.kind() == InstrumentKind::App => i.programme().map(|p| (p, s)),
            _ => None,
        })
    }

    /// APP holdings at `quarter` summed over `programmes`, or `None` when no
    /// selected programme series has a value at that quarter.
    ///
    /// If the store holds only an aggregate `TOTAL` series, it stands in for
    /// the full programme set.
    pub fn app_holdings(
        &self,
        quarter: Quarter,
        programmes: &ProgrammeSet,
    ) -> Result<Option<Amount>> {
        let per_programme: Vec<_> = self
            .app_series()
            .filter(|(p, _)| *p != Programme::Total)
            .collect();
        let selected: Vec<&QuarterlySeries> = if per_programme.is_empty() {
            let totals: Vec<_> = self.app_series().map(|(_, s)| s).collect();
            if totals.is_empty() {
                return Err(Error::MissingSeries("APP programme holdings".into()));
            }
            if !programmes.is_full() {
                return Err(Error::MissingSeries(format!(
                    "APP programme series for {programmes}"
                )));
            }
            totals
        } else {
            per_programme
                .into_iter()
                .filter(|(p, _)| programmes.contains(*p))
                .map(|(_, s)| s)
                .collect()
        };
        let present: Vec<Amount> = selected
            .iter()
            .filter_map(|s| s.values.get(&quarter).copied())
            .collect();
        Ok((!present.is_empty()).then(|| present.into_iter().sum()))
    }

    /// APP holdings with absent programmes counted as zero.
    pub fn app_total(&self, quarter: Quarter, programmes: &ProgrammeSet) -> Result<Amount> {
        Ok(self
            .app_holdings(quarter, programmes)?
            .unwrap_or(Amount::ZERO))
    }

    pub(crate) fn insert(&mut self, series: QuarterlySeries) {
        self.series.insert(series.key.clone(), series);
    }

    pub(crate) fn series_mut(&mut self, key: &SeriesKey) -> Option<&mut QuarterlySeries> {
        self.series.get_mut(key)
    }

    /// The composite MFI and its constituents may not both be debtors for
    /// one instrument kind.
    pub(crate) fn check_composite_debtors(&self) -> Result<()> {
        let mut seen: BTreeMap<&InstrumentKind, (bool, Option<SectorCode>)> = BTreeMap::new();
        for key in self.series.keys() {
            if let SeriesKey::Exposure {
                instrument, debtor, ..
            } = key
            {
                let entry = seen.entry(instrument.kind()).or_default();
                if debtor.is_composite() {
                    entry.0 = true;
                } else if SectorCode::Mfi.constituents().contains(debtor) {
                    entry.1 = Some(*debtor);
                }
            }
        }
        for (kind, state) in seen {
            if let (true, Some(leaf)) = state {
                return Err(Error::CompositeConflict {
                    instrument: kind.to_string(),
                    leaf: leaf.to_string(),
                });
            }
        }
        Ok(())
    }
}

pub fn get(store: &SeriesStore, key: &SeriesKey, quarter: Quarter) -> Result<Amount> {
    store.get(key, quarter)
}

pub fn app_total(
    store: &SeriesStore,
    quarter: Quarter,
    programmes: &ProgrammeSet,
) -> Result<Amount> {
    store.app_total(quarter, programmes)
}
