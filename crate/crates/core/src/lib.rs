//! Macro-network of financial exposures among euro-area institutional
//! sectors.
//!
//! The pipeline is: ingest quarterly who-to-whom exposure series
//! ([`series`]), build a per-quarter multiplex snapshot ([`macronet`]),
//! express edges as shares of bank total assets, aggregate to macro-sectors,
//! and measure growth around a policy event ([`analysis`]).

pub mod amount;
pub mod analysis;
pub mod error;
pub mod macronet;
pub mod series;
pub mod taxonomy;

pub use amount::{Amount, Percent};
pub use analysis::{
    baseline_for, growth_since, paper_report, series_table, BaselineRule, EventWindow,
    GrowthResult, Report, ReportOptions, SeriesTable,
};
pub use error::{Error, Result};
pub use macronet::{
    aggregate_to_macro, build_snapshot, export_snapshot, import_snapshot, normalize_shares,
    sum_outgoing, Edge, ExportFormat, Level, MacroNetSnapshot, Node, SnapshotOptions,
};
pub use series::{
    load_store, save_store, IngestOptions, Instrument, InstrumentKind, Programme, ProgrammeSet,
    Quarter, QuarterlySeries, SeriesKey, SeriesStore,
};
pub use taxonomy::{constituents, macro_sector_of, parse_sector, MacroSector, SectorCode};
