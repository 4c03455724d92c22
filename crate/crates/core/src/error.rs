use thiserror::Error;

use crate::series::{Quarter, SeriesKey};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown sector acronym: {0:?}")]
    UnknownSector(String),

    /// A CSV row (or key/flag string) that does not follow the input schema.
    /// `line` is 1-based and counts the header; 0 means "not from a file".
    #[error("schema error at line {line}: {reason}")]
    SchemaError { line: u64, reason: String },

    #[error("negative stock {value} for {key} at {period} (line {line})")]
    NegativeStock {
        key: SeriesKey,
        period: String,
        value: String,
        line: u64,
    },

    #[error("duplicate point for {key} at {period} (line {line})")]
    DuplicatePoint {
        key: SeriesKey,
        period: String,
        line: u64,
    },

    #[error("{key} has interior gaps: missing {missing:?}")]
    GapError {
        key: SeriesKey,
        missing: Vec<Quarter>,
    },

    /// The composite MFI and one of its constituents both appear as debtors
    /// for the same instrument.
    #[error("{instrument} has both the composite MFI and {leaf} as debtors")]
    CompositeConflict { instrument: String, leaf: String },

    #[error("series metadata conflict for {key}: {reason}")]
    MetadataConflict { key: SeriesKey, reason: String },

    #[error("missing series {0}")]
    MissingSeries(String),

    #[error("series {key} has no value at {quarter}")]
    MissingQuarter { key: SeriesKey, quarter: Quarter },

    #[error("unsupported store format version {0}")]
    FormatVersionError(String),

    #[error("corrupt store: {0}")]
    CorruptStore(String),

    #[error("corrupt snapshot: {0}")]
    CorruptSnapshot(String),

    #[error("no requested series covers {0}")]
    EmptySnapshot(Quarter),

    #[error("denominator {key} is zero at {quarter}")]
    ZeroDenominator { key: SeriesKey, quarter: Quarter },

    #[error("snapshot is already aggregated to macro sectors")]
    AlreadyAggregated,

    #[error("baseline value of {key} at {quarter} is not positive")]
    NonPositiveBaseline { key: SeriesKey, quarter: Quarter },

    #[error("window {baseline}..{end} is empty or inverted")]
    InvertedWindow { baseline: Quarter, end: Quarter },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
