use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::taxonomy::{parse_sector, SectorCode};

fn schema(reason: impl Into<String>) -> Error {
    Error::SchemaError {
        line: 0,
        reason: reason.into(),
    }
}

/// Purchase programmes under the asset purchase programme umbrella.
/// `Total` tags an aggregate holdings series with no programme breakdown.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Programme {
    Cbpp3,
    Abspp,
    Pspp,
    Cspp,
    Total,
}

impl Programme {
    pub const PURCHASE: [Programme; 4] = [
        Programme::Cbpp3,
        Programme::Abspp,
        Programme::Pspp,
        Programme::Cspp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Programme::Cbpp3 => "CBPP3",
            Programme::Abspp => "ABSPP",
            Programme::Pspp => "PSPP",
            Programme::Cspp => "CSPP",
            Programme::Total => "TOTAL",
        }
    }
}

impl FromStr for Programme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        [
            Programme::Cbpp3,
            Programme::Abspp,
            Programme::Pspp,
            Programme::Cspp,
            Programme::Total,
        ]
        .into_iter()
        .find(|p| p.name() == s.trim())
        .ok_or_else(|| schema(format!("unknown APP programme {s:?}")))
    }
}

impl fmt::Display for Programme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Set of purchase programmes summed into APP holdings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProgrammeSet(BTreeSet<Programme>);

impl ProgrammeSet {
    /// CBPP3 + ABSPP + PSPP + CSPP.
    pub fn all() -> Self {
        ProgrammeSet(Programme::PURCHASE.into_iter().collect())
    }

    /// CBPP3 + ABSPP + PSPP: the programmes bought from the banking system.
    pub fn bank_injection() -> Self {
        ProgrammeSet(
            [Programme::Cbpp3, Programme::Abspp, Programme::Pspp]
                .into_iter()
                .collect(),
        )
    }

    /// `Total` is not a purchase programme and is dropped.
    pub fn new(items: impl IntoIterator<Item = Programme>) -> Self {
        ProgrammeSet(
            items
                .into_iter()
                .filter(|p| *p != Programme::Total)
                .collect(),
        )
    }

    pub fn contains(&self, p: Programme) -> bool {
        self.0.contains(&p)
    }

    pub fn is_full(&self) -> bool {
        self.0.len() == Programme::PURCHASE.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Programme> + '_ {
        self.0.iter().copied()
    }
}

impl Default for ProgrammeSet {
    fn default() -> Self {
        ProgrammeSet::all()
    }
}

impl FromStr for ProgrammeSet {
    type Err = Error;

    /// Comma-separated programme names.
    fn from_str(s: &str) -> Result<Self, Error> {
        let items = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| match t.trim().parse()? {
                Programme::Total => Err(schema("TOTAL is not a purchase programme")),
                p => Ok(p),
            })
            .collect::<Result<BTreeSet<_>, _>>()?;
        if items.is_empty() {
            return Err(schema("empty programme set"));
        }
        Ok(ProgrammeSet(items))
    }
}

impl fmt::Display for ProgrammeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<_> = self.0.iter().map(|p| p.name()).collect();
        f.write_str(&names.join(","))
    }
}

/// Instrument layer of the network.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum InstrumentKind {
    Loans,
    App,
    /// Opaque upper-case label such as `BONDS` or `EQUITY`.
    Other(String),
}

impl InstrumentKind {
    pub fn name(&self) -> &str {
        match self {
            InstrumentKind::Loans => "LOANS",
            InstrumentKind::App => "APP",
            InstrumentKind::Other(l) => l,
        }
    }
}

impl FromStr for InstrumentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "LOANS" => Ok(InstrumentKind::Loans),
            "APP" => Ok(InstrumentKind::App),
            "INDICATOR" | "" => Err(schema(format!("{s:?} is not an instrument"))),
            l if l
                .bytes()
                .all(|b| b.is_ascii_uppercase() || b.is_ascii_digit() || b == b'_') =>
            {
                Ok(InstrumentKind::Other(l.to_string()))
            }
            l => Err(schema(format!(
                "instrument label {l:?} must be upper-case [A-Z0-9_]"
            ))),
        }
    }
}

impl fmt::Display for InstrumentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for InstrumentKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for InstrumentKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// An instrument, with a programme tag only for APP holdings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Instrument {
    kind: InstrumentKind,
    programme: Option<Programme>,
}

impl Instrument {
    pub fn loans() -> Self {
        Instrument {
            kind: InstrumentKind::Loans,
            programme: None,
        }
    }

    pub fn app(programme: Programme) -> Self {
        Instrument {
            kind: InstrumentKind::App,
            programme: Some(programme),
        }
    }

    /// APP instruments without a programme are tagged `Total`; a programme on
    /// any other kind is rejected.
    pub fn new(kind: InstrumentKind, programme: Option<Programme>) -> Result<Self, Error> {
        match (&kind, programme) {
            (InstrumentKind::App, p) => Ok(Instrument::app(p.unwrap_or(Programme::Total))),
            (_, None) => Ok(Instrument {
                kind,
                programme: None,
            }),
            (k, Some(p)) => Err(schema(format!(
                "programme {p} is only valid for APP, not {k}"
            ))),
        }
    }

    pub fn kind(&self) -> &InstrumentKind {
        &self.kind
    }

    pub fn programme(&self) -> Option<Programme> {
        self.programme
    }
}

impl fmt::Display for Instrument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.programme {
            Some(p) => write!(f, "{}/{}", self.kind, p),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl FromStr for Instrument {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.split_once('/') {
            Some((k, p)) => Instrument::new(k.parse()?, Some(p.parse()?)),
            None => Instrument::new(s.parse()?, None),
        }
    }
}

/// Identity of a stored series.
///
/// Text form: `INSTRUMENT:CREDITOR->DEBTOR` for exposures (sectors in ASCII
/// alias form, `→` also accepted on input) and the bare name for indicators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SeriesKey {
    Exposure {
        instrument: Instrument,
        creditor: SectorCode,
        debtor: SectorCode,
    },
    Indicator(String),
}

pub const TOTAL_ASSETS_PREFIX: &str = "TOTAL_ASSETS:";

impl SeriesKey {
    pub fn exposure(instrument: Instrument, creditor: SectorCode, debtor: SectorCode) -> Self {
        SeriesKey::Exposure {
            instrument,
            creditor,
            debtor,
        }
    }

    pub fn loans(creditor: SectorCode, debtor: SectorCode) -> Self {
        SeriesKey::exposure(Instrument::loans(), creditor, debtor)
    }

    /// Names of the form `TOTAL_ASSETS:<sector>` are normalised to the
    /// sector's ASCII alias.
    pub fn indicator(name: &str) -> Result<Self, Error> {
        let name = name.trim();
        if name.is_empty() || name.contains("->") || name.contains('→') || name.contains(',') {
            return Err(schema(format!("invalid indicator name {name:?}")));
        }
        if let Some(sector) = name.strip_prefix(TOTAL_ASSETS_PREFIX) {
            return Ok(SeriesKey::total_assets(parse_sector(sector)?));
        }
        Ok(SeriesKey::Indicator(name.to_string()))
    }

    pub fn total_assets(sector: SectorCode) -> Self {
        SeriesKey::Indicator(format!("{TOTAL_ASSETS_PREFIX}{}", sector.ascii()))
    }

    /// Balance-sheet stocks must be non-negative.
    pub fn is_stock(&self) -> bool {
        match self {
            SeriesKey::Exposure { .. } => true,
            SeriesKey::Indicator(n) => n.starts_with(TOTAL_ASSETS_PREFIX),
        }
    }

    pub fn instrument(&self) -> Option<&Instrument> {
        match self {
            SeriesKey::Exposure { instrument, .. } => Some(instrument),
            SeriesKey::Indicator(_) => None,
        }
    }
}

impl fmt::Display for SeriesKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesKey::Exposure {
                instrument,
                creditor,
                debtor,
            } => {
                write!(f, "{instrument}:{}->{}", creditor.ascii(), debtor.ascii())
            }
            SeriesKey::Indicator(n) => f.write_str(n),
        }
    }
}

impl FromStr for SeriesKey {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let arrow = s
            .find("->")
            .map(|i| (i, 2))
            .or_else(|| s.find('→').map(|i| (i, '→'.len_utf8())));
        let Some((at, width)) = arrow else {
            return SeriesKey::indicator(s);
        };
        let (head, debtor) = (&s[..at], &s[at + width..]);
        let (instrument, creditor) = head.split_once(':').ok_or_else(|| {
            schema(format!(
                "exposure key {s:?} needs INSTRUMENT:CREDITOR->DEBTOR"
            ))
        })?;
        Ok(SeriesKey::exposure(
            instrument.parse()?,
            parse_sector(creditor)?,
            parse_sector(debtor)?,
        ))
    }
}

impl Serialize for SeriesKey {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SeriesKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

macro_rules! string_enum {
    ($(#[$m:meta])* $name:ident { $($var:ident => $s:literal),+ $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name { $($var),+ }

        impl $name {
            pub fn name(self) -> &'static str {
                match self { $($name::$var => $s),+ }
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self, Error> {
                match s.trim() {
                    $($s => Ok($name::$var),)+
                    other => Err(schema(format!(concat!("unknown ", stringify!($name), " {:?}"), other))),
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.serialize_str(self.name())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

string_enum!(Unit {
    EurMillions => "EUR_MILLIONS",
    Index2015 => "INDEX_2015_100",
    ChainLinkedVolume => "CHAIN_LINKED_VOLUME",
});

string_enum!(
    /// Seasonal adjustment state; metadata only, never applied.
    Adjustment {
        Swda => "SWDA",
        Nsa => "NSA",
        Unknown => "UNKNOWN",
    }
);
