//! Multiplex weighted directed network of sector exposures.
//!
//! A [`MacroNetSnapshot`] holds one quarter. Nodes are institutional sectors
//! (or macro-sectors after [`aggregate_to_macro`]); each edge is keyed by
//! `(creditor, debtor, instrument)` so one sector pair can carry a parallel
//! link per instrument. Edges point in the direction of the money and weigh
//! the end-of-quarter outstanding stock.

mod export;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::amount::{Amount, Percent};
use crate::error::{Error, Result};
use crate::series::{InstrumentKind, Programme, ProgrammeSet, Quarter, SeriesKey, SeriesStore};
use crate::taxonomy::{MacroSector, SectorCode};

pub use export::{
    export_snapshot, import_snapshot, snapshot_json_value, ExportFormat, SNAPSHOT_FORMAT_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Sector(SectorCode),
    Macro(MacroSector),
}

impl Node {
    pub fn macro_sector(self) -> MacroSector {
        match self {
            Node::Sector(c) => c.macro_sector(),
            Node::Macro(m) => m,
        }
    }
}

impl From<SectorCode> for Node {
    fn from(c: SectorCode) -> Self {
        Node::Sector(c)
    }
}

impl From<MacroSector> for Node {
    fn from(m: MacroSector) -> Self {
        Node::Macro(m)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Sector(c) => c.fmt(f),
            Node::Macro(m) => m.fmt(f),
        }
    }
}

impl FromStr for Node {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse::<MacroSector>()
            .map(Node::Macro)
            .or_else(|_| s.parse::<SectorCode>().map(Node::Sector))
    }
}

impl Serialize for Node {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Node {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Level {
    Sector,
    Macro,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub creditor: Node,
    pub debtor: Node,
    pub instrument: InstrumentKind,
    /// Programmes summed into an APP edge.
    pub programmes: Option<Vec<Programme>>,
    pub weight: Amount,
    pub share_pct: Option<Percent>,
}

pub type EdgeId = (Node, Node, InstrumentKind);

impl Edge {
    pub fn id(&self) -> EdgeId {
        (self.creditor, self.debtor, self.instrument.clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeAttrs {
    pub total_assets: Option<Amount>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Denominator {
    pub key: SeriesKey,
    pub amount: Amount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacroNetSnapshot {
    pub quarter: Quarter,
    pub level: Level,
    edges: BTreeMap<EdgeId, Edge>,
    pub nodes: BTreeMap<Node, NodeAttrs>,
    pub denominator: Option<Denominator>,
    /// Requested series that had no value at the quarter.
    pub omitted: Vec<String>,
}

impl MacroNetSnapshot {
    pub fn empty(quarter: Quarter, level: Level) -> Self {
        MacroNetSnapshot {
            quarter,
            level,
            edges: BTreeMap::new(),
            nodes: BTreeMap::new(),
            denominator: None,
            omitted: Vec::new(),
        }
    }

    /// Adds an edge and its endpoints. Returns the edge it replaced, if any.
    pub fn insert_edge(&mut self, edge: Edge) -> Option<Edge> {
        self.nodes.entry(edge.creditor).or_default();
        self.nodes.entry(edge.debtor).or_default();
        self.edges.insert(edge.id(), edge)
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.values()
    }

    pub fn edge(&self, creditor: Node, debtor: Node, instrument: &InstrumentKind) -> Option<&Edge> {
        self.edges.get(&(creditor, debtor, instrument.clone()))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.denominator.is_some()
    }

    /// Total weight per instrument layer.
    pub fn layer_totals(&self) -> BTreeMap<InstrumentKind, Amount> {
        let mut out: BTreeMap<InstrumentKind, Amount> = BTreeMap::new();
        for e in self.edges() {
            *out.entry(e.instrument.clone()).or_default() += e.weight;
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct SnapshotOptions {
    /// Programmes summed into the Eurosystem → banks APP edge.
    pub app_programmes: ProgrammeSet,
}

/// One edge per exposure series of a requested instrument that has a value
/// at `quarter`; APP holdings collapse into the single Eurosystem → banks edge.
pub fn build_snapshot(
    store: &SeriesStore,
    quarter: Quarter,
    instruments: &[InstrumentKind],
    opts: &SnapshotOptions,
) -> Result<MacroNetSnapshot> {
    let wanted: BTreeSet<&InstrumentKind> = instruments.iter().collect();
    let mut snap = MacroNetSnapshot::empty(quarter, Level::Sector);

    for series in store.iter() {
        let SeriesKey::Exposure {
            instrument,
            creditor,
            debtor,
        } = &series.key
        else {
            continue;
        };
        if *instrument.kind() == InstrumentKind::App || !wanted.contains(instrument.kind()) {
            continue;
        }
        match series.values.get(&quarter) {
            Some(w) => {
                snap.insert_edge(Edge {
                    creditor: (*creditor).into(),
                    debtor: (*debtor).into(),
                    instrument: instrument.kind().clone(),
                    programmes: None,
                    weight: *w,
                    share_pct: None,
                });
            }
            None => snap.omitted.push(series.key.to_string()),
        }
    }

    if wanted.contains(&InstrumentKind::App) {
        match store.app_holdings(quarter, &opts.app_programmes) {
            Ok(Some(w)) => {
                snap.insert_edge(Edge {
                    creditor: SectorCode::EcbNcb.into(),
                    debtor: SectorCode::MfiExcl.into(),
                    instrument: InstrumentKind::App,
                    programmes: Some(opts.app_programmes.iter().collect()),
                    weight: w,
                    share_pct: None,
                });
            }
            Ok(None) => snap
                .omitted
                .push(format!("APP holdings ({})", opts.app_programmes)),
            Err(e) => snap.omitted.push(e.to_string()),
        }
    }

    if snap.edges.is_empty() {
        return Err(Error::EmptySnapshot(quarter));
    }
    for (node, attrs) in snap.nodes.iter_mut() {
        if let Node::Sector(c) = node {
            attrs.total_assets = store.get(&SeriesKey::total_assets(*c), quarter).ok();
        }
    }
    Ok(snap)
}

/// Share of every edge in the denominator series at the snapshot quarter.
pub fn normalize_shares(
    snapshot: &MacroNetSnapshot,
    store: &SeriesStore,
    denominator_key: &SeriesKey,
) -> Result<MacroNetSnapshot> {
    let amount = store.get(denominator_key, snapshot.quarter)?;
    if amount.cents() <= 0 {
        return Err(Error::ZeroDenominator {
            key: denominator_key.clone(),
            quarter: snapshot.quarter,
        });
    }
    let mut out = snapshot.clone();
    for e in out.edges.values_mut() {
        e.share_pct = Some(Percent::of(e.weight, amount));
    }
    out.denominator = Some(Denominator {
        key: denominator_key.clone(),
        amount,
    });
    Ok(out)
}

/// Default denominator: total assets of the banking system.
pub fn bank_total_assets_key() -> SeriesKey {
    SeriesKey::total_assets(SectorCode::MfiExcl)
}

/// Collapses endpoints to macro-sectors, summing weights and shares of
/// edges that land on the same `(creditor, debtor, instrument)`. Self-loops
/// are kept.
pub fn aggregate_to_macro(snapshot: &MacroNetSnapshot) -> Result<MacroNetSnapshot> {
    if snapshot.level == Level::Macro {
        return Err(Error::AlreadyAggregated);
    }
    let mut out = MacroNetSnapshot::empty(snapshot.quarter, Level::Macro);
    out.denominator = snapshot.denominator.clone();
    out.omitted = snapshot.omitted.clone();
    for e in snapshot.edges() {
        let creditor = Node::Macro(e.creditor.macro_sector());
        let debtor = Node::Macro(e.debtor.macro_sector());
        let id = (creditor, debtor, e.instrument.clone());
        match out.edges.get_mut(&id) {
            Some(acc) => {
                acc.weight += e.weight;
                acc.share_pct = match (acc.share_pct, e.share_pct) {
                    (Some(a), Some(b)) => Some(a + b),
                    _ => None,
                };
                if let Some(p) = &e.programmes {
                    let merged: BTreeSet<Programme> = acc
                        .programmes
                        .iter()
                        .flatten()
                        .chain(p.iter())
                        .copied()
                        .collect();
                    acc.programmes = Some(merged.into_iter().collect());
                }
            }
            None => {
                out.insert_edge(Edge {
                    creditor,
                    debtor,
                    ..e.clone()
                });
            }
        }
    }
    Ok(out)
}

/// Sum of weights (and shares, on a normalized snapshot) of the
/// `instrument` edges from `creditor` into `debtors`. Missing edges count
/// as zero.
pub fn sum_outgoing(
    snapshot: &MacroNetSnapshot,
    creditor: Node,
    instrument: &InstrumentKind,
    debtors: &[Node],
) -> (Amount, Option<Percent>) {
    let debtors: BTreeSet<Node> = debtors.iter().copied().collect();
    let mut weight = Amount::ZERO;
    let mut share = snapshot.is_normalized().then(Percent::zero);
    for d in debtors {
        if let Some(e) = snapshot.edge(creditor, d, instrument) {
            weight += e.weight;
            share = match (share, e.share_pct) {
                (Some(s), Some(p)) => Some(s + p),
                _ => None,
            };
        }
    }
    (weight, share)
}

/// Debtor nodes of a snapshot that belong to `macro_sector`.
pub fn debtors_in(snapshot: &MacroNetSnapshot, macro_sector: MacroSector) -> Vec<Node> {
    snapshot
        .nodes
        .keys()
        .copied()
        .filter(|n| n.macro_sector() == macro_sector)
        .collect()
}
