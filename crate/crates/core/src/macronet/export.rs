use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::amount::{Amount, Percent};
use crate::error::{Error, Result};
use crate::series::{InstrumentKind, Programme, Quarter, SeriesKey};

use super::{Denominator, Edge, Level, MacroNetSnapshot, Node, NodeAttrs};

pub const SNAPSHOT_FORMAT_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Dot,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct SnapshotDoc {
    macronet_snapshot: u64,
    quarter: Quarter,
    level: Level,
    denominator: Option<DenominatorDoc>,
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DenominatorDoc {
    key: SeriesKey,
    amount: Amount,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    sector: Node,
    total_assets: Option<Amount>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    creditor: Node,
    debtor: Node,
    instrument: InstrumentKind,
    programmes: Option<Vec<String>>,
    weight: Amount,
    share_pct: Option<Percent>,
}

impl From<&MacroNetSnapshot> for SnapshotDoc {
    fn from(s: &MacroNetSnapshot) -> Self {
        SnapshotDoc {
            macronet_snapshot: SNAPSHOT_FORMAT_VERSION,
            quarter: s.quarter,
            level: s.level,
            denominator: s.denominator.as_ref().map(|d| DenominatorDoc {
                key: d.key.clone(),
                amount: d.amount,
            }),
            nodes: s
                .nodes
                .iter()
                .map(|(n, a)| NodeDoc {
                    sector: *n,
                    total_assets: a.total_assets,
                })
                .collect(),
            edges: s
                .edges()
                .map(|e| EdgeDoc {
                    creditor: e.creditor,
                    debtor: e.debtor,
                    instrument: e.instrument.clone(),
                    programmes: e
                        .programmes
                        .as_ref()
                        .map(|ps| ps.iter().map(|p| p.to_string()).collect()),
                    weight: e.weight,
                    share_pct: e.share_pct,
                })
                .collect(),
        }
    }
}

/// The JSON document as a serde value, for callers that want to embed it.
pub fn snapshot_json_value(s: &MacroNetSnapshot) -> serde_json::Value {
    serde_json::to_value(SnapshotDoc::from(s)).expect("snapshot document serializes")
}

pub fn export_snapshot(s: &MacroNetSnapshot, format: ExportFormat) -> Vec<u8> {
    match format {
        ExportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(&SnapshotDoc::from(s))
                .expect("snapshot document serializes");
            out.push(b'\n');
            out
        }
        ExportFormat::Dot => to_dot(s).into_bytes(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn to_dot(s: &MacroNetSnapshot) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph macronet_{} {{", s.quarter);
    for node in s.nodes.keys() {
        let _ = writeln!(out, "  {};", quote(&node.to_string()));
    }
    for e in s.edges() {
        let label = match e.share_pct {
            Some(p) => format!("{} ({p}%)", e.weight),
            None => e.weight.to_string(),
        };
        let color = match e.instrument {
            InstrumentKind::Loans => "red",
            InstrumentKind::App => "blue",
            InstrumentKind::Other(_) => "black",
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, instrument={}, color={color}];",
            quote(&e.creditor.to_string()),
            quote(&e.debtor.to_string()),
            quote(&label),
            quote(e.instrument.name()),
        );
    }
    out.push_str("}\n");
    out
}

fn corrupt(msg: impl Into<String>) -> Error {
    Error::CorruptSnapshot(msg.into())
}

/// Parses a snapshot JSON document produced by [`export_snapshot`]. A
/// top-level `config` object (as written by the command-line tool) is ignored.
pub fn import_snapshot(bytes: &[u8]) -> Result<MacroNetSnapshot> {
    let mut value: serde_json::Value =
        serde_json::from_slice(bytes).map_err(|e| corrupt(e.to_string()))?;
    if let Some(obj) = value.as_object_mut() {
        obj.remove("config");
    }
    match value.get("macronet_snapshot").and_then(|v| v.as_u64()) {
        Some(SNAPSHOT_FORMAT_VERSION) => {}
        _ => return Err(corrupt("missing or unsupported macronet_snapshot version")),
    }
    let doc: SnapshotDoc = serde_json::from_value(value).map_err(|e| corrupt(e.to_string()))?;

    let mut snap = MacroNetSnapshot::empty(doc.quarter, doc.level);
    snap.denominator = doc.denominator.map(|d| Denominator {
        key: d.key,
        amount: d.amount,
    });
    let level_ok = |n: &Node| {
        matches!(
            (doc.level, n),
            (Level::Sector, Node::Sector(_)) | (Level::Macro, Node::Macro(_))
        )
    };

    for e in doc.edges {
        if !level_ok(&e.creditor) || !level_ok(&e.debtor) {
            return Err(corrupt(format!(
                "edge {} -> {} does not match level",
                e.creditor, e.debtor
            )));
        }
        if e.weight.is_negative() {
            return Err(corrupt("negative edge weight"));
        }
        if let Some(p) = e.share_pct {
            if p.is_negative() {
                return Err(corrupt("negative share"));
            }
            if snap.denominator.is_none() {
                return Err(corrupt("share_pct present without a denominator"));
            }
        }
        let programmes = e
            .programmes
            .map(|ps| {
                ps.iter()
                    .map(|p| p.parse::<Programme>())
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()
            .map_err(|e| corrupt(e.to_string()))?;
        let edge = Edge {
            creditor: e.creditor,
            debtor: e.debtor,
            instrument: e.instrument,
            programmes,
            weight: e.weight,
            share_pct: e.share_pct,
        };
        if snap.insert_edge(edge).is_some() {
            return Err(corrupt("duplicate edge"));
        }
    }
    for n in doc.nodes {
        if !level_ok(&n.sector) {
            return Err(corrupt(format!("node {} does not match level", n.sector)));
        }
        snap.nodes.insert(
            n.sector,
            NodeAttrs {
                total_assets: n.total_assets,
            },
        );
    }
    Ok(snap)
}
