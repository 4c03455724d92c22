//! Random small stores, rendered as ingestion CSV.

use std::fmt::Write as _;

use proptest::collection::vec;
use proptest::option::weighted;
use proptest::prelude::*;

pub const HEADER: &str =
    "series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value";
pub const DEBTORS: [&str; 6] = ["MFI", "IC_PF", "FC_EXCL", "HH_NPISH", "NFC", "GG"];
const PROGRAMMES: [&str; 4] = ["CBPP3", "ABSPP", "PSPP", "CSPP"];

#[derive(Clone, Debug)]
pub struct App {
    pub programme: usize,
    /// Month offset from the first month of the span.
    pub first: usize,
    pub months: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct StoreSpec {
    /// Quarter number (year * 4 + index - 1) of the first quarter.
    pub start: i64,
    pub quarters: usize,
    pub loans: [Option<Vec<i64>>; 6],
    pub total_assets: Option<Vec<i64>>,
    pub gdp: Vec<i64>,
    pub hicp: Option<Vec<i64>>,
    pub app: Option<App>,
    /// An extra opaque layer; kept out of the oracle comparisons.
    pub bonds: Option<Vec<i64>>,
}

impl StoreSpec {
    pub fn series_count(&self) -> usize {
        self.loans.iter().flatten().count()
            + 1
            + usize::from(self.total_assets.is_some())
            + usize::from(self.hicp.is_some())
            + usize::from(self.app.is_some())
            + usize::from(self.bonds.is_some())
    }

    pub fn quarter(&self, i: usize) -> String {
        quarter_text(self.start + i as i64)
    }

    /// Deterministic (baseline, end) offsets inside the span.
    pub fn window(&self) -> (usize, usize) {
        let n = self.quarters;
        let b = self.gdp[0] as usize % (n - 1);
        let e = b + 1 + self.gdp[1] as usize % (n - 1 - b);
        (b, e)
    }

    pub fn csv(&self) -> String {
        let mut out = format!("{HEADER}\n");
        let mut quarterly =
            |id: &str, kind: &str, cred: &str, debt: &str, unit: &str, values: &[i64]| {
                for (i, v) in values.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{id},{kind},,{cred},{debt},{unit},SWDA,Q,{},{}",
                        self.quarter(i),
                        cents(*v)
                    );
                }
            };
        for (d, values) in DEBTORS.iter().zip(&self.loans) {
            if let Some(values) = values {
                quarterly(
                    &format!("LOANS.MFI_EXCL.{d}"),
                    "LOANS",
                    "MFI_EXCL",
                    d,
                    "EUR_MILLIONS",
                    values,
                );
            }
        }
        if let Some(v) = &self.total_assets {
            quarterly(
                "TOTAL_ASSETS:MFI_EXCL",
                "INDICATOR",
                "",
                "",
                "EUR_MILLIONS",
                v,
            );
        }
        quarterly("GDP", "INDICATOR", "", "", "CHAIN_LINKED_VOLUME", &self.gdp);
        if let Some(v) = &self.hicp {
            quarterly("HICP", "INDICATOR", "", "", "INDEX_2015_100", v);
        }
        if let Some(v) = &self.bonds {
            quarterly(
                "BONDS.IC_PF.NFC",
                "BONDS",
                "IC_PF",
                "NFC",
                "EUR_MILLIONS",
                v,
            );
        }
        if let Some(app) = &self.app {
            let p = PROGRAMMES[app.programme];
            for (i, v) in app.months.iter().enumerate() {
                let m = self.start * 3 + (app.first + i) as i64;
                let _ = writeln!(
                    out,
                    "APP.{p},APP,{p},ECB_NCB,MFI_EXCL,EUR_MILLIONS,NSA,M,{}-{:02},{}",
                    m.div_euclid(12),
                    m.rem_euclid(12) + 1,
                    cents(*v)
                );
            }
        }
        out
    }
}

pub fn quarter_text(q: i64) -> String {
    format!("{}Q{}", q.div_euclid(4), q.rem_euclid(4) + 1)
}

pub fn cents(v: i64) -> String {
    format!("{}.{:02}", v / 100, v % 100)
}

fn values(n: usize) -> impl Strategy<Value = Vec<i64>> {
    vec(1i64..=1_000_000_000, n)
}

fn app(n: usize) -> impl Strategy<Value = App> {
    (0usize..4, 0..3 * n)
        .prop_flat_map(move |(programme, first)| {
            (
                Just(programme),
                Just(first),
                vec(0i64..=100_000_000, 1..=3 * n - first),
            )
        })
        .prop_map(|(programme, first, months)| App {
            programme,
            first,
            months,
        })
}

/// Stores with at most 8 quarters and at most 10 series (11 with `bonds`).
pub fn store_spec(with_bonds: bool) -> impl Strategy<Value = StoreSpec> {
    (2usize..=8, 1990i64 * 4..2040 * 4).prop_flat_map(move |(n, start)| {
        (
            proptest::array::uniform6(weighted(0.85, values(n))),
            weighted(0.9, vec(1_000_000_000i64..=100_000_000_000, n)),
            values(n),
            weighted(0.9, values(n)),
            weighted(0.8, app(n)),
            if with_bonds {
                weighted(0.5, values(n)).boxed()
            } else {
                Just(None).boxed()
            },
        )
            .prop_map(
                move |(loans, total_assets, gdp, hicp, app, bonds)| StoreSpec {
                    start,
                    quarters: n,
                    loans,
                    total_assets,
                    gdp,
                    hicp,
                    app,
                    bonds,
                },
            )
    })
}
