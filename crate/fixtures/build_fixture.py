#!/usr/bin/env python3
"""Regenerate the bundled fixture CSVs.

Anchor values at 2014Q3 (baseline) and 2017Q2 (end) are pinned so that the
end/baseline ratios and the 2017Q2 shares of bank total assets match the
published euro-area figures. Everything between anchors is a smooth
log-linear path with a deterministic wiggle that vanishes at the anchors.
"""
import math
from fractions import Fraction
from pathlib import Path

HERE = Path(__file__).resolve().parent
HEADER = "series_id,kind,programme,creditor,debtor,unit,adjustment,freq,period,value"

QUARTERS = [(y, q) for y in range(2003, 2018) for q in range(1, 5)]
QUARTERS = QUARTERS[: QUARTERS.index((2017, 2)) + 1]
assert len(QUARTERS) == 58
IDX = {yq: i for i, yq in enumerate(QUARTERS)}


def cents(x):
    return int(round(x * 100))


def fmt(c):
    sign = "-" if c < 0 else ""
    c = abs(c)
    return f"{sign}{c // 100}.{c % 100:02d}"


def path(anchors, wiggle):
    """anchors: list of (quarter, cents) in order, first must be 2003Q1."""
    out = []
    pts = [(IDX[q], v) for q, v in anchors]
    for i in range(58):
        for (i0, v0), (i1, v1) in zip(pts, pts[1:]):
            if i0 <= i <= i1:
                t = (i - i0) / (i1 - i0)
                base = math.exp(math.log(v0) * (1 - t) + math.log(v1) * t)
                w = 1 + wiggle * math.sin(math.pi * t * 2)
                out.append(v0 if i == i0 else v1 if i == i1 else cents(base * w / 100))
                break
    assert len(out) == 58
    return out


def growth_baseline(end_cents, pct):
    # baseline such that end/baseline - 1 is as close to pct/100 as cents allow
    return int(round(Fraction(end_cents) / (1 + Fraction(pct) / 100)))


def rounded_pct(num, den):
    # half away from zero on hundredths of a percent
    x = Fraction(num * 100, den) * 100
    s = 1 if x >= 0 else -1
    return s * math.floor(abs(x) + Fraction(1, 2)) / 100


END = (2017, 2)
BASE = (2014, 3)
TOTAL_ASSETS_END = 3_100_000_000  # 31,000,000.00 EUR m

loans_end = {
    "MFI": 617_125_000,
    "IC_PF": 10_834_000,
    "FC_EXCL": 96_821_000,
    "HH_NPISH": 553_800_000,
    "NFC": 424_560_000,
    "GG": 101_247_000,
}
loans_growth = {"MFI": "19.19", "HH_NPISH": "5.48", "NFC": "0.27",
                "GG": "-3.12", "IC_PF": "11.87", "FC_EXCL": "7.64"}
loans_start = {"MFI": 0.71, "IC_PF": 0.62, "FC_EXCL": 0.58,
               "HH_NPISH": 0.74, "NFC": 0.79, "GG": 0.93}
GDP_END, GDP_GROWTH = 268_000_000, "9.38"
HICP_BASE, HICP_END = 9_993, 10_137

rows = []


def emit(sid, kind, prog, cred, debt, unit, adj, freq, periods, values):
    for p, v in zip(periods, values):
        rows.append(f"{sid},{kind},{prog},{cred},{debt},{unit},{adj},{freq},{p},{fmt(v)}")


qlabels = [f"{y}Q{q}" for y, q in QUARTERS]
for debtor, end in loans_end.items():
    base = growth_baseline(end, loans_growth[debtor])
    start = cents(base * loans_start[debtor] / 100)
    peak = cents(base * 1.04 / 100)
    vals = path([((2003, 1), start), ((2008, 3), peak), (BASE, base), (END, end)], 0.006)
    emit(f"LOANS.MFI_EXCL.{debtor}", "LOANS", "", "MFI_EXCL", debtor,
         "EUR_MILLIONS", "SWDA", "Q", qlabels, vals)

gdp_base = growth_baseline(GDP_END, GDP_GROWTH)
emit("GDP", "INDICATOR", "", "", "", "CHAIN_LINKED_VOLUME", "SWDA", "Q", qlabels,
     path([((2003, 1), cents(gdp_base * 0.83 / 100)), ((2008, 3), cents(gdp_base * 0.97 / 100)),
           (BASE, gdp_base), (END, GDP_END)], 0.004))
emit("HICP", "INDICATOR", "", "", "", "INDEX_2015_100", "SWDA", "Q", qlabels,
     path([((2003, 1), 8_112), ((2008, 3), 9_204), (BASE, HICP_BASE), (END, HICP_END)], 0.002))
emit("TOTAL_ASSETS:MFI_EXCL", "INDICATOR", "", "", "", "EUR_MILLIONS", "NSA", "Q", qlabels,
     path([((2003, 1), 2_050_000_000), ((2008, 3), 3_390_000_000), (BASE, 3_050_000_000),
           (END, TOTAL_ASSETS_END)], 0.01))

(HERE / "paper_2017q2.csv").write_text(HEADER + "\n" + "\n".join(rows) + "\n")

# APP holdings, monthly, linear build-up from each programme's first month.
app_end = {"CBPP3": 22_540_000, "ABSPP": 2_460_000, "PSPP": 151_730_000, "CSPP": 9_270_000}
app_start = {"CBPP3": (2014, 10), "ABSPP": (2014, 11), "PSPP": (2015, 3), "CSPP": (2016, 6)}
app_rows = []
for prog, end in app_end.items():
    y, m = app_start[prog]
    months = []
    while (y, m) <= (2017, 6):
        months.append(f"{y}-{m:02d}")
        y, m = (y + 1, 1) if m == 12 else (y, m + 1)
    n = len(months)
    for k, p in enumerate(months, 1):
        v = end * k // n
        app_rows.append(f"APP.{prog},APP,{prog},ECB_NCB,MFI_EXCL,EUR_MILLIONS,NSA,M,{p},{fmt(v)}")
(HERE / "app_2017q2.csv").write_text(HEADER + "\n" + "\n".join(app_rows) + "\n")

# Check the anchored figures with exact arithmetic.
assert rounded_pct(sum(app_end.values()), TOTAL_ASSETS_END) == 6.00
intra = loans_end["MFI"] + loans_end["IC_PF"] + loans_end["FC_EXCL"]
real = loans_end["HH_NPISH"] + loans_end["NFC"]
assert rounded_pct(intra, TOTAL_ASSETS_END) == 23.38
assert rounded_pct(real, TOTAL_ASSETS_END) == 31.56
for d, g in loans_growth.items():
    b = growth_baseline(loans_end[d], g)
    assert rounded_pct(loans_end[d] - b, b) == float(g), (d, g)
assert rounded_pct(GDP_END - gdp_base, gdp_base) == 9.38
assert rounded_pct(HICP_END - HICP_BASE, HICP_BASE) == 1.44
print(f"wrote {len(rows)} + {len(app_rows)} rows")
