//! Euro-area institutional sectors and their macro-sector hierarchy.
//!
//! Seven leaf sectors plus the composite `MFI` (Eurosystem and the rest of
//! the monetary financial institutions). Every code has a canonical acronym
//! used for display and one or more ASCII aliases that are safe inside CSV
//! keys and command-line arguments.
//!
//! | code       | canonical                  | ASCII aliases                  | macro     |
//! |------------|----------------------------|--------------------------------|-----------|
//! | `EcbNcb`   | `ECB&NCB`                  | `ECB_NCB`                      | FINANCIAL |
//! | `MfiExcl`  | `MFI excl. ECB&NCB`        | `MFI_EXCL`, `MFI_EXCL_ECB_NCB` | FINANCIAL |
//! | `Mfi`      | `MFI`                      |                                | FINANCIAL |
//! | `Icpf`     | `IC&PF`                    | `IC_PF`, `ICPF`                | FINANCIAL |
//! | `FcExcl`   | `FC excl. MFI and IC&PF`   | `FC_EXCL`                      | FINANCIAL |
//! | `HhNpish`  | `HH&NPISH`                 | `HH_NPISH`, `HH`               | REAL      |
//! | `Nfc`      | `NFC`                      |                                | REAL      |
//! | `Gg`       | `GG`                       |                                | PUBLIC    |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SectorCode {
    EcbNcb,
    MfiExcl,
    Mfi,
    Icpf,
    FcExcl,
    HhNpish,
    Nfc,
    Gg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MacroSector {
    Financial,
    Real,
    Public,
}

impl SectorCode {
    pub const ALL: [SectorCode; 8] = [
        SectorCode::EcbNcb,
        SectorCode::MfiExcl,
        SectorCode::Mfi,
        SectorCode::Icpf,
        SectorCode::FcExcl,
        SectorCode::HhNpish,
        SectorCode::Nfc,
        SectorCode::Gg,
    ];

    pub const LEAVES: [SectorCode; 7] = [
        SectorCode::EcbNcb,
        SectorCode::MfiExcl,
        SectorCode::Icpf,
        SectorCode::FcExcl,
        SectorCode::HhNpish,
        SectorCode::Nfc,
        SectorCode::Gg,
    ];

    /// The acronym as printed in the sector table.
    pub fn canonical(self) -> &'static str {
        match self {
            SectorCode::EcbNcb => "ECB&NCB",
            SectorCode::MfiExcl => "MFI excl. ECB&NCB",
            SectorCode::Mfi => "MFI",
            SectorCode::Icpf => "IC&PF",
            SectorCode::FcExcl => "FC excl. MFI and IC&PF",
            SectorCode::HhNpish => "HH&NPISH",
            SectorCode::Nfc => "NFC",
            SectorCode::Gg => "GG",
        }
    }

    /// Preferred ASCII form, used when writing series keys.
    pub fn ascii(self) -> &'static str {
        match self {
            SectorCode::EcbNcb => "ECB_NCB",
            SectorCode::MfiExcl => "MFI_EXCL",
            SectorCode::Mfi => "MFI",
            SectorCode::Icpf => "IC_PF",
            SectorCode::FcExcl => "FC_EXCL",
            SectorCode::HhNpish => "HH_NPISH",
            SectorCode::Nfc => "NFC",
            SectorCode::Gg => "GG",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            SectorCode::MfiExcl => &["MFI_EXCL_ECB_NCB"],
            SectorCode::Icpf => &["ICPF"],
            SectorCode::HhNpish => &["HH"],
            _ => &[],
        }
    }

    pub fn is_composite(self) -> bool {
        self == SectorCode::Mfi
    }

    pub fn constituents(self) -> &'static [SectorCode] {
        match self {
            SectorCode::Mfi => &[SectorCode::EcbNcb, SectorCode::MfiExcl],
            SectorCode::EcbNcb => &[SectorCode::EcbNcb],
            SectorCode::MfiExcl => &[SectorCode::MfiExcl],
            SectorCode::Icpf => &[SectorCode::Icpf],
            SectorCode::FcExcl => &[SectorCode::FcExcl],
            SectorCode::HhNpish => &[SectorCode::HhNpish],
            SectorCode::Nfc => &[SectorCode::Nfc],
            SectorCode::Gg => &[SectorCode::Gg],
        }
    }

    pub fn macro_sector(self) -> MacroSector {
        match self {
            SectorCode::EcbNcb
            | SectorCode::MfiExcl
            | SectorCode::Mfi
            | SectorCode::Icpf
            | SectorCode::FcExcl => MacroSector::Financial,
            SectorCode::HhNpish | SectorCode::Nfc => MacroSector::Real,
            SectorCode::Gg => MacroSector::Public,
        }
    }
}

/// Trims `text` and matches it case-sensitively against canonical
/// acronyms and ASCII aliases.
pub fn parse_sector(text: &str) -> Result<SectorCode, Error> {
    let t = text.trim();
    SectorCode::ALL
        .into_iter()
        .find(|c| c.canonical() == t || c.ascii() == t || c.aliases().contains(&t))
        .ok_or_else(|| Error::UnknownSector(text.to_string()))
}

pub fn macro_sector_of(code: SectorCode) -> MacroSector {
    code.macro_sector()
}

pub fn constituents(code: SectorCode) -> &'static [SectorCode] {
    code.constituents()
}

impl MacroSector {
    pub const ALL: [MacroSector; 3] = [
        MacroSector::Financial,
        MacroSector::Real,
        MacroSector::Public,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MacroSector::Financial => "FINANCIAL",
            MacroSector::Real => "REAL",
            MacroSector::Public => "PUBLIC",
        }
    }

    pub fn leaves(self) -> impl Iterator<Item = SectorCode> {
        SectorCode::LEAVES
            .into_iter()
            .filter(move |c| c.macro_sector() == self)
    }
}

impl fmt::Display for SectorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical())
    }
}

impl FromStr for SectorCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        parse_sector(s)
    }
}

impl fmt::Display for MacroSector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MacroSector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        MacroSector::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::UnknownSector(s.to_string()))
    }
}

impl Serialize for SectorCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.canonical())
    }
}

impl<'de> Deserialize<'de> for SectorCode {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_sector(&s).map_err(serde::de::Error::custom)
    }
}
