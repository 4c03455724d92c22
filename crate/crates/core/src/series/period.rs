use std::fmt;
use std::str::FromStr;

use chrono::{Datelike, NaiveDate};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A calendar quarter, ordered by `(year, index)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quarter {
    year: i32,
    index: u8,
}

/// A calendar month; the unit of monthly input rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Month {
    year: i32,
    month: u8,
}

impl Quarter {
    pub fn new(year: i32, index: u8) -> Option<Self> {
        (1..=4).contains(&index).then_some(Quarter { year, index })
    }

    pub fn year(self) -> i32 {
        self.year
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn of_date(date: NaiveDate) -> Self {
        Quarter {
            year: date.year(),
            index: (date.month0() / 3 + 1) as u8,
        }
    }

    pub fn first_day(self) -> NaiveDate {
        NaiveDate::from_ymd_opt(self.year, u32::from(self.index) * 3 - 2, 1)
            .expect("valid quarter start")
    }

    pub fn last_day(self) -> NaiveDate {
        self.succ()
            .first_day()
            .pred_opt()
            .expect("valid quarter end")
    }

    pub fn end_month(self) -> Month {
        Month {
            year: self.year,
            month: self.index * 3,
        }
    }

    pub fn succ(self) -> Self {
        if self.index == 4 {
            Quarter {
                year: self.year + 1,
                index: 1,
            }
        } else {
            Quarter {
                year: self.year,
                index: self.index + 1,
            }
        }
    }

    pub fn pred(self) -> Self {
        if self.index == 1 {
            Quarter {
                year: self.year - 1,
                index: 4,
            }
        } else {
            Quarter {
                year: self.year,
                index: self.index - 1,
            }
        }
    }

    fn ordinal(self) -> i64 {
        i64::from(self.year) * 4 + i64::from(self.index) - 1
    }

    /// Number of quarters from `self` to `other`, negative if `other` is earlier.
    pub fn distance(self, other: Quarter) -> i64 {
        other.ordinal() - self.ordinal()
    }

    /// Inclusive range `from..=to`; empty when `to < from`.
    pub fn range(from: Quarter, to: Quarter) -> impl Iterator<Item = Quarter> {
        let n = from.distance(to) + 1;
        std::iter::successors(Some(from), |q| Some(q.succ())).take(n.max(0) as usize)
    }
}

impl Month {
    pub fn new(year: i32, month: u8) -> Option<Self> {
        (1..=12).contains(&month).then_some(Month { year, month })
    }

    pub fn year(self) -> i32 {
        self.year
    }

    pub fn month(self) -> u8 {
        self.month
    }

    pub fn quarter(self) -> Quarter {
        Quarter {
            year: self.year,
            index: (self.month - 1) / 3 + 1,
        }
    }

    pub fn is_quarter_end(self) -> bool {
        self.month.is_multiple_of(3)
    }
}

fn schema(reason: String) -> Error {
    Error::SchemaError { line: 0, reason }
}

impl FromStr for Quarter {
    type Err = Error;

    /// `YYYYQn`
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || schema(format!("invalid quarter {s:?}, expected YYYYQn"));
        let (y, q) = s.trim().split_once('Q').ok_or_else(bad)?;
        if y.len() != 4 || q.len() != 1 || !y.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let year = y.parse().map_err(|_| bad())?;
        let index = q.parse().map_err(|_| bad())?;
        Quarter::new(year, index).ok_or_else(bad)
    }
}

impl FromStr for Month {
    type Err = Error;

    /// `YYYY-MM`
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || schema(format!("invalid month {s:?}, expected YYYY-MM"));
        let (y, m) = s.trim().split_once('-').ok_or_else(bad)?;
        if y.len() != 4 || m.len() != 2 || !(y.bytes().chain(m.bytes())).all(|b| b.is_ascii_digit())
        {
            return Err(bad());
        }
        Month::new(y.parse().map_err(|_| bad())?, m.parse().map_err(|_| bad())?).ok_or_else(bad)
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}Q{}", self.year, self.index)
    }
}

impl fmt::Display for Month {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

impl Serialize for Quarter {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Quarter {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
