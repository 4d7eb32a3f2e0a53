//! Timestamps and half-open time periods.
//!
//! All comparisons are in UTC and every interval is `[from, to)`.

use std::fmt;

use chrono::{DateTime, Duration, NaiveDate, NaiveDateTime, SubsecRound, Utc};
use serde::{Serialize, Serializer};

pub type Timestamp = DateTime<Utc>;

const TIMESTAMP_FORMAT: &str = "%Y-%m-%dT%H:%M:%SZ";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TimeError {
    #[error("invalid date {0:?}, expected YYYY-MM-DD")]
    InvalidDate(String),
    #[error("invalid timestamp {0:?}, expected YYYY-MM-DDTHH:MM:SSZ")]
    InvalidTimestamp(String),
    #[error("empty period: from ({from}) must be before to ({to})")]
    EmptyPeriod { from: String, to: String },
}

/// Parses `YYYY-MM-DD` as UTC midnight.
pub fn parse_date(s: &str) -> Result<Timestamp, TimeError> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d")
        .ok()
        .filter(|_| s.len() == 10)
        .and_then(|d| d.and_hms_opt(0, 0, 0))
        .map(|dt| dt.and_utc())
        .ok_or_else(|| TimeError::InvalidDate(s.to_string()))
}

/// Parses the interchange form `YYYY-MM-DDTHH:MM:SSZ`.
pub fn parse_timestamp(s: &str) -> Result<Timestamp, TimeError> {
    NaiveDateTime::parse_from_str(s, TIMESTAMP_FORMAT)
        .ok()
        .filter(|_| s.len() == 20)
        .map(|dt| dt.and_utc())
        .ok_or_else(|| TimeError::InvalidTimestamp(s.to_string()))
}

/// Accepts either a bare date or a full interchange timestamp.
pub fn parse_date_or_timestamp(s: &str) -> Result<Timestamp, TimeError> {
    if s.len() == 10 {
        parse_date(s)
    } else {
        parse_timestamp(s)
    }
}

pub fn format_timestamp(t: &Timestamp) -> String {
    t.format(TIMESTAMP_FORMAT).to_string()
}

/// Drops sub-second precision; stored records keep whole seconds only.
pub fn truncate_to_seconds(t: Timestamp) -> Timestamp {
    t.trunc_subsecs(0)
}

pub(crate) fn serialize_timestamp<S: Serializer>(t: &Timestamp, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&t.format(TIMESTAMP_FORMAT))
}

/// A half-open interval `[from, to)` with `from < to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Period {
    #[serde(serialize_with = "serialize_timestamp")]
    from: Timestamp,
    #[serde(serialize_with = "serialize_timestamp")]
    to: Timestamp,
}

impl Period {
    pub fn new(from: Timestamp, to: Timestamp) -> Result<Self, TimeError> {
        if from < to {
            Ok(Self { from, to })
        } else {
            Err(TimeError::EmptyPeriod {
                from: format_timestamp(&from),
                to: format_timestamp(&to),
            })
        }
    }

    /// Builds a period from two `YYYY-MM-DD` dates.
    pub fn from_dates(from: &str, to: &str) -> Result<Self, TimeError> {
        Self::new(parse_date(from)?, parse_date(to)?)
    }

    /// The whole representable time line; handy for "no time restriction".
    pub fn all_time() -> Self {
        Self {
            from: DateTime::<Utc>::MIN_UTC,
            to: DateTime::<Utc>::MAX_UTC,
        }
    }

    pub fn from(&self) -> Timestamp {
        self.from
    }

    pub fn to(&self) -> Timestamp {
        self.to
    }

    pub fn contains(&self, t: &Timestamp) -> bool {
        self.from <= *t && *t < self.to
    }

    pub fn duration(&self) -> Duration {
        self.to - self.from
    }

    /// Splits the period into consecutive disjoint intervals of `days` days
    /// starting at `from`. The final interval is cut at `to` and may be
    /// shorter.
    pub fn partition(&self, days: u32) -> Vec<Period> {
        self.windows(days, days)
    }

    /// Windows of `len_days` starting at `from` and advancing by
    /// `step_days`. The last window is the last one whose start lies before
    /// `to`; windows overhanging `to` are truncated.
    pub fn windows(&self, len_days: u32, step_days: u32) -> Vec<Period> {
        assert!(len_days >= 1 && step_days >= 1, "window and step must be at least one day");
        let len = Duration::days(i64::from(len_days));
        let step = Duration::days(i64::from(step_days));
        let mut out = Vec::new();
        let mut start = self.from;
        while start < self.to {
            let end = start.checked_add_signed(len).map_or(self.to, |e| e.min(self.to));
            out.push(Period { from: start, to: end });
            match start.checked_add_signed(step) {
                Some(next) => start = next,
                None => break,
            }
        }
        out
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", format_timestamp(&self.from), format_timestamp(&self.to))
    }
}
