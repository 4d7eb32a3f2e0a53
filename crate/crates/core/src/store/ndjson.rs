//! Newline-delimited JSON interchange format.
//!
//! One object per line with exactly the fields
//! `{"a","b","pattern","n","url","date"}` in that order. The weight is
//! derived from `n` and never written.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::extract::{CoMentionRecord, RecordError};
use crate::time::{format_timestamp, parse_timestamp, TimeError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: {source}")]
    Date {
        line: usize,
        #[source]
        source: TimeError,
    },
    #[error("line {line}: {source}")]
    Record {
        line: usize,
        #[source]
        source: RecordError,
    },
    #[error("line {line}: persons must satisfy a < b, got {a:?} and {b:?}")]
    NotCanonical { line: usize, a: String, b: String },
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
}

#[derive(Serialize)]
struct LineOut<'a> {
    a: &'a str,
    b: &'a str,
    pattern: &'a str,
    n: u32,
    url: &'a str,
    date: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LineIn {
    a: String,
    b: String,
    pattern: String,
    n: u32,
    url: String,
    date: String,
}

/// Serialises one record without the trailing newline.
pub fn to_line(record: &CoMentionRecord) -> String {
    serde_json::to_string(&LineOut {
        a: record.person_a(),
        b: record.person_b(),
        pattern: record.pattern(),
        n: record.n_persons(),
        url: record.url(),
        date: format_timestamp(&record.crawl_date()),
    })
    .expect("record serialisation cannot fail")
}

/// Parses one line; `line` is used for error messages only.
pub fn parse_line(text: &str, line: usize) -> Result<CoMentionRecord, FormatError> {
    let raw: LineIn = serde_json::from_str(text).map_err(|source| FormatError::Json { line, source })?;
    if raw.a >= raw.b {
        return Err(FormatError::NotCanonical { line, a: raw.a, b: raw.b });
    }
    let date = parse_timestamp(&raw.date).map_err(|source| FormatError::Date { line, source })?;
    CoMentionRecord::new(raw.a, raw.b, raw.pattern, raw.n, raw.url, date).map_err(|source| FormatError::Record { line, source })
}

/// Reads every non-blank line. Fails on the first bad line.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<CoMentionRecord>, FormatError> {
    let mut out = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_line(&line, idx + 1)?);
    }
    Ok(out)
}

pub fn write_records<'a, W, I>(mut out: W, records: I) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a CoMentionRecord>,
{
    for r in records {
        out.write_all(to_line(r).as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
