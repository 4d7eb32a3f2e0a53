//! WARC (ISO 28500) reading, HTML-to-text conversion and text page selection.
//!
//! [`WarcReader`] yields records lazily in file order. A malformed record
//! produces a recoverable [`WarcError::Malformed`] item and reading resumes
//! at the next `WARC/1.x` header line. I/O failures and streams in which no
//! further record boundary can be found end the sequence with a terminal
//! error item.

mod html;
mod reader;
mod text;
mod writer;

pub use html::html_to_text;
pub use reader::{open, WarcError, WarcReader};
pub use text::{extract_text, normalize_plain_text, PageText};
pub use writer::{http_response, WarcWriter};

use crate::time::Timestamp;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecordType {
    Response,
    Resource,
    Other,
}

impl RecordType {
    fn from_header(value: &str) -> Self {
        if value.eq_ignore_ascii_case("response") {
            RecordType::Response
        } else if value.eq_ignore_ascii_case("resource") {
            RecordType::Resource
        } else {
            RecordType::Other
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WarcRecord {
    pub record_type: RecordType,
    /// Absolute target URI; required for response and resource records.
    pub target_url: Option<String>,
    pub crawl_date: Timestamp,
    /// The record's own `Content-Type` header (for HTTP responses this is
    /// `application/http; msgtype=response`).
    pub content_type: String,
    pub payload: Vec<u8>,
}
