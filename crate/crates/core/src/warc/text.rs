use std::io::Read;

use encoding_rs::{Encoding, UTF_8};
use flate2::read::{GzDecoder, ZlibDecoder};

use super::html::{html_to_text, normalize_lines};
use super::{RecordType, WarcRecord};
use crate::time::Timestamp;

/// Tag-free, entity-decoded page text with its crawl provenance.
///
/// Lines are block boundaries and act as sentence-boundary hints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageText {
    pub url: String,
    pub crawl_date: Timestamp,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TextKind {
    Html,
    Plain,
}

/// Returns the page text of a `response` record whose media type is
/// `text/html` or `text/plain`.
///
/// Records holding a full HTTP message (`application/http`) are unwrapped
/// first and the HTTP `Content-Type` decides. The charset parameter picks
/// the decoder; unknown or absent charsets fall back to UTF-8, and invalid
/// byte sequences are replaced rather than rejected.
pub fn extract_text(record: &WarcRecord) -> Option<PageText> {
    if record.record_type != RecordType::Response {
        return None;
    }
    let url = record.target_url.clone()?;
    let (content_type, body) = if media_type(&record.content_type) == "application/http" {
        let http = HttpMessage::parse(&record.payload)?;
        (http.content_type.unwrap_or_default(), http.body)
    } else {
        (record.content_type.clone(), record.payload.clone())
    };

    let kind = match media_type(&content_type).as_str() {
        "text/html" => TextKind::Html,
        "text/plain" => TextKind::Plain,
        _ => return None,
    };
    let encoding = charset(&content_type)
        .and_then(|label| Encoding::for_label(label.as_bytes()))
        .unwrap_or(UTF_8);
    let (decoded, _had_errors) = encoding.decode_without_bom_handling(&body);
    let decoded = decoded.trim_start_matches('\u{feff}');

    let text = match kind {
        TextKind::Html => html_to_text(decoded),
        TextKind::Plain => normalize_plain_text(decoded),
    };
    Some(PageText {
        url,
        crawl_date: record.crawl_date,
        text,
    })
}

/// Plain text keeps paragraph breaks (blank lines) as line boundaries and
/// joins hard-wrapped lines within a paragraph.
pub fn normalize_plain_text(raw: &str) -> String {
    let raw = raw.replace("\r\n", "\n");
    let mut joined = String::with_capacity(raw.len());
    for para in raw.split("\n\n") {
        joined.push_str(&para.replace('\n', " "));
        joined.push('\n');
    }
    normalize_lines(&joined)
}

fn media_type(content_type: &str) -> String {
    content_type.split(';').next().unwrap_or("").trim().to_ascii_lowercase()
}

fn charset(content_type: &str) -> Option<String> {
    content_type.split(';').skip(1).find_map(|param| {
        let (k, v) = param.split_once('=')?;
        k.trim()
            .eq_ignore_ascii_case("charset")
            .then(|| v.trim().trim_matches(['"', '\'']).to_string())
    })
}

struct HttpMessage {
    content_type: Option<String>,
    body: Vec<u8>,
}

impl HttpMessage {
    fn parse(block: &[u8]) -> Option<Self> {
        if !block.starts_with(b"HTTP/") {
            return None;
        }
        let (head_len, sep_len) = match find(block, b"\r\n\r\n") {
            Some(p) => (p, 4),
            None => (find(block, b"\n\n")?, 2),
        };
        let head = String::from_utf8_lossy(&block[..head_len]);
        let mut content_type = None;
        let mut chunked = false;
        let mut content_encoding = None;
        for line in head.lines().skip(1) {
            let Some((name, value)) = line.split_once(':') else { continue };
            let value = value.trim();
            match name.trim().to_ascii_lowercase().as_str() {
                "content-type" => content_type = Some(value.to_string()),
                "transfer-encoding" => chunked = value.to_ascii_lowercase().contains("chunked"),
                "content-encoding" => content_encoding = Some(value.to_ascii_lowercase()),
                _ => {}
            }
        }
        let raw = &block[head_len + sep_len..];
        let mut body = if chunked { dechunk(raw) } else { raw.to_vec() };
        match content_encoding.as_deref() {
            Some("gzip" | "x-gzip") => body = inflate(GzDecoder::new(&body[..])),
            Some("deflate") => body = inflate(ZlibDecoder::new(&body[..])),
            _ => {}
        }
        Some(Self { content_type, body })
    }
}

/// Decodes as much as possible; archived bodies are often cut short.
fn inflate(mut decoder: impl Read) -> Vec<u8> {
    let mut out = Vec::new();
    let _ = decoder.read_to_end(&mut out);
    out
}

fn dechunk(mut raw: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(raw.len());
    while let Some(eol) = find(raw, b"\r\n") {
        let size_str = String::from_utf8_lossy(&raw[..eol]);
        let size_hex = size_str.split(';').next().unwrap_or("").trim();
        let Ok(size) = usize::from_str_radix(size_hex, 16) else { break };
        raw = &raw[eol + 2..];
        if size == 0 {
            break;
        }
        let take = size.min(raw.len());
        out.extend_from_slice(&raw[..take]);
        raw = &raw[take..];
        raw = raw.strip_prefix(b"\r\n").unwrap_or(raw);
    }
    out
}

fn find(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w == needle)
}
