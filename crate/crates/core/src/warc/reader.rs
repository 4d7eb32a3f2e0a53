use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::Path;

use chrono::{DateTime, Utc};
use flate2::bufread::MultiGzDecoder;

use super::{RecordType, WarcRecord};

const VERSION_PREFIX: &[u8] = b"WARC/1.";
const GZIP_MAGIC: [u8; 2] = [0x1f, 0x8b];

#[derive(Debug, thiserror::Error)]
pub enum WarcError {
    /// The record at `offset` was skipped; the reader continues.
    #[error("malformed record at byte {offset}: {reason}")]
    Malformed { offset: u64, reason: String },
    /// The underlying stream failed; no further records follow.
    #[error("stream error at byte {offset}: {source}")]
    Stream {
        offset: u64,
        #[source]
        source: io::Error,
    },
    /// Data remained but no further `WARC/1.x` header could be found.
    #[error("no record boundary found after byte {offset}")]
    NoBoundary { offset: u64 },
}

impl WarcError {
    pub fn is_recoverable(&self) -> bool {
        matches!(self, WarcError::Malformed { .. })
    }
}

/// Opens a WARC file, transparently decompressing gzip (one member per
/// record or a single member for the whole file).
pub fn open(path: impl AsRef<Path>) -> io::Result<WarcReader<Box<dyn BufRead + Send>>> {
    let file = File::open(path)?;
    Ok(WarcReader::from_read(file))
}

/// `BufRead` adapter that allows bytes to be pushed back in front of the
/// stream when resynchronising after a bad record.
struct Pushback<R> {
    pending: Vec<u8>,
    pos: usize,
    inner: R,
}

impl<R: BufRead> Pushback<R> {
    fn unread(&mut self, bytes: &[u8]) {
        if bytes.is_empty() {
            return;
        }
        let mut buf = Vec::with_capacity(bytes.len() + self.pending.len() - self.pos);
        buf.extend_from_slice(bytes);
        buf.extend_from_slice(&self.pending[self.pos..]);
        self.pending = buf;
        self.pos = 0;
    }
}

impl<R: BufRead> Read for Pushback<R> {
    fn read(&mut self, out: &mut [u8]) -> io::Result<usize> {
        let avail = self.fill_buf()?;
        let n = avail.len().min(out.len());
        out[..n].copy_from_slice(&avail[..n]);
        self.consume(n);
        Ok(n)
    }
}

impl<R: BufRead> BufRead for Pushback<R> {
    fn fill_buf(&mut self) -> io::Result<&[u8]> {
        if self.pos < self.pending.len() {
            Ok(&self.pending[self.pos..])
        } else {
            self.inner.fill_buf()
        }
    }

    fn consume(&mut self, amt: usize) {
        if self.pos < self.pending.len() {
            self.pos += amt;
            if self.pos >= self.pending.len() {
                self.pending.clear();
                self.pos = 0;
            }
        } else {
            self.inner.consume(amt);
        }
    }
}

pub struct WarcReader<R> {
    input: Pushback<R>,
    /// Bytes consumed from the (decompressed) stream.
    offset: u64,
    finished: bool,
}

impl WarcReader<Box<dyn BufRead + Send>> {
    /// Wraps any reader, sniffing the gzip magic number.
    pub fn from_read<T: Read + Send + 'static>(read: T) -> Self {
        let mut buffered = BufReader::with_capacity(64 * 1024, read);
        let gzipped = matches!(buffered.fill_buf(), Ok(head) if head.starts_with(&GZIP_MAGIC));
        let inner: Box<dyn BufRead + Send> = if gzipped {
            Box::new(BufReader::with_capacity(64 * 1024, MultiGzDecoder::new(buffered)))
        } else {
            Box::new(buffered)
        };
        WarcReader::new(inner)
    }
}

impl<R: BufRead> WarcReader<R> {
    /// Reads an uncompressed WARC stream.
    pub fn new(inner: R) -> Self {
        Self {
            input: Pushback {
                pending: Vec::new(),
                pos: 0,
                inner,
            },
            offset: 0,
            finished: false,
        }
    }

    fn read_line(&mut self, buf: &mut Vec<u8>) -> io::Result<usize> {
        buf.clear();
        let n = self.input.read_until(b'\n', buf)?;
        self.offset += n as u64;
        Ok(n)
    }

    fn unread(&mut self, bytes: &[u8]) {
        self.offset -= bytes.len() as u64;
        self.input.unread(bytes);
    }

    fn stream_error(&mut self, source: io::Error) -> Option<Result<WarcRecord, WarcError>> {
        self.finished = true;
        Some(Err(WarcError::Stream {
            offset: self.offset,
            source,
        }))
    }

    /// Skips input until a version line, which is pushed back. A version
    /// line glued to the end of a truncated line is found too. Returns
    /// `false` at end of input.
    fn resync(&mut self) -> io::Result<bool> {
        let mut line = Vec::new();
        loop {
            if self.read_line(&mut line)? == 0 {
                return Ok(false);
            }
            if self.recover_from_block(&line) {
                return Ok(true);
            }
        }
    }

    /// After a bad block, looks for a record header inside the bytes that
    /// were already consumed and pushes everything from there back.
    fn recover_from_block(&mut self, consumed: &[u8]) -> bool {
        match find_version_line(consumed) {
            Some(p) => {
                self.unread(&consumed[p..]);
                true
            }
            None => false,
        }
    }

    fn malformed(&self, offset: u64, reason: impl Into<String>) -> Option<Result<WarcRecord, WarcError>> {
        Some(Err(WarcError::Malformed {
            offset,
            reason: reason.into(),
        }))
    }
}

impl<R: BufRead> Iterator for WarcReader<R> {
    type Item = Result<WarcRecord, WarcError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        let mut line = Vec::new();

        // Version line, skipping blank separator lines.
        let start = loop {
            let line_start = self.offset;
            match self.read_line(&mut line) {
                Ok(0) => {
                    self.finished = true;
                    return None;
                }
                Ok(_) => {}
                Err(e) => return self.stream_error(e),
            }
            if line.iter().all(|b| b.is_ascii_whitespace()) {
                continue;
            }
            if line.starts_with(VERSION_PREFIX) {
                break line_start;
            }
            let garbage = std::mem::take(&mut line);
            let found = if self.recover_from_block(&garbage) { Ok(true) } else { self.resync() };
            return match found {
                Ok(true) => self.malformed(line_start, "unexpected data before record header"),
                Ok(false) => {
                    self.finished = true;
                    Some(Err(WarcError::NoBoundary { offset: line_start }))
                }
                Err(e) => self.stream_error(e),
            };
        };

        // Header fields up to the empty line.
        let mut headers: Vec<(String, String)> = Vec::with_capacity(16);
        loop {
            match self.read_line(&mut line) {
                Ok(0) => {
                    self.finished = true;
                    return self.malformed(start, "end of input inside record header");
                }
                Ok(_) => {}
                Err(e) => return self.stream_error(e),
            }
            if line == b"\r\n" || line == b"\n" {
                break;
            }
            if line.starts_with(VERSION_PREFIX) {
                let l = std::mem::take(&mut line);
                self.unread(&l);
                return self.malformed(start, "record header not terminated by an empty line");
            }
            let text = String::from_utf8_lossy(&line);
            let text = text.trim_end_matches(['\r', '\n']);
            if text.starts_with([' ', '\t']) {
                if let Some((_, value)) = headers.last_mut() {
                    value.push(' ');
                    value.push_str(text.trim());
                    continue;
                }
            }
            match text.split_once(':') {
                Some((name, value)) if !name.trim().is_empty() => {
                    headers.push((name.trim().to_string(), value.trim().to_string()));
                }
                _ => {
                    return match self.resync() {
                        Ok(_) => self.malformed(start, format!("invalid header line {text:?}")),
                        Err(e) => self.stream_error(e),
                    };
                }
            }
        }
        let header = |name: &str| {
            headers
                .iter()
                .find(|(k, _)| k.eq_ignore_ascii_case(name))
                .map(|(_, v)| v.as_str())
        };

        let declared_len = match header("Content-Length").map(str::parse::<u64>) {
            Some(Ok(n)) => n,
            other => {
                let reason = if other.is_none() {
                    "missing Content-Length"
                } else {
                    "Content-Length is not a number"
                };
                return match self.resync() {
                    Ok(_) => self.malformed(start, reason),
                    Err(e) => self.stream_error(e),
                };
            }
        };

        // Block.
        let mut payload = Vec::with_capacity(declared_len.min(1 << 24) as usize);
        match (&mut self.input).take(declared_len).read_to_end(&mut payload) {
            Ok(n) => self.offset += n as u64,
            Err(e) => return self.stream_error(e),
        }
        if (payload.len() as u64) < declared_len {
            let got = payload.len();
            self.recover_from_block(&payload);
            return self.malformed(
                start,
                format!("truncated record: Content-Length {declared_len}, found {got} bytes"),
            );
        }

        // Trailer: CRLF CRLF (bare LF LF tolerated).
        let mut trailer = Vec::with_capacity(4);
        match (&mut self.input).take(4).read_to_end(&mut trailer) {
            Ok(n) => self.offset += n as u64,
            Err(e) => return self.stream_error(e),
        }
        let trailer_ok = if trailer == b"\r\n\r\n" {
            true
        } else if trailer.starts_with(b"\n\n") {
            let rest = trailer[2..].to_vec();
            self.unread(&rest);
            true
        } else {
            trailer.is_empty()
        };
        if !trailer_ok {
            let mut consumed = payload;
            consumed.extend_from_slice(&trailer);
            if !self.recover_from_block(&consumed) {
                if let Err(e) = self.resync() {
                    return self.stream_error(e);
                }
            }
            return self.malformed(start, "record block does not match Content-Length");
        }

        Some(build_record(header, payload).map_err(|reason| WarcError::Malformed { offset: start, reason }))
    }
}

fn build_record<'h>(header: impl Fn(&str) -> Option<&'h str>, payload: Vec<u8>) -> Result<WarcRecord, String> {
    let record_type = RecordType::from_header(header("WARC-Type").ok_or("missing WARC-Type")?);
    let date = header("WARC-Date").ok_or("missing WARC-Date")?;
    let crawl_date = DateTime::parse_from_rfc3339(date)
        .map_err(|e| format!("invalid WARC-Date {date:?}: {e}"))?
        .with_timezone(&Utc);
    let target_url = match header("WARC-Target-URI") {
        Some(raw) => {
            let uri = raw.trim_start_matches('<').trim_end_matches('>');
            url::Url::parse(uri).map_err(|e| format!("invalid WARC-Target-URI {uri:?}: {e}"))?;
            Some(uri.to_string())
        }
        None if matches!(record_type, RecordType::Response | RecordType::Resource) => {
            return Err("missing WARC-Target-URI".into());
        }
        None => None,
    };
    let content_type = header("Content-Type").unwrap_or("application/octet-stream").to_string();
    Ok(WarcRecord {
        record_type,
        target_url,
        crawl_date,
        content_type,
        payload,
    })
}

/// Position of the first `WARC/1.<digit>` followed by a line end.
fn find_version_line(bytes: &[u8]) -> Option<usize> {
    let mut from = 0;
    while let Some(p) = find_subslice(&bytes[from..], VERSION_PREFIX) {
        let at = from + p;
        let rest = &bytes[at + VERSION_PREFIX.len()..];
        if rest.first().is_some_and(u8::is_ascii_digit) && (rest[1..].starts_with(b"\r\n") || rest[1..].starts_with(b"\n")) {
            return Some(at);
        }
        from = at + 1;
    }
    None
}

fn find_subslice(haystack: &[u8], needle: &[u8]) -> Option<usize> {
    haystack.windows(needle.len()).position(|w| w == needle)
}
