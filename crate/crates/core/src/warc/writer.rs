use std::io::{self, Write};

use flate2::write::GzEncoder;
use flate2::Compression;

use crate::time::{format_timestamp, Timestamp};

/// Minimal WARC 1.1 writer, used for fixtures and synthetic corpora.
pub struct WarcWriter<W: Write> {
    out: W,
    gzip: bool,
    next_id: u64,
}

impl<W: Write> WarcWriter<W> {
    pub fn new(out: W) -> Self {
        Self {
            out,
            gzip: false,
            next_id: 1,
        }
    }

    /// Compress every record as its own gzip member.
    pub fn gzip_per_record(mut self, on: bool) -> Self {
        self.gzip = on;
        self
    }

    /// Writes a `response` record whose block is an HTTP/1.1 response.
    pub fn write_http_response(
        &mut self,
        url: &str,
        date: Timestamp,
        content_type: &str,
        body: &[u8],
    ) -> io::Result<()> {
        let block = http_response(content_type, body);
        self.write_raw("response", Some(url), date, "application/http; msgtype=response", &block)
    }

    pub fn write_raw(
        &mut self,
        warc_type: &str,
        url: Option<&str>,
        date: Timestamp,
        content_type: &str,
        block: &[u8],
    ) -> io::Result<()> {
        let mut rec = Vec::with_capacity(block.len() + 320);
        write!(rec, "WARC/1.1\r\nWARC-Type: {warc_type}\r\n")?;
        write!(rec, "WARC-Record-ID: <urn:uuid:00000000-0000-4000-8000-{:012x}>\r\n", self.next_id)?;
        write!(rec, "WARC-Date: {}\r\n", format_timestamp(&date))?;
        if let Some(url) = url {
            write!(rec, "WARC-Target-URI: {url}\r\n")?;
        }
        write!(rec, "Content-Type: {content_type}\r\nContent-Length: {}\r\n\r\n", block.len())?;
        rec.extend_from_slice(block);
        rec.extend_from_slice(b"\r\n\r\n");
        self.next_id += 1;

        if self.gzip {
            let mut enc = GzEncoder::new(&mut self.out, Compression::fast());
            enc.write_all(&rec)?;
            enc.finish()?;
            Ok(())
        } else {
            self.out.write_all(&rec)
        }
    }

    pub fn get_ref(&self) -> &W {
        &self.out
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Builds a `200 OK` HTTP/1.1 response message.
pub fn http_response(content_type: &str, body: &[u8]) -> Vec<u8> {
    let mut out = format!(
        "HTTP/1.1 200 OK\r\nContent-Type: {content_type}\r\nContent-Length: {}\r\n\r\n",
        body.len()
    )
    .into_bytes();
    out.extend_from_slice(body);
    out
}
