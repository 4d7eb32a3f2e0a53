//! Reads a WARC file (plain or per-record gzip) and lists its records.
//!
//! ```bash
//! cargo run -p comention --example parse_warc -- crawl.warc.gz
//! ```
//!
//! Without an argument a small archive with a truncated record is generated
//! in memory.

use std::io::Cursor;

use comention::synth;
use comention::warc::{extract_text, WarcReader, WarcWriter};

fn demo_archive() -> Vec<u8> {
    let pages = synth::election_pages();
    let mut out = Vec::new();
    for (i, p) in pages.iter().take(5).enumerate() {
        let mut w = WarcWriter::new(Vec::new());
        w.write_http_response(&p.url, p.crawl_date, "text/html; charset=utf-8", p.html.as_bytes()).unwrap();
        let bytes = w.into_inner();
        if i == 2 {
            out.extend_from_slice(&bytes[..bytes.len() / 2]);
        } else {
            out.extend_from_slice(&bytes);
        }
    }
    out
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let reader = match std::env::args().nth(1) {
        Some(path) => WarcReader::from_read(std::fs::File::open(path)?),
        None => WarcReader::from_read(Cursor::new(demo_archive())),
    };
    for item in reader {
        match item {
            Ok(record) => {
                let chars = extract_text(&record).map_or(0, |t| t.text.chars().count());
                println!(
                    "{:?}\t{}\t{}\t{} text chars",
                    record.record_type,
                    record.crawl_date.format("%Y-%m-%d"),
                    record.target_url.as_deref().unwrap_or("-"),
                    chars
                );
            }
            Err(e) if e.is_recoverable() => println!("skipped: {e}"),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}
