//! Ingests WARC files into a directory store with a worker pool.
//!
//! ```bash
//! cargo run -p comention --example ingest_corpus -- persons.txt store/ a.warc.gz b.warc.gz
//! ```
//!
//! Without arguments the synthetic election crawl is written to a temporary
//! directory, split across four files, and ingested there.

use std::path::PathBuf;

use comention::{ingest, synth, IngestOptions, PersonDictionary, RecordStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let tmp = std::env::temp_dir().join(format!("comention-ingest-{}", std::process::id()));
    let (dict, store_dir, files) = if args.len() >= 3 {
        let dict = PersonDictionary::load(std::io::BufReader::new(std::fs::File::open(&args[0])?))?;
        (dict, PathBuf::from(&args[1]), args[2..].iter().map(PathBuf::from).collect())
    } else {
        std::fs::create_dir_all(&tmp)?;
        let pages = synth::election_pages();
        let mut files = Vec::new();
        for (i, chunk) in pages.chunks(pages.len().div_ceil(4)).enumerate() {
            let path = tmp.join(format!("part-{i}.warc.gz"));
            synth::write_warc(chunk, std::fs::File::create(&path)?, true)?;
            files.push(path);
        }
        (synth::election_dictionary(), tmp.join("store"), files)
    };

    let store = RecordStore::open(&store_dir)?;
    let report = ingest(&files, &dict, &store, &IngestOptions::default());
    println!("{}", serde_json::to_string_pretty(&report)?);
    println!("store at {} holds {} records", store_dir.display(), store.len());
    if args.len() < 3 {
        std::fs::remove_dir_all(&tmp)?;
    }
    Ok(())
}
