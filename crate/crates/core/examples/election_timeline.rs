//! Animates the synthetic 2008 election: one graph frame per 30 days.
//!
//! ```bash
//! cargo run -p comention --example election_timeline
//! ```

use comention::{build_dynamic, ingest, synth, IngestOptions, RecordStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("comention-election-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let warc = dir.join("election.warc.gz");
    synth::write_warc(&synth::election_pages(), std::fs::File::create(&warc)?, true)?;

    let store = RecordStore::in_memory();
    let report = ingest(&[warc], &synth::election_dictionary(), &store, &IngestOptions::default());
    std::fs::remove_dir_all(&dir)?;
    println!("{} pages, {} records", report.pages_emitted, store.len());

    let query = synth::election_query()?;
    let entries = store.query_entries(query.persons(), query.period(), None)?;
    let graph = build_dynamic(&entries, &query)?;
    for (i, frame) in graph.frames.iter().enumerate() {
        let edges: Vec<String> = frame.edges.iter().map(|e| format!("{}-{} {:.2}", e.a, e.b, e.norm_weight)).collect();
        println!("frame {i:>2} {} .. {}  {}", frame.period.from().format("%Y-%m-%d"), frame.period.to().format("%Y-%m-%d"), edges.join(", "));
    }
    Ok(())
}
