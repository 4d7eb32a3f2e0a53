//! Builds one static graph and prints it as JSON.
//!
//! ```bash
//! cargo run -p comention --example static_graph
//! ```

use comention::graph::GraphQuery;
use comention::{build_static, synth, Period, RecordStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pages = synth::election_pages();
    let dict = synth::election_dictionary();
    let extractor = comention::Extractor::new(&dict);
    let store = RecordStore::in_memory();
    for p in &pages {
        let page = comention::warc::PageText {
            url: p.url.clone(),
            crawl_date: p.crawl_date,
            text: comention::warc::html_to_text(&p.html),
        };
        store.append(extractor.extract_page(&page).records)?;
    }

    let query = GraphQuery::new([synth::OBAMA], Period::from_dates("2008-01-01", "2008-07-01")?)?
        .with_min_entry_weight(0.2)?
        .with_min_edge_weight(0.05)?;
    let entries = store.query_entries(query.persons(), query.period(), None)?;
    let graph = build_static(&entries, &query);
    println!("{} entries -> {} nodes, {} edges", entries.len(), graph.nodes.len(), graph.edges.len());
    println!("{}", graph.to_json());
    Ok(())
}
