//! Sliding-window mention weight per person.
//!
//! ```bash
//! cargo run -p comention --example temporal_stats
//! ```

use comention::graph::GraphQuery;
use comention::{synth, temporal_stats, Period, RecordStore};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dict = synth::election_dictionary();
    let extractor = comention::Extractor::new(&dict);
    let store = RecordStore::in_memory();
    for p in synth::election_pages() {
        let page = comention::warc::PageText {
            text: comention::warc::html_to_text(&p.html),
            url: p.url,
            crawl_date: p.crawl_date,
        };
        store.append(extractor.extract_page(&page).records)?;
    }

    let persons = [synth::CLINTON, synth::PALIN];
    let query = GraphQuery::new(persons, Period::from_dates("2008-05-01", "2009-05-01")?)?;
    let entries = store.query_entries(query.persons(), query.period(), None)?;
    let series = temporal_stats(&entries, &query, 30, 14)?;
    println!("{:<12} {:>6} {:>16} {:>16}", "window", "count", persons[0], persons[1]);
    for p in &series.points {
        let w = |name: &str| p.per_person_weight.get(name).copied().unwrap_or(0.0);
        println!("{:<12} {:>6} {:>16.2} {:>16.2}", p.window.from().format("%Y-%m-%d"), p.raw_count, w(persons[0]), w(persons[1]));
    }
    Ok(())
}
