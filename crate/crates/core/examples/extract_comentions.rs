//! Extracts co-mention records from a few sentences. Each pair is printed
//! in stored order (names sorted), so `a` need not come first in the text.
//!
//! ```bash
//! cargo run -p comention --example extract_comentions
//! ```

use comention::warc::PageText;
use comention::{Extractor, PersonDictionary};

const TEXT: &str = "Barack Obama and his rival John McCain met in Denver. \
    Hillary Clinton praised Barack Obama on Tuesday. \
    Joe Biden, Nancy Pelosi, Harry Reid and Howard Dean attended the dinner. \
    Sarah Palin was asked about the economy by a reporter who had flown in from Chicago, and later John McCain answered.";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dict = PersonDictionary::from_names([
        "Barack Obama",
        "John McCain",
        "Hillary Clinton",
        "Joe Biden",
        "Nancy Pelosi",
        "Harry Reid",
        "Howard Dean",
        "Sarah Palin",
    ])?;
    let page = PageText {
        url: "http://news.example.com/2008/08/28/convention.html".into(),
        crawl_date: comention::time::parse_date("2008-08-28")?,
        text: TEXT.into(),
    };
    let out = Extractor::new(&dict).extract_page(&page);
    println!("{} sentences, {} discarded", out.sentences, out.discarded_sentences);
    for r in &out.records {
        println!("{:<16} [{}] {:<16} n={} w={:.3}", r.person_a(), r.pattern(), r.person_b(), r.n_persons(), r.weight());
    }
    Ok(())
}
