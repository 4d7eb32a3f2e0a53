//! Synthetic corpora for demos and end-to-end checks.
//!
//! [`election_pages`] produces one news page per day from 2008-05-01 to
//! 2009-04-30 with a storyline shaped like the 2008 US presidential race:
//!
//! * Barack Obama and John McCain are co-mentioned every day.
//! * Hillary Clinton is co-mentioned with Barack Obama until 2008-06-07.
//!   Afterwards she only appears in six-person sentences (`w = 1/6`).
//! * Sarah Palin is co-mentioned with John McCain every other day from
//!   2008-09-01. Before that she only appears in six-person sentences.
//! * Every 30 days a five-person sentence (`w = 0.2`) links Obama to party
//!   figures. Those edges are light enough to fall under a normalised edge
//!   weight of 0.025.
//!
//! With `min_entry_weight = 0.2`, `min_edge_weight = 0.025` and 30-day
//! frames, Clinton is linked to Obama only in the first two frames and
//! Palin is linked to McCain from the fifth frame (starting 2008-08-29) on.

use std::io::{self, Write};

use chrono::{Duration, NaiveDate, TimeZone, Utc};

use crate::extract::PersonDictionary;
use crate::graph::{GraphQuery, QueryError};
use crate::time::{Period, Timestamp};
use crate::warc::WarcWriter;

pub const OBAMA: &str = "Barack Obama";
pub const MCCAIN: &str = "John McCain";
pub const CLINTON: &str = "Hillary Clinton";
pub const PALIN: &str = "Sarah Palin";
pub const BIDEN: &str = "Joe Biden";
pub const PELOSI: &str = "Nancy Pelosi";
pub const REID: &str = "Harry Reid";
pub const DEAN: &str = "Howard Dean";
pub const BILL_CLINTON: &str = "Bill Clinton";

pub const ELECTION_FROM: &str = "2008-05-01";
pub const ELECTION_TO: &str = "2009-05-01";

/// Last day with a direct Clinton–Obama co-mention.
const CLINTON_UNTIL: (i32, u32, u32) = (2008, 6, 7);
/// First day with a direct Palin–McCain co-mention.
const PALIN_FROM: (i32, u32, u32) = (2008, 9, 1);

const RIVALRY: &[&str] = &[
    "{O} and {M} debated the economy in Nashville.",
    "{O} criticized {M} over the war in Iraq.",
    "Polls show {O} leading {M} in Ohio.",
    "{M}, {O} and their advisers met with union leaders.",
    "{O} said that {M} was wrong on taxes.",
    "{M} attacked {O} on energy policy.",
];

/// A generated page with its crawl metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticPage {
    pub url: String,
    pub crawl_date: Timestamp,
    pub html: String,
}

/// Everyone who appears in the election corpus.
pub fn election_dictionary() -> PersonDictionary {
    PersonDictionary::from_names([OBAMA, MCCAIN, CLINTON, PALIN, BIDEN, PELOSI, REID, DEAN, BILL_CLINTON])
        .expect("static dictionary is valid")
}

/// The query used to explore the corpus: Obama and McCain, May 2008 to
/// May 2009, entry weight ≥ 0.2, normalised edge weight ≥ 0.025, 30-day
/// frames.
pub fn election_query() -> Result<GraphQuery, QueryError> {
    let period = Period::from_dates(ELECTION_FROM, ELECTION_TO).expect("static period is valid");
    GraphQuery::new([OBAMA, MCCAIN], period)?
        .with_min_entry_weight(0.2)?
        .with_min_edge_weight(0.025)?
        .with_window_days(30)
}

pub fn election_pages() -> Vec<SyntheticPage> {
    let first = NaiveDate::from_ymd_opt(2008, 5, 1).unwrap();
    let last = NaiveDate::from_ymd_opt(2009, 4, 30).unwrap();
    let ymd = |(y, m, d)| NaiveDate::from_ymd_opt(y, m, d).unwrap();
    let clinton_until = ymd(CLINTON_UNTIL);
    let palin_from = ymd(PALIN_FROM);

    let mut pages = Vec::new();
    for (day, date) in first.iter_days().take_while(|d| *d <= last).enumerate() {
        let mut sentences = vec![fill(RIVALRY[day % RIVALRY.len()])];
        if date <= clinton_until {
            sentences.push(fill(if day % 2 == 0 {
                "{C} conceded to {O} in the delegate count."
            } else {
                "{O} thanked {C} for a hard fought campaign."
            }));
        } else if day % 9 == 0 {
            sentences.push(fill("{C}, {O}, {M}, {B}, {BC} and {P} attended the memorial service."));
        }
        if date >= palin_from {
            if day % 2 == 0 {
                sentences.push(fill("{M} and running mate {S} toured Pennsylvania."));
            }
        } else if day % 11 == 0 {
            sentences.push(fill("{S}, {M}, {O}, {B}, {R} and {D} were named in the survey."));
        }
        if day % 30 == 15 {
            sentences.push(fill("{B}, {P}, {O}, {R} and {D} spoke at the convention."));
        }
        sentences.push("Analysts expect turnout to rise. Mr. Smith of the U.S. Census Bureau agreed.".to_owned());
        // Too far apart for the three-word pattern window.
        sentences.push(fill("{O} spoke for an hour before {M} arrived."));

        let body: String = sentences.iter().map(|s| format!("<p>{s}</p>\n")).collect();
        pages.push(SyntheticPage {
            url: format!("http://news.example.com/{date}/politics.html"),
            crawl_date: Utc.from_utc_datetime(&date.and_hms_opt(12, 0, 0).unwrap()) + Duration::minutes(day as i64 % 60),
            html: format!(
                "<html><head><title>Politics {date}</title><script>track('{date}');</script></head>\n<body>\n<h1>Campaign notebook</h1>\n{body}</body></html>\n"
            ),
        });
    }
    pages
}

fn fill(template: &str) -> String {
    template
        .replace("{O}", OBAMA)
        .replace("{M}", MCCAIN)
        .replace("{C}", CLINTON)
        .replace("{S}", PALIN)
        .replace("{BC}", BILL_CLINTON)
        .replace("{B}", BIDEN)
        .replace("{P}", PELOSI)
        .replace("{R}", REID)
        .replace("{D}", DEAN)
}

/// Writes pages as HTTP `response` records of one WARC stream.
pub fn write_warc<W: Write>(pages: &[SyntheticPage], out: W, gzip: bool) -> io::Result<W> {
    let mut writer = WarcWriter::new(out).gzip_per_record(gzip);
    for page in pages {
        writer.write_http_response(&page.url, page.crawl_date, "text/html; charset=utf-8", page.html.as_bytes())?;
    }
    Ok(writer.into_inner())
}
