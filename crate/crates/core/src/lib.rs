//! Person co-mention extraction from web archives and temporal social graphs.
//!
//! The pipeline runs in four stages:
//!
//! 1. [`warc`] reads WARC files (plain or per-record gzip) and turns textual
//!    response records into [`warc::PageText`].
//! 2. [`extract`] splits page text into sentences, finds dictionary person
//!    mentions and emits one [`extract::CoMentionRecord`] for every
//!    `<person1><pattern><person2>` occurrence whose pattern is at most three
//!    tokens long. Each record carries the weight `w = 1/n`, where `n` is the
//!    number of distinct persons in the sentence.
//! 3. [`store`] persists records with their crawl date and answers person and
//!    time-range queries.
//! 4. [`graph`] aggregates queried records into static graphs and into
//!    dynamic graphs (one static frame per disjoint interval), and computes
//!    sliding-window temporal statistics.
//!
//! [`ingest`] wires stages 1–3 together over a pool of worker threads and
//! [`service`] exposes stores and graphs over HTTP+JSON.
//!
//! Runnable walkthroughs live in this crate's `examples/` directory:
//!
//! ```bash
//! cargo run -p comention --example extract_comentions
//! cargo run -p comention --example election_timeline
//! ```

pub mod extract;
pub mod graph;
pub mod ingest;
pub mod service;
pub mod store;
pub mod synth;
pub mod time;
pub mod warc;

pub use extract::{CoMentionRecord, Extractor, PersonDictionary};
pub use graph::{build_dynamic, build_static, temporal_stats, DynamicGraph, GraphQuery, StaticGraph};
pub use ingest::{ingest, IngestOptions, IngestReport};
pub use store::{RecordId, RecordStore, StoredRecord};
pub use time::{Period, Timestamp};
