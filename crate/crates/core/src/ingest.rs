//! Parallel WARC → co-mention ingestion.
//!
//! Files are distributed over a pool of worker threads; each file is parsed
//! sequentially and its records are appended to one shared sink in batches.
//! The final store content does not depend on the worker count or on the
//! order in which files are picked up.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use log::{info, warn};
use serde::Serialize;

use crate::extract::{CoMentionRecord, Extractor, PersonDictionary, SentenceSplitter};
use crate::store::RecordSink;
use crate::warc::{self, extract_text, RecordType};

const APPEND_BATCH: usize = 10_000;

#[derive(Debug, Clone, Default)]
pub struct IngestOptions {
    /// Worker threads; 0 means one per available CPU.
    pub workers: usize,
    pub splitter: SentenceSplitter,
}

impl IngestOptions {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn effective_workers(&self, files: usize) -> usize {
        let wanted = if self.workers == 0 {
            std::thread::available_parallelism().map_or(1, usize::from)
        } else {
            self.workers
        };
        wanted.min(files).max(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipReason {
    /// The reader skipped a malformed record.
    Malformed,
    /// Not a `response` record.
    NotResponse,
    /// A response whose media type is not `text/html` or `text/plain`.
    NotText,
    /// A text response with no text left after markup removal.
    EmptyText,
}

/// Exact tallies of one ingestion run.
///
/// `records_seen` counts every record the reader produced, malformed ones
/// included, so `records_seen = pages_emitted + skipped()`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    pub files_read: usize,
    pub errors: Vec<(PathBuf, String)>,
    pub records_seen: u64,
    pub text_records: u64,
    pub pages_emitted: u64,
    pub records_skipped: BTreeMap<SkipReason, u64>,
    pub sentences: u64,
    pub sentences_discarded: u64,
    pub comentions: u64,
}

impl IngestReport {
    pub fn skipped(&self) -> u64 {
        self.records_skipped.values().sum()
    }

    fn skip(&mut self, reason: SkipReason) {
        *self.records_skipped.entry(reason).or_default() += 1;
    }

    fn merge(&mut self, other: IngestReport) {
        self.files_read += other.files_read;
        self.errors.extend(other.errors);
        self.records_seen += other.records_seen;
        self.text_records += other.text_records;
        self.pages_emitted += other.pages_emitted;
        for (reason, count) in other.records_skipped {
            *self.records_skipped.entry(reason).or_default() += count;
        }
        self.sentences += other.sentences;
        self.sentences_discarded += other.sentences_discarded;
        self.comentions += other.comentions;
    }
}

/// Reads every WARC file in `paths`, extracts co-mentions with `dictionary`
/// and appends them to `sink`.
///
/// A file that cannot be opened, or whose stream breaks, is listed in
/// [`IngestReport::errors`]; records read from it before the failure are
/// kept and the other files are still processed.
pub fn ingest<P, S>(paths: &[P], dictionary: &PersonDictionary, sink: &S, options: &IngestOptions) -> IngestReport
where
    P: AsRef<Path> + Sync,
    S: RecordSink + ?Sized,
{
    let next = AtomicUsize::new(0);
    let total = Mutex::new(IngestReport::default());
    let extractor = Extractor::new(dictionary).with_splitter(options.splitter.clone());
    std::thread::scope(|scope| {
        for _ in 0..options.effective_workers(paths.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(path) = paths.get(i) else { break };
                let report = ingest_file(path.as_ref(), &extractor, sink);
                total.lock().expect("report lock poisoned").merge(report);
            });
        }
    });
    let mut report = total.into_inner().expect("report lock poisoned");
    report.errors.sort();
    report
}

fn ingest_file<S: RecordSink + ?Sized>(path: &Path, extractor: &Extractor<'_>, sink: &S) -> IngestReport {
    let mut report = IngestReport::default();
    let reader = match warc::open(path) {
        Ok(reader) => reader,
        Err(e) => {
            warn!("{}: {e}", path.display());
            report.errors.push((path.to_owned(), e.to_string()));
            return report;
        }
    };
    report.files_read = 1;
    let mut pending: Vec<CoMentionRecord> = Vec::new();
    let flush = |pending: &mut Vec<CoMentionRecord>, report: &mut IngestReport| {
        if pending.is_empty() {
            return true;
        }
        let batch = std::mem::take(pending);
        let len = batch.len() as u64;
        match sink.append(batch) {
            Ok(_) => {
                report.comentions += len;
                true
            }
            Err(e) => {
                warn!("{}: {e}", path.display());
                report.errors.push((path.to_owned(), e.to_string()));
                false
            }
        }
    };

    for item in reader {
        let record = match item {
            Ok(record) => record,
            Err(e) if e.is_recoverable() => {
                warn!("{}: {e}", path.display());
                report.records_seen += 1;
                report.skip(SkipReason::Malformed);
                continue;
            }
            Err(e) => {
                warn!("{}: {e}", path.display());
                report.errors.push((path.to_owned(), e.to_string()));
                break;
            }
        };
        report.records_seen += 1;
        if record.record_type != RecordType::Response {
            report.skip(SkipReason::NotResponse);
            continue;
        }
        let Some(page) = extract_text(&record) else {
            report.skip(SkipReason::NotText);
            continue;
        };
        report.text_records += 1;
        if page.text.is_empty() {
            report.skip(SkipReason::EmptyText);
            continue;
        }
        report.pages_emitted += 1;
        let extraction = extractor.extract_page(&page);
        report.sentences += extraction.sentences as u64;
        report.sentences_discarded += extraction.discarded_sentences as u64;
        pending.extend(extraction.records);
        if pending.len() >= APPEND_BATCH && !flush(&mut pending, &mut report) {
            return report;
        }
    }
    flush(&mut pending, &mut report);
    info!("{}: {} pages, {} co-mentions", path.display(), report.pages_emitted, report.comentions);
    report
}
