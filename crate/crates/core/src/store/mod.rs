//! Append-only co-mention store with person and crawl-date indexes.
//!
//! A store is either purely in memory or backed by a directory holding
//! `records.ndjson` in the interchange format. Record ids are the 1-based
//! position in append order, so the on-disk file needs no id column.

pub mod ndjson;
mod stats;

pub use stats::{WeightHistogram, YearCounts};

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufReader, Write};
use std::ops::Deref;
use std::path::{Path, PathBuf};
use std::sync::{PoisonError, RwLock, RwLockReadGuard, RwLockWriteGuard};

use crate::extract::CoMentionRecord;
use crate::time::{Period, Timestamp};

pub use ndjson::FormatError;

pub type RecordId = u64;

const RECORDS_FILE: &str = "records.ndjson";

#[derive(Debug, thiserror::Error)]
pub enum StoreError {
    #[error("a query must name at least one person")]
    NoPersons,
    #[error("store I/O failed: {0}")]
    Io(#[from] io::Error),
    #[error("invalid record data: {0}")]
    Format(#[from] FormatError),
}

/// A record together with the id the store assigned to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoredRecord {
    pub id: RecordId,
    pub record: CoMentionRecord,
}

impl Deref for StoredRecord {
    type Target = CoMentionRecord;

    fn deref(&self) -> &CoMentionRecord {
        &self.record
    }
}

/// Anything that accepts batches of records, e.g. a [`RecordStore`].
pub trait RecordSink: Sync {
    fn append(&self, batch: Vec<CoMentionRecord>) -> Result<Vec<RecordId>, StoreError>;
}

#[derive(Default)]
struct Inner {
    records: Vec<StoredRecord>,
    /// Person → positions into `records`, ascending.
    by_person: BTreeMap<String, Vec<usize>>,
    by_date: BTreeMap<Timestamp, Vec<usize>>,
    log: Option<File>,
}

impl Inner {
    fn index(&mut self, record: CoMentionRecord) -> RecordId {
        let pos = self.records.len();
        let id = pos as RecordId + 1;
        self.by_person.entry(record.person_a().to_owned()).or_default().push(pos);
        self.by_person.entry(record.person_b().to_owned()).or_default().push(pos);
        self.by_date.entry(record.crawl_date()).or_default().push(pos);
        self.records.push(StoredRecord { id, record });
        id
    }
}

/// Many readers, serialised writers; a batch becomes visible atomically.
#[derive(Default)]
pub struct RecordStore {
    inner: RwLock<Inner>,
    path: Option<PathBuf>,
}

impl RecordStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Opens (creating if needed) a directory-backed store.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, StoreError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir)?;
        let path = dir.join(RECORDS_FILE);
        let mut inner = Inner::default();
        if path.exists() {
            for record in ndjson::read_records(BufReader::new(File::open(&path)?))? {
                inner.index(record);
            }
        }
        inner.log = Some(OpenOptions::new().create(true).append(true).open(&path)?);
        Ok(Self {
            inner: RwLock::new(inner),
            path: Some(path),
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    fn read(&self) -> RwLockReadGuard<'_, Inner> {
        self.inner.read().unwrap_or_else(PoisonError::into_inner)
    }

    fn write(&self) -> RwLockWriteGuard<'_, Inner> {
        self.inner.write().unwrap_or_else(PoisonError::into_inner)
    }

    /// Appends a batch, returning the assigned ids in batch order. On a
    /// storage failure nothing from the batch becomes visible.
    pub fn append(&self, batch: Vec<CoMentionRecord>) -> Result<Vec<RecordId>, StoreError> {
        if batch.is_empty() {
            return Ok(Vec::new());
        }
        let mut inner = self.write();
        if let Some(file) = inner.log.as_mut() {
            let mut buf = Vec::with_capacity(batch.len() * 128);
            ndjson::write_records(&mut buf, &batch)?;
            let before = file.metadata()?.len();
            if let Err(e) = file.write_all(&buf).and_then(|()| file.sync_data()) {
                let _ = file.set_len(before);
                return Err(e.into());
            }
        }
        Ok(batch.into_iter().map(|r| inner.index(r)).collect())
    }

    pub fn len(&self) -> usize {
        self.read().records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: RecordId) -> Option<StoredRecord> {
        let pos = usize::try_from(id).ok()?.checked_sub(1)?;
        self.read().records.get(pos).cloned()
    }

    /// All records in id order.
    pub fn snapshot(&self) -> Vec<StoredRecord> {
        self.read().records.clone()
    }

    /// Records whose pair includes any of `persons` and whose crawl date
    /// lies in `period`, ordered by `(crawl_date, id)` and truncated to
    /// `limit` after ordering.
    pub fn query_entries<S: AsRef<str>>(
        &self,
        persons: &[S],
        period: &Period,
        limit: Option<usize>,
    ) -> Result<Vec<StoredRecord>, StoreError> {
        if persons.is_empty() {
            return Err(StoreError::NoPersons);
        }
        let inner = self.read();
        let mut positions: Vec<usize> = persons
            .iter()
            .filter_map(|p| inner.by_person.get(p.as_ref()))
            .flatten()
            .copied()
            .filter(|&pos| period.contains(&inner.records[pos].crawl_date()))
            .collect();
        positions.sort_unstable_by_key(|&pos| (inner.records[pos].crawl_date(), pos));
        positions.dedup();
        if let Some(limit) = limit {
            positions.truncate(limit);
        }
        Ok(positions.into_iter().map(|pos| inner.records[pos].clone()).collect())
    }

    /// Every record crawled within `period`, ordered by `(crawl_date, id)`.
    pub fn records_in(&self, period: &Period) -> Vec<StoredRecord> {
        let inner = self.read();
        inner
            .by_date
            .range(period.from()..period.to())
            .flat_map(|(_, positions)| positions.iter().map(|&pos| inner.records[pos].clone()))
            .collect()
    }

    /// Distinct person names, sorted.
    pub fn person_names(&self) -> Vec<String> {
        self.read().by_person.keys().cloned().collect()
    }

    pub fn weight_histogram(&self) -> WeightHistogram {
        WeightHistogram::from_records(self.read().records.iter().map(|r| &r.record))
    }

    pub fn edges_per_year(&self) -> YearCounts {
        YearCounts::from_records(self.read().records.iter().map(|r| &r.record))
    }

    /// Writes every record in id order in the interchange format.
    pub fn export<W: Write>(&self, out: W) -> io::Result<()> {
        let inner = self.read();
        ndjson::write_records(out, inner.records.iter().map(|r| &r.record))
    }

    /// Reads an interchange file and appends it as one batch.
    pub fn import<R: io::BufRead>(&self, input: R) -> Result<Vec<RecordId>, StoreError> {
        let records = ndjson::read_records(input)?;
        self.append(records)
    }
}

impl RecordSink for RecordStore {
    fn append(&self, batch: Vec<CoMentionRecord>) -> Result<Vec<RecordId>, StoreError> {
        RecordStore::append(self, batch)
    }
}
