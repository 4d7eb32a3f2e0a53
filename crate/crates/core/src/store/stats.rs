use std::collections::BTreeMap;

use chrono::Datelike;
use serde::Serialize;

use crate::extract::CoMentionRecord;

/// Count of records per entry weight `1/n`, keyed by `n`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct WeightHistogram {
    buckets: BTreeMap<u32, u64>,
}

impl WeightHistogram {
    pub fn from_records<'a, I: IntoIterator<Item = &'a CoMentionRecord>>(records: I) -> Self {
        let mut buckets = BTreeMap::new();
        for r in records {
            *buckets.entry(r.n_persons()).or_insert(0) += 1;
        }
        Self { buckets }
    }

    pub fn count_for_n(&self, n: u32) -> u64 {
        self.buckets.get(&n).copied().unwrap_or(0)
    }

    /// `(n, weight, count)` in decreasing weight order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64, u64)> + '_ {
        self.buckets.iter().map(|(&n, &c)| (n, 1.0 / f64::from(n), c))
    }

    pub fn total(&self) -> u64 {
        self.buckets.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }
}

/// Count of records per UTC calendar year of the crawl date.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct YearCounts {
    per_year: BTreeMap<i32, u64>,
}

impl YearCounts {
    pub fn from_records<'a, I: IntoIterator<Item = &'a CoMentionRecord>>(records: I) -> Self {
        let mut per_year = BTreeMap::new();
        for r in records {
            *per_year.entry(r.crawl_date().year()).or_insert(0) += 1;
        }
        Self { per_year }
    }

    pub fn get(&self, year: i32) -> u64 {
        self.per_year.get(&year).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.per_year.iter().map(|(&y, &c)| (y, c))
    }

    pub fn total(&self) -> u64 {
        self.per_year.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.per_year.is_empty()
    }
}
