use std::collections::HashSet;

use super::{Mention, Sentence};
use crate::time::{truncate_to_seconds, Timestamp};

/// Longest pattern allowed between two mentions, in tokens.
pub const MAX_PATTERN_TOKENS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecordError {
    #[error("a co-mention needs two different persons, got {0:?} twice")]
    IdenticalPersons(String),
    #[error("n_persons must be at least 2, got {0}")]
    TooFewPersons(u32),
    #[error("pattern {0:?} is longer than {MAX_PATTERN_TOKENS} tokens")]
    PatternTooLong(String),
}

/// One `<person1><pattern><person2>` occurrence.
///
/// The pair is undirected and stored with `person_a < person_b`. The entry
/// weight is derived from `n_persons`, never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoMentionRecord {
    person_a: String,
    person_b: String,
    pattern: String,
    n_persons: u32,
    url: String,
    crawl_date: Timestamp,
}

impl CoMentionRecord {
    /// Validates and canonicalises a record. The crawl date is truncated to
    /// whole seconds.
    pub fn new(
        first: impl Into<String>,
        second: impl Into<String>,
        pattern: impl Into<String>,
        n_persons: u32,
        url: impl Into<String>,
        crawl_date: Timestamp,
    ) -> Result<Self, RecordError> {
        let (mut a, mut b) = (first.into(), second.into());
        let pattern = pattern.into();
        if a == b {
            return Err(RecordError::IdenticalPersons(a));
        }
        if n_persons < 2 {
            return Err(RecordError::TooFewPersons(n_persons));
        }
        if pattern.split_whitespace().count() > MAX_PATTERN_TOKENS {
            return Err(RecordError::PatternTooLong(pattern));
        }
        if b < a {
            std::mem::swap(&mut a, &mut b);
        }
        Ok(Self {
            person_a: a,
            person_b: b,
            pattern,
            n_persons,
            url: url.into(),
            crawl_date: truncate_to_seconds(crawl_date),
        })
    }

    pub fn person_a(&self) -> &str {
        &self.person_a
    }

    pub fn person_b(&self) -> &str {
        &self.person_b
    }

    pub fn pattern(&self) -> &str {
        &self.pattern
    }

    /// Number of distinct persons in the source sentence.
    pub fn n_persons(&self) -> u32 {
        self.n_persons
    }

    /// Entry weight `1/n`.
    pub fn weight(&self) -> f64 {
        1.0 / f64::from(self.n_persons)
    }

    pub fn url(&self) -> &str {
        &self.url
    }

    pub fn crawl_date(&self) -> Timestamp {
        self.crawl_date
    }

    pub fn involves(&self, person: &str) -> bool {
        self.person_a == person || self.person_b == person
    }
}

/// Provenance shared by every record from one page.
#[derive(Debug, Clone)]
pub struct SourceContext<'a> {
    pub url: &'a str,
    pub crawl_date: Timestamp,
}

impl<'a> SourceContext<'a> {
    pub fn new(url: &'a str, crawl_date: Timestamp) -> Self {
        Self { url, crawl_date }
    }
}

/// Emits one record per consecutive mention pair whose gap is at most
/// [`MAX_PATTERN_TOKENS`] tokens and whose names differ.
///
/// `n_persons` counts distinct names among all mentions in the sentence, so
/// every record from one sentence carries the same weight.
pub fn extract_records(sentence: &Sentence, mentions: &[Mention<'_>], context: &SourceContext<'_>) -> Vec<CoMentionRecord> {
    let distinct: HashSet<&str> = mentions.iter().map(|m| m.name).collect();
    let n = distinct.len() as u32;
    if n < 2 {
        return Vec::new();
    }
    mentions
        .windows(2)
        .filter_map(|pair| {
            let (left, right) = (&pair[0], &pair[1]);
            let gap = &sentence.tokens[left.span.end..right.span.start];
            if gap.len() > MAX_PATTERN_TOKENS || left.name == right.name {
                return None;
            }
            CoMentionRecord::new(left.name, right.name, gap.join(" "), n, context.url, context.crawl_date).ok()
        })
        .collect()
}
