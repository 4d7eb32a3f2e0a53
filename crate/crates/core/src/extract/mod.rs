//! Co-mention extraction.
//!
//! Page text is split into sentences, dictionary names are located with a
//! leftmost-longest token scan, and every pair of consecutive mentions
//! separated by at most [`MAX_PATTERN_TOKENS`] tokens becomes a
//! [`CoMentionRecord`] of the form `<person1><pattern><person2>`.

mod dictionary;
mod mention;
mod record;
mod sentence;

pub use dictionary::{DictionaryError, PersonDictionary, MAX_NAME_TOKENS};
pub use mention::{find_mentions, Mention};
pub use record::{extract_records, CoMentionRecord, RecordError, SourceContext, MAX_PATTERN_TOKENS};
pub use sentence::{Sentence, SentenceSplitter, Split, DEFAULT_MAX_SENTENCE_TOKENS};

use crate::warc::PageText;

/// Matching form of a token: surrounding non-alphanumeric characters removed.
pub(crate) fn token_key(token: &str) -> &str {
    token.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Splits a page with the default splitter.
pub fn split_sentences(page: &PageText) -> Split {
    SentenceSplitter::default().split(&page.text)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct PageExtraction {
    pub records: Vec<CoMentionRecord>,
    pub sentences: usize,
    pub discarded_sentences: usize,
}

/// Runs the whole page → records pipeline against one dictionary.
#[derive(Debug, Clone)]
pub struct Extractor<'d> {
    dictionary: &'d PersonDictionary,
    splitter: SentenceSplitter,
}

impl<'d> Extractor<'d> {
    pub fn new(dictionary: &'d PersonDictionary) -> Self {
        Self {
            dictionary,
            splitter: SentenceSplitter::default(),
        }
    }

    pub fn with_splitter(mut self, splitter: SentenceSplitter) -> Self {
        self.splitter = splitter;
        self
    }

    pub fn extract_page(&self, page: &PageText) -> PageExtraction {
        let split = self.splitter.split(&page.text);
        let context = SourceContext::new(&page.url, page.crawl_date);
        let mut records = Vec::new();
        for sentence in &split.sentences {
            let mentions = find_mentions(sentence, self.dictionary);
            records.extend(extract_records(sentence, &mentions, &context));
        }
        PageExtraction {
            records,
            sentences: split.sentences.len(),
            discarded_sentences: split.discarded,
        }
    }
}
