use std::collections::HashMap;
use std::io::{self, BufRead};

use super::token_key;

/// Longest supported name, in tokens.
pub const MAX_NAME_TOKENS: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum DictionaryError {
    #[error("dictionary contains no usable names")]
    Empty,
    #[error("failed to read dictionary: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Default, Clone)]
struct TrieNode {
    children: HashMap<String, usize>,
    name: Option<usize>,
}

/// Person names recognised in text, indexed as a token trie so that every
/// name starting at a position can be checked in a single walk.
///
/// Tokens are compared by their punctuation-trimmed form, so `McCain.` and
/// `McCain,` both match the name token `McCain`.
#[derive(Debug, Clone)]
pub struct PersonDictionary {
    names: Vec<String>,
    nodes: Vec<TrieNode>,
}

impl PersonDictionary {
    /// Builds a dictionary, normalising whitespace and dropping blanks,
    /// duplicates and names longer than [`MAX_NAME_TOKENS`].
    pub fn from_names<I, S>(names: I) -> Result<Self, DictionaryError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut dict = Self {
            names: Vec::new(),
            nodes: vec![TrieNode::default()],
        };
        for name in names {
            dict.insert(name.as_ref());
        }
        if dict.names.is_empty() {
            return Err(DictionaryError::Empty);
        }
        Ok(dict)
    }

    /// Reads one name per line. Blank lines and `#` comments are ignored.
    pub fn load<R: BufRead>(source: R) -> Result<Self, DictionaryError> {
        let mut lines = Vec::new();
        for line in source.lines() {
            let line = line?;
            if line.trim_start().starts_with('#') {
                continue;
            }
            lines.push(line);
        }
        Self::from_names(lines)
    }

    fn insert(&mut self, raw: &str) -> bool {
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        if tokens.is_empty() {
            return false;
        }
        if tokens.len() > MAX_NAME_TOKENS {
            log::warn!("skipping dictionary name with more than {MAX_NAME_TOKENS} tokens: {raw:?}");
            return false;
        }
        let keys: Vec<&str> = tokens.iter().map(|t| token_key(t)).collect();
        if keys.iter().any(|k| k.is_empty()) {
            log::warn!("skipping dictionary name with a punctuation-only token: {raw:?}");
            return false;
        }
        let mut node = 0;
        for key in keys {
            node = match self.nodes[node].children.get(key) {
                Some(&child) => child,
                None => {
                    let child = self.nodes.len();
                    self.nodes.push(TrieNode::default());
                    self.nodes[node].children.insert(key.to_string(), child);
                    child
                }
            };
        }
        if self.nodes[node].name.is_some() {
            return false;
        }
        self.nodes[node].name = Some(self.names.len());
        self.names.push(tokens.join(" "));
        true
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn contains(&self, name: &str) -> bool {
        let tokens: Vec<&str> = name.split_whitespace().collect();
        self.walk(&tokens).last().is_some_and(|(len, _)| len == tokens.len())
    }

    /// Every dictionary name that is a token prefix of `tokens`, as
    /// `(token_count, name_id)` in increasing length.
    ///
    /// A multi-token name does not match across a token ending in clause
    /// punctuation (`Barack, Obama` is not `Barack Obama`).
    pub(crate) fn walk<'a>(&'a self, tokens: &'a [&'a str]) -> impl Iterator<Item = (usize, usize)> + 'a {
        let mut node = Some(0usize);
        tokens
            .iter()
            .take(MAX_NAME_TOKENS)
            .enumerate()
            .map_while(move |(i, tok)| {
                let current = node?;
                if i > 0 && breaks_name(tokens[i - 1]) {
                    return None;
                }
                let child = *self.nodes[current].children.get(token_key(tok))?;
                node = Some(child);
                Some(self.nodes[child].name.map(|id| (i + 1, id)))
            })
            .flatten()
    }
}

/// Punctuation after which a name cannot continue.
fn breaks_name(token: &str) -> bool {
    token
        .chars()
        .last()
        .is_some_and(|c| matches!(c, ',' | ';' | ':' | '!' | '?' | ')' | ']' | '"' | '\u{201d}'))
}
