use std::ops::Range;

use super::{PersonDictionary, Sentence};

/// A dictionary name found in a sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mention<'d> {
    /// Dictionary surface form.
    pub name: &'d str,
    /// Half-open token range within the sentence.
    pub span: Range<usize>,
}

/// Leftmost-longest, non-overlapping, case-sensitive matches in sentence
/// order.
pub fn find_mentions<'d>(sentence: &Sentence, dict: &'d PersonDictionary) -> Vec<Mention<'d>> {
    let tokens: Vec<&str> = sentence.tokens.iter().map(String::as_str).collect();
    let mut mentions = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        match dict.walk(&tokens[i..]).last() {
            Some((len, id)) => {
                mentions.push(Mention {
                    name: dict.name(id),
                    span: i..i + len,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    mentions
}
