//! Rule-based sentence splitting.
//!
//! A sentence ends at a line break, or after a token ending in `.`, `!` or
//! `?` (optionally followed by closing quotes or brackets) when the next
//! token starts with an uppercase letter or a digit. A period does not end
//! a sentence after a known abbreviation, a single-letter initial or a
//! dotted acronym such as `U.S.`.

use std::collections::HashSet;

/// Default upper bound on sentence length; longer sentences are discarded.
pub const DEFAULT_MAX_SENTENCE_TOKENS: usize = 60;

const DEFAULT_ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "Rev.", "Gen.", "Col.", "Lt.", "Capt.",
    "Sgt.", "Gov.", "Sen.", "Rep.", "Pres.", "Hon.", "Mt.", "Ft.", "No.", "Vol.", "vs.", "etc.",
    "approx.", "Inc.", "Ltd.", "Co.", "Corp.", "Jan.", "Feb.", "Mar.", "Apr.", "Jun.", "Jul.", "Aug.",
    "Sep.", "Sept.", "Oct.", "Nov.", "Dec.", "e.g.", "i.e.", "U.S.", "U.K.", "U.N.", "D.C.",
];

const CLOSERS: &[char] = &['"', '\'', ')', ']', '}', '\u{201d}', '\u{2019}', '\u{bb}'];
const OPENERS: &[char] = &['"', '\'', '(', '[', '{', '\u{201c}', '\u{2018}', '\u{ab}'];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    /// Whitespace-delimited tokens with punctuation attached.
    pub tokens: Vec<String>,
}

impl Sentence {
    fn from_tokens(tokens: Vec<&str>) -> Self {
        Self {
            text: tokens.join(" "),
            tokens: tokens.into_iter().map(str::to_owned).collect(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Split {
    pub sentences: Vec<Sentence>,
    /// Sentences dropped for exceeding the token limit.
    pub discarded: usize,
}

#[derive(Debug, Clone)]
pub struct SentenceSplitter {
    max_tokens: usize,
    abbreviations: HashSet<String>,
}

impl Default for SentenceSplitter {
    fn default() -> Self {
        Self {
            max_tokens: DEFAULT_MAX_SENTENCE_TOKENS,
            abbreviations: DEFAULT_ABBREVIATIONS.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl SentenceSplitter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_max_tokens(mut self, max_tokens: usize) -> Self {
        self.max_tokens = max_tokens;
        self
    }

    pub fn with_abbreviations<I: IntoIterator<Item = S>, S: Into<String>>(mut self, extra: I) -> Self {
        self.abbreviations.extend(extra.into_iter().map(Into::into));
        self
    }

    pub fn max_tokens(&self) -> usize {
        self.max_tokens
    }

    pub fn split(&self, text: &str) -> Split {
        let mut out = Split::default();
        for line in text.lines() {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let mut start = 0;
            for i in 0..tokens.len() {
                let last = i + 1 == tokens.len();
                if last || self.ends_sentence(tokens[i], tokens[i + 1]) {
                    self.emit(&tokens[start..=i], &mut out);
                    start = i + 1;
                }
            }
        }
        out
    }

    fn emit(&self, tokens: &[&str], out: &mut Split) {
        if tokens.len() > self.max_tokens {
            out.discarded += 1;
        } else {
            out.sentences.push(Sentence::from_tokens(tokens.to_vec()));
        }
    }

    fn ends_sentence(&self, token: &str, next: &str) -> bool {
        let core = token.trim_end_matches(CLOSERS);
        let Some(term) = core.chars().last() else {
            return false;
        };
        if !matches!(term, '.' | '!' | '?') {
            return false;
        }
        let starts_new = next
            .trim_start_matches(OPENERS)
            .chars()
            .next()
            .is_some_and(|c| c.is_uppercase() || c.is_ascii_digit());
        if !starts_new {
            return false;
        }
        if term == '.' && self.is_abbreviation(core) {
            return false;
        }
        true
    }

    fn is_abbreviation(&self, word: &str) -> bool {
        let word = word.trim_start_matches(OPENERS);
        if self.abbreviations.contains(word) {
            return true;
        }
        // Initials ("J.") and dotted acronyms ("U.S.A.").
        let mut chars = word.chars();
        let mut letters = 0;
        loop {
            match (chars.next(), chars.next()) {
                (Some(c), Some('.')) if c.is_alphabetic() => letters += 1,
                (None, _) => return letters > 0 && word.chars().next().is_some_and(char::is_uppercase),
                _ => return false,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(s: &str) -> Vec<String> {
        SentenceSplitter::default().split(s).sentences.into_iter().map(|s| s.text).collect()
    }

    #[test]
    fn splits_on_terminal_punctuation() {
        assert_eq!(
            texts("Barack Obama and his rival John McCain met. They spoke."),
            ["Barack Obama and his rival John McCain met.", "They spoke."]
        );
        assert_eq!(texts("Really? Yes! 2008 was busy."), ["Really?", "Yes!", "2008 was busy."]);
    }

    #[test]
    fn abbreviation_guard() {
        assert_eq!(texts("Mr. Obama won."), ["Mr. Obama won."]);
        assert_eq!(texts("He visited the U.S. Senate today."), ["He visited the U.S. Senate today."]);
        assert_eq!(texts("George W. Bush spoke."), ["George W. Bush spoke."]);
    }

    #[test]
    fn no_split_before_lowercase() {
        assert_eq!(texts("The score was 3. and then more"), ["The score was 3. and then more"]);
    }

    #[test]
    fn quotes_after_terminator() {
        assert_eq!(texts("He said \"Fine.\" Then left."), ["He said \"Fine.\"", "Then left."]);
    }

    #[test]
    fn line_breaks_are_boundaries() {
        assert_eq!(texts("Headline without period\nBody text here."), ["Headline without period", "Body text here."]);
    }

    #[test]
    fn overlong_sentences_are_discarded() {
        let long = vec!["word"; 200].join(" ");
        let split = SentenceSplitter::default().split(&long);
        assert!(split.sentences.is_empty());
        assert_eq!(split.discarded, 1);

        let at_limit = vec!["word"; 60].join(" ");
        assert_eq!(SentenceSplitter::default().split(&at_limit).sentences.len(), 1);
        assert_eq!(SentenceSplitter::new().with_max_tokens(59).split(&at_limit).discarded, 1);
    }

    #[test]
    fn custom_abbreviations() {
        let s = SentenceSplitter::new().with_abbreviations(["Sen.Maj."]);
        assert_eq!(s.split("Ask Sen.Maj. Reid now.").sentences.len(), 1);
    }
}
