//! Tag stripping for archived HTML.
//!
//! Removes markup, comments and the content of non-rendered elements, decodes
//! character entities and emits a newline at every block-level element
//! boundary so that the sentence splitter never glues unrelated fragments.

use std::borrow::Cow;

/// Elements whose content is never rendered as text.
const SKIPPED_ELEMENTS: &[&str] = &["script", "style", "noscript", "template", "svg", "math", "head"];

const BLOCK_ELEMENTS: &[&str] = &[
    "address", "article", "aside", "blockquote", "body", "br", "caption", "dd", "div", "dl", "dt",
    "fieldset", "figcaption", "figure", "footer", "form", "h1", "h2", "h3", "h4", "h5", "h6",
    "header", "hr", "html", "li", "main", "nav", "ol", "option", "p", "pre", "section", "table",
    "tbody", "td", "tfoot", "th", "thead", "title", "tr", "ul",
];

/// Converts an HTML document to normalized plain text.
///
/// Output lines are separated by `\n`, contain no leading or trailing
/// whitespace, and never contain two consecutive spaces.
pub fn html_to_text(html: &str) -> String {
    let mut raw = String::with_capacity(html.len() / 2);
    let bytes = html.as_bytes();
    let mut i = 0;
    let mut text_start = 0;

    while let Some(rel) = memchr_lt(&bytes[i..]) {
        let lt = i + rel;
        let rest = &html[lt..];
        let next = rest.as_bytes().get(1).copied();
        let is_markup = matches!(next, Some(b'a'..=b'z' | b'A'..=b'Z' | b'/' | b'!' | b'?'));
        if !is_markup {
            i = lt + 1;
            continue;
        }
        push_text(&mut raw, &html[text_start..lt]);

        if let Some(comment) = rest.strip_prefix("<!--") {
            i = match comment.find("-->") {
                Some(end) => lt + 4 + end + 3,
                None => html.len(),
            };
            text_start = i;
            continue;
        }

        let Some(tag_len) = tag_end(rest) else {
            // Unterminated tag: drop the remainder.
            i = html.len();
            text_start = i;
            break;
        };
        let tag = &rest[1..tag_len - 1];
        let closing = tag.starts_with('/');
        let name = tag_name(tag.trim_start_matches('/'));
        i = lt + tag_len;

        if !closing && SKIPPED_ELEMENTS.contains(&name.as_str()) && !tag.ends_with('/') {
            i = skip_element(html, i, &name);
            raw.push('\n');
        } else if BLOCK_ELEMENTS.contains(&name.as_str()) {
            raw.push('\n');
        }
        text_start = i;
    }
    push_text(&mut raw, &html[text_start.min(html.len())..]);
    normalize_lines(&raw)
}

fn memchr_lt(haystack: &[u8]) -> Option<usize> {
    haystack.iter().position(|&b| b == b'<')
}

fn push_text(out: &mut String, text: &str) {
    if text.is_empty() {
        return;
    }
    if text.contains('&') {
        match html_escape::decode_html_entities(text) {
            Cow::Borrowed(s) => out.push_str(s),
            Cow::Owned(s) => out.push_str(&s),
        }
    } else {
        out.push_str(text);
    }
}

/// Length of the tag starting at `s[0] == '<'`, honouring quoted attribute
/// values that may contain `>`.
fn tag_end(s: &str) -> Option<usize> {
    let mut quote: Option<u8> = None;
    for (idx, &b) in s.as_bytes().iter().enumerate().skip(1) {
        match (quote, b) {
            (Some(q), _) if b == q => quote = None,
            (Some(_), _) => {}
            (None, b'"' | b'\'') => quote = Some(b),
            (None, b'>') => return Some(idx + 1),
            _ => {}
        }
    }
    None
}

fn tag_name(tag: &str) -> String {
    tag.chars()
        .take_while(|c| c.is_ascii_alphanumeric())
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Returns the index just past `</name ...>` or the end of input.
fn skip_element(html: &str, from: usize, name: &str) -> usize {
    let bytes = html.as_bytes();
    let mut i = from;
    while let Some(rel) = memchr_lt(&bytes[i..]) {
        let lt = i + rel;
        let rest = &bytes[lt..];
        if rest.len() >= name.len() + 2
            && rest[1] == b'/'
            && rest[2..2 + name.len()].eq_ignore_ascii_case(name.as_bytes())
            && !rest.get(2 + name.len()).is_some_and(|b| b.is_ascii_alphanumeric())
        {
            return match html[lt..].find('>') {
                Some(gt) => lt + gt + 1,
                None => html.len(),
            };
        }
        i = lt + 1;
    }
    html.len()
}

/// Collapses whitespace runs within each line to one space, trims lines and
/// drops empty ones.
pub(crate) fn normalize_lines(raw: &str) -> String {
    let mut out = String::with_capacity(raw.len());
    for line in raw.split(['\n', '\r', '\u{2028}', '\u{2029}']) {
        let mut words = line.split(|c: char| c.is_whitespace()).filter(|w| !w.is_empty());
        let Some(first) = words.next() else { continue };
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(first);
        for w in words {
            out.push(' ');
            out.push_str(w);
        }
    }
    out
}
