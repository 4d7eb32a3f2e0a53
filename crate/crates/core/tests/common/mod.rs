//! Shared fixtures for the integration tests: a seeded random corpus
//! generator whose ground truth comes from its own construction, and
//! brute-force oracles that recompute records and graphs by linear scan.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::{Path, PathBuf};

use chrono::{DateTime, TimeZone, Utc};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use comention::warc::WarcWriter;

const FIRST: &[&str] = &["Alma", "Boris", "Celia", "Dmitri", "Elena", "Farid", "Greta", "Hugo", "Ines", "Jonas"];
const MIDDLE: &[&str] = &["Ruth", "Paz", "Noor"];
const LAST: &[&str] = &["Abbott", "Brandt", "Castillo", "Dorsey", "Eriksen", "Fischer", "Gallo", "Hale", "Ivers", "Janssen"];
const STARTERS: &[&str] = &["Yesterday", "Meanwhile", "Officials", "Reports", "Critics"];
const FILLER: &[&str] = &[
    "and", "his", "rival", "met", "with", "said", "that", "the", "minister", "spoke", "about", "after", "before", "in",
    "a", "debate", "over", "taxes", "visited", "praised", "&", "said,", "however,",
];

pub type Timestamp = DateTime<Utc>;

/// One co-mention as the generator intended it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OracleRecord {
    pub date: Timestamp,
    /// Generation order, used to break date ties like a store id.
    pub seq: usize,
    pub a: String,
    pub b: String,
    pub pattern: String,
    pub n: u32,
    pub url: String,
}

impl OracleRecord {
    pub fn weight(&self) -> f64 {
        1.0 / f64::from(self.n)
    }

    pub fn key(&self) -> (String, String, String, u32, String, Timestamp) {
        (self.a.clone(), self.b.clone(), self.pattern.clone(), self.n, self.url.clone(), self.date)
    }
}

#[derive(Debug, Clone)]
pub struct GenPage {
    pub url: String,
    pub date: Timestamp,
    pub html: String,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub names: Vec<String>,
    pub pages: Vec<GenPage>,
    pub records: Vec<OracleRecord>,
    pub sentences: usize,
    pub discarded: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    pub max_pages: usize,
    pub max_names: usize,
    pub date_from: (i32, u32, u32),
    pub date_to: (i32, u32, u32),
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self {
            max_pages: 50,
            max_names: 10,
            date_from: (2007, 1, 1),
            date_to: (2010, 12, 31),
        }
    }
}

fn random_names(rng: &mut ChaCha8Rng, max_names: usize) -> Vec<String> {
    let wanted = rng.random_range(2..=max_names);
    let mut names = BTreeSet::new();
    while names.len() < wanted {
        let name = match rng.random_range(0..4) {
            0 => LAST.choose(rng).unwrap().to_string(),
            1 => FIRST.choose(rng).unwrap().to_string(),
            2 => format!("{} {} {}", FIRST.choose(rng).unwrap(), MIDDLE.choose(rng).unwrap(), LAST.choose(rng).unwrap()),
            _ => format!("{} {}", FIRST.choose(rng).unwrap(), LAST.choose(rng).unwrap()),
        };
        names.insert(name);
    }
    let mut names: Vec<String> = names.into_iter().collect();
    names.shuffle(rng);
    names
}

fn random_date(rng: &mut ChaCha8Rng, from: (i32, u32, u32), to: (i32, u32, u32)) -> Timestamp {
    let lo = Utc.with_ymd_and_hms(from.0, from.1, from.2, 0, 0, 0).unwrap().timestamp();
    let hi = Utc.with_ymd_and_hms(to.0, to.1, to.2, 0, 0, 0).unwrap().timestamp();
    Utc.timestamp_opt(rng.random_range(lo..hi), 0).unwrap()
}

fn filler(rng: &mut ChaCha8Rng, count: usize) -> Vec<String> {
    (0..count).map(|_| FILLER.choose(rng).unwrap().to_string()).collect()
}

struct GenSentence {
    /// Plain-text tokens as they appear after HTML decoding.
    tokens: Vec<String>,
    /// Same tokens with HTML markup where the generator added some.
    html_tokens: Vec<String>,
    /// (name index, gap before the next mention) for each mention.
    mentions: Vec<usize>,
    gaps: Vec<Vec<String>>,
}

fn html_escape_token(t: &str) -> String {
    t.replace('&', "&amp;")
}

fn random_sentence(rng: &mut ChaCha8Rng, names: &[String]) -> GenSentence {
    let overlong = rng.random_bool(0.05);
    let mention_count = if rng.random_bool(0.1) { rng.random_range(0..=1) } else { rng.random_range(2..=6) };
    let mut tokens: Vec<String> = Vec::new();
    let mut html_tokens: Vec<String> = Vec::new();
    let mut mentions = Vec::new();
    let mut gaps = Vec::new();
    let push = |tokens: &mut Vec<String>, html: &mut Vec<String>, t: String| {
        html.push(html_escape_token(&t));
        tokens.push(t);
    };

    let lead = rng.random_range(0..=2);
    if lead > 0 || mention_count == 0 {
        push(&mut tokens, &mut html_tokens, STARTERS.choose(rng).unwrap().to_string());
        for t in filler(rng, lead.max(1) - 1) {
            push(&mut tokens, &mut html_tokens, t);
        }
    }
    for m in 0..mention_count {
        let idx = rng.random_range(0..names.len());
        mentions.push(idx);
        let name_tokens: Vec<String> = names[idx].split(' ').map(str::to_owned).collect();
        let bold = rng.random_bool(0.15);
        for (k, t) in name_tokens.iter().enumerate() {
            let mut h = t.clone();
            if bold && k == 0 {
                h = format!("<b>{h}");
            }
            if bold && k + 1 == name_tokens.len() {
                h.push_str("</b>");
            }
            tokens.push(t.clone());
            html_tokens.push(h);
        }
        if m + 1 < mention_count {
            let gap_len = if rng.random_bool(0.7) { rng.random_range(0..=3) } else { rng.random_range(4..=6) };
            // Adjacent names are separated by a comma on the first name.
            if gap_len == 0 || rng.random_bool(0.2) {
                tokens.last_mut().unwrap().push(',');
                let h = html_tokens.last_mut().unwrap();
                match h.strip_suffix("</b>") {
                    Some(stripped) => *h = format!("{stripped},</b>"),
                    None => h.push(','),
                }
            }
            let gap = filler(rng, gap_len);
            for t in &gap {
                push(&mut tokens, &mut html_tokens, t.clone());
            }
            gaps.push(gap);
        }
    }
    let trail = rng.random_range(0..=2);
    for t in filler(rng, trail) {
        push(&mut tokens, &mut html_tokens, t);
    }
    if overlong {
        while tokens.len() <= 60 {
            push(&mut tokens, &mut html_tokens, FILLER.choose(rng).unwrap().to_string());
        }
    }
    tokens.last_mut().unwrap().push('.');
    let h = html_tokens.last_mut().unwrap();
    match h.strip_suffix("</b>") {
        Some(stripped) => *h = format!("{stripped}.</b>"),
        None => h.push('.'),
    }
    GenSentence { tokens, html_tokens, mentions, gaps }
}

/// Records the template produces for one generated sentence.
fn sentence_records(s: &GenSentence, names: &[String], url: &str, date: Timestamp, seq: &mut usize) -> Vec<OracleRecord> {
    if s.tokens.len() > 60 {
        return Vec::new();
    }
    let distinct: BTreeSet<usize> = s.mentions.iter().copied().collect();
    let n = distinct.len() as u32;
    let mut out = Vec::new();
    for (i, gap) in s.gaps.iter().enumerate() {
        let (x, y) = (&names[s.mentions[i]], &names[s.mentions[i + 1]]);
        if gap.len() > 3 || x == y {
            continue;
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        out.push(OracleRecord {
            date,
            seq: *seq,
            a: a.clone(),
            b: b.clone(),
            pattern: gap.join(" "),
            n,
            url: url.to_owned(),
        });
        *seq += 1;
    }
    out
}

pub fn generate(seed: u64, spec: CorpusSpec) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = random_names(&mut rng, spec.max_names);
    let page_count = rng.random_range(1..=spec.max_pages);
    let mut pages = Vec::new();
    let mut records = Vec::new();
    let mut sentences = 0;
    let mut discarded = 0;
    let mut seq = 0;
    for p in 0..page_count {
        let url = format!("http://corpus{seed}.example.org/page/{p}");
        let date = random_date(&mut rng, spec.date_from, spec.date_to);
        let mut body = String::new();
        for _ in 0..rng.random_range(1..=4) {
            body.push_str("<p>");
            for k in 0..rng.random_range(1..=3) {
                let s = random_sentence(&mut rng, &names);
                if s.tokens.len() > 60 {
                    discarded += 1;
                } else {
                    sentences += 1;
                }
                records.extend(sentence_records(&s, &names, &url, date, &mut seq));
                if k > 0 {
                    body.push(' ');
                }
                body.push_str(&s.html_tokens.join(" "));
            }
            body.push_str("</p>\n");
        }
        let decoy = format!("{} and {}", names[0], names[names.len() - 1]);
        let html = format!(
            "<!DOCTYPE html>\n<html><head><title>{decoy}</title><style>p {{ color: red }}</style></head>\n<body>\n<script>var who = \"{decoy}\";</script>\n<!-- {decoy} -->\n{body}</body></html>\n"
        );
        pages.push(GenPage { url, date, html });
    }
    Corpus {
        names,
        pages,
        records,
        sentences,
        discarded,
    }
}

impl Corpus {
    pub fn dictionary_text(&self) -> String {
        let mut s = String::from("# generated\n");
        for n in &self.names {
            s.push_str(n);
            s.push('\n');
        }
        s
    }

    pub fn dictionary(&self) -> comention::PersonDictionary {
        comention::PersonDictionary::from_names(self.names.iter().map(String::as_str)).unwrap()
    }

    pub fn warc_bytes(&self, gzip: bool) -> Vec<u8> {
        let mut w = WarcWriter::new(Vec::new()).gzip_per_record(gzip);
        for (i, page) in self.pages.iter().enumerate() {
            w.write_http_response(&page.url, page.date, "text/html; charset=utf-8", page.html.as_bytes()).unwrap();
            if i % 7 == 3 {
                w.write_raw("request", Some(&page.url), page.date, "application/http; msgtype=request", b"GET / HTTP/1.1\r\n\r\n")
                    .unwrap();
                w.write_http_response(&format!("{}.png", page.url), page.date, "image/png", b"\x89PNG\r\n").unwrap();
            }
        }
        w.into_inner()
    }

    pub fn write_warc(&self, dir: &Path, name: &str, gzip: bool) -> PathBuf {
        let path = dir.join(name);
        std::fs::File::create(&path).unwrap().write_all(&self.warc_bytes(gzip)).unwrap();
        path
    }
}

/// Brute-force graph parameters mirroring a graph query.
#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub persons: Vec<String>,
    pub from: Timestamp,
    pub to: Timestamp,
    pub max_entries: Option<usize>,
    pub min_entry_weight: f64,
    pub min_edge_weight: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OracleGraph {
    pub nodes: BTreeMap<String, (f64, f64)>,
    pub edges: BTreeMap<(String, String), (f64, f64, usize)>,
    pub entries_used: usize,
}

/// Selection, truncation, scope maxima, entry filter, summation,
/// normalisation and edge filter, each by direct iteration.
pub fn oracle_graph(records: &[OracleRecord], q: &OracleQuery) -> OracleGraph {
    let mut selected: Vec<&OracleRecord> = records
        .iter()
        .filter(|r| r.date >= q.from && r.date < q.to && (q.persons.contains(&r.a) || q.persons.contains(&r.b)))
        .collect();
    selected.sort_by_key(|r| (r.date, r.seq));
    if let Some(max) = q.max_entries {
        selected.truncate(max);
    }
    oracle_graph_scaled(&selected, q, None)
}

/// As [`oracle_graph`] over an already selected and truncated entry list,
/// optionally with externally given normalisation maxima.
pub fn oracle_graph_scaled(selected: &[&OracleRecord], q: &OracleQuery, scale: Option<(f64, f64)>) -> OracleGraph {
    let (node_max, edge_max) = scale.unwrap_or_else(|| oracle_scope(selected));
    let mut g = OracleGraph::default();
    let mut node_raw: BTreeMap<String, f64> = BTreeMap::new();
    let mut edge_raw: BTreeMap<(String, String), (f64, usize)> = BTreeMap::new();
    for r in selected.iter().filter(|r| r.weight() >= q.min_entry_weight) {
        g.entries_used += 1;
        *node_raw.entry(r.a.clone()).or_default() += r.weight();
        *node_raw.entry(r.b.clone()).or_default() += r.weight();
        let e = edge_raw.entry((r.a.clone(), r.b.clone())).or_default();
        e.0 += 2.0 / f64::from(r.n);
        e.1 += 1;
    }
    for ((a, b), (raw, count)) in edge_raw {
        let norm = raw / edge_max;
        if norm >= q.min_edge_weight {
            g.edges.insert((a, b), (raw, norm, count));
        }
    }
    for (name, raw) in node_raw {
        let on_edge = g.edges.keys().any(|(a, b)| *a == name || *b == name);
        if on_edge || q.persons.contains(&name) {
            g.nodes.insert(name, (raw, raw / node_max));
        }
    }
    g
}

/// Largest raw node and edge weight over the entries, before filtering.
pub fn oracle_scope(selected: &[&OracleRecord]) -> (f64, f64) {
    let mut nodes: BTreeMap<&str, f64> = BTreeMap::new();
    let mut edges: BTreeMap<(&str, &str), f64> = BTreeMap::new();
    for r in selected {
        *nodes.entry(&r.a).or_default() += r.weight();
        *nodes.entry(&r.b).or_default() += r.weight();
        *edges.entry((&r.a, &r.b)).or_default() += 2.0 / f64::from(r.n);
    }
    (nodes.values().copied().fold(0.0, f64::max), edges.values().copied().fold(0.0, f64::max))
}

pub fn close(x: f64, y: f64) -> bool {
    x == y || ((x - y).abs() / x.abs().max(y.abs())) <= 1e-12
}

/// Compares a built graph against the oracle; returns a description of the
/// first difference.
pub fn compare_graph(g: &comention::StaticGraph, o: &OracleGraph) -> Result<(), String> {
    if g.entries_used != o.entries_used {
        return Err(format!("entries_used {} != {}", g.entries_used, o.entries_used));
    }
    let names: Vec<&str> = g.nodes.iter().map(|n| n.name.as_str()).collect();
    let expected: Vec<&str> = o.nodes.keys().map(String::as_str).collect();
    if names != expected {
        return Err(format!("nodes {names:?} != {expected:?}"));
    }
    for n in &g.nodes {
        let (raw, norm) = o.nodes[&n.name];
        if !close(n.raw_weight, raw) || !close(n.norm_weight, norm) {
            return Err(format!("node {}: ({}, {}) != ({raw}, {norm})", n.name, n.raw_weight, n.norm_weight));
        }
    }
    let edges: Vec<(&str, &str)> = g.edges.iter().map(|e| (e.a.as_str(), e.b.as_str())).collect();
    let expected: Vec<(&str, &str)> = o.edges.keys().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    if edges != expected {
        return Err(format!("edges {edges:?} != {expected:?}"));
    }
    for e in &g.edges {
        let (raw, norm, count) = o.edges[&(e.a.clone(), e.b.clone())];
        if !close(e.raw_weight, raw) || !close(e.norm_weight, norm) || e.entry_count != count {
            return Err(format!("edge {}-{}: ({}, {}, {}) != ({raw}, {norm}, {count})", e.a, e.b, e.raw_weight, e.norm_weight, e.entry_count));
        }
    }
    Ok(())
}

pub fn utc(y: i32, m: u32, d: u32) -> Timestamp {
    Utc.with_ymd_and_hms(y, m, d, 0, 0, 0).unwrap()
}
