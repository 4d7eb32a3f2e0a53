//! Static graph aggregation.
//!
//! Each entry `i` with weight `w_i = 1/n_i` adds `w_i` to the node weight of
//! both of its persons, and `w_i + w_i = 2/n_i` to the weight of their edge
//! (every endpoint contributes its own entry weight).
//!
//! Pipeline for one graph or frame:
//!
//! 1. keep the chronologically first `max_entries` entries;
//! 2. the normalisation scope is fixed on this set: the largest raw node
//!    weight and the largest raw edge weight;
//! 3. drop entries with `w < min_entry_weight` and aggregate the rest;
//! 4. divide node and edge weights by the scope maxima;
//! 5. drop edges whose normalised weight is below `min_edge_weight`;
//! 6. drop nodes left without edges, except queried persons that still have
//!    an entry.
//!
//! Fixing the scope before the entry-weight filter makes both thresholds
//! monotone: raising either one can only remove nodes, edges and weight.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{round_sig, GraphQuery};
use crate::store::StoredRecord;
use crate::time::Period;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphNode {
    pub name: String,
    #[serde(rename = "raw", serialize_with = "round_sig")]
    pub raw_weight: f64,
    #[serde(rename = "norm", serialize_with = "round_sig")]
    pub norm_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphEdge {
    pub a: String,
    pub b: String,
    #[serde(rename = "raw", serialize_with = "round_sig")]
    pub raw_weight: f64,
    #[serde(rename = "norm", serialize_with = "round_sig")]
    pub norm_weight: f64,
    #[serde(rename = "count")]
    pub entry_count: usize,
}

/// Nodes sorted by name, edges by `(a, b)` with `a < b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StaticGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub period: Period,
    pub entries_used: usize,
}

impl StaticGraph {
    pub fn node(&self, name: &str) -> Option<&GraphNode> {
        self.nodes.iter().find(|n| n.name == name)
    }

    pub fn edge(&self, x: &str, y: &str) -> Option<&GraphEdge> {
        let (a, b) = if x <= y { (x, y) } else { (y, x) };
        self.edges.iter().find(|e| e.a == a && e.b == b)
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialisation cannot fail")
    }
}

/// Largest raw node and edge weight within a normalisation scope.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Scale {
    pub node_max: f64,
    pub edge_max: f64,
}

impl Scale {
    pub fn max(self, other: Scale) -> Scale {
        Scale {
            node_max: self.node_max.max(other.node_max),
            edge_max: self.edge_max.max(other.edge_max),
        }
    }
}

/// Raw sums for one period before normalisation.
#[derive(Debug, Clone)]
pub(crate) struct Aggregate<'a> {
    period: Period,
    nodes: BTreeMap<&'a str, f64>,
    edges: BTreeMap<(&'a str, &'a str), (f64, usize)>,
    entries_used: usize,
    pub scale: Scale,
}

/// Entries restricted to the query and ordered by `(crawl_date, id)`.
pub(crate) fn select<'a>(entries: &'a [StoredRecord], query: &GraphQuery, period: &Period) -> Vec<&'a StoredRecord> {
    let mut selected: Vec<&StoredRecord> = entries
        .iter()
        .filter(|e| period.contains(&e.crawl_date()) && query.persons().iter().any(|p| e.involves(p)))
        .collect();
    selected.sort_by_key(|e| (e.crawl_date(), e.id));
    selected
}

/// Steps 1–3 over entries already selected and ordered.
pub(crate) fn aggregate<'a>(ordered: &[&'a StoredRecord], query: &GraphQuery, period: Period) -> Aggregate<'a> {
    let considered = match query.max_entries() {
        Some(max) => &ordered[..ordered.len().min(max)],
        None => ordered,
    };
    let mut scope_nodes: HashMap<&str, f64> = HashMap::new();
    let mut scope_edges: HashMap<(&str, &str), f64> = HashMap::new();
    let mut agg = Aggregate {
        period,
        nodes: BTreeMap::new(),
        edges: BTreeMap::new(),
        entries_used: 0,
        scale: Scale::default(),
    };
    for entry in considered {
        let (a, b) = (entry.person_a(), entry.person_b());
        let w = entry.weight();
        *scope_nodes.entry(a).or_default() += w;
        *scope_nodes.entry(b).or_default() += w;
        *scope_edges.entry((a, b)).or_default() += w + w;
        if w < query.min_entry_weight() {
            continue;
        }
        agg.entries_used += 1;
        *agg.nodes.entry(a).or_default() += w;
        *agg.nodes.entry(b).or_default() += w;
        let edge = agg.edges.entry((a, b)).or_default();
        edge.0 += w + w;
        edge.1 += 1;
    }
    agg.scale = Scale {
        node_max: scope_nodes.values().copied().fold(0.0, f64::max),
        edge_max: scope_edges.values().copied().fold(0.0, f64::max),
    };
    agg
}

/// Steps 4–6 with the given scale.
pub(crate) fn finalize(agg: &Aggregate<'_>, scale: Scale, query: &GraphQuery) -> StaticGraph {
    let edges: Vec<GraphEdge> = agg
        .edges
        .iter()
        .filter_map(|(&(a, b), &(raw, count))| {
            let norm = raw / scale.edge_max;
            (norm >= query.min_edge_weight()).then(|| GraphEdge {
                a: a.to_owned(),
                b: b.to_owned(),
                raw_weight: raw,
                norm_weight: norm,
                entry_count: count,
            })
        })
        .collect();
    let mut keep: BTreeSet<&str> = edges.iter().flat_map(|e| [e.a.as_str(), e.b.as_str()]).collect();
    keep.extend(query.persons().iter().map(String::as_str).filter(|p| agg.nodes.contains_key(p)));
    let nodes = agg
        .nodes
        .iter()
        .filter(|(name, _)| keep.contains(*name))
        .map(|(&name, &raw)| GraphNode {
            name: name.to_owned(),
            raw_weight: raw,
            norm_weight: raw / scale.node_max,
        })
        .collect();
    StaticGraph {
        nodes,
        edges,
        period: agg.period,
        entries_used: agg.entries_used,
    }
}

/// Builds the static graph of `query` over its whole period.
///
/// `entries` would normally come from
/// [`RecordStore::query_entries`](crate::RecordStore::query_entries); entries
/// outside the query's persons or period are ignored.
pub fn build_static(entries: &[StoredRecord], query: &GraphQuery) -> StaticGraph {
    let ordered = select(entries, query, query.period());
    let agg = aggregate(&ordered, query, *query.period());
    finalize(&agg, agg.scale, query)
}
