use serde::Serialize;

use super::aggregate::{aggregate, finalize, select, Scale};
use super::{GraphQuery, QueryError, StaticGraph};
use crate::store::StoredRecord;
use crate::time::Period;

/// Static frames over consecutive disjoint windows of the query period.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DynamicGraph {
    pub period: Period,
    pub window_days: u32,
    pub frames: Vec<StaticGraph>,
}

impl DynamicGraph {
    /// Edge count per frame, as shown on an animation timeline.
    pub fn edge_counts(&self) -> Vec<usize> {
        self.frames.iter().map(|f| f.edges.len()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialisation cannot fail")
    }
}

/// Splits the query's entries into the frame windows, in `(crawl_date, id)`
/// order, before any filter is applied.
pub fn partition_entries<'a>(
    entries: &'a [StoredRecord],
    query: &GraphQuery,
    window_days: u32,
) -> Vec<(Period, Vec<&'a StoredRecord>)> {
    let ordered = select(entries, query, query.period());
    let mut rest = &ordered[..];
    query
        .period()
        .partition(window_days)
        .into_iter()
        .map(|window| {
            let cut = rest.partition_point(|e| e.crawl_date() < window.to());
            let (head, tail) = rest.split_at(cut);
            rest = tail;
            (window, head.to_vec())
        })
        .collect()
}

/// Builds one static frame per `window_days` interval of the query period.
///
/// Node and edge weights of every frame are normalised by the maxima over
/// all frames, so sizes stay comparable across the animation. The
/// `max_entries` cap applies per frame.
pub fn build_dynamic(entries: &[StoredRecord], query: &GraphQuery) -> Result<DynamicGraph, QueryError> {
    let window_days = query.window_days().ok_or(QueryError::MissingWindow)?;
    let parts = partition_entries(entries, query, window_days);
    let aggregates: Vec<_> = parts
        .iter()
        .map(|(window, frame_entries)| aggregate(frame_entries, query, *window))
        .collect();
    let scale = aggregates.iter().fold(Scale::default(), |acc, a| acc.max(a.scale));
    Ok(DynamicGraph {
        period: *query.period(),
        window_days,
        frames: aggregates.iter().map(|a| finalize(a, scale, query)).collect(),
    })
}
