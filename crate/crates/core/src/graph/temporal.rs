use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::aggregate::select;
use super::{round_sig_value, GraphQuery, QueryError};
use crate::store::StoredRecord;
use crate::time::Period;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemporalPoint {
    #[serde(flatten)]
    pub window: Period,
    /// Entries in the window that pass the entry-weight filter.
    pub raw_count: usize,
    /// Summed entry weight per queried person.
    #[serde(serialize_with = "rounded_map")]
    pub per_person_weight: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TemporalStatSeries {
    pub window_days: u32,
    pub step_days: u32,
    pub points: Vec<TemporalPoint>,
}

impl TemporalStatSeries {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series serialisation cannot fail")
    }
}

fn rounded_map<S: Serializer>(map: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_map(map.iter().map(|(k, &v)| (k, round_sig_value(v))))
}

/// Sliding-window co-mention counts and per-person weight sums.
///
/// Windows start at the beginning of the query period and advance by
/// `step_days`; the last window is the last one starting before the end of
/// the period and is cut there. Only `min_entry_weight` applies here.
pub fn temporal_stats(
    entries: &[StoredRecord],
    query: &GraphQuery,
    window_days: u32,
    step_days: u32,
) -> Result<TemporalStatSeries, QueryError> {
    if window_days == 0 {
        return Err(QueryError::ZeroDays { field: "window_days" });
    }
    if step_days == 0 {
        return Err(QueryError::ZeroDays { field: "step_days" });
    }
    let ordered: Vec<&StoredRecord> = select(entries, query, query.period())
        .into_iter()
        .filter(|e| e.weight() >= query.min_entry_weight())
        .collect();
    let points = query
        .period()
        .windows(window_days, step_days)
        .into_iter()
        .map(|window| {
            let lo = ordered.partition_point(|e| e.crawl_date() < window.from());
            let hi = ordered.partition_point(|e| e.crawl_date() < window.to());
            let mut per_person_weight: BTreeMap<String, f64> =
                query.persons().iter().map(|p| (p.clone(), 0.0)).collect();
            for entry in &ordered[lo..hi] {
                for person in [entry.person_a(), entry.person_b()] {
                    if let Some(w) = per_person_weight.get_mut(person) {
                        *w += entry.weight();
                    }
                }
            }
            TemporalPoint {
                window,
                raw_count: hi - lo,
                per_person_weight,
            }
        })
        .collect();
    Ok(TemporalStatSeries {
        window_days,
        step_days,
        points,
    })
}
