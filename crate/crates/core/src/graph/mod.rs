//! Static graphs, dynamic frame sequences and temporal statistics.
//!
//! Raw node weights are sums of entry weights `1/n` and raw edge weights are
//! sums of `2/n`; both are also reported normalised into `(0, 1]`. JSON
//! output rounds every number to 12 significant digits so repeated requests
//! produce identical bytes.

mod aggregate;
mod dynamic;
mod query;
mod temporal;

pub use aggregate::{build_static, GraphEdge, GraphNode, StaticGraph};
pub use dynamic::{build_dynamic, partition_entries, DynamicGraph};
pub use query::{GraphQuery, QueryError};
pub use temporal::{temporal_stats, TemporalPoint, TemporalStatSeries};

use serde::Serializer;

/// Rounds to 12 significant digits.
pub(crate) fn round_sig_value(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

pub(crate) fn round_sig<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig_value(*x))
}
