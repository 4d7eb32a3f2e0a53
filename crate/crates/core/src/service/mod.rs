//! HTTP+JSON API over a record store.
//!
//! [`Api::handle`] maps one request onto store and graph operations and is
//! independent of any HTTP stack; [`server`] mounts it on an axum router.
//!
//! | route | body | result |
//! |---|---|---|
//! | `GET /api/persons?q=&limit=` | | JSON array of names |
//! | `POST /api/graph/static` | [`GraphRequest`] | [`StaticGraph`](crate::StaticGraph) |
//! | `POST /api/graph/dynamic` | [`GraphRequest`] with `window_days` | [`DynamicGraph`](crate::DynamicGraph) |
//! | `POST /api/stats/temporal` | [`GraphRequest`] with `window_days` | [`TemporalStatSeries`](crate::graph::TemporalStatSeries) |
//!
//! Errors are `{"error":{"code":"bad_request","message":"…"}}` with status
//! 400, 404 (`not_found`) or 500 (`internal`).

pub mod server;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::{build_dynamic, build_static, temporal_stats, GraphQuery, QueryError};
use crate::store::{RecordStore, StoreError};
use crate::time::{parse_date, Period};

pub use server::{router, serve};

pub const DEFAULT_SUGGESTION_LIMIT: usize = 10;
/// Upper bound on frames or statistic windows per request.
pub const MAX_WINDOWS: i64 = 10_000;

/// Distinct stored person names starting with `prefix` (case-insensitive),
/// in lexicographic order, at most `limit`.
pub fn suggest_persons(store: &RecordStore, prefix: &str, limit: usize) -> Vec<String> {
    let prefix = prefix.to_lowercase();
    store
        .person_names()
        .into_iter()
        .filter(|name| name.to_lowercase().starts_with(&prefix))
        .take(limit)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    BadRequest,
    NotFound,
    Internal,
}

impl ErrorCode {
    pub fn status(self) -> u16 {
        match self {
            ErrorCode::BadRequest => 400,
            ErrorCode::NotFound => 404,
            ErrorCode::Internal => 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{code:?}: {message}")]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        Self { code, message }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::BadRequest, message)
    }
}

impl From<QueryError> for ApiError {
    fn from(e: QueryError) -> Self {
        ApiError::bad_request(e.to_string())
    }
}

impl From<StoreError> for ApiError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::NoPersons => ApiError::bad_request(e.to_string()),
            other => ApiError::new(ErrorCode::Internal, other.to_string()),
        }
    }
}

/// Body of the graph and statistics endpoints.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphRequest {
    pub persons: Vec<String>,
    /// `YYYY-MM-DD`, inclusive, UTC midnight.
    pub from: String,
    /// `YYYY-MM-DD`, exclusive, UTC midnight.
    pub to: String,
    #[serde(default)]
    pub max_entries: Option<usize>,
    #[serde(default)]
    pub min_entry_weight: Option<f64>,
    #[serde(default)]
    pub min_edge_weight: Option<f64>,
    #[serde(default)]
    pub window_days: Option<u32>,
    #[serde(default)]
    pub step_days: Option<u32>,
}

impl GraphRequest {
    pub fn to_query(&self) -> Result<GraphQuery, ApiError> {
        let from = parse_date(&self.from).map_err(|e| ApiError::bad_request(format!("from: {e}")))?;
        let to = parse_date(&self.to).map_err(|e| ApiError::bad_request(format!("to: {e}")))?;
        let period = Period::new(from, to).map_err(|e| ApiError::bad_request(format!("from/to: {e}")))?;
        let mut query = GraphQuery::new(self.persons.iter().map(String::as_str), period)?
            .with_max_entries(self.max_entries)?
            .with_min_entry_weight(self.min_entry_weight.unwrap_or(0.0))?
            .with_min_edge_weight(self.min_edge_weight.unwrap_or(0.0))?;
        if let Some(days) = self.window_days {
            query = query.with_window_days(days)?;
        }
        Ok(query)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiResponse {
    pub status: u16,
    /// Always a JSON document.
    pub body: String,
}

impl ApiResponse {
    fn ok(body: String) -> Self {
        Self { status: 200, body }
    }

    fn error(e: &ApiError) -> Self {
        #[derive(Serialize)]
        struct Envelope<'a> {
            error: &'a ApiError,
        }
        Self {
            status: e.code.status(),
            body: serde_json::to_string(&Envelope { error: e }).expect("error serialisation cannot fail"),
        }
    }
}

/// Request dispatcher over a read-only store.
#[derive(Clone)]
pub struct Api {
    store: Arc<RecordStore>,
}

impl Api {
    pub fn new(store: Arc<RecordStore>) -> Self {
        Self { store }
    }

    pub fn store(&self) -> &RecordStore {
        &self.store
    }

    /// Handles `method target` where `target` is a path with an optional
    /// query string.
    pub fn handle(&self, method: &str, target: &str, body: &[u8]) -> ApiResponse {
        match self.dispatch(method, target, body) {
            Ok(body) => ApiResponse::ok(body),
            Err(e) => ApiResponse::error(&e),
        }
    }

    fn dispatch(&self, method: &str, target: &str, body: &[u8]) -> Result<String, ApiError> {
        let (path, query) = target.split_once('?').unwrap_or((target, ""));
        match (method, path) {
            ("GET", "/api/persons") => self.persons(query),
            ("POST", "/api/graph/static") => {
                let query = parse_body(body)?.to_query()?;
                Ok(build_static(&self.entries(&query)?, &query).to_json())
            }
            ("POST", "/api/graph/dynamic") => {
                let query = parse_body(body)?.to_query()?;
                let Some(window) = query.window_days() else {
                    return Err(ApiError::bad_request("window_days: required for dynamic graphs"));
                };
                check_window_count(query.period(), window, "window_days")?;
                Ok(build_dynamic(&self.entries(&query)?, &query)?.to_json())
            }
            ("POST", "/api/stats/temporal") => {
                let request = parse_body(body)?;
                let query = request.to_query()?;
                let window = request
                    .window_days
                    .ok_or_else(|| ApiError::bad_request("window_days: required for temporal statistics"))?;
                let step = request.step_days.unwrap_or(window);
                if step >= 1 {
                    check_window_count(query.period(), step, "step_days")?;
                }
                Ok(temporal_stats(&self.entries(&query)?, &query, window, step)?.to_json())
            }
            _ => Err(ApiError::new(ErrorCode::NotFound, format!("no route for {method} {path}"))),
        }
    }

    fn entries(&self, query: &GraphQuery) -> Result<Vec<crate::StoredRecord>, ApiError> {
        Ok(self.store.query_entries(query.persons(), query.period(), None)?)
    }

    fn persons(&self, query: &str) -> Result<String, ApiError> {
        let mut prefix = String::new();
        let mut limit = DEFAULT_SUGGESTION_LIMIT;
        for (key, value) in url::form_urlencoded::parse(query.as_bytes()) {
            match key.as_ref() {
                "q" => prefix = value.into_owned(),
                "limit" => {
                    limit = value
                        .parse()
                        .ok()
                        .filter(|&l: &usize| l >= 1)
                        .ok_or_else(|| ApiError::bad_request(format!("limit: expected a positive integer, got {value:?}")))?
                }
                other => return Err(ApiError::bad_request(format!("unknown query parameter {other:?}"))),
            }
        }
        Ok(serde_json::to_string(&suggest_persons(&self.store, &prefix, limit)).expect("names serialise"))
    }
}

fn check_window_count(period: &Period, step_days: u32, field: &str) -> Result<(), ApiError> {
    let days = period.duration().num_days() + 1;
    if days / i64::from(step_days.max(1)) > MAX_WINDOWS {
        return Err(ApiError::bad_request(format!("{field}: more than {MAX_WINDOWS} windows in the period")));
    }
    Ok(())
}

fn parse_body(body: &[u8]) -> Result<GraphRequest, ApiError> {
    let mut de = serde_json::Deserializer::from_slice(body);
    let request: GraphRequest = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        if path == "." {
            ApiError::bad_request(format!("invalid request body: {}", e.inner()))
        } else {
            ApiError::bad_request(format!("{path}: {}", e.inner()))
        }
    })?;
    de.end().map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))?;
    Ok(request)
}
