use std::future::Future;
use std::io;
use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::{OriginalUri, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::any;
use axum::Router;
use log::{error, info};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

use super::{Api, ApiError, ApiResponse, ErrorCode};

/// API routes under `/api/`, plus static files from `ui_dir` for every
/// other path when given.
pub fn router(api: Api, ui_dir: Option<PathBuf>) -> Router {
    let router = Router::new().route("/api/{*path}", any(handle)).with_state(api);
    match ui_dir {
        Some(dir) => router.fallback_service(ServeDir::new(dir).append_index_html_on_directories(true)),
        None => router,
    }
}

async fn handle(State(api): State<Api>, method: Method, OriginalUri(uri): OriginalUri, body: Bytes) -> Response {
    let target = uri.path_and_query().map_or_else(|| uri.path().to_owned(), |pq| pq.as_str().to_owned());
    let method = method.as_str().to_owned();
    let response = tokio::task::spawn_blocking(move || api.handle(&method, &target, &body))
        .await
        .unwrap_or_else(|e| {
            error!("request handler failed: {e}");
            ApiResponse::error(&ApiError::new(ErrorCode::Internal, "request handler failed"))
        });
    let status = StatusCode::from_u16(response.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], response.body).into_response()
}

/// Serves until `shutdown` resolves.
pub async fn serve(
    listener: TcpListener,
    api: Api,
    ui_dir: Option<PathBuf>,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(api, ui_dir)).with_graceful_shutdown(shutdown).await
}
