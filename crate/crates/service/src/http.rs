//! JSON over HTTP. Request bodies are the CLI payloads; responses are the
//! bytes the CLI would print.

use axum::body::Bytes;
use axum::extract::Path;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde_json::Value;

use crate::jobs::{self, JobError, JobKind, JobRequest, ModelSpec};
use crate::models;

pub const PORT_ENV: &str = "QUIVERCAT_PORT";
pub const HOST_ENV: &str = "QUIVERCAT_HOST";
pub const DEFAULT_PORT: u16 = 8080;

pub fn router() -> Router {
    Router::new()
        .route("/api/mutate", post(|body: Bytes| job(JobKind::Mutate, body)))
        .route(
            "/api/search/acyclic",
            post(|body: Bytes| job(JobKind::FindAcyclic, body)),
        )
        .route(
            "/api/search/class",
            post(|body: Bytes| job(JobKind::MutationClass, body)),
        )
        .route("/api/model/build", post(|body: Bytes| job(JobKind::BuildModel, body)))
        .route("/api/model/{name}", get(model))
        .route("/api/model/{name}/ar.dot", get(model_dot))
        .route("/api/job", post(generic_job))
}

fn status(e: &JobError) -> StatusCode {
    match e {
        JobError::Validation(_) => StatusCode::BAD_REQUEST,
        JobError::NotFound(_) => StatusCode::NOT_FOUND,
        JobError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
    }
}

fn json_response(result: Result<Value, JobError>) -> Response {
    let (code, body) = match result {
        Ok(v) => (StatusCode::OK, jobs::render(&v)),
        Err(e) => (status(&e), jobs::render(&e.to_json())),
    };
    (code, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn parse_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, JobError> {
    serde_json::from_slice(body).map_err(|e| JobError::Validation(format!("malformed body: {e}")))
}

/// Runs `f` off the async workers; searches and model builds can take seconds.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, JobError> + Send + 'static) -> Result<T, JobError> {
    tokio::task::spawn_blocking(f)
        .await
        .unwrap_or_else(|e| Err(JobError::Internal(format!("worker failed: {e}"))))
}

async fn job(kind: JobKind, body: Bytes) -> Response {
    json_response(blocking(move || jobs::run(kind, parse_body(&body)?)).await)
}

async fn generic_job(body: Bytes) -> Response {
    json_response(blocking(move || jobs::run_job(parse_body::<JobRequest>(&body)?)).await)
}

async fn model(Path(name): Path<String>) -> Response {
    json_response(blocking(move || jobs::build_model(&ModelSpec::Named(name))).await)
}

async fn model_dot(Path(name): Path<String>) -> Response {
    match blocking(move || Ok(models::named_model(&name)?.ar_dot(&name))).await {
        Ok(dot) => (StatusCode::OK, [(header::CONTENT_TYPE, "text/vnd.graphviz")], dot).into_response(),
        Err(e) => json_response(Err(e)),
    }
}

/// Address from `QUIVERCAT_HOST` / `QUIVERCAT_PORT`, with `port` taking precedence.
pub fn bind_target(port: Option<u16>) -> Result<(String, u16), JobError> {
    let host = std::env::var(HOST_ENV).unwrap_or_else(|_| "127.0.0.1".into());
    let port = match (port, std::env::var(PORT_ENV)) {
        (Some(p), _) => p,
        (None, Ok(p)) => p
            .parse()
            .map_err(|_| JobError::Validation(format!("{PORT_ENV}={p:?} is not a port number")))?,
        (None, Err(_)) => DEFAULT_PORT,
    };
    Ok((host, port))
}

pub async fn serve(listener: tokio::net::TcpListener) -> std::io::Result<()> {
    axum::serve(listener, router()).await
}
