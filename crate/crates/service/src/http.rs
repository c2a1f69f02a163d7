//! HTTP API over the shared store.

use std::collections::BTreeMap;
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection, StringRejection};
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use tower_http::cors::CorsLayer;

use crate::config::ServerConfig;
use crate::error::ApiError;
use crate::ops::{self, Body, QueryFormat};
use crate::store::Store;

pub struct AppState {
    pub store: Store,
    pub config: ServerConfig,
}

impl IntoResponse for Body {
    fn into_response(self) -> Response {
        (StatusCode::OK, [(header::CONTENT_TYPE, self.content_type)], self.text).into_response()
    }
}

type Reply = Result<Body, ApiError>;

fn rejected(status: StatusCode, text: String) -> ApiError {
    if status == StatusCode::PAYLOAD_TOO_LARGE {
        ApiError::too_large(text)
    } else {
        ApiError::bad_request(text)
    }
}

fn json_body<T>(body: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    body.map(|Json(v)| v).map_err(|r| rejected(r.status(), r.body_text()))
}

/// Runs engine work off the async executor.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))?
}

#[derive(Deserialize)]
pub struct QueryRequest {
    pub query: String,
    #[serde(default)]
    pub format: Option<String>,
}

async fn query(State(s): State<Arc<AppState>>, body: Result<Json<QueryRequest>, JsonRejection>) -> Reply {
    let req = json_body(body)?;
    let format = QueryFormat::parse(req.format.as_deref().unwrap_or("json"))?;
    let d = s.store.snapshot();
    let max = s.config.max_query_rows;
    blocking(move || ops::query_body(&d, &req.query, format, max)).await
}

async fn graphs(State(s): State<Arc<AppState>>) -> Reply {
    let d = s.store.snapshot();
    blocking(move || Ok(ops::graphs_body(&d))).await
}

#[derive(Deserialize)]
pub struct UnitsQuery {
    pub subject: String,
}

async fn units(State(s): State<Arc<AppState>>, q: Result<Query<UnitsQuery>, QueryRejection>) -> Reply {
    let Query(q) = q.map_err(|r| rejected(r.status(), r.body_text()))?;
    let d = s.store.snapshot();
    blocking(move || ops::units_body(&d, &q.subject)).await
}

async fn unit(State(s): State<Arc<AppState>>, Path(iri): Path<String>) -> Reply {
    let d = s.store.snapshot();
    blocking(move || ops::unit_body(&d, &iri)).await
}

async fn unit_vis(State(s): State<Arc<AppState>>, Path(iri): Path<String>) -> Reply {
    let d = s.store.snapshot();
    blocking(move || ops::vis_body(&d, &iri)).await
}

async fn load(State(s): State<Arc<AppState>>, body: Result<String, StringRejection>) -> Reply {
    let text = body.map_err(|r| rejected(r.status(), r.body_text()))?;
    blocking(move || ops::load(&s.store, &text)).await
}

#[derive(Deserialize)]
pub struct MapRequest {
    pub mapping: String,
    #[serde(default)]
    pub tables: BTreeMap<String, String>,
}

async fn map(State(s): State<Arc<AppState>>, body: Result<Json<MapRequest>, JsonRejection>) -> Reply {
    let req = json_body(body)?;
    blocking(move || ops::map(&s.store, &req.mapping, &req.tables)).await
}

#[derive(Deserialize)]
pub struct ValidateRequest {
    pub shapes: String,
}

async fn validate(State(s): State<Arc<AppState>>, body: Result<Json<ValidateRequest>, JsonRejection>) -> Reply {
    let req = json_body(body)?;
    let d = s.store.snapshot();
    blocking(move || ops::validate_body(&d, &req.shapes).map(|(b, _)| b)).await
}

async fn health(State(s): State<Arc<AppState>>) -> Body {
    ops::health_body(&s.store.snapshot())
}

async fn fallback() -> ApiError {
    ApiError::not_found("no such endpoint")
}

pub fn router(state: Arc<AppState>) -> Router {
    let limit = state.config.max_body_bytes;
    let cors = state.config.cors_allowed;
    let app = Router::new()
        .route("/query", post(query))
        .route("/graphs", get(graphs))
        .route("/units", get(units))
        .route("/units/:iri", get(unit))
        .route("/units/:iri/vis", get(unit_vis))
        .route("/load", post(load))
        .route("/map", post(map))
        .route("/validate", post(validate))
        .route("/health", get(health))
        .fallback(fallback)
        .layer(DefaultBodyLimit::max(limit))
        .with_state(state);
    if cors {
        app.layer(CorsLayer::permissive())
    } else {
        app
    }
}

/// Binds the configured address and serves until the process ends.
pub async fn serve(state: Arc<AppState>) -> std::io::Result<()> {
    let addr = (state.config.bind.clone(), state.config.port);
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
