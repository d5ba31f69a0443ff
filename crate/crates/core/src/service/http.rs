//! Axum routes over a shared [`SessionManager`].
//!
//! | method | path |
//! |---|---|
//! | POST | `/sessions` |
//! | POST | `/sessions/{id}/participants` |
//! | PUT | `/sessions/{id}/judgments` |
//! | GET | `/sessions/{id}/state` |
//! | POST | `/sessions/{id}/finalize` |

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use serde_json::json;

use super::{CreateRequest, FinalizeRequest, JudgmentRequest, ParticipantRequest, ServiceError, SessionManager};

type Shared = State<Arc<SessionManager>>;

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ServiceError> {
    payload.map(|Json(v)| v).map_err(|e| {
        ServiceError::bad_request("invalid_body", e.body_text(), json!({ "status": e.status().as_u16() }))
    })
}

async fn create(
    State(m): Shared,
    payload: Result<Json<CreateRequest>, JsonRejection>,
) -> Result<impl IntoResponse, ServiceError> {
    let req = body(payload)?;
    Ok((StatusCode::CREATED, Json(m.create_session(&req)?)))
}

async fn participants(
    State(m): Shared,
    Path(id): Path<String>,
    payload: Result<Json<ParticipantRequest>, JsonRejection>,
) -> Result<impl IntoResponse, ServiceError> {
    let req = body(payload)?;
    Ok((StatusCode::CREATED, Json(m.add_participant(&id, &req)?)))
}

async fn judgments(
    State(m): Shared,
    Path(id): Path<String>,
    payload: Result<Json<JudgmentRequest>, JsonRejection>,
) -> Result<impl IntoResponse, ServiceError> {
    let req = body(payload)?;
    Ok(Json(m.submit_judgment(&id, &req)?))
}

async fn state(State(m): Shared, Path(id): Path<String>) -> Result<impl IntoResponse, ServiceError> {
    Ok(Json(m.state(&id)?))
}

async fn finalize(
    State(m): Shared,
    Path(id): Path<String>,
    payload: Option<Json<FinalizeRequest>>,
) -> Result<impl IntoResponse, ServiceError> {
    let req = payload.map(|Json(r)| r).unwrap_or_default();
    Ok(Json(m.finalize(&id, &req)?))
}

async fn fallback() -> ServiceError {
    ServiceError::not_found("not_found", "no such route", json!({}))
}

pub fn router(manager: Arc<SessionManager>) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}/participants", post(participants))
        .route("/sessions/{id}/judgments", put(judgments))
        .route("/sessions/{id}/state", get(state))
        .route("/sessions/{id}/finalize", post(finalize))
        .fallback(fallback)
        .with_state(manager)
}

/// Serves until the process receives ctrl-c.
pub async fn serve(manager: Arc<SessionManager>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(manager))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
