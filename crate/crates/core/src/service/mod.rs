//! Live group-judgment sessions: a synchronous core ([`SessionManager`]) and
//! an HTTP front end ([`http::router`]).

pub mod http;
mod store;

pub use store::{
    read_journal, CreateRequest, CreatedSession, FinalizeRequest, FinalizeResponse, JournalEvent, JudgmentRequest,
    PairRef, ParticipantRequest, ParticipantState, Session, SessionManager, SessionState, Status, SubmitResponse,
    TriadView,
};

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

/// Error body returned by every endpoint: `{code, message, details}`.
#[derive(Debug, Clone, PartialEq, Error, Serialize)]
#[error("{code}: {message}")]
pub struct ServiceError {
    #[serde(skip)]
    pub status: u16,
    pub code: String,
    pub message: String,
    pub details: Value,
}

impl ServiceError {
    pub fn new(status: u16, code: &str, message: impl Into<String>, details: Value) -> Self {
        Self {
            status,
            code: code.to_string(),
            message: message.into(),
            details,
        }
    }

    pub fn bad_request(code: &str, message: impl Into<String>, details: Value) -> Self {
        Self::new(400, code, message, details)
    }

    pub fn not_found(code: &str, message: impl Into<String>, details: Value) -> Self {
        Self::new(404, code, message, details)
    }

    pub fn conflict(code: &str, message: impl Into<String>, details: Value) -> Self {
        Self::new(409, code, message, details)
    }

    pub fn unprocessable(code: &str, message: impl Into<String>, details: Value) -> Self {
        Self::new(422, code, message, details)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(500, "internal", message, Value::Object(Default::default()))
    }
}
