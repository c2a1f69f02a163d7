//! The error document every endpoint returns, and the mapping from each
//! engine error to one status and code.

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use kgsu_core::enrichment::EnrichError;
use kgsu_core::mapping::MappingError;
use kgsu_core::shacl::ShaclError;
use kgsu_core::sparql::QueryError;
use kgsu_core::syntax::SyntaxError;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            code,
            message: message.into(),
            detail: None,
        }
    }

    pub fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "bad_request", message)
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn too_large(message: impl Into<String>) -> Self {
        Self::new(StatusCode::PAYLOAD_TOO_LARGE, "payload_too_large", message)
    }

    fn at(mut self, position: Option<(usize, usize)>) -> Self {
        if let Some((line, column)) = position {
            self.detail = Some(json!({ "line": line, "column": column }));
        }
        self
    }

    /// JSON document, newline-terminated like every other body.
    pub fn body(&self) -> String {
        let mut s = serde_json::to_string(self).expect("error serializes");
        s.push('\n');
        s
    }
}

impl std::fmt::Display for ApiError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.code, self.message)?;
        if let Some(d) = &self.detail {
            if let (Some(l), Some(c)) = (d.get("line"), d.get("column")) {
                write!(f, " (line {l}, column {c})")?;
            }
        }
        Ok(())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, [("content-type", "application/json")], self.body()).into_response()
    }
}

impl From<SyntaxError> for ApiError {
    fn from(e: SyntaxError) -> Self {
        let pos = e.position();
        let code = match e {
            SyntaxError::BlankNodeInCanonical(_) => "blank_node_in_canonical",
            _ => "syntax_error",
        };
        ApiError::new(StatusCode::BAD_REQUEST, code, e.to_string()).at(pos)
    }
}

impl From<QueryError> for ApiError {
    fn from(e: QueryError) -> Self {
        let pos = e.position();
        match e {
            QueryError::Parse(_) => ApiError::new(StatusCode::BAD_REQUEST, "query_parse_error", e.to_string()).at(pos),
            QueryError::Unsupported { .. } => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "unsupported_feature", e.to_string()).at(pos)
            }
            QueryError::Eval(_) => ApiError::new(StatusCode::BAD_REQUEST, "query_error", e.to_string()),
        }
    }
}

impl From<MappingError> for ApiError {
    fn from(e: MappingError) -> Self {
        match e {
            MappingError::Syntax(s) => s.into(),
            MappingError::UnsupportedR2RML(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "unsupported_feature", e.to_string())
            }
            _ => ApiError::new(StatusCode::BAD_REQUEST, "mapping_error", e.to_string()),
        }
    }
}

impl From<ShaclError> for ApiError {
    fn from(e: ShaclError) -> Self {
        match e {
            ShaclError::Syntax(s) => s.into(),
            ShaclError::Query { source, .. } => source.into(),
            ShaclError::UnsupportedShacl(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "unsupported_feature", e.to_string())
            }
            _ => ApiError::new(StatusCode::BAD_REQUEST, "shapes_error", e.to_string()),
        }
    }
}

impl From<EnrichError> for ApiError {
    fn from(e: EnrichError) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "enrichment_error", e.to_string())
    }
}
