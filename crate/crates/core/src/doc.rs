//! Versioned input documents: `{"v": 1, "kind": ..., "payload": ..., "name"?, "note"?}`.
//!
//! Parsing is strict: unknown fields are rejected at every level.

use crate::counting::ModelDoc;
use crate::gwseries::{GVTable, GWSeries};
use crate::lefschetz::{BispinContent, GradedNilpotent};
use crate::motives::{betti_over_point, smooth_from_betti, MotiveError, MotiveExpr};
use crate::stacks::StackClass;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Json(String),
    #[error("unsupported schema version {0}; expected {SCHEMA_VERSION}")]
    Version(u32),
    #[error("unknown document kind `{0}`")]
    UnknownKind(String),
    #[error("invalid {kind} payload: {message}")]
    Payload { kind: &'static str, message: String },
}

/// Betti numbers `b_0, ..., b_{2d}` of a smooth projective variety, either
/// over itself or mapped to a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiVariety {
    pub betti: Vec<u64>,
    #[serde(default)]
    pub over_point: bool,
}

impl BettiVariety {
    pub fn to_expr(&self, name: &str) -> Result<MotiveExpr, MotiveError> {
        if self.over_point {
            betti_over_point(name, &self.betti)
        } else {
            smooth_from_betti(name, &self.betti)
        }
    }
}

pub enum Payload {
    Bispin(BispinContent),
    GradedNilpotent(GradedNilpotent),
    BettiVariety(BettiVariety),
    Motive(MotiveExpr),
    StackClass(StackClass),
    CountModel(ModelDoc),
    GvTable(GVTable),
    GwSeries(GWSeries),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Bispin(_) => "bispin",
            Payload::GradedNilpotent(_) => "graded_nilpotent",
            Payload::BettiVariety(_) => "betti_variety",
            Payload::Motive(_) => "motive",
            Payload::StackClass(_) => "stack_class",
            Payload::CountModel(_) => "count_model",
            Payload::GvTable(_) => "gv_table",
            Payload::GwSeries(_) => "gw_series",
        }
    }
}

pub struct InputDocument {
    pub name: Option<String>,
    pub note: Option<String>,
    pub payload: Payload,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    v: u32,
    kind: String,
    payload: serde_json::Value,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    note: Option<String>,
}

fn payload<T: serde::de::DeserializeOwned>(kind: &'static str, v: serde_json::Value) -> Result<T, DocError> {
    serde_json::from_value(v).map_err(|e| DocError::Payload { kind, message: e.to_string() })
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
        if raw.v != SCHEMA_VERSION {
            return Err(DocError::Version(raw.v));
        }
        let p = raw.payload;
        let payload = match raw.kind.as_str() {
            "bispin" => Payload::Bispin(payload("bispin", p)?),
            "graded_nilpotent" => Payload::GradedNilpotent(payload("graded_nilpotent", p)?),
            "betti_variety" => Payload::BettiVariety(payload("betti_variety", p)?),
            "motive" => Payload::Motive(payload("motive", p)?),
            "stack_class" => Payload::StackClass(payload("stack_class", p)?),
            "count_model" => Payload::CountModel(payload("count_model", p)?),
            "gv_table" => Payload::GvTable(payload("gv_table", p)?),
            "gw_series" => Payload::GwSeries(payload("gw_series", p)?),
            other => return Err(DocError::UnknownKind(other.to_string())),
        };
        Ok(InputDocument { name: raw.name, note: raw.note, payload })
    }

    /// Label for output headers: the document name or its kind.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| self.payload.kind().to_string())
    }
}

/// Wraps a payload in a version-1 document.
pub fn wrap<T: Serialize>(kind: &str, name: Option<&str>, payload: &T) -> serde_json::Value {
    let mut doc = serde_json::json!({ "v": SCHEMA_VERSION, "kind": kind, "payload": payload });
    if let Some(n) = name {
        doc["name"] = serde_json::Value::from(n);
    }
    doc
}
