//! JSON instance format.
//!
//! ```json
//! {"arcs":[[0,1],[0,2],[1,3],[2,3]],"s":0,"t":3,"vertex_count":4}
//! ```
//!
//! The arc id is the position in `arcs`. Writing is canonical: keys in
//! sorted order, arcs in id order, no whitespace, one trailing newline.

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use super::{Digraph, GraphError, StInstance, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", self.render())]
pub struct ParseError {
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl ParseError {
    pub fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParseError {
            line: None,
            column: None,
            field: Some(field.into()),
            message: message.into(),
        }
    }

    fn render(&self) -> String {
        let mut out = String::from("parse error");
        if let (Some(l), Some(c)) = (self.line, self.column) {
            out.push_str(&format!(" at line {l}, column {c}"));
        }
        if let Some(f) = &self.field {
            out.push_str(&format!(" in `{f}`"));
        }
        out.push_str(": ");
        out.push_str(&self.message);
        out
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError {
            line: Some(e.line()),
            column: Some(e.column()),
            field: None,
            message: e.to_string(),
        }
    }
}

/// Parses any JSON document with line/column diagnostics.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, ParseError> {
    serde_json::from_str(text).map_err(ParseError::from)
}

/// Canonical compact rendering shared by every document type in the crate.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable document");
    s.push('\n');
    s
}

// Fields are declared in sorted order so that serialization is canonical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub arcs: Vec<(VertexId, VertexId)>,
    pub s: VertexId,
    pub t: VertexId,
    pub vertex_count: usize,
}

impl InstanceDoc {
    pub fn from_instance(inst: &StInstance) -> Self {
        InstanceDoc {
            arcs: inst.graph.arcs().iter().map(|a| (a.tail, a.head)).collect(),
            s: inst.s,
            t: inst.t,
            vertex_count: inst.graph.vertex_count(),
        }
    }

    pub fn into_instance(self) -> Result<StInstance, ParseError> {
        let mut g = Digraph::new(self.vertex_count);
        for (i, &(tail, head)) in self.arcs.iter().enumerate() {
            g.try_add_arc(tail, head)
                .map_err(|e| ParseError::field(format!("arcs[{i}]"), e.to_string()))?;
        }
        StInstance::new(g, self.s, self.t).map_err(|e| {
            let field = match e {
                GraphError::VertexOutOfRange { vertex, .. } if vertex == self.s => "s",
                GraphError::VertexOutOfRange { .. } => "t",
                _ => "s/t",
            };
            ParseError::field(field, e.to_string())
        })
    }
}

pub fn read_instance(text: &str) -> Result<StInstance, ParseError> {
    parse_json::<InstanceDoc>(text)?.into_instance()
}

pub fn write_instance(inst: &StInstance) -> String {
    to_canonical_json(&InstanceDoc::from_instance(inst))
}
