use std::io::Read;
use std::path::Path;

use inellipse_core::{validate, ConvexQuad, Point};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// `{"vertices": [[x, y], [x, y], [x, y], [x, y]], "id": "optional"}`.
/// Vertex order is free; the points are sorted into convex order on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadDocument {
    pub vertices: [[f64; 2]; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
}

impl QuadDocument {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Document(e.to_string()))
    }

    /// Reads a document from `path`, or from stdin when `path` is `-`.
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let mut text = String::new();
        let read = if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text).map(|_| ())
        } else {
            std::fs::read_to_string(path).map(|t| text = t)
        };
        read.map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_quad(q: &ConvexQuad, id: Option<String>) -> Self {
        Self {
            vertices: q.vertices().map(|p| [p.x, p.y]),
            id,
        }
    }

    pub fn points(&self) -> [Point; 4] {
        self.vertices.map(|[x, y]| Point::new(x, y))
    }

    pub fn quad(&self) -> Result<ConvexQuad, CliError> {
        validate(self.points()).map_err(CliError::InvalidQuad)
    }
}
