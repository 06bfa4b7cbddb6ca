use std::path::PathBuf;

use inellipse_core::GeometryError;
use thiserror::Error;

use crate::svg::RenderError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid quad document: {0}")]
    Document(String),
    #[error("invalid quadrilateral [{kind}]: {0}", kind = .0.kind())]
    InvalidQuad(GeometryError),
    #[error("computation failed [{kind}]: {0}", kind = .0.kind())]
    Geometry(#[from] GeometryError),
    #[error("render failed: {0}")]
    Render(#[from] RenderError),
}
