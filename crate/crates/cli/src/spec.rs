//! The quiver file format: `{"vertices": [...], "arrows": [{"id", "src", "dst"}, ...]}`.

use std::path::Path;

use aql_core::Quiver;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowSpec>,
}

impl QuiverSpec {
    pub fn parse(text: &str, origin: &str) -> CliResult<QuiverSpec> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn build(&self) -> CliResult<Quiver> {
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.id.clone(), a.src.clone(), a.dst.clone()));
        Ok(Quiver::new(self.vertices.iter().cloned(), arrows)?)
    }

    pub fn from_quiver(q: &Quiver) -> QuiverSpec {
        QuiverSpec {
            vertices: q.vertices().to_vec(),
            arrows: q
                .arrows()
                .iter()
                .map(|a| ArrowSpec {
                    id: a.id.clone(),
                    src: q.vertices()[a.source].clone(),
                    dst: q.vertices()[a.target].clone(),
                })
                .collect(),
        }
    }
}

pub fn read_quiver_spec(path: &Path) -> CliResult<QuiverSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    QuiverSpec::parse(&text, &path.display().to_string())
}

/// Reads, parses and validates a quiver file.
pub fn load_quiver_spec(path: &Path) -> CliResult<Quiver> {
    read_quiver_spec(path)?.build()
}
