use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::objective::ComponentDiagnostics;
use super::projection::{Method, ProjectionMatrix};
use crate::error::{Error, Result};
use crate::info::HistogramConfig;

/// On-disk form of a fitted projection. `vectors` holds one row per
/// component in extraction order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub d: usize,
    pub t: usize,
    pub method: Method,
    pub vectors: Vec<Vec<f64>>,
    pub hist: HistogramConfig,
    pub seed: u64,
    pub diagnostics: Vec<ComponentDiagnostics>,
}

impl ModelFile {
    pub fn new(
        projection: &ProjectionMatrix,
        hist: HistogramConfig,
        seed: u64,
        diagnostics: Vec<ComponentDiagnostics>,
    ) -> Self {
        Self {
            d: projection.input_dim(),
            t: projection.len(),
            method: projection.method(),
            vectors: projection.vectors().to_vec(),
            hist,
            seed,
            diagnostics,
        }
    }

    pub fn projection(&self) -> Result<ProjectionMatrix> {
        if self.vectors.len() != self.t {
            return Err(Error::InvalidData(format!(
                "model declares t = {} but has {} vectors",
                self.t,
                self.vectors.len()
            )));
        }
        let p = ProjectionMatrix::new(self.vectors.clone(), self.method)?;
        if p.input_dim() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: p.input_dim(),
            });
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let model: Self = serde_json::from_str(&text)?;
        model.projection()?;
        Ok(model)
    }
}
