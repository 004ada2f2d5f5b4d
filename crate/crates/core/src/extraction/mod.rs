//! Greedy mutual-information feature extraction.

mod config;
mod extract;
mod ga;
mod model;
mod objective;
mod projection;

pub use config::{ExtractionConfig, GaConfig};
pub use extract::{component_diagnostics, extract, Extraction};
pub use ga::{ga_optimize, GaOutcome};
pub use model::ModelFile;
pub use objective::{objective, redundancy_penalty, relevance, ComponentDiagnostics, Objective};
pub use projection::{project, Method, ProjectionMatrix};
