//! Linear feature extraction driven by one-dimensional mutual information.
//!
//! Components are extracted one at a time. Each new weight vector maximizes
//! the histogram MI between its projection and the class label, minus a
//! redundancy penalty against the components already extracted. A genetic
//! algorithm searches over unit vectors.
//!
//! The crate also carries the pieces needed to benchmark the method:
//! CSV ingestion and normalization, stratified folds, PCA and LDA baselines,
//! a 1-NN classifier and table rendering for cross-validated accuracy.

pub mod baselines;
pub mod data;
mod error;
pub mod eval;
pub mod extraction;
pub mod info;
pub mod seed;

pub use error::{Error, ErrorKind, Result};
