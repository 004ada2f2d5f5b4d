//! PCA and LDA linear extractors used as comparison methods.

pub mod linalg;
mod lda;
mod pca;

pub use lda::{fisher_ratio, lda_fit, scatter, Scatter};
pub use pca::{covariance, pca_fit};
