use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bayes-error bounds implied by class entropy and feature/class MI.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BayesErrorBounds {
    /// Fano: `(H(C) - I - 1) / log2(C)`.
    pub lower: f64,
    /// Hellman–Raviv: `(H(C) - I) / 2`.
    pub upper: f64,
}

/// Both inputs in bits. Results are clamped to `[0, 1]`.
pub fn bayes_error_bounds(h_c: f64, mi: f64, n_classes: usize) -> Result<BayesErrorBounds> {
    if !(h_c >= 0.0 && mi >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "entropy and MI must be non-negative, got H={h_c}, I={mi}"
        )));
    }
    if n_classes < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 classes, got {n_classes}"
        )));
    }
    let gap = h_c - mi;
    let upper = (gap / 2.0).clamp(0.0, 1.0);
    let lower = ((gap - 1.0) / (n_classes as f64).log2()).clamp(0.0, 1.0);
    Ok(BayesErrorBounds { lower, upper })
}
