//! Relevance-minus-redundancy criterion for the next component.
//!
//! For a candidate `w` and previously extracted vectors `W_s`:
//!
//! ```text
//! relevance(w) = I(w'X; C)
//! penalty(w)   = sum over s of I(w'X; w_s'X) * I(w_s'X; C) / H(w_s'X)
//! objective(w) = relevance(w) - penalty(w)
//! ```
//!
//! All terms are histogram plug-in estimates.

use serde::{Deserialize, Serialize};

use super::config::ExtractionConfig;
use super::projection::{l2_norm, project_into};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::info::{bin_indices, entropy_codes, mi_codes, HistogramConfig};

/// Relevance, penalty and their difference for one vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComponentDiagnostics {
    pub relevance: f64,
    pub penalty: f64,
    pub objective: f64,
}

#[derive(Debug, Clone)]
struct Prior {
    codes: Vec<u32>,
    relevance: f64,
    entropy: f64,
}

/// Objective over a fixed dataset with a growing set of prior components.
///
/// Prior projections are binned once, so each evaluation costs one
/// projection, one binning and `1 + |W_s|` contingency tables.
#[derive(Debug, Clone)]
pub struct Objective<'a> {
    data: &'a Dataset,
    hist: HistogramConfig,
    entropy_floor: f64,
    labels: Vec<u32>,
    priors: Vec<Prior>,
}

impl<'a> Objective<'a> {
    pub fn new(data: &'a Dataset, cfg: &ExtractionConfig) -> Result<Self> {
        cfg.hist.validate()?;
        Ok(Self {
            data,
            hist: cfg.hist,
            entropy_floor: cfg.entropy_floor,
            labels: data.labels().iter().map(|&l| l as u32).collect(),
            priors: Vec::new(),
        })
    }

    pub fn n_priors(&self) -> usize {
        self.priors.len()
    }

    fn check(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.data.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.data.ncols(),
                found: w.len(),
            });
        }
        if l2_norm(w).is_nan() || l2_norm(w) <= 0.0 || w.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("weight vector must be finite and nonzero".into()));
        }
        Ok(())
    }

    fn codes(&self, w: &[f64]) -> Vec<u32> {
        let mut y = Vec::with_capacity(self.data.nrows());
        project_into(self.data.features(), w, &mut y);
        let mut codes = Vec::with_capacity(y.len());
        bin_indices(&y, &self.hist, &mut codes);
        codes
    }

    fn relevance_of(&self, codes: &[u32]) -> f64 {
        mi_codes(
            codes,
            self.hist.n_bins,
            &self.labels,
            self.data.n_classes(),
            self.hist.bias_correction,
            self.hist.log_base,
        )
    }

    /// Add `w` to the set of prior components.
    pub fn push(&mut self, w: &[f64]) -> Result<()> {
        self.check(w)?;
        let codes = self.codes(w);
        let relevance = self.relevance_of(&codes);
        let entropy = entropy_codes(
            &codes,
            self.hist.n_bins,
            self.hist.bias_correction,
            self.hist.log_base,
        );
        self.priors.push(Prior {
            codes,
            relevance,
            entropy,
        });
        Ok(())
    }

    pub fn evaluate(&self, w: &[f64]) -> Result<ComponentDiagnostics> {
        self.check(w)?;
        Ok(self.evaluate_unchecked(w))
    }

    /// Objective value; non-finite or zero vectors score negative infinity.
    pub fn score(&self, w: &[f64]) -> f64 {
        match self.check(w) {
            Ok(()) => self.evaluate_unchecked(w).objective,
            Err(_) => f64::NEG_INFINITY,
        }
    }

    fn evaluate_unchecked(&self, w: &[f64]) -> ComponentDiagnostics {
        let codes = self.codes(w);
        let relevance = self.relevance_of(&codes);
        let mut terms: Vec<f64> = self
            .priors
            .iter()
            .map(|p| {
                if p.entropy < self.entropy_floor {
                    // constant prior feature: the pairwise MI is 0 as well
                    return 0.0;
                }
                let shared = mi_codes(
                    &codes,
                    self.hist.n_bins,
                    &p.codes,
                    self.hist.n_bins,
                    self.hist.bias_correction,
                    self.hist.log_base,
                );
                // shared == entropy (w duplicating the prior) gives exactly
                // the prior's relevance.
                p.relevance * (shared / p.entropy)
            })
            .collect();
        // sorted so the sum does not depend on the order of W_s
        terms.sort_unstable_by(f64::total_cmp);
        let penalty = terms.iter().fold(0.0, |acc, t| acc + t);
        ComponentDiagnostics {
            relevance,
            penalty,
            objective: relevance - penalty,
        }
    }
}

/// `I(w'X; C)` in the configured log base.
pub fn relevance(w: &[f64], data: &Dataset, hist: &HistogramConfig) -> Result<f64> {
    let cfg = ExtractionConfig {
        hist: *hist,
        ..ExtractionConfig::default()
    };
    Ok(Objective::new(data, &cfg)?.evaluate(w)?.relevance)
}

fn with_priors<'a>(
    prior: &[Vec<f64>],
    data: &'a Dataset,
    cfg: &ExtractionConfig,
) -> Result<Objective<'a>> {
    let mut obj = Objective::new(data, cfg)?;
    for p in prior {
        obj.push(p)?;
    }
    Ok(obj)
}

/// Redundancy of `w` against the previously extracted vectors `prior`.
pub fn redundancy_penalty(
    w: &[f64],
    prior: &[Vec<f64>],
    data: &Dataset,
    cfg: &ExtractionConfig,
) -> Result<f64> {
    Ok(with_priors(prior, data, cfg)?.evaluate(w)?.penalty)
}

/// Relevance minus redundancy penalty.
pub fn objective(
    w: &[f64],
    prior: &[Vec<f64>],
    data: &Dataset,
    cfg: &ExtractionConfig,
) -> Result<f64> {
    Ok(with_priors(prior, data, cfg)?.evaluate(w)?.objective)
}
