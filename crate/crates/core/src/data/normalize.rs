use serde::{Deserialize, Serialize};

use super::Dataset;
use crate::error::{Error, Result};

/// How the absolute-maximum divisor is computed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMode {
    /// One divisor per feature column.
    #[default]
    PerFeature,
    /// A single divisor (the largest absolute value anywhere) for all columns.
    Global,
}

/// Per-feature divisors fitted on a training split. Always strictly positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormParams {
    pub per_feature_abs_max: Vec<f64>,
}

pub fn fit_normalizer(train: &Dataset) -> NormParams {
    fit_normalizer_with(train, NormMode::PerFeature)
}

/// All-zero columns get divisor 1.0 and pass through unchanged.
pub fn fit_normalizer_with(train: &Dataset, mode: NormMode) -> NormParams {
    let guard = |m: f64| if m > 0.0 { m } else { 1.0 };
    let col_max: Vec<f64> = train
        .features()
        .columns()
        .into_iter()
        .map(|c| c.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
        .collect();
    let per_feature_abs_max = match mode {
        NormMode::PerFeature => col_max.into_iter().map(guard).collect(),
        NormMode::Global => {
            let g = guard(col_max.iter().copied().fold(0.0, f64::max));
            vec![g; train.ncols()]
        }
    };
    NormParams { per_feature_abs_max }
}

pub fn apply_normalizer(params: &NormParams, data: &Dataset) -> Result<Dataset> {
    if params.per_feature_abs_max.len() != data.ncols() {
        return Err(Error::DimensionMismatch {
            expected: params.per_feature_abs_max.len(),
            found: data.ncols(),
        });
    }
    let mut features = data.features().clone();
    for (mut col, &div) in features.columns_mut().into_iter().zip(&params.per_feature_abs_max) {
        col.mapv_inplace(|v| v / div);
    }
    data.with_features(features)
}
