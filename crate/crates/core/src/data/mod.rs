//! Labelled sample matrices, CSV ingestion, normalization and fold planning.

mod csv_io;
mod folds;
mod normalize;

pub use csv_io::{load_csv, write_csv, LabelColumn};
pub use folds::{kfold, stratified_kfold, FoldPlan};
pub use normalize::{apply_normalizer, fit_normalizer, fit_normalizer_with, NormMode, NormParams};

use ndarray::{Array2, ArrayView1, Axis};

use crate::error::{Error, Result};

/// An `n x d` matrix of finite reals with one class label per row.
///
/// Labels are contiguous integers in `0..n_classes`. A dataset built with
/// [`Dataset::new`] contains every class at least once; subsets produced by
/// [`Dataset::subset`] keep the parent's label space and may miss classes.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Array2<f64>,
    labels: Vec<usize>,
    n_classes: usize,
    feature_names: Option<Vec<String>>,
    class_names: Option<Vec<String>>,
}

impl Dataset {
    pub fn new(features: Array2<f64>, labels: Vec<usize>, n_classes: usize) -> Result<Self> {
        let ds = Self::new_unchecked_classes(features, labels, n_classes)?;
        if ds.nrows() < 2 {
            return Err(Error::InvalidData(format!(
                "need at least 2 samples, got {}",
                ds.nrows()
            )));
        }
        let counts = ds.class_counts();
        if let Some(missing) = counts.iter().position(|&c| c == 0) {
            return Err(Error::InvalidData(format!(
                "class {missing} has no samples"
            )));
        }
        Ok(ds)
    }

    /// Validation shared by [`Dataset::new`] and subsets: shapes, label
    /// range, finiteness.
    fn new_unchecked_classes(
        features: Array2<f64>,
        labels: Vec<usize>,
        n_classes: usize,
    ) -> Result<Self> {
        if features.nrows() != labels.len() {
            return Err(Error::LengthMismatch {
                left: features.nrows(),
                right: labels.len(),
            });
        }
        if features.ncols() == 0 {
            return Err(Error::InvalidData("dataset has no feature columns".into()));
        }
        if features.nrows() == 0 {
            return Err(Error::InvalidData("dataset has no samples".into()));
        }
        if n_classes == 0 {
            return Err(Error::InvalidData("n_classes must be positive".into()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= n_classes) {
            return Err(Error::InvalidData(format!(
                "label {bad} outside 0..{n_classes}"
            )));
        }
        if let Some(((row, col), v)) = features.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidData(format!(
                "non-finite value {v} at row {row}, column {col}"
            )));
        }
        Ok(Self {
            features,
            labels,
            n_classes,
            feature_names: None,
            class_names: None,
        })
    }

    pub fn with_feature_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.ncols() {
            return Err(Error::DimensionMismatch {
                expected: self.ncols(),
                found: names.len(),
            });
        }
        self.feature_names = Some(names);
        Ok(self)
    }

    pub fn with_class_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_classes {
            return Err(Error::DimensionMismatch {
                expected: self.n_classes,
                found: names.len(),
            });
        }
        self.class_names = Some(names);
        Ok(self)
    }

    pub fn features(&self) -> &Array2<f64> {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn nrows(&self) -> usize {
        self.features.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.features.ncols()
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    pub fn class_names(&self) -> Option<&[String]> {
        self.class_names.as_deref()
    }

    pub fn column(&self, j: usize) -> ArrayView1<'_, f64> {
        self.features.column(j)
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Resolve a feature column by name, falling back to a zero-based index.
    pub fn resolve_column(&self, key: &str) -> Result<usize> {
        if let Some(names) = &self.feature_names {
            if let Some(j) = names.iter().position(|n| n == key) {
                return Ok(j);
            }
        }
        match key.parse::<usize>() {
            Ok(j) if j < self.ncols() => Ok(j),
            _ => Err(Error::MissingColumn(key.to_string())),
        }
    }

    /// Rows at `indices`, in that order. The label space is inherited, so
    /// the result may have fewer than two rows or miss classes.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= self.nrows()) {
            return Err(Error::InvalidArgument(format!(
                "row index {bad} out of range for {} rows",
                self.nrows()
            )));
        }
        let features = self.features.select(Axis(0), indices);
        let labels = indices.iter().map(|&i| self.labels[i]).collect();
        let mut ds = Self::new_unchecked_classes(features, labels, self.n_classes)?;
        ds.feature_names = self.feature_names.clone();
        ds.class_names = self.class_names.clone();
        Ok(ds)
    }

    /// Same labels, new feature matrix (e.g. after projection).
    pub fn with_features(&self, features: Array2<f64>) -> Result<Self> {
        let mut ds = Self::new_unchecked_classes(features, self.labels.clone(), self.n_classes)?;
        ds.class_names = self.class_names.clone();
        if ds.ncols() == self.ncols() {
            ds.feature_names = self.feature_names.clone();
        }
        Ok(ds)
    }

    /// The first `k` feature columns.
    pub fn leading_columns(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.ncols() {
            return Err(Error::InvalidArgument(format!(
                "cannot take {k} of {} columns",
                self.ncols()
            )));
        }
        let cols: Vec<usize> = (0..k).collect();
        let mut ds = self.with_features(self.features.select(Axis(1), &cols))?;
        ds.feature_names = self.feature_names.as_ref().map(|n| n[..k].to_vec());
        Ok(ds)
    }
}
