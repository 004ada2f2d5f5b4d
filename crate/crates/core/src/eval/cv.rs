use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::knn::{accuracy, knn_classify};
use super::report::{config_digest, fold_mean, EvalMethod, EvaluationReport};
use crate::baselines::{lda_fit, pca_fit};
use crate::data::{apply_normalizer, fit_normalizer_with, kfold, stratified_kfold, Dataset, FoldPlan, NormMode, NormParams};
use crate::error::{Error, Result};
use crate::extraction::{extract, project, ExtractionConfig, ProjectionMatrix};
use crate::seed::derive_seed;

/// Cross-validation settings shared by every method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CvOptions {
    pub folds: usize,
    pub seed: u64,
    pub stratified: bool,
    pub norm: NormMode,
    pub knn_k: usize,
    pub dataset_name: String,
    /// Extraction settings for MIFX. `t` is overridden per run.
    pub extraction: ExtractionConfig,
    /// Column order used by the raw method; `None` keeps the native order.
    pub raw_columns: Option<Vec<usize>>,
    /// Run folds concurrently. Results do not depend on this.
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for CvOptions {
    fn default() -> Self {
        Self {
            folds: 10,
            seed: 42,
            stratified: true,
            norm: NormMode::PerFeature,
            knn_k: 1,
            dataset_name: "dataset".into(),
            extraction: ExtractionConfig::default(),
            raw_columns: None,
            parallel: true,
        }
    }
}

impl CvOptions {
    pub fn plan(&self, data: &Dataset) -> Result<FoldPlan> {
        if self.stratified {
            stratified_kfold(data, self.folds, self.seed)
        } else {
            kfold(data, self.folds, self.seed)
        }
    }
}

/// Everything fitted on the training part of one fold.
#[derive(Debug, Clone, PartialEq)]
pub struct FoldModel {
    pub norm: NormParams,
    /// `None` for the raw-feature method.
    pub projection: Option<ProjectionMatrix>,
}

#[derive(Serialize)]
struct DigestInput<'a> {
    dataset_name: &'a str,
    method: EvalMethod,
    dims: &'a [usize],
    folds: usize,
    seed: u64,
    stratified: bool,
    norm: NormMode,
    knn_k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw_columns: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    extraction: Option<&'a ExtractionConfig>,
}

/// Largest output dimension `method` can produce on `data`.
pub fn method_capacity(method: EvalMethod, data: &Dataset) -> usize {
    match method {
        EvalMethod::Lda => data.ncols().min(data.n_classes().saturating_sub(1)),
        _ => data.ncols(),
    }
}

/// Fit normalization and, unless `method` is raw, a `t`-component
/// projection using only the training rows of `fold`.
pub fn fit_fold(
    data: &Dataset,
    plan: &FoldPlan,
    fold: usize,
    method: EvalMethod,
    t: usize,
    opts: &CvOptions,
) -> Result<FoldModel> {
    let train = data.subset(&plan.train_indices(fold))?;
    let norm = fit_normalizer_with(&train, opts.norm);
    let train = apply_normalizer(&norm, &train)?;
    let projection = match method {
        EvalMethod::Raw => None,
        EvalMethod::Pca => Some(pca_fit(&train, t)?),
        EvalMethod::Lda => Some(lda_fit(&train, t)?),
        EvalMethod::Mifx => {
            let cfg = ExtractionConfig { t, ..opts.extraction };
            Some(extract(&train, &cfg, derive_seed(opts.seed, fold as u64))?.projection)
        }
    };
    Ok(FoldModel { norm, projection })
}

fn fold_accuracies(
    data: &Dataset,
    plan: &FoldPlan,
    fold: usize,
    method: EvalMethod,
    dims: &[usize],
    opts: &CvOptions,
) -> Result<Vec<f64>> {
    let t = *dims.last().expect("nonempty dims");
    let model = fit_fold(data, plan, fold, method, t, opts)?;
    let prepare = |idx: &[usize]| -> Result<Dataset> {
        let part = apply_normalizer(&model.norm, &data.subset(idx)?)?;
        match &model.projection {
            Some(p) => project(p, &part),
            None => Ok(part),
        }
    };
    let train = prepare(&plan.train_indices(fold))?;
    let test = prepare(&plan.test_indices(fold))?;
    dims.iter()
        .map(|&k| {
            let pred = knn_classify(&train.leading_columns(k)?, &test.leading_columns(k)?, opts.knn_k)?;
            accuracy(&pred, test.labels())
        })
        .collect()
}

/// Cross-validated k-NN accuracy of `method` at each of `dims`.
pub fn cross_validate(
    data: &Dataset,
    method: EvalMethod,
    dims: &[usize],
    opts: &CvOptions,
) -> Result<EvaluationReport> {
    let plan = opts.plan(data)?;
    cross_validate_with_plan(data, method, dims, &plan, opts)
}

/// As [`cross_validate`] with a given fold plan, so several methods can be
/// compared on identical splits.
pub fn cross_validate_with_plan(
    data: &Dataset,
    method: EvalMethod,
    dims: &[usize],
    plan: &FoldPlan,
    opts: &CvOptions,
) -> Result<EvaluationReport> {
    if plan.assignments.len() != data.nrows() {
        return Err(Error::LengthMismatch {
            left: plan.assignments.len(),
            right: data.nrows(),
        });
    }
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument("dims must be positive and nonempty".into()));
    }
    let reordered;
    let data = match (&opts.raw_columns, method) {
        (Some(cols), EvalMethod::Raw) => {
            if cols.is_empty() {
                return Err(Error::InvalidArgument("raw column list is empty".into()));
            }
            if let Some(&bad) = cols.iter().find(|&&c| c >= data.ncols()) {
                return Err(Error::MissingColumn(bad.to_string()));
            }
            reordered = data.with_features(data.features().select(ndarray::Axis(1), cols))?;
            &reordered
        }
        _ => data,
    };
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    if let Some(&too_big) = dims.iter().find(|&&k| k > data.ncols()) {
        return Err(Error::InvalidArgument(format!(
            "dims exceeds feature count: {too_big} > {}",
            data.ncols()
        )));
    }
    if method == EvalMethod::Mifx {
        opts.extraction.hist.validate()?;
        opts.extraction.ga.validate()?;
    }

    let cap = method_capacity(method, data);
    let (evaluated, absent): (Vec<usize>, Vec<usize>) = dims.iter().partition(|&&k| k <= cap);

    let per_fold: Vec<Vec<f64>> = if evaluated.is_empty() {
        vec![Vec::new(); plan.k]
    } else if opts.parallel {
        (0..plan.k)
            .into_par_iter()
            .map(|f| fold_accuracies(data, plan, f, method, &evaluated, opts))
            .collect::<Result<_>>()?
    } else {
        (0..plan.k)
            .map(|f| fold_accuracies(data, plan, f, method, &evaluated, opts))
            .collect::<Result<_>>()?
    };

    let fold_accuracies: Vec<Vec<f64>> = (0..evaluated.len())
        .map(|i| per_fold.iter().map(|row| row[i]).collect())
        .collect();
    let mean_accuracy = fold_accuracies.iter().map(|r| fold_mean(r)).collect();

    let digest_input = DigestInput {
        dataset_name: &opts.dataset_name,
        method,
        dims: &dims,
        folds: plan.k,
        seed: opts.seed,
        stratified: plan.stratified,
        norm: opts.norm,
        knn_k: opts.knn_k,
        raw_columns: opts.raw_columns.as_deref().filter(|_| method == EvalMethod::Raw),
        extraction: (method == EvalMethod::Mifx).then_some(&opts.extraction),
    };
    let config = serde_json::to_value(&digest_input)?;
    Ok(EvaluationReport {
        dataset_name: opts.dataset_name.clone(),
        method,
        classifier: format!("knn-{}", opts.knn_k),
        dims_evaluated: evaluated,
        dims_absent: absent,
        folds: plan.k,
        fold_accuracies,
        mean_accuracy,
        seed: opts.seed,
        config_digest: config_digest(&config)?,
        config,
    })
}
