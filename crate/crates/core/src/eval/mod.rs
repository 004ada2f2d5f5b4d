//! Cross-validated classification accuracy of extracted features.

mod cv;
mod knn;
mod report;

pub use cv::{cross_validate, cross_validate_with_plan, fit_fold, method_capacity, CvOptions, FoldModel};
pub use knn::{accuracy, knn_classify};
pub use report::{
    config_digest, load_reports, render_table, EvalMethod, EvaluationReport, ReferenceTable, TableFormat,
};
