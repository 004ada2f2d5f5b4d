//! Histogram estimators of entropy and one-dimensional mutual information,
//! plus the Bayes-error bounds that motivate MI as an extraction criterion.

mod bounds;
mod estimators;
mod histogram;

pub use bounds::{bayes_error_bounds, BayesErrorBounds};
pub use estimators::{entropy_binned, entropy_discrete, mi_2d_cd, mi_cc, mi_cd};
pub use histogram::{
    bin_1d, bin_2d, bin_with_classes, ClassHistogram, Histogram, HistogramConfig, LogBase,
    PairHistogram, RangePolicy,
};

pub(crate) use estimators::{entropy_codes, mi_codes};
pub(crate) use histogram::bin_indices;
