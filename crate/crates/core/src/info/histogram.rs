use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Range over which equal-width bins are laid out.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RangePolicy {
    /// Observed minimum to observed maximum, top edge inclusive.
    #[default]
    DataMinMax,
    /// A fixed interval. Values outside it are counted in the end bins.
    Fixed { lo: f64, hi: f64 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "e")]
    E,
}

impl LogBase {
    /// Convert a quantity measured in nats into this base.
    pub(crate) fn convert_nats(self, nats: f64) -> f64 {
        match self {
            LogBase::Two => nats / std::f64::consts::LN_2,
            LogBase::E => nats,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HistogramConfig {
    pub n_bins: usize,
    pub range: RangePolicy,
    pub log_base: LogBase,
    /// Add the Miller–Madow first-order bias correction to every estimate.
    /// Estimates may then go negative.
    pub bias_correction: bool,
}

impl Default for HistogramConfig {
    fn default() -> Self {
        Self {
            n_bins: 32,
            range: RangePolicy::DataMinMax,
            log_base: LogBase::Two,
            bias_correction: false,
        }
    }
}

impl HistogramConfig {
    pub fn with_bins(n_bins: usize) -> Self {
        Self {
            n_bins,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_bins < 2 {
            return Err(Error::InvalidConfig(format!(
                "n_bins must be >= 2, got {}",
                self.n_bins
            )));
        }
        if let RangePolicy::Fixed { lo, hi } = self.range {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidConfig(format!(
                    "fixed range needs finite lo < hi, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(())
    }
}

/// Equal-width bin layout resolved against a concrete sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Layout {
    lo: f64,
    span: f64,
    n_bins: usize,
}

impl Layout {
    pub(crate) fn resolve(values: &[f64], cfg: &HistogramConfig) -> Self {
        let (lo, hi) = match cfg.range {
            RangePolicy::DataMinMax => values
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                    (lo.min(v), hi.max(v))
                }),
            RangePolicy::Fixed { lo, hi } => (lo, hi),
        };
        Self {
            lo,
            span: hi - lo,
            n_bins: cfg.n_bins,
        }
    }

    #[inline]
    pub(crate) fn index(&self, v: f64) -> usize {
        // A zero span means constant input: everything lands in bin 0.
        if self.span <= 0.0 {
            return 0;
        }
        let t = (v - self.lo) / self.span * self.n_bins as f64;
        if t <= 0.0 {
            0
        } else {
            (t as usize).min(self.n_bins - 1)
        }
    }

    pub(crate) fn edges(&self) -> Vec<f64> {
        let span = if self.span > 0.0 {
            self.span
        } else {
            self.n_bins as f64
        };
        let width = span / self.n_bins as f64;
        (0..=self.n_bins)
            .map(|i| {
                if i == self.n_bins {
                    self.lo + span
                } else {
                    self.lo + width * i as f64
                }
            })
            .collect()
    }
}

/// Bin indices for every value, using a layout resolved on `values`.
pub(crate) fn bin_indices(values: &[f64], cfg: &HistogramConfig, out: &mut Vec<u32>) {
    let layout = Layout::resolve(values, cfg);
    out.clear();
    out.extend(values.iter().map(|&v| layout.index(v) as u32));
}

/// One-dimensional histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Histogram of a real variable jointly with class labels (`bins x classes`).
#[derive(Debug, Clone, PartialEq)]
pub struct ClassHistogram {
    pub bin_edges: Vec<f64>,
    pub counts: Array2<u64>,
    pub total: u64,
}

/// Joint histogram of two real variables, each binned on its own range.
#[derive(Debug, Clone, PartialEq)]
pub struct PairHistogram {
    pub x_edges: Vec<f64>,
    pub y_edges: Vec<f64>,
    pub counts: Array2<u64>,
    pub total: u64,
}

impl ClassHistogram {
    pub fn marginal(&self) -> Vec<u64> {
        self.counts.rows().into_iter().map(|r| r.sum()).collect()
    }
}

impl PairHistogram {
    pub fn x_marginal(&self) -> Vec<u64> {
        self.counts.rows().into_iter().map(|r| r.sum()).collect()
    }

    pub fn y_marginal(&self) -> Vec<u64> {
        self.counts.columns().into_iter().map(|c| c.sum()).collect()
    }
}

fn check_values(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::InvalidArgument("cannot bin an empty sample".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("cannot bin non-finite values".into()));
    }
    Ok(())
}

pub fn bin_1d(values: &[f64], cfg: &HistogramConfig) -> Result<Histogram> {
    cfg.validate()?;
    check_values(values)?;
    let layout = Layout::resolve(values, cfg);
    let mut counts = vec![0u64; cfg.n_bins];
    for &v in values {
        counts[layout.index(v)] += 1;
    }
    Ok(Histogram {
        bin_edges: layout.edges(),
        counts,
        total: values.len() as u64,
    })
}

pub fn bin_with_classes(
    values: &[f64],
    labels: &[usize],
    cfg: &HistogramConfig,
) -> Result<ClassHistogram> {
    cfg.validate()?;
    check_values(values)?;
    if values.len() != labels.len() {
        return Err(Error::LengthMismatch {
            left: values.len(),
            right: labels.len(),
        });
    }
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    let layout = Layout::resolve(values, cfg);
    let mut counts = Array2::zeros((cfg.n_bins, n_classes));
    for (&v, &c) in values.iter().zip(labels) {
        counts[[layout.index(v), c]] += 1;
    }
    Ok(ClassHistogram {
        bin_edges: layout.edges(),
        counts,
        total: values.len() as u64,
    })
}

pub fn bin_2d(x: &[f64], y: &[f64], cfg: &HistogramConfig) -> Result<PairHistogram> {
    cfg.validate()?;
    check_values(x)?;
    check_values(y)?;
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let lx = Layout::resolve(x, cfg);
    let ly = Layout::resolve(y, cfg);
    let mut counts = Array2::zeros((cfg.n_bins, cfg.n_bins));
    for (&a, &b) in x.iter().zip(y) {
        counts[[lx.index(a), ly.index(b)]] += 1;
    }
    Ok(PairHistogram {
        x_edges: lx.edges(),
        y_edges: ly.edges(),
        counts,
        total: x.len() as u64,
    })
}
