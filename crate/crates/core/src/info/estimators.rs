//! Plug-in entropy and mutual-information estimates.
//!
//! Every estimate is a sum of per-cell terms computed as
//! `p * ln(n * n_cell / (n_row * n_col))`, and the terms are summed in sorted
//! order. Transposing a table, or feeding the same variable on both axes,
//! therefore yields the same multiset of floating-point terms and a
//! bit-identical sum: `mi_cc(x, y) == mi_cc(y, x)` and
//! `mi_cc(y, y) == entropy_binned(y)` hold exactly.

use super::histogram::{bin_indices, HistogramConfig, LogBase};
use crate::error::{Error, Result};

fn sorted_sum(terms: &mut [f64]) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().fold(0.0, |acc, t| acc + t)
}

/// Entropy in nats of a count vector, plus the number of occupied cells.
fn entropy_nats(counts: &[u64], n: u64) -> (f64, usize) {
    let nf = n as f64;
    let mut terms: Vec<f64> = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let cf = c as f64;
            (cf / nf) * (nf / cf).ln()
        })
        .collect();
    let occupied = terms.len();
    (sorted_sum(&mut terms), occupied)
}

fn finish_entropy(nats: f64, occupied: usize, n: u64, cfg_bias: bool, base: LogBase) -> f64 {
    let corrected = if cfg_bias {
        nats + (occupied as f64 - 1.0) / (2.0 * n as f64)
    } else {
        nats
    };
    base.convert_nats(corrected)
}

/// Plug-in MI between two discrete codings of the same samples.
///
/// `a` takes values in `0..na`, `b` in `0..nb`.
pub(crate) fn mi_codes(
    a: &[u32],
    na: usize,
    b: &[u32],
    nb: usize,
    bias_correction: bool,
    base: LogBase,
) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len() as u64;
    let mut table = vec![0u64; na * nb];
    for (&i, &j) in a.iter().zip(b) {
        table[i as usize * nb + j as usize] += 1;
    }
    mi_table(&table, na, nb, n, bias_correction, base)
}

/// Plug-in MI of a row-major `rows x cols` contingency table.
pub(crate) fn mi_table(
    table: &[u64],
    rows: usize,
    cols: usize,
    n: u64,
    bias_correction: bool,
    base: LogBase,
) -> f64 {
    let mut row_sum = vec![0u64; rows];
    let mut col_sum = vec![0u64; cols];
    for i in 0..rows {
        for j in 0..cols {
            let c = table[i * cols + j];
            row_sum[i] += c;
            col_sum[j] += c;
        }
    }
    let nf = n as f64;
    let mut terms = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let c = table[i * cols + j];
            if c == 0 {
                continue;
            }
            let cf = c as f64;
            let ratio = (nf * cf) / (row_sum[i] as f64 * col_sum[j] as f64);
            terms.push((cf / nf) * ratio.ln());
        }
    }
    let joint_cells = terms.len();
    let mut nats = sorted_sum(&mut terms);
    if bias_correction {
        let occ = |v: &[u64]| v.iter().filter(|&&c| c > 0).count() as f64;
        nats += (occ(&row_sum) + occ(&col_sum) - joint_cells as f64 - 1.0) / (2.0 * nf);
        base.convert_nats(nats)
    } else {
        // A KL divergence of empirical distributions; clamp rounding noise.
        base.convert_nats(nats).max(0.0)
    }
}

pub(crate) fn entropy_codes(codes: &[u32], n_codes: usize, bias: bool, base: LogBase) -> f64 {
    let mut counts = vec![0u64; n_codes];
    for &c in codes {
        counts[c as usize] += 1;
    }
    let n = codes.len() as u64;
    let (nats, occ) = entropy_nats(&counts, n);
    finish_entropy(nats, occ, n, bias, base)
}

fn class_codes(labels: &[usize]) -> (Vec<u32>, usize) {
    let codes: Vec<u32> = labels.iter().map(|&l| l as u32).collect();
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    (codes, n_classes)
}

fn check_pair(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    if left < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 samples, got {left}"
        )));
    }
    Ok(())
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("non-finite value in sample".into()));
    }
    Ok(())
}

fn codes(values: &[f64], cfg: &HistogramConfig) -> Vec<u32> {
    let mut out = Vec::with_capacity(values.len());
    bin_indices(values, cfg, &mut out);
    out
}

/// Entropy of a list of class labels. `0 log 0` is taken as 0.
pub fn entropy_discrete(labels: &[usize], base: LogBase) -> Result<f64> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("entropy of an empty label list".into()));
    }
    let (c, k) = class_codes(labels);
    Ok(entropy_codes(&c, k, false, base))
}

/// Entropy of the bin-occupancy distribution of `values`.
pub fn entropy_binned(values: &[f64], cfg: &HistogramConfig) -> Result<f64> {
    cfg.validate()?;
    if values.is_empty() {
        return Err(Error::InvalidArgument("entropy of an empty sample".into()));
    }
    check_finite(values)?;
    Ok(entropy_codes(
        &codes(values, cfg),
        cfg.n_bins,
        cfg.bias_correction,
        cfg.log_base,
    ))
}

/// MI between a real variable and class labels.
pub fn mi_cd(values: &[f64], labels: &[usize], cfg: &HistogramConfig) -> Result<f64> {
    cfg.validate()?;
    check_pair(values.len(), labels.len())?;
    check_finite(values)?;
    let (c, k) = class_codes(labels);
    Ok(mi_codes(
        &codes(values, cfg),
        cfg.n_bins,
        &c,
        k,
        cfg.bias_correction,
        cfg.log_base,
    ))
}

/// MI between two real variables on an `n_bins x n_bins` joint histogram.
pub fn mi_cc(x: &[f64], y: &[f64], cfg: &HistogramConfig) -> Result<f64> {
    cfg.validate()?;
    check_pair(x.len(), y.len())?;
    check_finite(x)?;
    check_finite(y)?;
    Ok(mi_codes(
        &codes(x, cfg),
        cfg.n_bins,
        &codes(y, cfg),
        cfg.n_bins,
        cfg.bias_correction,
        cfg.log_base,
    ))
}

/// MI between the binned pair `(x1, x2)` and class labels.
pub fn mi_2d_cd(x1: &[f64], x2: &[f64], labels: &[usize], cfg: &HistogramConfig) -> Result<f64> {
    cfg.validate()?;
    check_pair(x1.len(), x2.len())?;
    check_pair(x1.len(), labels.len())?;
    check_finite(x1)?;
    check_finite(x2)?;
    let nb = cfg.n_bins as u32;
    let pair: Vec<u32> = codes(x1, cfg)
        .into_iter()
        .zip(codes(x2, cfg))
        .map(|(a, b)| a * nb + b)
        .collect();
    let (c, k) = class_codes(labels);
    Ok(mi_codes(
        &pair,
        cfg.n_bins * cfg.n_bins,
        &c,
        k,
        cfg.bias_correction,
        cfg.log_base,
    ))
}
