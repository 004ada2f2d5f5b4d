use ndarray::{Array1, Array2};

use super::linalg::{canonical_sign, cholesky, solve_lower, solve_lower_transpose, symmetric_eigen};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::extraction::{Method, ProjectionMatrix};

/// Within-class and between-class scatter matrices.
#[derive(Debug, Clone)]
pub struct Scatter {
    pub within: Array2<f64>,
    pub between: Array2<f64>,
}

/// Scatter over the classes present in `data`.
pub fn scatter(data: &Dataset) -> Scatter {
    let d = data.ncols();
    let x = data.features();
    let counts = data.class_counts();
    let mut means = Array2::<f64>::zeros((data.n_classes(), d));
    for (row, &l) in x.rows().into_iter().zip(data.labels()) {
        let mut m = means.row_mut(l);
        m += &row;
    }
    for (c, &n_c) in counts.iter().enumerate() {
        if n_c > 0 {
            means.row_mut(c).mapv_inplace(|v| v / n_c as f64);
        }
    }
    let overall: Array1<f64> = x.sum_axis(ndarray::Axis(0)) / x.nrows() as f64;

    let mut within = Array2::<f64>::zeros((d, d));
    for (row, &l) in x.rows().into_iter().zip(data.labels()) {
        let diff = &row - &means.row(l);
        for i in 0..d {
            for j in 0..d {
                within[[i, j]] += diff[i] * diff[j];
            }
        }
    }
    let mut between = Array2::<f64>::zeros((d, d));
    for (c, &n_c) in counts.iter().enumerate() {
        if n_c == 0 {
            continue;
        }
        let diff = &means.row(c) - &overall;
        for i in 0..d {
            for j in 0..d {
                between[[i, j]] += n_c as f64 * diff[i] * diff[j];
            }
        }
    }
    Scatter { within, between }
}

/// Between-to-within scatter ratio of direction `w`.
pub fn fisher_ratio(s: &Scatter, w: &[f64]) -> f64 {
    let quad = |m: &Array2<f64>| {
        let mut acc = 0.0;
        for i in 0..w.len() {
            for j in 0..w.len() {
                acc += w[i] * m[[i, j]] * w[j];
            }
        }
        acc
    };
    quad(&s.between) / quad(&s.within)
}

/// Top-`t` Fisher discriminant directions, solving
/// `S_b w = lambda (S_w + eps I) w`.
///
/// A ridge `eps = 1e-6 * trace(S_w) / d` is added when `S_w` is
/// numerically singular.
pub fn lda_fit(data: &Dataset, t: usize) -> Result<ProjectionMatrix> {
    let d = data.ncols();
    let c = data.n_classes();
    if t == 0 {
        return Err(Error::InvalidConfig("t must be positive".into()));
    }
    if t > c.saturating_sub(1) {
        return Err(Error::InvalidConfig(format!(
            "t exceeds C\u{2212}1 = {}",
            c.saturating_sub(1)
        )));
    }
    if t > d {
        return Err(Error::InvalidConfig(format!(
            "t = {t} exceeds the feature count {d}"
        )));
    }
    if let Some((class, _)) = data
        .class_counts()
        .iter()
        .enumerate()
        .find(|&(_, &n)| n == 1)
    {
        return Err(Error::InvalidData(format!(
            "class {class} has fewer than 2 samples"
        )));
    }

    let s = scatter(data);
    let mut within = s.within.clone();
    let eig_w = symmetric_eigen(&within)?;
    let max_eig = eig_w.values.iter().copied().fold(0.0, f64::max);
    let min_eig = eig_w.values.iter().copied().fold(f64::INFINITY, f64::min);
    if min_eig.is_nan() || min_eig <= 1e-10 * max_eig {
        let trace: f64 = (0..d).map(|i| within[[i, i]]).sum();
        let eps = if trace > 0.0 { 1e-6 * trace / d as f64 } else { 1e-6 };
        for i in 0..d {
            within[[i, i]] += eps;
        }
    }
    let l = cholesky(&within)?;

    // M = L^-1 S_b L^-T, symmetric
    let mut left = Array2::<f64>::zeros((d, d));
    for j in 0..d {
        let col = solve_lower(&l, &s.between.column(j).to_vec());
        left.column_mut(j).assign(&Array1::from(col));
    }
    let mut m = Array2::<f64>::zeros((d, d));
    for j in 0..d {
        let row = left.row(j).to_vec();
        let col = solve_lower(&l, &row);
        m.column_mut(j).assign(&Array1::from(col));
    }
    let eig = symmetric_eigen(&m)?;

    let vectors = (0..t)
        .map(|k| {
            let mut w = solve_lower_transpose(&l, &eig.vectors.column(k).to_vec());
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::Numeric("degenerate discriminant direction".into()));
            }
            w.iter_mut().for_each(|x| *x /= norm);
            canonical_sign(&mut w);
            Ok(w)
        })
        .collect::<Result<Vec<_>>>()?;
    ProjectionMatrix::new(vectors, Method::Lda)
}
