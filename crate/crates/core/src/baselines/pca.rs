use ndarray::{Array1, Array2, Axis};

use super::linalg::{canonical_sign, symmetric_eigen};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::extraction::{Method, ProjectionMatrix};

/// Sample covariance with the `n - 1` denominator.
pub fn covariance(x: &Array2<f64>) -> Result<Array2<f64>> {
    let n = x.nrows();
    if n < 2 {
        return Err(Error::InvalidData(format!(
            "covariance needs at least 2 samples, got {n}"
        )));
    }
    let mean: Array1<f64> = x.mean_axis(Axis(0)).expect("nonempty");
    let centered = x - &mean;
    Ok(centered.t().dot(&centered) / (n as f64 - 1.0))
}

/// Top-`t` principal axes, by descending variance.
pub fn pca_fit(data: &Dataset, t: usize) -> Result<ProjectionMatrix> {
    let d = data.ncols();
    if t == 0 || t > d {
        return Err(Error::InvalidConfig(format!(
            "t = {t} must be in 1..={d} (the feature count)"
        )));
    }
    let eig = symmetric_eigen(&covariance(data.features())?)?;
    let vectors = (0..t)
        .map(|k| {
            let mut v = eig.vectors.column(k).to_vec();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            canonical_sign(&mut v);
            v
        })
        .collect();
    ProjectionMatrix::new(vectors, Method::Pca)
}
