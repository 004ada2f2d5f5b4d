use std::fmt;
use std::str::FromStr;

use ndarray::{Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::error::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-9;

/// Which extractor produced a projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pca,
    Lda,
    Mifx,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Pca => "pca",
            Method::Lda => "lda",
            Method::Mifx => "mifx",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pca" => Ok(Method::Pca),
            "lda" => Ok(Method::Lda),
            "mifx" => Ok(Method::Mifx),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Ordered unit-norm weight vectors; row `i` is the `i`-th extracted
/// component.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    vectors: Vec<Vec<f64>>,
    d: usize,
    method: Method,
}

impl ProjectionMatrix {
    pub fn new(vectors: Vec<Vec<f64>>, method: Method) -> Result<Self> {
        let d = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("projection needs at least one vector".into()))?;
        if d == 0 {
            return Err(Error::InvalidArgument("projection vectors are empty".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            let norm = l2_norm(v);
            if !((1.0 - NORM_TOLERANCE)..=(1.0 + NORM_TOLERANCE)).contains(&norm) {
                return Err(Error::Numeric(format!(
                    "vector {i} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self { vectors, d, method })
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn input_dim(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// The first `t` components.
    pub fn truncated(&self, t: usize) -> Result<Self> {
        if t == 0 || t > self.len() {
            return Err(Error::InvalidArgument(format!(
                "cannot keep {t} of {} components",
                self.len()
            )));
        }
        Ok(Self {
            vectors: self.vectors[..t].to_vec(),
            d: self.d,
            method: self.method,
        })
    }
}

pub(crate) fn l2_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[inline]
pub(crate) fn dot_row(row: ArrayView1<'_, f64>, w: &[f64]) -> f64 {
    match row.as_slice() {
        Some(s) => s.iter().zip(w).map(|(a, b)| a * b).sum(),
        None => row.iter().zip(w).map(|(a, b)| a * b).sum(),
    }
}

/// `out[i] = x[i] . w` for every row.
pub(crate) fn project_into(x: &Array2<f64>, w: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.extend(x.rows().into_iter().map(|r| dot_row(r, w)));
}

/// `Y = W X`: sample `i`, component `k` is `vectors[k] . x_i`.
pub fn project(w: &ProjectionMatrix, data: &Dataset) -> Result<Dataset> {
    if w.input_dim() != data.ncols() {
        return Err(Error::DimensionMismatch {
            expected: w.input_dim(),
            found: data.ncols(),
        });
    }
    let x = data.features();
    let mut out = Array2::zeros((data.nrows(), w.len()));
    for (i, row) in x.rows().into_iter().enumerate() {
        for (k, v) in w.vectors().iter().enumerate() {
            out[[i, k]] = dot_row(row, v);
        }
    }
    data.with_features(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn data() -> Dataset {
        Dataset::new(array![[1.0, 2.0], [3.0, -4.0], [0.5, 0.25]], vec![0, 1, 0], 2).unwrap()
    }

    #[test]
    fn basis_vector_selects_column() {
        let w = ProjectionMatrix::new(vec![vec![0.0, 1.0]], Method::Mifx).unwrap();
        let y = project(&w, &data()).unwrap();
        assert_eq!(y.column(0), data().column(1));
        assert_eq!(y.labels(), data().labels());
    }

    #[test]
    fn identity_is_noop() {
        let w = ProjectionMatrix::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]], Method::Pca).unwrap();
        assert_eq!(project(&w, &data()).unwrap().features(), data().features());
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn matches_hand_product() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = ProjectionMatrix::new(vec![vec![s, s], vec![0.6, -0.8]], Method::Lda).unwrap();
        let y = project(&w, &data()).unwrap();
        // brute force: y[i][k] = sum_j x[i][j] * w[k][j]
        let x = [[1.0, 2.0], [3.0, -4.0], [0.5, 0.25]];
        let wv = [[s, s], [0.6, -0.8]];
        for i in 0..3 {
            for k in 0..2 {
                let mut acc = 0.0;
                for j in 0..2 {
                    acc += x[i][j] * wv[k][j];
                }
                assert!((y.features()[[i, k]] - acc).abs() < 1e-15);
            }
        }
        let col_norm: f64 = y.column(1).iter().map(|v| v * v).sum::<f64>().sqrt();
        let expected: f64 = [(-1.0f64), 5.0, 0.1].iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((col_norm - expected).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(ProjectionMatrix::new(vec![vec![1.0, 1.0]], Method::Mifx).is_err());
        assert!(ProjectionMatrix::new(vec![], Method::Mifx).is_err());
        assert!(ProjectionMatrix::new(vec![vec![1.0], vec![0.0, 1.0]], Method::Mifx).is_err());
        let w = ProjectionMatrix::new(vec![vec![1.0, 0.0, 0.0]], Method::Mifx).unwrap();
        assert!(matches!(
            project(&w, &data()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
