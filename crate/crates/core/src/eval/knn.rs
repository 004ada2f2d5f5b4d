use rayon::prelude::*;

use crate::data::Dataset;
use crate::error::{Error, Result};

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Squared distance, or `None` once the partial sum reaches `bound`.
/// Terms are added in the same order as [`sq_dist`], so a returned value
/// is bit-identical to it.
#[inline]
fn sq_dist_below(a: &[f64], b: &[f64], bound: f64) -> Option<f64> {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        acc += (x - y) * (x - y);
        if acc >= bound {
            return None;
        }
    }
    Some(acc)
}

/// Euclidean k-nearest-neighbour prediction for every test row.
///
/// Equal distances go to the lower training index. With `k > 1` the
/// majority label wins; tied labels go to whichever has the nearer member.
pub fn knn_classify(train: &Dataset, test: &Dataset, k: usize) -> Result<Vec<usize>> {
    if train.nrows() == 0 {
        return Err(Error::InvalidArgument("empty training set".into()));
    }
    if train.ncols() != test.ncols() {
        return Err(Error::DimensionMismatch {
            expected: train.ncols(),
            found: test.ncols(),
        });
    }
    if k == 0 || k > train.nrows() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} must be in 1..={}",
            train.nrows()
        )));
    }
    let d = train.ncols();
    let tx = train.features().as_standard_layout();
    let tx = tx.as_slice().expect("standard layout");
    let qx = test.features().as_standard_layout();
    let qx = qx.as_slice().expect("standard layout");
    let labels = train.labels();
    let predict = |q: &[f64]| -> usize {
        if k == 1 {
            let mut best = (f64::INFINITY, 0usize);
            for (i, r) in tx.chunks_exact(d).enumerate() {
                if let Some(dist) = sq_dist_below(r, q, best.0) {
                    best = (dist, i);
                }
            }
            return labels[best.1];
        }
        let mut dists: Vec<(f64, usize)> = (0..train.nrows())
            .map(|i| (sq_dist(&tx[i * d..(i + 1) * d], q), i))
            .collect();
        let by_dist = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        dists.select_nth_unstable_by(k - 1, by_dist);
        dists.truncate(k);
        dists.sort_by(by_dist);
        let mut votes = vec![0usize; train.n_classes()];
        for &(_, i) in &dists {
            votes[labels[i]] += 1;
        }
        let top = *votes.iter().max().expect("k >= 1");
        dists
            .iter()
            .map(|&(_, i)| labels[i])
            .find(|&l| votes[l] == top)
            .expect("some neighbour holds the top vote")
    };
    Ok((0..test.nrows())
        .into_par_iter()
        .map(|j| predict(&qx[j * d..(j + 1) * d]))
        .collect())
}

/// Percentage of matching labels.
pub fn accuracy(predicted: &[usize], actual: &[usize]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::InvalidArgument("accuracy of an empty prediction".into()));
    }
    let hits = predicted.iter().zip(actual).filter(|(p, a)| p == a).count();
    Ok(100.0 * hits as f64 / predicted.len() as f64)
}
