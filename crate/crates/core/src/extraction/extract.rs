use super::config::ExtractionConfig;
use super::ga::ga_optimize;
use super::objective::{ComponentDiagnostics, Objective};
use super::projection::{Method, ProjectionMatrix};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::seed::derive_seed;

/// Result of a greedy extraction run.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    pub projection: ProjectionMatrix,
    /// Relevance, penalty and objective of each component against the
    /// components extracted before it.
    pub diagnostics: Vec<ComponentDiagnostics>,
    /// Best objective in each component's initial GA populations.
    pub initial_best: Vec<f64>,
}

/// Extract `cfg.t` components one at a time.
///
/// Component 1 maximizes relevance alone. Component `i` maximizes relevance
/// minus the redundancy penalty against components `1..i`, which stay
/// fixed. Component `i` runs the GA with a seed derived from `(seed, i)`.
pub fn extract(data: &Dataset, cfg: &ExtractionConfig, seed: u64) -> Result<Extraction> {
    cfg.validate(data.ncols())?;
    let present = data.class_counts().iter().filter(|&&c| c > 0).count();
    if present < 2 {
        return Err(Error::InvalidData(format!(
            "extraction needs at least 2 classes, found {present}"
        )));
    }

    let mut objective = Objective::new(data, cfg)?;
    let mut vectors = Vec::with_capacity(cfg.t);
    let mut diagnostics = Vec::with_capacity(cfg.t);
    let mut initial_best = Vec::with_capacity(cfg.t);

    for i in 0..cfg.t {
        let outcome = ga_optimize(
            |w| objective.score(w),
            data.ncols(),
            &cfg.ga,
            derive_seed(seed, i as u64),
        )?;
        let diag = objective.evaluate(&outcome.vector)?;
        if !diag.objective.is_finite() {
            return Err(Error::Numeric(format!(
                "component {} has non-finite objective",
                i + 1
            )));
        }
        objective.push(&outcome.vector)?;
        vectors.push(outcome.vector);
        diagnostics.push(diag);
        initial_best.push(outcome.initial_best);
    }

    Ok(Extraction {
        projection: ProjectionMatrix::new(vectors, Method::Mifx)?,
        diagnostics,
        initial_best,
    })
}

/// Per-component diagnostics of an arbitrary projection, each component
/// scored against the ones before it.
pub fn component_diagnostics(
    projection: &ProjectionMatrix,
    data: &Dataset,
    cfg: &ExtractionConfig,
) -> Result<Vec<ComponentDiagnostics>> {
    let mut objective = Objective::new(data, cfg)?;
    let mut out = Vec::with_capacity(projection.len());
    for v in projection.vectors() {
        out.push(objective.evaluate(v)?);
        objective.push(v)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extraction::{ga_optimize, objective, relevance, GaConfig};
    use ndarray::Array2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn quick(t: usize) -> ExtractionConfig {
        ExtractionConfig {
            t,
            ga: GaConfig {
                population: 24,
                generations: 25,
                restarts: 1,
                ..GaConfig::default()
            },
            ..ExtractionConfig::default()
        }
    }

    fn two_gauss(n: usize, d: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
        let x = Array2::from_shape_fn((n, d), |(i, j)| {
            let z: f64 = StandardNormal.sample(&mut rng);
            if j == 0 {
                z + if labels[i] == 1 { 2.0 } else { -2.0 }
            } else {
                z
            }
        });
        Dataset::new(x, labels, 2).unwrap()
    }

    #[test]
    fn single_component_is_one_ga_call_on_relevance() {
        let data = two_gauss(400, 4, 1);
        let cfg = quick(1);
        let ex = extract(&data, &cfg, 5).unwrap();
        let direct = ga_optimize(
            |w| relevance(w, &data, &cfg.hist).unwrap(),
            4,
            &cfg.ga,
            derive_seed(5, 0),
        )
        .unwrap();
        assert_eq!(ex.projection.vectors()[0], direct.vector);
        assert_eq!(ex.diagnostics[0].objective, direct.fitness);
        assert_eq!(ex.diagnostics[0].penalty, 0.0);
    }

    #[test]
    fn deterministic_unit_norm_and_bookkeeping() {
        let data = two_gauss(300, 5, 2);
        let cfg = quick(3);
        let a = extract(&data, &cfg, 9).unwrap();
        let b = extract(&data, &cfg, 9).unwrap();
        assert_eq!(a, b);
        for (i, v) in a.projection.vectors().iter().enumerate() {
            let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() <= 1e-9);
            assert!(a.diagnostics[i].objective >= a.initial_best[i]);
            let prior = &a.projection.vectors()[..i];
            assert_eq!(
                objective(v, prior, &data, &cfg).unwrap(),
                a.diagnostics[i].objective
            );
        }
    }

    #[test]
    fn rejects_bad_requests() {
        let data = two_gauss(100, 3, 3);
        assert!(matches!(extract(&data, &quick(4), 0), Err(Error::InvalidConfig(_))));
        let one_class = data.subset(&(0..100).step_by(2).collect::<Vec<_>>()).unwrap();
        assert!(matches!(extract(&one_class, &quick(1), 0), Err(Error::InvalidData(_))));
    }

    #[test]
    fn diagnostics_for_fixed_projection() {
        let data = two_gauss(300, 3, 4);
        let p = ProjectionMatrix::new(vec![vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]], Method::Pca).unwrap();
        let d = component_diagnostics(&p, &data, &ExtractionConfig::default()).unwrap();
        assert_eq!(d[1].objective, 0.0);
        assert_eq!(d[1].penalty, d[0].relevance);
    }
}
