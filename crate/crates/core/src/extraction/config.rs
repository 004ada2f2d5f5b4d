use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::info::HistogramConfig;

/// Genetic-algorithm settings for the search over unit weight vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GaConfig {
    pub population: usize,
    pub generations: usize,
    pub tournament_size: usize,
    pub crossover_prob: f64,
    /// BLX-alpha extension of the parent interval.
    pub blend_alpha: f64,
    pub mutation_sigma: f64,
    /// Per-gene mutation probability; `None` means `1/d`.
    pub mutation_prob: Option<f64>,
    pub elites: usize,
    pub restarts: usize,
    /// Coordinate hill-climb sweeps after the GA; 0 disables refinement.
    pub refine_steps: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population: 60,
            generations: 120,
            tournament_size: 3,
            crossover_prob: 0.9,
            blend_alpha: 0.5,
            mutation_sigma: 0.15,
            mutation_prob: None,
            elites: 2,
            restarts: 3,
            refine_steps: 0,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.population == 0 || self.generations == 0 || self.restarts == 0 {
            return bad("population, generations and restarts must be positive".into());
        }
        if self.tournament_size < 2 || self.tournament_size > self.population {
            return bad(format!(
                "tournament size {} must be in 2..={}",
                self.tournament_size, self.population
            ));
        }
        if self.elites >= self.population {
            return bad(format!(
                "elites ({}) must be fewer than the population ({})",
                self.elites, self.population
            ));
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return bad(format!("crossover_prob {} outside [0, 1]", self.crossover_prob));
        }
        if let Some(p) = self.mutation_prob {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("mutation_prob {p} outside [0, 1]"));
            }
        }
        if !(self.blend_alpha > 0.0 && self.mutation_sigma > 0.0) {
            return bad("blend_alpha and mutation_sigma must be positive".into());
        }
        Ok(())
    }

    pub(crate) fn mutation_prob_for(&self, d: usize) -> f64 {
        self.mutation_prob.unwrap_or(1.0 / d as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExtractionConfig {
    /// Number of components to extract.
    pub t: usize,
    pub hist: HistogramConfig,
    pub ga: GaConfig,
    /// Redundancy summands whose prior feature has binned entropy below
    /// this are treated as zero.
    pub entropy_floor: f64,
}

impl Default for ExtractionConfig {
    fn default() -> Self {
        Self {
            t: 1,
            hist: HistogramConfig::default(),
            ga: GaConfig::default(),
            entropy_floor: 1e-6,
        }
    }
}

impl ExtractionConfig {
    pub fn with_t(t: usize) -> Self {
        Self {
            t,
            ..Self::default()
        }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        self.hist.validate()?;
        self.ga.validate()?;
        if self.t == 0 || self.t > d {
            return Err(Error::InvalidConfig(format!(
                "t = {} must be in 1..={d} (the feature count)",
                self.t
            )));
        }
        if self.entropy_floor.is_nan() || self.entropy_floor <= 0.0 {
            return Err(Error::InvalidConfig("entropy_floor must be positive".into()));
        }
        Ok(())
    }
}
