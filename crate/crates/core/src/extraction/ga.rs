//! Real-coded genetic algorithm over directions in `R^d`.
//!
//! Every candidate is L2-normalized before it is scored. Each restart runs
//! tournament selection, BLX-alpha crossover, per-gene Gaussian mutation and
//! elitism for a fixed number of generations. The first restart's initial
//! population also contains the coordinate axes.
//!
//! All random draws happen on the calling thread in a fixed order; only
//! fitness evaluation is parallel. Results are identical for any thread
//! count.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::config::GaConfig;
use super::projection::l2_norm;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct GaOutcome {
    /// Best unit vector found over all restarts.
    pub vector: Vec<f64>,
    pub fitness: f64,
    /// Best fitness among all initial populations.
    pub initial_best: f64,
    pub evaluations: usize,
}

/// NaN sorts below everything.
fn cmp_fitness(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.total_cmp(&b),
    }
}

fn normalize(v: &mut [f64]) -> bool {
    let norm = l2_norm(v);
    if !(norm > 1e-12 && norm.is_finite()) {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= norm);
    true
}

fn random_unit(d: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    loop {
        let mut v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        if normalize(&mut v) {
            return v;
        }
    }
}

fn evaluate_all<F>(fitness: &F, pop: &[Vec<f64>]) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    pop.par_iter().map(|w| fitness(w)).collect()
}

struct Best {
    vector: Vec<f64>,
    fitness: f64,
}

impl Best {
    fn offer(&mut self, v: &[f64], f: f64) {
        if cmp_fitness(f, self.fitness) == Ordering::Greater {
            self.fitness = f;
            self.vector = v.to_vec();
        }
    }
}

fn tournament(fit: &[f64], size: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut winner = rng.random_range(0..fit.len());
    for _ in 1..size {
        let c = rng.random_range(0..fit.len());
        if cmp_fitness(fit[c], fit[winner]) == Ordering::Greater {
            winner = c;
        }
    }
    winner
}

fn blend(a: &[f64], b: &[f64], alpha: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
            let ext = alpha * (hi - lo);
            let u: f64 = rng.random();
            lo - ext + u * (hi - lo + 2.0 * ext)
        })
        .collect()
}

/// Maximize `fitness` over unit vectors in `R^d`.
pub fn ga_optimize<F>(fitness: F, d: usize, ga: &GaConfig, seed: u64) -> Result<GaOutcome>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if d == 0 {
        return Err(Error::InvalidArgument("dimension must be positive".into()));
    }
    ga.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p_mut = ga.mutation_prob_for(d);
    let mut evaluations = 0;
    let mut best = Best {
        vector: Vec::new(),
        fitness: f64::NAN,
    };
    let mut initial_best = f64::NAN;

    for restart in 0..ga.restarts {
        let mut pop: Vec<Vec<f64>> = Vec::with_capacity(ga.population);
        if restart == 0 {
            for j in 0..d.min(ga.population) {
                let mut e = vec![0.0; d];
                e[j] = 1.0;
                pop.push(e);
            }
        }
        while pop.len() < ga.population {
            pop.push(random_unit(d, &mut rng));
        }
        let mut fit = evaluate_all(&fitness, &pop);
        evaluations += pop.len();
        for (v, &f) in pop.iter().zip(&fit) {
            if cmp_fitness(f, initial_best) == Ordering::Greater {
                initial_best = f;
            }
            best.offer(v, f);
        }

        for _ in 0..ga.generations {
            let mut order: Vec<usize> = (0..pop.len()).collect();
            order.sort_by(|&a, &b| cmp_fitness(fit[b], fit[a]).then(a.cmp(&b)));

            let mut next: Vec<Vec<f64>> = Vec::with_capacity(ga.population);
            let mut next_fit: Vec<f64> = Vec::with_capacity(ga.population);
            for &i in order.iter().take(ga.elites) {
                next.push(pop[i].clone());
                next_fit.push(fit[i]);
            }
            let mut children = Vec::with_capacity(ga.population - next.len());
            while next.len() + children.len() < ga.population {
                let p1 = tournament(&fit, ga.tournament_size, &mut rng);
                let mut child = if rng.random::<f64>() < ga.crossover_prob {
                    let p2 = tournament(&fit, ga.tournament_size, &mut rng);
                    blend(&pop[p1], &pop[p2], ga.blend_alpha, &mut rng)
                } else {
                    pop[p1].clone()
                };
                for g in child.iter_mut() {
                    if rng.random::<f64>() < p_mut {
                        let z: f64 = rng.sample(StandardNormal);
                        *g += ga.mutation_sigma * z;
                    }
                }
                if !normalize(&mut child) {
                    child = random_unit(d, &mut rng);
                }
                children.push(child);
            }
            let child_fit = evaluate_all(&fitness, &children);
            evaluations += children.len();
            for (v, &f) in children.iter().zip(&child_fit) {
                best.offer(v, f);
            }
            next.extend(children);
            next_fit.extend(child_fit);
            pop = next;
            fit = next_fit;
        }
    }

    if ga.refine_steps > 0 {
        evaluations += refine(&fitness, &mut best, ga.refine_steps);
    }

    if best.vector.is_empty() {
        // every evaluation was NaN
        best.vector = vec![0.0; d];
        best.vector[0] = 1.0;
    }
    Ok(GaOutcome {
        vector: best.vector,
        fitness: best.fitness,
        initial_best,
        evaluations,
    })
}

/// Coordinate hill climb on the sphere: probe `w +- h e_j`, keep strict
/// improvements, halve `h` after a sweep without one.
fn refine<F>(fitness: &F, best: &mut Best, sweeps: usize) -> usize
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let d = best.vector.len();
    let mut step = 0.1;
    let mut evals = 0;
    for _ in 0..sweeps {
        let probes: Vec<Vec<f64>> = (0..d)
            .flat_map(|j| [1.0, -1.0].map(|s| (j, s)))
            .filter_map(|(j, s)| {
                let mut v = best.vector.clone();
                v[j] += s * step;
                normalize(&mut v).then_some(v)
            })
            .collect();
        let scores = evaluate_all(fitness, &probes);
        evals += probes.len();
        let before = best.fitness;
        for (v, &f) in probes.iter().zip(&scores) {
            best.offer(v, f);
        }
        if cmp_fitness(best.fitness, before) != Ordering::Greater {
            step /= 2.0;
        }
    }
    evals
}
