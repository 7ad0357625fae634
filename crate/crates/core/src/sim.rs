// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! Seedable `G(n, p)` sampling and Monte Carlo estimates. Trial `i` draws
//! from its own ChaCha8 stream keyed by `(seed, i)`, and estimates are
//! reduced from exact integer sums, so results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::counting;
use crate::graph::{generators, Graph, PatternGraph, SparsityContext};

pub const RNG_ALGORITHM: &str = "chacha8-stream";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("p must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("at least two trials are needed, got {0}")]
    TooFewTrials(u64),
    #[error("planted graph has {got} vertices but n = {n}")]
    PlantTooLarge { got: usize, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RngSpec {
    pub seed: u64,
    pub algorithm: String,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        RngSpec {
            seed,
            algorithm: RNG_ALGORITHM.to_string(),
        }
    }

    /// The generator for trial `stream`.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `√trials`.
    pub std_error: f64,
    pub trials: u64,
}

impl McEstimate {
    fn from_sums(sum: u128, sum_sq: u128, trials: u64) -> Self {
        let t = trials as f64;
        let mean = sum as f64 / t;
        // Σ(x − x̄)² = Σx² − (Σx)²/T, evaluated exactly as (TΣx² − (Σx)²)/T.
        let spread = (trials as u128 * sum_sq).saturating_sub(sum * sum) as f64 / t;
        let var = spread / (t - 1.0);
        McEstimate {
            mean,
            std_error: (var / t).sqrt(),
            trials,
        }
    }

    /// Number of standard errors separating the estimate from `value`; zero
    /// variance makes any mismatch infinite.
    pub fn z_score(&self, value: f64) -> f64 {
        let d = (self.mean - value).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.std_error
        }
    }
}

fn check_p(p: f64) -> Result<(), SimError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(SimError::BadProbability(p))
    }
}

fn check_trials(trials: u64) -> Result<(), SimError> {
    if trials >= 2 {
        Ok(())
    } else {
        Err(SimError::TooFewTrials(trials))
    }
}

/// One `G(n, p)` sample from stream 0 of `rng`.
pub fn sample_gnp(n: usize, p: f64, rng: &RngSpec) -> Result<Graph, SimError> {
    check_p(p)?;
    Ok(generators::gnp(n, p, &mut rng.rng(0)))
}

fn run_trials<F>(trials: u64, rng: &RngSpec, f: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> u128 + Sync,
{
    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .map(|i| {
            let x = f(&mut rng.rng(i));
            (x, x * x)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    McEstimate::from_sums(sum, sum_sq, trials)
}

/// Mean of `N(h, G(n, p))`.
pub fn mc_mean_count(h: &Graph, n: usize, p: f64, trials: u64, rng: &RngSpec) -> Result<McEstimate, SimError> {
    check_p(p)?;
    check_trials(trials)?;
    Ok(run_trials(trials, rng, |r| {
        counting::count_labelled(h, &generators::gnp(n, p, r)).expect("pattern without isolated vertices")
    }))
}

/// Mean of `N(h, G(n, p) ∪ g)`.
pub fn mc_conditional_mean(
    g: &Graph,
    h: &PatternGraph,
    ctx: &SparsityContext,
    trials: u64,
    rng: &RngSpec,
) -> Result<McEstimate, SimError> {
    check_trials(trials)?;
    let n = ctx.n();
    if g.vertex_count() as u64 > n {
        return Err(SimError::PlantTooLarge {
            got: g.vertex_count(),
            n,
        });
    }
    let n = n as usize;
    Ok(run_trials(trials, rng, |r| {
        let sample = generators::gnp(n, ctx.p(), r).union(g);
        counting::count_pattern(h, &sample)
    }))
}

/// Frequency of `N(h, G(n, p)) ≥ (1 + δ) n^{v_h} p^{e(h)}`. Plain Monte
/// Carlo: informative only where the event is not rare, i.e. for tiny `n`.
pub fn upper_tail_frequency(
    h: &Graph,
    n: usize,
    p: f64,
    delta: f64,
    trials: u64,
    rng: &RngSpec,
) -> Result<McEstimate, SimError> {
    check_p(p)?;
    check_trials(trials)?;
    let threshold = (1.0 + delta) * (n as f64).powi(h.vertex_count() as i32) * p.powi(h.edge_count() as i32);
    Ok(run_trials(trials, rng, |r| {
        let count = counting::count_labelled(h, &generators::gnp(n, p, r)).expect("pattern without isolated vertices");
        u128::from(count as f64 >= threshold)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::*;

    #[test]
    fn trivial_samples() {
        let r = RngSpec::new(1);
        assert_eq!(sample_gnp(10, 0.0, &r).unwrap().edge_count(), 0);
        assert_eq!(sample_gnp(10, 1.0, &r).unwrap().edge_count(), 45);
        assert_eq!(sample_gnp(30, 0.2, &r).unwrap(), sample_gnp(30, 0.2, &r).unwrap());
        assert!(sample_gnp(3, 1.5, &r).is_err());
    }

    #[test]
    fn edge_count_concentrates() {
        let sigma = (435.0f64 * 0.2 * 0.8).sqrt();
        for seed in 0..1000 {
            let m = sample_gnp(30, 0.2, &RngSpec::new(seed)).unwrap().edge_count() as f64;
            assert!((m - 87.0).abs() <= 5.0 * sigma, "seed {seed}: {m}");
        }
    }

    #[test]
    fn deterministic_counts() {
        let r = RngSpec::new(3);
        let k3 = complete(3).unwrap();
        let e = mc_mean_count(&k3, 10, 0.0, 5, &r).unwrap();
        assert_eq!((e.mean, e.std_error), (0.0, 0.0));
        let e = mc_mean_count(&cycle(4).unwrap(), 4, 1.0, 5, &r).unwrap();
        assert_eq!((e.mean, e.std_error), (24.0, 0.0));
        assert!(mc_mean_count(&k3, 10, 0.5, 1, &r).is_err());
    }

    #[test]
    fn mean_count_unbiased() {
        let e = mc_mean_count(&complete(3).unwrap(), 30, 0.2, 2000, &RngSpec::new(11)).unwrap();
        assert!(e.z_score(194.88) <= 4.0, "{e:?}");
        assert_eq!(e, mc_mean_count(&complete(3).unwrap(), 30, 0.2, 2000, &RngSpec::new(11)).unwrap());
    }

    #[test]
    fn conditional_mean_full_plant_is_constant() {
        let k3 = PatternGraph::new(complete(3).unwrap()).unwrap();
        let ctx = SparsityContext::new(8, 0.3).unwrap();
        let e = mc_conditional_mean(&complete(8).unwrap(), &k3, &ctx, 10, &RngSpec::new(0)).unwrap();
        assert_eq!((e.mean, e.std_error), (336.0, 0.0));
    }

    #[test]
    fn empty_plant_matches_mean_count() {
        let k3 = PatternGraph::new(complete(3).unwrap()).unwrap();
        let ctx = SparsityContext::new(15, 0.3).unwrap();
        let a = mc_conditional_mean(&Graph::empty(15), &k3, &ctx, 4000, &RngSpec::new(5)).unwrap();
        let b = mc_mean_count(k3.graph(), 15, 0.3, 4000, &RngSpec::new(6)).unwrap();
        let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() <= 4.0 * combined);
    }

    #[test]
    fn upper_tail_examples() {
        let k3 = complete(3).unwrap();
        let r = RngSpec::new(2);
        assert_eq!(upper_tail_frequency(&k3, 6, 0.5, 1e6, 20, &r).unwrap().mean, 0.0);
        // At p = 1 every sample is K₆: 120 copies against a threshold of 108.
        assert_eq!(upper_tail_frequency(&k3, 6, 1.0, -0.5, 20, &r).unwrap().mean, 1.0);
        let a = upper_tail_frequency(&k3, 12, 0.5, 0.2, 20_000, &RngSpec::new(1)).unwrap();
        let b = upper_tail_frequency(&k3, 12, 0.5, 0.2, 20_000, &RngSpec::new(2)).unwrap();
        assert!(a.mean > 0.0 && a.mean < 1.0);
        let combined = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() <= 5.0 * combined);
    }
}
